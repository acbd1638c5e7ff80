//! Reference simulators used to check every transformation in the crate.
//!
//! Wire 0 is the least significant bit of a basis index throughout.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gf2::Gf2Matrix;
use crate::perm::Permutation;
use crate::schedule::ScheduledCircuit;

pub const MAX_STATE_QUBITS: usize = 14;
pub const MAX_UNITARY_QUBITS: usize = 9;

/// Unitary equivalence tolerance.
pub const EQUIV_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(n: usize, index: usize) -> Result<StateVector> {
        if n > MAX_STATE_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: MAX_STATE_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn zero(n: usize) -> Result<StateVector> {
        StateVector::basis(n, 0)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        if !amps.len().is_power_of_two() {
            return Err(Error::Invalid("amplitude count must be a power of two".into()));
        }
        let n = amps.len().trailing_zeros() as usize;
        if n > MAX_STATE_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: MAX_STATE_QUBITS,
            });
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        let amps = &mut self.amps;
        match *g {
            Gate::H(q) => {
                let m = 1 << q;
                for i in (0..amps.len()).filter(|i| i & m == 0) {
                    let (a, b) = (amps[i], amps[i | m]);
                    amps[i] = (a + b) * FRAC_1_SQRT_2;
                    amps[i | m] = (a - b) * FRAC_1_SQRT_2;
                }
            }
            Gate::P(q) => {
                let m = 1 << q;
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a *= Complex64::i();
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (mc, mt) = (1 << control, 1 << target);
                for i in 0..amps.len() {
                    if i & mc != 0 && i & mt == 0 {
                        amps.swap(i, i | mt);
                    }
                }
            }
            Gate::Cz(a, b) => phase_on_both(amps, a, b, Complex64::new(-1.0, 0.0)),
            Gate::Cphase { k, a, b } => phase_on_both(amps, a, b, cphase_factor(k)),
            Gate::Swap(a, b) => {
                let (ma, mb) = (1 << a, 1 << b);
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
            Gate::Generic2(..) => return Err(Error::UnsupportedGate(*g)),
        }
        Ok(())
    }

    /// Moves the value of wire `i` to wire `map[i]`.
    pub fn permute_wires(&self, map: &Permutation) -> StateVector {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (x, &a) in self.amps.iter().enumerate() {
            out[permute_bits(x, map)] = a;
        }
        StateVector { n: self.n, amps: out }
    }
}

/// `e^{2πi/2^k}`.
pub fn cphase_factor(k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 2f64.powi(k as i32))
}

fn phase_on_both(amps: &mut [Complex64], a: usize, b: usize, factor: Complex64) {
    let m = (1 << a) | (1 << b);
    for (i, amp) in amps.iter_mut().enumerate() {
        if i & m == m {
            *amp *= factor;
        }
    }
}

/// Basis index with bit `i` moved to bit `map[i]`.
pub fn permute_bits(x: usize, map: &Permutation) -> usize {
    (0..map.len()).filter(|&i| x >> i & 1 == 1).map(|i| 1 << map[i]).sum()
}

pub fn bit_reverse(x: usize, n: usize) -> usize {
    (0..n).filter(|&i| x >> i & 1 == 1).map(|i| 1 << (n - 1 - i)).sum()
}

pub fn simulate(c: &Circuit, s: &StateVector) -> Result<StateVector> {
    if c.n_wires() != s.n {
        return Err(Error::WireCountMismatch {
            circuit: c.n_wires(),
            arch: s.n,
        });
    }
    let mut out = s.clone();
    for g in c.gates() {
        out.apply(g)?;
    }
    Ok(out)
}

/// Dense `2^n x 2^n` matrix, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    cols: Vec<Vec<Complex64>>,
}

impl DenseUnitary {
    pub fn from_circuit(c: &Circuit) -> Result<DenseUnitary> {
        let n = c.n_wires();
        DenseUnitary::from_columns(n, |x| Ok(simulate(c, &StateVector::basis(n, x)?)?.into_amplitudes()))
    }

    pub fn from_columns(n: usize, mut col: impl FnMut(usize) -> Result<Vec<Complex64>>) -> Result<DenseUnitary> {
        if n > MAX_UNITARY_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: MAX_UNITARY_QUBITS,
            });
        }
        let cols = (0..1usize << n).map(&mut col).collect::<Result<_>>()?;
        Ok(DenseUnitary { n, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col][row]
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.cols[col]
    }

    pub fn mul(&self, rhs: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.n, rhs.n);
        let d = self.dim();
        let cols = (0..d)
            .map(|j| {
                let mut out = vec![Complex64::new(0.0, 0.0); d];
                for (k, &b) in rhs.cols[j].iter().enumerate() {
                    if b != Complex64::new(0.0, 0.0) {
                        for (o, &a) in out.iter_mut().zip(&self.cols[k]) {
                            *o += a * b;
                        }
                    }
                }
                out
            })
            .collect();
        DenseUnitary { n: self.n, cols }
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim();
        let cols = (0..d)
            .map(|j| (0..d).map(|i| self.get(j, i).conj()).collect())
            .collect();
        DenseUnitary { n: self.n, cols }
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst = 0.0f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.get(i, j) - id).norm());
            }
        }
        worst
    }

    /// Largest entrywise difference after aligning global phase on the
    /// largest-magnitude entry of `self`.
    pub fn distance(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.n, other.n);
        let mut best = (0.0, 0, 0);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, a) in col.iter().enumerate() {
                if a.norm() > best.0 + 1e-12 {
                    best = (a.norm(), i, j);
                }
            }
        }
        let phase = align(self.get(best.1, best.2), other.get(best.1, best.2));
        let mut worst = 0.0f64;
        for (a, b) in self.cols.iter().zip(&other.cols) {
            worst = worst.max(column_gap(a, b, phase));
        }
        worst
    }
}

/// Unit phase `u` with `u * a` pointing along `b`.
fn align(a: Complex64, b: Complex64) -> Complex64 {
    let r = b * a.conj();
    if r.norm() < 1e-300 {
        Complex64::new(1.0, 0.0)
    } else {
        r / r.norm()
    }
}

fn column_gap(a: &[Complex64], b: &[Complex64], phase: Complex64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x * phase - y).norm()).fold(0.0, f64::max)
}

/// Max-entry distance between two operators given column by column, with
/// the global phase fixed by the largest entry of the first column of `a`.
/// Streams, so it works up to the state-vector limit.
pub fn column_distance(
    n: usize,
    mut a: impl FnMut(usize) -> Result<Vec<Complex64>>,
    mut b: impl FnMut(usize) -> Result<Vec<Complex64>>,
) -> Result<f64> {
    let mut phase = None;
    let mut worst = 0.0f64;
    for x in 0..1usize << n {
        let (ca, cb) = (a(x)?, b(x)?);
        let phase = *phase.get_or_insert_with(|| {
            let i = (0..ca.len()).fold(0, |m, i| if ca[i].norm() > ca[m].norm() + 1e-12 { i } else { m });
            align(ca[i], cb[i])
        });
        worst = worst.max(column_gap(&ca, &cb, phase));
    }
    Ok(worst)
}

/// Whether `c1` and `c2` agree as unitaries once wire `w` of `c2` is
/// renamed to `relabel[w]`.
pub fn unitary_equiv(c1: &Circuit, c2: &Circuit, relabel: &Permutation, tol: f64) -> Result<bool> {
    let n = c1.n_wires();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_UNITARY_QUBITS,
        });
    }
    if c2.n_wires() != n || relabel.len() != n {
        return Err(Error::WireCountMismatch {
            circuit: c2.n_wires(),
            arch: n,
        });
    }
    let u1 = DenseUnitary::from_circuit(c1)?;
    let u2 = DenseUnitary::from_circuit(&c2.relabeled(relabel.as_slice())?)?;
    Ok(u1.distance(&u2) <= tol)
}

/// Output of a schedule on logical basis input `x`, read back in logical
/// wire order: the input is placed with the initial map and read out
/// through the final map.
pub fn logical_column(sc: &ScheduledCircuit, x: usize) -> Result<Vec<Complex64>> {
    let n = sc.n();
    let placed = StateVector::basis(n, x)?.permute_wires(sc.initial_map());
    let out = simulate(sc.circuit(), &placed)?;
    Ok(out.permute_wires(&sc.final_map().inverse()).into_amplitudes())
}

/// Distance between a schedule, seen in the logical frame, and a flat
/// circuit on logical wires.
pub fn schedule_distance(sc: &ScheduledCircuit, flat: &Circuit) -> Result<f64> {
    let n = sc.n();
    column_distance(
        n,
        |x| Ok(simulate(flat, &StateVector::basis(n, x)?)?.into_amplitudes()),
        |x| logical_column(sc, x),
    )
}

pub fn dft_column(n: usize, l: usize) -> Vec<Complex64> {
    let d = 1usize << n;
    let scale = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|j| {
            let e = (j * l) % d;
            Complex64::from_polar(scale, 2.0 * PI * e as f64 / d as f64)
        })
        .collect()
}

/// `F[j,l] = exp(2πi jl / 2^n) / sqrt(2^n)`.
pub fn dft_matrix(n: usize) -> Result<DenseUnitary> {
    DenseUnitary::from_columns(n, |l| Ok(dft_column(n, l)))
}

/// Dense Pauli operator `(-1)^negative · ⊗_q i^{x_q z_q} X^{x_q} Z^{z_q}`,
/// so that `(x, z) = (1, 1)` is `Y`.
pub fn pauli_operator(x: &[bool], z: &[bool], negative: bool) -> Result<DenseUnitary> {
    let n = x.len();
    let mask = |v: &[bool]| -> usize { (0..n).filter(|&q| v[q]).map(|q| 1 << q).sum() };
    let (xm, zm) = (mask(x), mask(z));
    let ys = (xm & zm).count_ones();
    let base = Complex64::i().powu(ys) * if negative { -1.0 } else { 1.0 };
    DenseUnitary::from_columns(n, |k| {
        let mut col = vec![Complex64::new(0.0, 0.0); 1 << n];
        let sign = if (zm & k).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        col[k ^ xm] = base * sign;
        Ok(col)
    })
}

/// Action `x -> M x` of a CNOT/SWAP circuit.
pub fn gf2_action(c: &Circuit) -> Result<Gf2Matrix> {
    let mut m = Gf2Matrix::identity(c.n_wires());
    for g in c.gates() {
        match *g {
            Gate::Cnot { control, target } => m.add_row(control, target),
            Gate::Swap(a, b) => m.swap_rows(a, b),
            _ => return Err(Error::UnsupportedGate(*g)),
        }
    }
    Ok(m)
}

/// Pushes one bit vector through a CNOT/SWAP circuit.
pub fn gf2_apply(c: &Circuit, x: &[bool]) -> Result<Vec<bool>> {
    let mut x = x.to_vec();
    for g in c.gates() {
        match *g {
            Gate::Cnot { control, target } => x[target] ^= x[control],
            Gate::Swap(a, b) => x.swap(a, b),
            _ => return Err(Error::UnsupportedGate(*g)),
        }
    }
    Ok(x)
}

/// Logical-frame action of a CNOT/SWAP schedule: inputs placed by the
/// initial map, outputs read through the final map.
pub fn schedule_gf2_action(sc: &ScheduledCircuit) -> Result<Gf2Matrix> {
    let n = sc.n();
    let phys = gf2_action(sc.circuit())?;
    let (init, fin) = (sc.initial_map(), sc.final_map());
    let mut m = Gf2Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, phys.get(fin[i], init[j]));
        }
    }
    Ok(m)
}
