use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::perm::Permutation;
use crate::schedule::ScheduledCircuit;

/// Conjugation action of a Clifford circuit on Pauli generators.
///
/// Row `i < n` is the image of `X_i`, row `n + i` the image of `Z_i`. A row
/// `(x, z, r)` stands for `(-1)^r` times the tensor product whose factor on
/// qubit `q` is `I, X, Z, Y` for `(x_q, z_q) = (0,0), (1,0), (0,1), (1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliTableau {
    n: usize,
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    r: Vec<bool>,
}

fn bit(row: &[u64], q: usize) -> bool {
    row[q / 64] >> (q % 64) & 1 == 1
}

fn flip(row: &mut [u64], q: usize) {
    row[q / 64] ^= 1 << (q % 64);
}

fn put(row: &mut [u64], q: usize, v: bool) {
    if bit(row, q) != v {
        flip(row, q);
    }
}

fn dot(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(u, v)| (u & v).count_ones()).sum()
}

impl PauliTableau {
    pub fn identity(n: usize) -> PauliTableau {
        let words = n.div_ceil(64).max(1);
        let mut t = PauliTableau {
            n,
            x: vec![vec![0; words]; 2 * n],
            z: vec![vec![0; words]; 2 * n],
            r: vec![false; 2 * n],
        };
        for q in 0..n {
            flip(&mut t.x[q], q);
            flip(&mut t.z[n + q], q);
        }
        t
    }

    pub fn from_circuit(c: &Circuit) -> Result<PauliTableau> {
        let mut t = PauliTableau::identity(c.n_wires());
        for g in c.gates() {
            t.apply_gate(g)?;
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self, row: usize, q: usize) -> bool {
        bit(&self.x[row], q)
    }

    pub fn z(&self, row: usize, q: usize) -> bool {
        bit(&self.z[row], q)
    }

    pub fn sign(&self, row: usize) -> bool {
        self.r[row]
    }

    /// `(x, z, sign)` of one row as plain vectors.
    pub fn row(&self, row: usize) -> (Vec<bool>, Vec<bool>, bool) {
        let x = (0..self.n).map(|q| self.x(row, q)).collect();
        let z = (0..self.n).map(|q| self.z(row, q)).collect();
        (x, z, self.r[row])
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        match *g {
            Gate::H(q) => self.h(q),
            Gate::P(q) => self.s(q),
            Gate::Cnot { control, target } => self.cnot(control, target),
            Gate::Cz(a, b) | Gate::Cphase { k: 1, a, b } => {
                self.h(b);
                self.cnot(a, b);
                self.h(b);
            }
            Gate::Swap(a, b) => {
                for row in 0..2 * self.n {
                    let (xa, xb) = (self.x(row, a), self.x(row, b));
                    let (za, zb) = (self.z(row, a), self.z(row, b));
                    put(&mut self.x[row], a, xb);
                    put(&mut self.x[row], b, xa);
                    put(&mut self.z[row], a, zb);
                    put(&mut self.z[row], b, za);
                }
            }
            Gate::Cphase { .. } => return Err(Error::NonClifford(*g)),
            Gate::Generic2(..) => return Err(Error::UnsupportedGate(*g)),
        }
        debug_assert!(self.is_symplectic(), "tableau lost its symplectic form after {g}");
        Ok(())
    }

    fn h(&mut self, q: usize) {
        for row in 0..2 * self.n {
            let (x, z) = (self.x(row, q), self.z(row, q));
            self.r[row] ^= x && z;
            put(&mut self.x[row], q, z);
            put(&mut self.z[row], q, x);
        }
    }

    fn s(&mut self, q: usize) {
        for row in 0..2 * self.n {
            let (x, z) = (self.x(row, q), self.z(row, q));
            self.r[row] ^= x && z;
            put(&mut self.z[row], q, z ^ x);
        }
    }

    fn cnot(&mut self, a: usize, b: usize) {
        for row in 0..2 * self.n {
            let (xa, xb) = (self.x(row, a), self.x(row, b));
            let (za, zb) = (self.z(row, a), self.z(row, b));
            self.r[row] ^= xa && zb && !(xb ^ za);
            put(&mut self.x[row], b, xb ^ xa);
            put(&mut self.z[row], a, za ^ zb);
        }
    }

    /// Whether the rows still satisfy the canonical commutation relations.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let omega = |i: usize, j: usize| (dot(&self.x[i], &self.z[j]) + dot(&self.z[i], &self.x[j])) % 2 == 1;
        (0..2 * n).all(|i| (i + 1..2 * n).all(|j| omega(i, j) == (j == i + n && i < n)))
    }

    /// Renames qubit `q` of every image to `map[q]`.
    pub fn relabel_outputs(&self, map: &Permutation) -> PauliTableau {
        let mut t = self.clone();
        for row in 0..2 * self.n {
            for q in 0..self.n {
                put(&mut t.x[row], map[q], self.x(row, q));
                put(&mut t.z[row], map[q], self.z(row, q));
            }
        }
        t
    }

    /// The row for generator `q` becomes the old row for generator `map[q]`.
    pub fn relabel_inputs(&self, map: &Permutation) -> PauliTableau {
        let n = self.n;
        let mut t = self.clone();
        for q in 0..n {
            for half in [0, n] {
                t.x[half + q] = self.x[half + map[q]].clone();
                t.z[half + q] = self.z[half + map[q]].clone();
                t.r[half + q] = self.r[half + map[q]];
            }
        }
        t
    }
}

/// Whether `c1`, with output wire `w` renamed to `relabel[w]`, has the same
/// conjugation action as `c2`.
pub fn tableau_equiv(c1: &Circuit, c2: &Circuit, relabel: &Permutation) -> Result<bool> {
    if c1.n_wires() != c2.n_wires() || relabel.len() != c1.n_wires() {
        return Err(Error::WireCountMismatch {
            circuit: c2.n_wires(),
            arch: c1.n_wires(),
        });
    }
    let t1 = PauliTableau::from_circuit(c1)?.relabel_outputs(relabel);
    Ok(t1 == PauliTableau::from_circuit(c2)?)
}

/// Logical-frame tableau of a schedule: generator `i` enters on site
/// `initial_map[i]` and the image on site `final_map[j]` is read as qubit `j`.
pub fn schedule_tableau(sc: &ScheduledCircuit) -> Result<PauliTableau> {
    let phys = PauliTableau::from_circuit(sc.circuit())?;
    Ok(phys
        .relabel_inputs(sc.initial_map())
        .relabel_outputs(&sc.final_map().inverse()))
}
