//! Quantum Fourier transform circuits, exact and approximate.

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::perm::Permutation;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::skeleton::{run_skeleton, stage_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QftSpec {
    n: usize,
    approx_threshold: Option<u32>,
}

impl QftSpec {
    pub fn new(n: usize) -> Result<QftSpec> {
        if n == 0 {
            return Err(Error::Invalid("QFT needs at least one qubit".into()));
        }
        Ok(QftSpec {
            n,
            approx_threshold: None,
        })
    }

    /// Drops every rotation `CPHASE(k)` with `k > m`.
    pub fn approximate(n: usize, m: u32) -> Result<QftSpec> {
        let mut spec = QftSpec::new(n)?;
        if m == 0 || m as usize > n {
            return Err(Error::Invalid(format!(
                "approximation threshold {m} must lie in 1..={n}"
            )));
        }
        spec.approx_threshold = Some(m);
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn approx_threshold(&self) -> Option<u32> {
        self.approx_threshold
    }

    fn rotation(&self, a: usize, b: usize) -> Option<Gate> {
        let k = (b - a + 1) as u32;
        match self.approx_threshold {
            Some(m) if k > m => None,
            _ => Some(Gate::cphase(k, a, b)),
        }
    }
}

/// Textbook circuit: on each wire `a`, a Hadamard followed by the
/// rotations `CPHASE(b - a + 1)` towards every later wire `b`.
///
/// With wire 0 as the least significant bit its unitary is `F · R`, where
/// `F` is the DFT matrix and `R` reverses the wire order.
pub fn qft_flat(spec: &QftSpec) -> Circuit {
    let n = spec.n;
    let mut c = Circuit::new(n);
    for a in 0..n {
        c.push(Gate::H(a)).expect("wire in range");
        for b in a + 1..n {
            if let Some(g) = spec.rotation(a, b) {
                c.push(g).expect("wire in range");
            }
        }
    }
    c
}

/// LNN schedule of the QFT on the skeleton. Every SWAP slot is kept, also
/// for rotations dropped by the approximation.
pub fn qft_lnn(spec: &QftSpec) -> ScheduledCircuit {
    let n = spec.n;
    let arch = Architecture::lnn(n);
    if n == 1 {
        let c = Circuit::from_gates(1, [Gate::H(0)]).expect("one wire");
        return ScheduledCircuit::new(c, arch, Permutation::identity(1)).expect("single wire");
    }
    let last = stage_count(n);
    let order: Vec<usize> = (0..n).collect();
    let mut layout = Layout::identity(n);
    let mut gates = Vec::new();
    // Wire `a` meets its last earlier partner at stage 2a - 1 and its first
    // later partner at stage 2a + 1, so its Hadamard goes in between.
    run_skeleton(
        &mut layout,
        &order,
        &mut gates,
        true,
        |a, b| spec.rotation(a, b).map(|g| vec![g]),
        |s, layout, out| {
            for a in 0..n {
                if (2 * a).min(last) == s {
                    out.push(layout.place(&Gate::H(a)));
                }
            }
        },
    );
    let c = Circuit::from_gates(n, gates).expect("skeleton gates are in range");
    ScheduledCircuit::new(c, arch, Permutation::identity(n)).expect("skeleton schedule is LNN-valid")
}

/// Approximate QFT; identical to [`qft_lnn`] when no threshold is set.
pub fn aqft_lnn(spec: &QftSpec) -> ScheduledCircuit {
    qft_lnn(spec)
}

/// Placements under which a QFT schedule computes the DFT matrix exactly:
/// DFT input bit `i` goes to site `input[i]` and output bit `i` is read from
/// site `output[i]`.
pub fn dft_placement(sc: &ScheduledCircuit) -> (Permutation, Permutation) {
    let n = sc.n();
    let input = Permutation::reversal(n).then(sc.initial_map());
    (input, sc.final_map().clone())
}

/// `depth - 4n` for a QFT schedule.
pub fn depth_offset(sc: &ScheduledCircuit) -> i64 {
    sc.depth() as i64 - 4 * sc.n() as i64
}
