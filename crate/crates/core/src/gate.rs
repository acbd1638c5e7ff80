//! Gate vocabulary shared by every module.
//!
//! Wires are 0-based. Two-qubit gates always carry two distinct wires; the
//! check lives in [`Gate::check`] and runs when a gate enters a [`Circuit`].
//!
//! [`Circuit`]: crate::Circuit

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    P,
    Cnot,
    Cz,
    Cphase,
    Swap,
    Generic2,
}

impl GateKind {
    pub fn is_two_qubit(self) -> bool {
        !matches!(self, GateKind::H | GateKind::P)
    }
}

/// A single gate. `Cphase { k, .. }` applies the phase `exp(2πi / 2^k)` to |11⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    /// Phase gate `diag(1, i)`.
    P(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Cz(usize, usize),
    Cphase {
        k: u32,
        a: usize,
        b: usize,
    },
    Swap(usize, usize),
    /// Opaque two-qubit operation; takes part in depth and adjacency checks only.
    Generic2(usize, usize),
}

/// The wires a gate touches: one or two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wires {
    One(usize),
    Two(usize, usize),
}

impl Wires {
    pub fn contains(self, w: usize) -> bool {
        match self {
            Wires::One(a) => a == w,
            Wires::Two(a, b) => a == w || b == w,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Wires::One(a) => (a, None),
            Wires::Two(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    pub fn cphase(k: u32, a: usize, b: usize) -> Gate {
        Gate::Cphase { k, a, b }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::P(_) => GateKind::P,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz(..) => GateKind::Cz,
            Gate::Cphase { .. } => GateKind::Cphase,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Generic2(..) => GateKind::Generic2,
        }
    }

    pub fn wires(&self) -> Wires {
        match *self {
            Gate::H(a) | Gate::P(a) => Wires::One(a),
            Gate::Cnot { control, target } => Wires::Two(control, target),
            Gate::Cz(a, b) | Gate::Swap(a, b) | Gate::Generic2(a, b) => Wires::Two(a, b),
            Gate::Cphase { a, b, .. } => Wires::Two(a, b),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.kind().is_two_qubit()
    }

    pub fn is_swap(&self) -> bool {
        matches!(self, Gate::Swap(..))
    }

    /// Unordered wire pair of a two-qubit gate, smaller wire first.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.wires() {
            Wires::One(_) => None,
            Wires::Two(a, b) => Some((a.min(b), a.max(b))),
        }
    }

    /// Returns the same gate with every wire passed through `f`.
    pub fn map_wires(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        match *self {
            Gate::H(a) => Gate::H(f(a)),
            Gate::P(a) => Gate::P(f(a)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(control),
                target: f(target),
            },
            Gate::Cz(a, b) => Gate::Cz(f(a), f(b)),
            Gate::Cphase { k, a, b } => Gate::Cphase { k, a: f(a), b: f(b) },
            Gate::Swap(a, b) => Gate::Swap(f(a), f(b)),
            Gate::Generic2(a, b) => Gate::Generic2(f(a), f(b)),
        }
    }

    /// Checks the structural invariants: distinct wires and `k >= 1` for `Cphase`.
    pub fn check(&self) -> Result<()> {
        if let Gate::Cphase { k: 0, .. } = self {
            return Err(Error::InvalidGate(format!("{self}: cphase needs k >= 1")));
        }
        if let Wires::Two(a, b) = self.wires() {
            if a == b {
                return Err(Error::InvalidGate(format!("{self}: repeated wire {a}")));
            }
        }
        Ok(())
    }

    /// Whether the gate lies in the Clifford group.
    pub fn is_clifford(&self) -> bool {
        match self {
            Gate::Cphase { k, .. } => *k == 1,
            Gate::Generic2(..) => false,
            _ => true,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(a) => write!(f, "h {a}"),
            Gate::P(a) => write!(f, "p {a}"),
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::Cz(a, b) => write!(f, "cz {a} {b}"),
            Gate::Cphase { k, a, b } => write!(f, "cphase {k} {a} {b}"),
            Gate::Swap(a, b) => write!(f, "swap {a} {b}"),
            Gate::Generic2(a, b) => write!(f, "g {a} {b}"),
        }
    }
}
