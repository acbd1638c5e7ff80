//! Architecture-valid circuits and SWAP routing.

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::perm::Permutation;

/// A circuit whose two-qubit gates all sit on edges of `arch`.
///
/// Logical wire `i` starts on site `initial_map[i]` and ends on site
/// `final_map[i]`. [`ScheduledCircuit::new`] derives the final map by
/// replaying the SWAPs; [`ScheduledCircuit::with_routing`] takes it as given
/// for circuits where routing has been folded into other gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduledCircuit {
    circuit: Circuit,
    arch: Architecture,
    initial_map: Permutation,
    final_map: Permutation,
}

impl ScheduledCircuit {
    pub fn new(circuit: Circuit, arch: Architecture, initial_map: Permutation) -> Result<ScheduledCircuit> {
        arch.validate(&circuit)?;
        if initial_map.len() != circuit.n_wires() {
            return Err(Error::InvalidPermutation(format!(
                "initial map has {} entries for {} wires",
                initial_map.len(),
                circuit.n_wires()
            )));
        }
        let mut layout = Layout::from_map(&initial_map);
        for g in circuit.gates() {
            if let Gate::Swap(a, b) = *g {
                layout.swap_sites(a, b);
            }
        }
        let final_map = layout.map();
        Ok(ScheduledCircuit {
            circuit,
            arch,
            initial_map,
            final_map,
        })
    }

    pub fn with_routing(
        circuit: Circuit,
        arch: Architecture,
        initial_map: Permutation,
        final_map: Permutation,
    ) -> Result<ScheduledCircuit> {
        arch.validate(&circuit)?;
        if initial_map.len() != circuit.n_wires() || final_map.len() != circuit.n_wires() {
            return Err(Error::InvalidPermutation(format!(
                "maps must have {} entries",
                circuit.n_wires()
            )));
        }
        Ok(ScheduledCircuit {
            circuit,
            arch,
            initial_map,
            final_map,
        })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn arch(&self) -> &Architecture {
        &self.arch
    }

    pub fn initial_map(&self) -> &Permutation {
        &self.initial_map
    }

    pub fn final_map(&self) -> &Permutation {
        &self.final_map
    }

    pub fn n(&self) -> usize {
        self.circuit.n_wires()
    }

    pub fn depth(&self) -> usize {
        self.circuit.depth()
    }

    pub fn generic_depth(&self) -> usize {
        self.circuit.generic_depth()
    }

    /// Drops every SWAP that has nothing after it on either of its sites,
    /// repeating until the tail holds no such SWAP. The final map follows.
    pub fn prune_trailing_swaps(&self) -> ScheduledCircuit {
        let gates = self.circuit.gates();
        let mut open = vec![true; self.n()];
        let mut keep = vec![true; gates.len()];
        for (i, g) in gates.iter().enumerate().rev() {
            match *g {
                Gate::Swap(a, b) if open[a] && open[b] => keep[i] = false,
                _ => {
                    for w in g.wires().iter() {
                        open[w] = false;
                    }
                }
            }
        }
        let mut layout = Layout::from_map(&self.final_map);
        for (i, g) in gates.iter().enumerate().rev() {
            if let (false, Gate::Swap(a, b)) = (keep[i], *g) {
                layout.swap_sites(a, b);
            }
        }
        let mut idx = 0;
        let circuit = self.circuit.filtered(|_| {
            idx += 1;
            keep[idx - 1]
        });
        ScheduledCircuit::with_routing(circuit, self.arch.clone(), self.initial_map.clone(), layout.map())
            .expect("removing gates keeps a valid schedule valid")
    }

    /// Moves an LNN schedule onto another architecture along a Hamiltonian
    /// chain of that architecture: LNN site `i` becomes `chain[i]`.
    pub fn embed(&self, arch: &Architecture) -> Result<ScheduledCircuit> {
        if !self.arch.is_lnn() {
            return Err(Error::Unsupported("only LNN schedules can be embedded".into()));
        }
        if arch.n_sites() != self.n() {
            return Err(Error::WireCountMismatch {
                circuit: self.n(),
                arch: arch.n_sites(),
            });
        }
        let chain = Permutation::new(arch.embed_chain()?)?;
        let circuit = self.circuit.relabeled(chain.as_slice())?;
        ScheduledCircuit::with_routing(
            circuit,
            arch.clone(),
            self.initial_map.then(&chain),
            self.final_map.then(&chain),
        )
    }
}

/// Two-way map between logical wires and physical sites, updated by SWAPs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Layout {
    /// logical -> site
    pos: Vec<usize>,
    /// site -> logical
    at: Vec<usize>,
}

impl Layout {
    pub(crate) fn identity(n: usize) -> Layout {
        Layout::from_map(&Permutation::identity(n))
    }

    pub(crate) fn from_map(map: &Permutation) -> Layout {
        Layout {
            pos: map.as_slice().to_vec(),
            at: map.inverse().as_slice().to_vec(),
        }
    }

    pub(crate) fn site(&self, logical: usize) -> usize {
        self.pos[logical]
    }

    pub(crate) fn logical_at(&self, site: usize) -> usize {
        self.at[site]
    }

    pub(crate) fn swap_sites(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.at[a], self.at[b]);
        self.at.swap(a, b);
        self.pos[la] = b;
        self.pos[lb] = a;
    }

    pub(crate) fn map(&self) -> Permutation {
        Permutation::new(self.pos.clone()).expect("layout is a bijection")
    }

    /// Rewrites a gate on logical wires onto the sites they occupy.
    pub(crate) fn place(&self, g: &Gate) -> Gate {
        g.map_wires(|w| self.pos[w])
    }
}

/// SWAP network on a chain taking the placement `from` to `to` by odd-even
/// transposition sort. Rounds alternate between even and odd site pairs and
/// stop once sorted, so the depth is at most `n`.
pub(crate) fn transposition_network(from: &Permutation, to: &Permutation) -> Vec<Gate> {
    let n = from.len();
    let mut layout = Layout::from_map(from);
    let key = |layout: &Layout, site: usize| to[layout.logical_at(site)];
    let mut out = Vec::new();
    for round in 0..n {
        if (0..n.saturating_sub(1)).all(|s| key(&layout, s) < key(&layout, s + 1)) {
            break;
        }
        let mut s = round % 2;
        while s + 1 < n {
            if key(&layout, s) > key(&layout, s + 1) {
                out.push(Gate::Swap(s, s + 1));
                layout.swap_sites(s, s + 1);
            }
            s += 2;
        }
    }
    out
}

/// SWAP-only LNN schedule that moves logical wire `i` from site `i` to
/// site `target[i]`.
pub fn route_permutation(target: &Permutation, arch: &Architecture) -> Result<ScheduledCircuit> {
    if !arch.is_lnn() {
        return Err(Error::Unsupported(
            "permutation routing is implemented for LNN only".into(),
        ));
    }
    if target.len() != arch.n_sites() {
        return Err(Error::WireCountMismatch {
            circuit: target.len(),
            arch: arch.n_sites(),
        });
    }
    let n = target.len();
    let identity = Permutation::identity(n);
    let circuit = Circuit::from_gates(n, transposition_network(&identity, target))?;
    ScheduledCircuit::new(circuit, arch.clone(), identity)
}
