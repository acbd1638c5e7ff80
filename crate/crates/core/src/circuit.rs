//! Circuits and their depth.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind, Wires};

/// An ordered list of gates over `n_wires` wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_wires: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_wires: usize) -> Circuit {
        Circuit {
            n_wires,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_wires: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(n_wires);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check()?;
        if let Some(wire) = gate.wires().iter().find(|&w| w >= self.n_wires) {
            return Err(Error::WireOutOfRange {
                index: self.gates.len(),
                gate,
                wire,
                n_wires: self.n_wires,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must have the same width.
    pub fn extend_from(&mut self, other: &Circuit) -> Result<()> {
        if other.n_wires != self.n_wires {
            return Err(Error::Invalid(format!(
                "cannot append a {}-wire circuit to a {}-wire circuit",
                other.n_wires, self.n_wires
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    /// Copy of the circuit keeping only gates for which `keep` is true.
    pub fn filtered(&self, mut keep: impl FnMut(&Gate) -> bool) -> Circuit {
        Circuit {
            n_wires: self.n_wires,
            gates: self.gates.iter().copied().filter(|g| keep(g)).collect(),
        }
    }

    /// Copy of the circuit with wire `w` renamed to `map[w]`.
    pub fn relabeled(&self, map: &[usize]) -> Result<Circuit> {
        if map.len() != self.n_wires {
            return Err(Error::InvalidPermutation(format!(
                "relabeling has {} entries for {} wires",
                map.len(),
                self.n_wires
            )));
        }
        Circuit::from_gates(self.n_wires, self.gates.iter().map(|g| g.map_wires(|w| map[w])))
    }

    /// ASAP layer (1-based) of every gate: one more than the latest layer
    /// already touching any of its wires.
    pub fn layer_indices(&self) -> Vec<usize> {
        let mut last = vec![0usize; self.n_wires];
        self.gates
            .iter()
            .map(|g| {
                let layer = 1 + g.wires().iter().map(|w| last[w]).max().unwrap_or(0);
                for w in g.wires().iter() {
                    last[w] = layer;
                }
                layer
            })
            .collect()
    }

    /// Gate indices grouped by ASAP layer.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (i, layer) in self.layer_indices().into_iter().enumerate() {
            if layers.len() < layer {
                layers.resize_with(layer, Vec::new);
            }
            layers[layer - 1].push(i);
        }
        layers
    }

    /// Number of logic levels under ASAP layering with the gate order fixed.
    pub fn depth(&self) -> usize {
        self.layer_indices().into_iter().max().unwrap_or(0)
    }

    /// Number of ASAP layers that contain at least one two-qubit gate.
    pub fn two_qubit_layer_count(&self) -> usize {
        self.layers()
            .iter()
            .filter(|layer| layer.iter().any(|&i| self.gates[i].is_two_qubit()))
            .count()
    }

    /// Depth in generic two-qubit gates.
    ///
    /// A maximal run of two-qubit gates on the same wire pair, with nothing
    /// else touching either wire in between, counts as one generic gate. This
    /// is how a payload gate and the SWAP that follows it merge into a single
    /// unit. Single-qubit gates are counted as layers of their own.
    pub fn generic_depth(&self) -> usize {
        // Per wire: (layer of the last node, id of that node, pair if two-qubit).
        type Node = (usize, usize, Option<(usize, usize)>);
        let mut last: Vec<Node> = vec![(0, usize::MAX, None); self.n_wires];
        let mut depth = 0;
        for (id, g) in self.gates.iter().enumerate() {
            match g.wires() {
                Wires::One(a) => {
                    let layer = last[a].0 + 1;
                    last[a] = (layer, id, None);
                    depth = depth.max(layer);
                }
                Wires::Two(a, b) => {
                    let pair = g.pair();
                    let (la, ida, pa) = last[a];
                    let (_, idb, _) = last[b];
                    if pa.is_some() && pa == pair && ida == idb {
                        continue;
                    }
                    let layer = 1 + la.max(last[b].0);
                    last[a] = (layer, id, pair);
                    last[b] = (layer, id, pair);
                    depth = depth.max(layer);
                }
            }
        }
        depth
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn circ(n: usize, gates: &[Gate]) -> Circuit {
        Circuit::from_gates(n, gates.iter().copied()).unwrap()
    }

    #[test]
    fn depth_examples() {
        assert_eq!(Circuit::new(4).depth(), 0);
        assert_eq!(circ(4, &[Gate::cnot(0, 1), Gate::cnot(2, 3)]).depth(), 1);
        assert_eq!(
            circ(4, &[Gate::cnot(0, 1), Gate::cnot(2, 3), Gate::cnot(1, 2)]).depth(),
            2
        );
    }

    #[test]
    fn out_of_range_is_rejected() {
        let err = Circuit::from_gates(2, [Gate::cnot(0, 5)]).unwrap_err();
        assert!(matches!(err, Error::WireOutOfRange { wire: 5, .. }));
    }

    #[test]
    fn generic_depth_merges_gate_swap_pairs() {
        let c = circ(
            3,
            &[Gate::cnot(0, 1), Gate::Swap(0, 1), Gate::cnot(1, 2), Gate::Swap(1, 2)],
        );
        assert_eq!(c.depth(), 4);
        assert_eq!(c.generic_depth(), 2);
        // A gate on another wire in between breaks the run.
        let c = circ(3, &[Gate::cnot(0, 1), Gate::H(1), Gate::Swap(0, 1)]);
        assert_eq!(c.generic_depth(), 3);
    }

    #[test]
    fn two_qubit_layers_skip_single_qubit_only_layers() {
        let c = circ(2, &[Gate::H(0), Gate::cnot(0, 1), Gate::H(1)]);
        assert_eq!(c.depth(), 3);
        assert_eq!(c.two_qubit_layer_count(), 1);
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        (0..n, 0..n - 1, 0..4u8).prop_map(move |(a, off, kind)| {
            let b = (a + 1 + off) % n;
            match kind {
                0 => Gate::H(a),
                1 => Gate::cnot(a, b),
                2 => Gate::Swap(a, b),
                _ => Gate::Cz(a, b),
            }
        })
    }

    proptest! {
        #[test]
        fn depth_invariant_under_in_layer_reordering(
            gates in prop::collection::vec(arb_gate(6), 0..60),
            seed in any::<u64>(),
        ) {
            let c = circ(6, &gates);
            let depth = c.depth();
            prop_assert!(depth <= c.len());
            let mut reordered = Vec::new();
            for (li, layer) in c.layers().iter().enumerate() {
                let mut layer = layer.clone();
                // deterministic shuffle from the seed
                let r = (seed as usize).wrapping_add(li);
                if !layer.is_empty() {
                    let shift = r % layer.len();
                    layer.rotate_left(shift);
                    if r % 2 == 1 {
                        layer.reverse();
                    }
                }
                reordered.extend(layer.into_iter().map(|i| gates[i]));
            }
            prop_assert_eq!(circ(6, &reordered).depth(), depth);
        }
    }
}
