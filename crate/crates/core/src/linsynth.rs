//! Linear reversible synthesis on LNN via Gauss-Jordan elimination.
//!
//! A circuit whose gates act as row operations `E_1, ..., E_k` (in time
//! order) computes `E_k ... E_1`. Eliminating `A^{-1}` down to the identity
//! therefore yields, gate for gate, a circuit for `A`.

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gf2::Gf2Matrix;
use crate::perm::Permutation;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::skeleton::run_skeleton;

/// Which elimination steps applied a gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussJordanTrace {
    n: usize,
    /// `pivots[c] = Some(j)`: CNOT(j, c) fixed the pivot of column `c`.
    pivots: Vec<Option<usize>>,
    /// Indexed `control * n + target`.
    lower: Vec<bool>,
    upper: Vec<bool>,
}

impl GaussJordanTrace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pivot(&self, c: usize) -> Option<usize> {
        self.pivots.get(c).copied().flatten()
    }

    /// Flag of CNOT(c, s), `c < s`.
    pub fn lower(&self, c: usize, s: usize) -> bool {
        self.lower[c * self.n + s]
    }

    /// Flag of CNOT(l, k), `k < l`.
    pub fn upper(&self, l: usize, k: usize) -> bool {
        self.upper[l * self.n + k]
    }

    fn pivot_gates(&self) -> impl Iterator<Item = Gate> + '_ {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(c, j)| j.map(|j| Gate::cnot(j, c)))
    }

    fn lower_gates(&self, c: usize) -> impl Iterator<Item = Gate> + '_ {
        (c + 1..self.n)
            .filter(move |&s| self.lower(c, s))
            .map(move |s| Gate::cnot(c, s))
    }

    fn upper_gates(&self) -> impl Iterator<Item = Gate> + '_ {
        (1..self.n).rev().flat_map(move |l| {
            (0..l)
                .rev()
                .filter(move |&k| self.upper(l, k))
                .map(move |k| Gate::cnot(l, k))
        })
    }

    /// All gates in elimination order.
    pub fn gates(&self) -> Vec<Gate> {
        let mut out = Vec::new();
        for c in 0..self.n {
            if let Some(j) = self.pivot(c) {
                out.push(Gate::cnot(j, c));
            }
            out.extend(self.lower_gates(c));
        }
        out.extend(self.upper_gates());
        out
    }
}

/// Reduces `a` to the identity with CNOT row operations.
pub fn gauss_jordan(a: &Gf2Matrix) -> Result<GaussJordanTrace> {
    let n = a.n();
    let mut m = a.clone();
    let mut trace = GaussJordanTrace {
        n,
        pivots: vec![None; n.saturating_sub(1)],
        lower: vec![false; n * n],
        upper: vec![false; n * n],
    };
    for c in 0..n {
        if !m.get(c, c) {
            let j = (c + 1..n).find(|&j| m.get(j, c)).ok_or(Error::Singular)?;
            m.add_row(j, c);
            trace.pivots[c] = Some(j);
        }
        for s in c + 1..n {
            if m.get(s, c) {
                m.add_row(c, s);
                trace.lower[c * n + s] = true;
            }
        }
    }
    for l in (1..n).rev() {
        for k in (0..l).rev() {
            if m.get(k, l) {
                m.add_row(l, k);
                trace.upper[l * n + k] = true;
            }
        }
    }
    debug_assert!(m.is_identity());
    Ok(trace)
}

/// The elimination circuit with every pivot fix moved to the front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rearranged {
    trace: GaussJordanTrace,
}

impl Rearranged {
    pub fn trace(&self) -> &GaussJordanTrace {
        &self.trace
    }

    /// Part I: the pivot fixes.
    pub fn part_one(&self) -> Vec<Gate> {
        self.trace.pivot_gates().collect()
    }

    /// Part II: the eliminations below the diagonal.
    pub fn part_two(&self) -> Vec<Gate> {
        (0..self.trace.n).flat_map(|c| self.trace.lower_gates(c)).collect()
    }

    /// Part III: the eliminations above the diagonal.
    pub fn part_three(&self) -> Vec<Gate> {
        self.trace.upper_gates().collect()
    }

    pub fn gates(&self) -> Vec<Gate> {
        let mut out = self.part_one();
        out.extend(self.part_two());
        out.extend(self.part_three());
        out
    }
}

/// Moves the pivot fixes to the front.
///
/// Moving CNOT(j, c) left past CNOT(c', j) leaves CNOT(c', c) behind; the
/// pivot fix commutes with every other lower-phase gate it crosses. The new
/// gate commutes within its block and cancels or fills the flag of
/// CNOT(c', c). Pivots are moved in column order, so each one only crosses
/// elimination blocks of earlier columns.
pub fn rearrange(trace: &GaussJordanTrace) -> Rearranged {
    let n = trace.n;
    let mut t = trace.clone();
    for c in 0..n.saturating_sub(1) {
        if let Some(j) = t.pivots[c] {
            for cp in 0..c {
                if t.lower[cp * n + j] {
                    t.lower[cp * n + c] ^= true;
                }
            }
        }
    }
    Rearranged { trace: t }
}

/// Emits the three skeleton passes of a rearranged trace onto a chain.
///
/// The layout must hold the wires along the chain in either direction. Each
/// pass mirrors the chain; a pass with no gate in it is skipped outright.
pub(crate) fn emit_linear(layout: &mut Layout, r: &Rearranged, out: &mut Vec<Gate>, emit_last_swaps: bool) {
    let t = &r.trace;
    let n = t.n;
    if n < 2 {
        return;
    }
    let used = [
        t.pivots.iter().any(Option::is_some),
        t.lower.iter().any(|&f| f),
        t.upper.iter().any(|&f| f),
    ];
    let last = (0..3).rev().find(|&p| used[p]);
    let swaps = |p: usize| emit_last_swaps || last != Some(p);
    let natural: Vec<usize> = (0..n).collect();
    let reversed: Vec<usize> = (0..n).rev().collect();
    if used[0] {
        run_skeleton(
            layout,
            &natural,
            out,
            swaps(0),
            |c, j| (t.pivot(c) == Some(j)).then(|| vec![Gate::cnot(j, c)]),
            |_, _, _| {},
        );
    }
    if used[1] {
        run_skeleton(
            layout,
            &natural,
            out,
            swaps(1),
            |c, s| t.lower(c, s).then(|| vec![Gate::cnot(c, s)]),
            |_, _, _| {},
        );
    }
    if used[2] {
        run_skeleton(
            layout,
            &reversed,
            out,
            swaps(2),
            |i, j| {
                let (l, k) = (n - 1 - i, n - 1 - j);
                t.upper(l, k).then(|| vec![Gate::cnot(l, k)])
            },
            |_, _, _| {},
        );
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SynthOptions {
    /// Drop SWAPs with nothing after them, updating the final map.
    pub prune_swaps: bool,
}

/// LNN circuit of CNOTs and SWAPs computing `x -> A x` in the logical
/// frame of the returned schedule.
pub fn synthesize_lnn(a: &Gf2Matrix) -> Result<ScheduledCircuit> {
    synthesize_lnn_with(a, SynthOptions::default())
}

pub fn synthesize_lnn_with(a: &Gf2Matrix, opts: SynthOptions) -> Result<ScheduledCircuit> {
    let n = a.n();
    if n == 0 {
        return Err(Error::Invalid("empty matrix".into()));
    }
    let r = rearrange(&gauss_jordan(&a.inverse()?)?);
    let mut layout = Layout::identity(n);
    let mut gates = Vec::new();
    emit_linear(&mut layout, &r, &mut gates, true);
    let c = Circuit::from_gates(n, gates)?;
    let sc = ScheduledCircuit::new(c, Architecture::lnn(n), Permutation::identity(n))?;
    Ok(if opts.prune_swaps {
        sc.prune_trailing_swaps()
    } else {
        sc
    })
}

/// Rewrites a CNOT/SWAP schedule with CNOTs only. A CNOT whose next gate on
/// both wires is a SWAP of the same pair becomes two CNOTs; other SWAPs
/// become three. Single-qubit gates pass through.
pub fn expand_to_cnot(sc: &ScheduledCircuit) -> Result<ScheduledCircuit> {
    let gates = sc.circuit().gates();
    let n = sc.n();
    let mut next = vec![usize::MAX; gates.len()];
    let mut next_b = vec![usize::MAX; gates.len()];
    let mut seen = vec![usize::MAX; n];
    for (i, g) in gates.iter().enumerate().rev() {
        match *g {
            Gate::Cnot { .. } | Gate::Swap(..) | Gate::H(_) | Gate::P(_) => {}
            _ => return Err(Error::UnsupportedGate(*g)),
        }
        if let Some((a, b)) = g.pair() {
            next[i] = seen[a];
            next_b[i] = seen[b];
        }
        for w in g.wires().iter() {
            seen[w] = i;
        }
    }
    let mut merged = vec![false; gates.len()];
    let mut out = Vec::with_capacity(gates.len() * 2);
    for (i, g) in gates.iter().enumerate() {
        match *g {
            Gate::Cnot { control, target } => {
                let j = next[i];
                if j != usize::MAX && j == next_b[i] && gates[j].is_swap() {
                    merged[j] = true;
                    out.push(Gate::cnot(target, control));
                    out.push(Gate::cnot(control, target));
                } else {
                    out.push(*g);
                }
            }
            Gate::Swap(a, b) if !merged[i] => {
                out.extend([Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)]);
            }
            Gate::Swap(..) => {}
            _ => out.push(*g),
        }
    }
    let c = Circuit::from_gates(n, out)?;
    ScheduledCircuit::with_routing(c, sc.arch().clone(), sc.initial_map().clone(), sc.final_map().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gf2_action, schedule_gf2_action};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str]) -> Gf2Matrix {
        Gf2Matrix::from_rows(rows).unwrap()
    }

    fn replay(n: usize, gates: &[Gate]) -> Gf2Matrix {
        gf2_action(&Circuit::from_gates(n, gates.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn identity_has_empty_trace() {
        let t = gauss_jordan(&Gf2Matrix::identity(5)).unwrap();
        assert!(t.gates().is_empty());
        assert!((0..4).all(|c| t.pivot(c).is_none()));
    }

    #[test]
    fn swap_matrix_needs_a_pivot_fix() {
        let a = m(&["01", "10"]);
        let t = gauss_jordan(&a).unwrap();
        assert_eq!(t.pivot(0), Some(1));
        // Row ops: r0 ^= r1, r1 ^= r0, r0 ^= r1.
        assert_eq!(t.gates(), vec![Gate::cnot(1, 0), Gate::cnot(0, 1), Gate::cnot(1, 0)]);
        assert!(replay(2, &t.gates()).mul(&a).is_identity());
        let r = rearrange(&t);
        assert!(replay(2, &r.gates()).mul(&a).is_identity());
    }

    #[test]
    fn single_upper_elimination() {
        let t = gauss_jordan(&m(&["110", "010", "001"])).unwrap();
        assert_eq!(t.gates(), vec![Gate::cnot(1, 0)]);
        assert!(t.upper(1, 0));
    }

    #[test]
    fn singular_is_rejected() {
        assert_eq!(gauss_jordan(&m(&["11", "11"])), Err(Error::Singular));
        assert_eq!(synthesize_lnn(&m(&["110", "110", "001"])), Err(Error::Singular));
    }

    #[test]
    fn rearrangement_preserves_the_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = Gf2Matrix::random_invertible(6, &mut rng);
            let t = gauss_jordan(&a).unwrap();
            let r = rearrange(&t);
            assert_eq!(replay(6, &t.gates()), replay(6, &r.gates()));
            assert!(r.part_one().len() <= 5);
            for g in r.part_one() {
                let Gate::Cnot { control, target } = g else {
                    unreachable!()
                };
                assert!(control > target);
            }
        }
    }

    #[test]
    fn synthesis_of_identity() {
        let sc = synthesize_lnn(&Gf2Matrix::identity(4)).unwrap();
        assert!(schedule_gf2_action(&sc).unwrap().is_identity());
        assert!(sc.circuit().is_empty());
        let one = synthesize_lnn(&Gf2Matrix::identity(1)).unwrap();
        assert!(one.circuit().is_empty());
    }

    #[test]
    fn synthesis_is_exact_and_shallow() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 3, 5, 8, 16] {
            for _ in 0..20 {
                let a = Gf2Matrix::random_invertible(n, &mut rng);
                let sc = synthesize_lnn(&a).unwrap();
                assert!(sc.arch().validate(sc.circuit()).is_ok());
                assert_eq!(schedule_gf2_action(&sc).unwrap(), a);
                assert!(sc.generic_depth() <= 3 * (2 * n - 3), "n = {n}");
                let cx = expand_to_cnot(&sc).unwrap();
                assert_eq!(schedule_gf2_action(&cx).unwrap(), a);
                assert!(cx.depth() <= 18 * n - 27, "n = {n}: {}", cx.depth());
                let pruned = synthesize_lnn_with(&a, SynthOptions { prune_swaps: true }).unwrap();
                assert_eq!(schedule_gf2_action(&pruned).unwrap(), a);
            }
        }
    }

    #[test]
    fn swap_cnot_pair_becomes_two_cnots() {
        let c = Circuit::from_gates(2, [Gate::cnot(0, 1), Gate::Swap(0, 1)]).unwrap();
        let sc = ScheduledCircuit::new(c, Architecture::lnn(2), Permutation::identity(2)).unwrap();
        let cx = expand_to_cnot(&sc).unwrap();
        assert_eq!(cx.circuit().gates(), &[Gate::cnot(1, 0), Gate::cnot(0, 1)]);
        assert_eq!(gf2_action(cx.circuit()).unwrap(), gf2_action(sc.circuit()).unwrap());

        let c = Circuit::from_gates(2, [Gate::Swap(0, 1)]).unwrap();
        let sc = ScheduledCircuit::new(c, Architecture::lnn(2), Permutation::identity(2)).unwrap();
        let cx = expand_to_cnot(&sc).unwrap();
        assert_eq!(
            cx.circuit().gates(),
            &[Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)]
        );
    }

    #[test]
    fn expansion_rejects_other_gates() {
        let c = Circuit::from_gates(2, [Gate::Cz(0, 1)]).unwrap();
        let sc = ScheduledCircuit::new(c, Architecture::lnn(2), Permutation::identity(2)).unwrap();
        assert!(matches!(expand_to_cnot(&sc), Err(Error::UnsupportedGate(_))));
    }

    proptest! {
        #[test]
        fn random_matrices_synthesize_exactly(n in 2usize..=12, seed in any::<u64>()) {
            let a = Gf2Matrix::random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let sc = synthesize_lnn(&a).unwrap();
            prop_assert_eq!(schedule_gf2_action(&sc).unwrap(), a);
            prop_assert!(crate::skeleton::lnn_pattern_preserved(&sc));
        }
    }
}
