//! Depth lower bounds for the skeleton circuit, stage audits and a tiny-n
//! exhaustive scheduler.
//!
//! The bounds are asymptotic: only the leading coefficient of `c·n + O(1)`
//! is reported, never a finite-n value.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;

pub use num_rational::Rational64;

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::skeleton::pairs;

/// Largest wire count accepted by [`brute_force_min_depth`].
pub const BRUTE_FORCE_MAX_QUBITS: usize = 5;

/// `A`: skeleton gates keep their order on shared qubits. `B`: any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArchClass {
    Lnn,
    Grid,
    /// Every vertex has at most `k` neighbours.
    BoundedDegree(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundQuery {
    model: Model,
    arch: ArchClass,
    n: usize,
}

impl BoundQuery {
    pub fn new(model: Model, arch: ArchClass, n: usize) -> Result<BoundQuery> {
        if let ArchClass::BoundedDegree(k) = arch {
            if k < 2 {
                return Err(Error::Invalid(format!("degree bound must be at least 2, got {k}")));
            }
        }
        Ok(BoundQuery { model, arch, n })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn arch(&self) -> ArchClass {
        self.arch
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Leading coefficient `c` of a `c·n + O(1)` bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub coefficient: Rational64,
    pub formula: String,
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.formula)
    }
}

fn render(c: Rational64) -> String {
    match (*c.numer(), *c.denom()) {
        (p, 1) => format!("{p}n + O(1)"),
        (p, q) => format!("{p}n/{q} + O(1)"),
    }
}

pub fn lower_bound(q: &BoundQuery) -> LowerBound {
    let r = Rational64::new;
    let coefficient = match (q.model, q.arch) {
        (Model::A, ArchClass::Lnn) => r(10, 3),
        (Model::B, ArchClass::Lnn) => r(3, 2),
        (Model::A, ArchClass::Grid) => r(3, 1),
        (Model::B, ArchClass::Grid) => r(5, 4),
        (Model::A, ArchClass::BoundedDegree(k)) => r(2, 1) + r(2, k as i64),
        (Model::B, ArchClass::BoundedDegree(k)) => r(1, 1) + r(1, k as i64),
    };
    let formula = match (q.model, q.arch) {
        (Model::A, ArchClass::BoundedDegree(k)) => format!("(2+2/{k})n + O(1) = {}", render(coefficient)),
        (Model::B, ArchClass::BoundedDegree(k)) => format!("(1+1/{k})n + O(1) = {}", render(coefficient)),
        _ => render(coefficient),
    };
    LowerBound { coefficient, formula }
}

/// `depth(sc) / (c·n)` with `c` the leading coefficient for `q` and `n = q.n()`.
pub fn ratio_report(sc: &ScheduledCircuit, q: &BoundQuery) -> Rational64 {
    depth_ratio(sc.depth(), q)
}

pub fn depth_ratio(depth: usize, q: &BoundQuery) -> Rational64 {
    let c = lower_bound(q).coefficient;
    Rational64::from_integer(depth as i64) / (c * q.n.max(1) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageKind {
    /// Holds at least one two-qubit gate other than a SWAP.
    L,
    /// SWAPs only, possibly next to single-qubit gates.
    S,
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageKind::L => "L",
            StageKind::S => "S",
        })
    }
}

/// Stage sequence of a circuit and the windows breaking each requirement.
/// Windows index into `stages`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageAudit {
    pub stages: Vec<StageKind>,
    pub l_count: usize,
    pub s_count: usize,
    /// Three L stages in a row.
    pub three_one: Vec<Range<usize>>,
    /// Four L stages with fewer than two S stages among them.
    pub four_two: Vec<Range<usize>>,
}

impl StageAudit {
    pub fn is_compliant(&self) -> bool {
        self.three_one.is_empty() && self.four_two.is_empty()
    }

    pub fn pattern(&self) -> String {
        self.stages.iter().map(ToString::to_string).collect()
    }
}

/// How gates are grouped into depth-1 stages before classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Layering {
    /// Odd layers take computational gates and even layers SWAPs; each gate
    /// goes to the earliest layer of its type after its wires are free.
    /// Single-qubit gates fit in either.
    #[default]
    Staged,
    /// Plain ASAP layering; a layer mixing SWAPs and other gates counts as L.
    Asap,
}

pub fn stage_audit(sc: &ScheduledCircuit) -> StageAudit {
    audit_circuit(sc.circuit(), Layering::Staged)
}

fn staged_layers(c: &Circuit) -> Vec<Vec<usize>> {
    let mut last = vec![0usize; c.n_wires()];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        let mut layer = 1 + g.wires().iter().map(|w| last[w]).max().unwrap_or(0);
        if g.is_two_qubit() && (layer % 2 == 1) == g.is_swap() {
            layer += 1;
        }
        for w in g.wires().iter() {
            last[w] = layer;
        }
        if layers.len() < layer {
            layers.resize_with(layer, Vec::new);
        }
        layers[layer - 1].push(i);
    }
    layers
}

/// Stage sequence of any circuit; layers without two-qubit gates are
/// skipped.
pub fn audit_circuit(c: &Circuit, layering: Layering) -> StageAudit {
    let gates = c.gates();
    let layers = match layering {
        Layering::Staged => staged_layers(c),
        Layering::Asap => c.layers(),
    };
    let stages: Vec<StageKind> = layers
        .iter()
        .filter_map(|layer| {
            let two: Vec<&Gate> = layer.iter().map(|&i| &gates[i]).filter(|g| g.is_two_qubit()).collect();
            if two.is_empty() {
                None
            } else if two.iter().any(|g| !g.is_swap()) {
                Some(StageKind::L)
            } else {
                Some(StageKind::S)
            }
        })
        .collect();
    let l_pos: Vec<usize> = (0..stages.len()).filter(|&i| stages[i] == StageKind::L).collect();
    let three_one = l_pos
        .windows(3)
        .filter(|w| w[2] - w[0] == 2)
        .map(|w| w[0]..w[2] + 1)
        .collect();
    let four_two = l_pos
        .windows(4)
        .filter(|w| w[3] - w[0] + 1 - 4 < 2)
        .map(|w| w[0]..w[3] + 1)
        .collect();
    StageAudit {
        l_count: l_pos.len(),
        s_count: stages.len() - l_pos.len(),
        stages,
        three_one,
        four_two,
    }
}

/// For `k = 1..=ceil((n-2)/2)` the interactions `(k-1, k)`, `(k-1, k+1)`,
/// `(k, k+1)` of three consecutive computational stages. Each one is a
/// triangle, so the three stages cannot all run under a single placement on
/// a bipartite architecture.
pub fn grid_loop_witnesses(n: usize) -> Vec<[(usize, usize); 3]> {
    if n < 3 {
        return Vec::new();
    }
    (1..=(n - 1) / 2)
        .map(|k| [(k - 1, k), (k - 1, k + 1), (k, k + 1)])
        .collect()
}

pub fn is_bipartite(arch: &Architecture) -> bool {
    let n = arch.n_sites();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let c = colour[v].expect("coloured before push");
            for w in arch.neighbors(v) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(d) if d == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Whether some placement makes all three pairs adjacent at once.
pub fn triangle_embeds(arch: &Architecture) -> bool {
    arch.edges()
        .iter()
        .any(|&(a, b)| arch.neighbors(a).any(|c| c != b && arch.are_adjacent(b, c)))
}

/// Pairs of the skeleton on `n` wires, and for each the earlier pairs
/// sharing a wire with it.
fn skeleton_order(n: usize) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let list: Vec<(usize, usize)> = pairs(n).collect();
    let preds = (0..list.len())
        .map(|i| {
            let (a, b) = list[i];
            (0..i)
                .filter(|&j| [a, b].contains(&list[j].0) || [a, b].contains(&list[j].1))
                .collect()
        })
        .collect();
    (list, preds)
}

/// Whether `sc` runs every skeleton pair exactly once, reading each
/// non-SWAP two-qubit gate as the pair of logical wires it acts on. Under
/// model `A` a pair may only run after all earlier pairs on its wires.
pub fn is_feasible(sc: &ScheduledCircuit, model: Model) -> bool {
    let n = sc.n();
    let (list, preds) = skeleton_order(n);
    let mut layout = Layout::from_map(sc.initial_map());
    let mut done = vec![false; list.len()];
    for g in sc.circuit().gates() {
        match *g {
            Gate::Swap(a, b) => layout.swap_sites(a, b),
            _ => {
                let Some((a, b)) = g.pair() else { continue };
                let (x, y) = (layout.logical_at(a), layout.logical_at(b));
                let Some(i) = list.iter().position(|&p| p == (x.min(y), x.max(y))) else {
                    return false;
                };
                if done[i] || (model == Model::A && preds[i].iter().any(|&j| !done[j])) {
                    return false;
                }
                done[i] = true;
            }
        }
    }
    done.into_iter().all(|d| d)
}

/// Exact minimum depth of the full skeleton on `arch`, starting from the
/// identity placement. Each step is either a layer of skeleton gates on
/// adjacent pairs or a layer of SWAPs, never a mix.
pub fn brute_force_min_depth(model: Model, arch: &Architecture) -> Result<usize> {
    let n = arch.n_sites();
    if n > BRUTE_FORCE_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: BRUTE_FORCE_MAX_QUBITS,
        });
    }
    let (list, preds) = skeleton_order(n);
    let preds: Vec<u32> = preds.iter().map(|p| p.iter().fold(0, |m, j| m | 1 << j)).collect();
    let goal = (1u32 << list.len()) - 1;
    let edges = arch.edges();
    let matchings: Vec<Vec<(usize, usize)>> = (1u32..1 << edges.len())
        .filter_map(|mask| {
            let chosen: Vec<(usize, usize)> = (0..edges.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| edges[e])
                .collect();
            let mut used = 0u32;
            for &(a, b) in &chosen {
                if used & (1 << a | 1 << b) != 0 {
                    return None;
                }
                used |= 1 << a | 1 << b;
            }
            Some(chosen)
        })
        .collect();
    let pair_at = |at: &[u8], (a, b): (usize, usize)| {
        let (x, y) = (at[a] as usize, at[b] as usize);
        list.iter()
            .position(|&p| p == (x.min(y), x.max(y)))
            .expect("every pair is a skeleton pair")
    };

    // State: site -> logical wire, and the set of pairs already run.
    let start: (Vec<u8>, u32) = ((0..n as u8).collect(), 0);
    if start.1 == goal {
        return Ok(0);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for (at, done) in &frontier {
            for m in &matchings {
                let mut swapped = at.clone();
                for &(a, b) in m {
                    swapped.swap(a, b);
                }
                let mut ran = *done;
                let mut runnable = true;
                for &e in m {
                    let i = pair_at(at, e);
                    if done >> i & 1 == 1 || (model == Model::A && preds[i] & !done != 0) {
                        runnable = false;
                        break;
                    }
                    ran |= 1 << i;
                }
                if runnable {
                    if ran == goal {
                        return Ok(depth);
                    }
                    if seen.insert((at.clone(), ran)) {
                        next.push((at.clone(), ran));
                    }
                }
                if seen.insert((swapped.clone(), *done)) {
                    next.push((swapped, *done));
                }
            }
        }
        frontier = next;
    }
    Err(Error::Invalid("architecture is not connected".into()))
}
