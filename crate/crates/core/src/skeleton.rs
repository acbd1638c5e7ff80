//! The skeleton circuit: one optional two-qubit gate per wire pair, taken in
//! lexicographic pair order `(0,1), (0,2), …, (0,n-1), (1,2), …, (n-2,n-1)`.
//!
//! Pair `(a, b)` runs in computational stage `a + b` (1-based), which gives
//! `2n - 3` stages with disjoint supports. On a chain every stage is followed
//! by a SWAP stage on the same pairs; that keeps the next stage's pairs
//! adjacent and leaves the chain reversed at the end.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, Wires};
use crate::perm::Permutation;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::text::{directives, parse_num};

/// Which skeleton gates exist and what they are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonSpec {
    n: usize,
    present: Vec<bool>,
    payload: BTreeMap<(usize, usize), Gate>,
}

/// Position of pair `(a, b)`, `a < b`, in lexicographic order.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// All pairs `a < b < n` in skeleton order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// Computational stage (1-based) of pair `(a, b)`.
pub fn stage_of(a: usize, b: usize) -> usize {
    a + b
}

/// Number of computational stages for `n` wires.
pub fn stage_count(n: usize) -> usize {
    (2 * n).saturating_sub(3)
}

fn stage_pairs(n: usize, stage: usize) -> impl Iterator<Item = (usize, usize)> {
    let lo = stage.saturating_sub(n - 1);
    let hi = stage.div_ceil(2); // exclusive: a < stage - a
    (lo..hi).map(move |a| (a, stage - a))
}

impl SkeletonSpec {
    /// All `n(n-1)/2` gates present, each a generic two-qubit gate.
    pub fn full(n: usize) -> Result<SkeletonSpec> {
        if n < 2 {
            return Err(Error::Invalid(format!("skeleton needs n >= 2, got {n}")));
        }
        Ok(SkeletonSpec {
            n,
            present: vec![true; n * (n - 1) / 2],
            payload: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_present(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.present[pair_index(self.n, a, b)]
    }

    pub fn set_present(&mut self, a: usize, b: usize, present: bool) {
        let (a, b) = (a.min(b), a.max(b));
        let i = pair_index(self.n, a, b);
        self.present[i] = present;
    }

    pub fn present_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    /// Replaces the generic gate on the pair of `gate`'s wires.
    pub fn set_payload(&mut self, gate: Gate) -> Result<()> {
        gate.check()?;
        let (a, b) = gate
            .pair()
            .ok_or_else(|| Error::InvalidGate(format!("{gate}: payload must be a two-qubit gate")))?;
        if b >= self.n {
            return Err(Error::InvalidGate(format!("{gate}: wire out of range")));
        }
        self.payload.insert((a, b), gate);
        Ok(())
    }

    /// The gate for pair `(a, b)`, on logical wires.
    pub fn payload(&self, a: usize, b: usize) -> Gate {
        let (a, b) = (a.min(b), a.max(b));
        self.payload.get(&(a, b)).copied().unwrap_or(Gate::Generic2(a, b))
    }

    /// The skeleton in its original, unscheduled gate order.
    pub fn flat_circuit(&self) -> Circuit {
        let gates = pairs(self.n)
            .filter(|&(a, b)| self.is_present(a, b))
            .map(|(a, b)| self.payload(a, b));
        Circuit::from_gates(self.n, gates).expect("payloads are range-checked")
    }

    /// Text form: `skeleton N`, then `absent a b` and `payload a b KIND` lines
    /// where KIND is `g`, `cz`, `swap`, `cnot` (control `a`) or `cphase K`.
    pub fn parse(text: &str) -> Result<SkeletonSpec> {
        let mut lines = directives(text);
        let (line, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "missing `skeleton N` header".into(),
        })?;
        let perr = |line: usize, reason: String| Error::Parse { line, reason };
        let mut spec = match head.as_slice() {
            ["skeleton", n] => SkeletonSpec::full(parse_num(n, line)?).map_err(|e| perr(line, e.to_string()))?,
            _ => return Err(perr(line, "first directive must be `skeleton N`".into())),
        };
        let n = spec.n;
        for (line, toks) in lines {
            let pair = |a: &str, b: &str| -> Result<(usize, usize)> {
                let (a, b) = (parse_num(a, line)?, parse_num(b, line)?);
                if a == b || a >= n || b >= n {
                    return Err(perr(line, format!("bad pair ({a}, {b})")));
                }
                Ok((a, b))
            };
            match toks.as_slice() {
                ["absent", a, b] => {
                    let (a, b) = pair(a, b)?;
                    spec.set_present(a, b, false);
                }
                ["payload", a, b, rest @ ..] => {
                    let (a, b) = pair(a, b)?;
                    let gate = match rest {
                        ["g"] => Gate::Generic2(a, b),
                        ["cz"] => Gate::Cz(a, b),
                        ["swap"] => Gate::Swap(a, b),
                        ["cnot"] => Gate::cnot(a, b),
                        ["cphase", k] => Gate::cphase(parse_num(k, line)? as u32, a, b),
                        _ => return Err(perr(line, "unknown payload kind".into())),
                    };
                    spec.set_payload(gate).map_err(|e| perr(line, e.to_string()))?;
                }
                _ => return Err(perr(line, format!("unrecognised directive `{}`", toks.join(" ")))),
            }
        }
        Ok(spec)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("skeleton {}\n", self.n);
        for (a, b) in pairs(self.n) {
            if !self.is_present(a, b) {
                let _ = writeln!(out, "absent {a} {b}");
            }
        }
        for g in self.payload.values() {
            let line = match *g {
                Gate::Generic2(a, b) => format!("payload {a} {b} g"),
                Gate::Cz(a, b) => format!("payload {a} {b} cz"),
                Gate::Swap(a, b) => format!("payload {a} {b} swap"),
                Gate::Cnot { control, target } => format!("payload {control} {target} cnot"),
                Gate::Cphase { k, a, b } => format!("payload {a} {b} cphase {k}"),
                Gate::H(_) | Gate::P(_) => unreachable!("payloads are two-qubit"),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// The `2n - 3` computational stages, each holding its present pairs.
/// Absent pairs leave their slot empty; stages are never renumbered.
pub fn stage_assignment(spec: &SkeletonSpec) -> Vec<Vec<(usize, usize)>> {
    let n = spec.n;
    (1..=stage_count(n))
        .map(|s| stage_pairs(n, s).filter(|&(a, b)| spec.is_present(a, b)).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LnnOptions {
    /// Omit the SWAP stage after the last computational stage.
    pub drop_last_swaps: bool,
}

/// Drives one skeleton over a chain.
///
/// `order[i]` is the logical wire playing skeleton wire `i`; the current
/// layout must place `order` along the chain in either direction. For every
/// stage `s` the hook runs first (it also runs once more after the last
/// stage, with `s = 2n - 3`), then the payload of each pair, then the SWAPs.
/// `payload(i, j)` returns the logical gates for skeleton pair `(i, j)` or
/// `None` when the gate is absent; the SWAP is emitted either way.
pub(crate) fn run_skeleton(
    layout: &mut Layout,
    order: &[usize],
    out: &mut Vec<Gate>,
    emit_last_swaps: bool,
    mut payload: impl FnMut(usize, usize) -> Option<Vec<Gate>>,
    mut hook: impl FnMut(usize, &Layout, &mut Vec<Gate>),
) {
    let n = order.len();
    let sites: Vec<usize> = order.iter().map(|&w| layout.site(w)).collect();
    debug_assert!(
        sites.iter().enumerate().all(|(i, &s)| s == sites[0] + i)
            || sites.iter().enumerate().all(|(i, &s)| s + i == sites[0]),
        "skeleton wires must lie along the chain"
    );
    let last = stage_count(n);
    for s in 1..=last {
        hook(s - 1, layout, out);
        let stage: Vec<(usize, usize)> = stage_pairs(n, s).collect();
        for &(i, j) in &stage {
            if let Some(gates) = payload(i, j) {
                let (u, v) = (layout.site(order[i]), layout.site(order[j]));
                debug_assert!(u.abs_diff(v) == 1, "stage {s}: sites {u},{v} not adjacent");
                debug_assert!(gates.iter().all(|g| touches_only(g, order[i], order[j])));
                out.extend(gates.iter().map(|g| layout.place(g)));
            }
        }
        if s == last && !emit_last_swaps {
            continue;
        }
        for &(i, j) in &stage {
            let (u, v) = (layout.site(order[i]), layout.site(order[j]));
            out.push(Gate::Swap(u.min(v), u.max(v)));
            layout.swap_sites(u, v);
        }
    }
    hook(last, layout, out);
}

pub fn schedule_lnn(spec: &SkeletonSpec) -> ScheduledCircuit {
    schedule_lnn_with(spec, LnnOptions::default())
}

pub fn schedule_lnn_with(spec: &SkeletonSpec, opts: LnnOptions) -> ScheduledCircuit {
    let n = spec.n;
    let mut layout = Layout::identity(n);
    let order: Vec<usize> = (0..n).collect();
    let mut gates = Vec::new();
    run_skeleton(
        &mut layout,
        &order,
        &mut gates,
        !opts.drop_last_swaps,
        |a, b| spec.is_present(a, b).then(|| vec![spec.payload(a, b)]),
        |_, _, _| {},
    );
    let circuit = Circuit::from_gates(n, gates).expect("skeleton gates are in range");
    ScheduledCircuit::new(circuit, Architecture::lnn(n), Permutation::identity(n))
        .expect("skeleton schedule is LNN-valid by construction")
}

/// Whether the schedule leaves logically adjacent wires physically adjacent.
pub fn lnn_pattern_preserved(sc: &ScheduledCircuit) -> bool {
    sc.final_map().is_monotone()
}

/// Non-SWAP gates of a schedule rewritten onto logical wires, in order.
pub fn logical_gates(sc: &ScheduledCircuit) -> Vec<Gate> {
    let mut layout = Layout::from_map(sc.initial_map());
    let mut out = Vec::new();
    for g in sc.circuit().gates() {
        match *g {
            Gate::Swap(a, b) => layout.swap_sites(a, b),
            _ => out.push(g.map_wires(|s| layout.logical_at(s))),
        }
    }
    out
}

/// Sanity helper for callers that build payloads: every gate must act on
/// the wires of its pair only.
pub(crate) fn touches_only(g: &Gate, a: usize, b: usize) -> bool {
    match g.wires() {
        Wires::One(w) => w == a || w == b,
        Wires::Two(u, v) => (u == a && v == b) || (u == b && v == a),
    }
}
