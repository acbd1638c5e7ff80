//! Encoding and syndrome circuits of CSS codes, scheduled by anti-diagonal
//! levels on the chain `a_1 - ... - a_s - b - c_t - ... - c_1`.
//!
//! Controls are indexed `p = 0..m` (`m = s + 1` with `b` last when encoding,
//! `m = s` for syndromes) and targets `j = 0..t`. Logical wires are the
//! controls first, then the targets.

use std::fmt::Write as _;

use rand::Rng;

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::perm::Permutation;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::text::{directives, parse_num};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CssMode {
    Encode,
    Syndrome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CssGate {
    None,
    Cnot,
    Cz,
}

impl CssGate {
    fn symbol(self) -> char {
        match self {
            CssGate::None => '.',
            CssGate::Cnot => 'x',
            CssGate::Cz => 'z',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssSpec {
    mode: CssMode,
    s: usize,
    t: usize,
    /// One row per control, one column per target.
    gates: Vec<Vec<CssGate>>,
    hadamard: Vec<bool>,
}

impl CssSpec {
    pub fn new(mode: CssMode, s: usize, t: usize, gates: Vec<Vec<CssGate>>, hadamard: Vec<bool>) -> Result<CssSpec> {
        if s == 0 || t == 0 {
            return Err(Error::Invalid("CSS blocks need s >= 1 and t >= 1".into()));
        }
        let m = control_count(mode, s);
        if gates.len() != m || gates.iter().any(|r| r.len() != t) {
            return Err(Error::Invalid(format!("gate matrix must be {m} x {t}")));
        }
        if hadamard.len() != m + t {
            return Err(Error::Invalid(format!("Hadamard mask must have {} entries", m + t)));
        }
        Ok(CssSpec {
            mode,
            s,
            t,
            gates,
            hadamard,
        })
    }

    /// Every gate present and of one kind, no Hadamards.
    pub fn full(mode: CssMode, s: usize, t: usize, kind: CssGate) -> Result<CssSpec> {
        let m = control_count(mode, s);
        CssSpec::new(mode, s, t, vec![vec![kind; t]; m], vec![false; m + t])
    }

    pub fn random<R: Rng + ?Sized>(mode: CssMode, s: usize, t: usize, rng: &mut R) -> Result<CssSpec> {
        let m = control_count(mode, s);
        let gates = (0..m)
            .map(|_| {
                (0..t)
                    .map(|_| match rng.gen_range(0..3) {
                        0 => CssGate::None,
                        1 => CssGate::Cnot,
                        _ => CssGate::Cz,
                    })
                    .collect()
            })
            .collect();
        let hadamard = (0..m + t).map(|_| rng.gen()).collect();
        CssSpec::new(mode, s, t, gates, hadamard)
    }

    /// Syndrome extraction for Steane's code: seven data qubits as controls,
    /// six ancillas as targets. Each ancilla follows one row of the Hamming
    /// parity-check matrix; the first three couple by CNOT, the last three by
    /// CZ between Hadamards. This presence pattern is a reconstruction.
    pub fn steane() -> CssSpec {
        const HAMMING: [[u8; 7]; 3] = [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]];
        let gates = (0..7)
            .map(|a| {
                (0..6)
                    .map(|c| match (HAMMING[c % 3][a], c < 3) {
                        (0, _) => CssGate::None,
                        (_, true) => CssGate::Cnot,
                        (_, false) => CssGate::Cz,
                    })
                    .collect()
            })
            .collect();
        let hadamard = (0..13).map(|w| w >= 7 + 3).collect();
        CssSpec::new(CssMode::Syndrome, 7, 6, gates, hadamard).expect("preset is well formed")
    }

    pub fn mode(&self) -> CssMode {
        self.mode
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.controls() + self.t
    }

    pub fn controls(&self) -> usize {
        control_count(self.mode, self.s)
    }

    pub fn gate(&self, p: usize, j: usize) -> CssGate {
        self.gates[p][j]
    }

    pub fn hadamard(&self) -> &[bool] {
        &self.hadamard
    }

    pub fn control_wire(&self, p: usize) -> usize {
        p
    }

    pub fn target_wire(&self, j: usize) -> usize {
        self.controls() + j
    }

    /// Anti-diagonal level (1-based) of the pair `(p, j)`.
    pub fn level_of(&self, p: usize, j: usize) -> usize {
        (self.controls() - 1 - p) + (self.t - 1 - j) + 1
    }

    pub fn level_count(&self) -> usize {
        self.controls() + self.t - 1
    }

    fn logical_gate(&self, p: usize, j: usize) -> Option<Gate> {
        let (a, c) = (self.control_wire(p), self.target_wire(j));
        match self.gates[p][j] {
            CssGate::None => None,
            CssGate::Cnot => Some(Gate::cnot(a, c)),
            CssGate::Cz => Some(Gate::Cz(a, c)),
        }
    }

    fn has_gates(&self) -> bool {
        self.gates.iter().flatten().any(|&g| g != CssGate::None)
    }

    fn hadamard_layer(&self) -> Vec<Gate> {
        (0..self.n()).filter(|&w| self.hadamard[w]).map(Gate::H).collect()
    }

    /// Text form: `css encode|syndrome S T`, one row per control of `T`
    /// characters from `{., x, z}`, then an optional `hadamard MASK`.
    pub fn parse(text: &str) -> Result<CssSpec> {
        let perr = |line, reason: String| Error::Parse { line, reason };
        let mut lines = directives(text);
        let (line, head) = lines.next().ok_or(perr(1, "missing `css` header".into()))?;
        let (mode, s, t) = match head.as_slice() {
            ["css", mode, s, t] => {
                let mode = match *mode {
                    "encode" => CssMode::Encode,
                    "syndrome" => CssMode::Syndrome,
                    other => return Err(perr(line, format!("unknown mode `{other}`"))),
                };
                (mode, parse_num(s, line)?, parse_num(t, line)?)
            }
            _ => return Err(perr(line, "first directive must be `css encode|syndrome S T`".into())),
        };
        let m = control_count(mode, s);
        let mut gates = Vec::with_capacity(m);
        let mut hadamard = None;
        let mut last = line;
        for (line, toks) in lines {
            last = line;
            match toks.as_slice() {
                ["hadamard", mask] if hadamard.is_none() => {
                    if mask.len() != m + t || !mask.chars().all(|c| c == '0' || c == '1') {
                        return Err(perr(
                            line,
                            format!("Hadamard mask must be {} characters from {{0,1}}", m + t),
                        ));
                    }
                    hadamard = Some(mask.chars().map(|c| c == '1').collect());
                }
                [row] if gates.len() < m && hadamard.is_none() => {
                    let parsed: Option<Vec<CssGate>> = row
                        .chars()
                        .map(|c| match c {
                            '.' => Some(CssGate::None),
                            'x' => Some(CssGate::Cnot),
                            'z' => Some(CssGate::Cz),
                            _ => None,
                        })
                        .collect();
                    match parsed {
                        Some(r) if r.len() == t => gates.push(r),
                        _ => return Err(perr(line, format!("expected a row of {t} characters from {{., x, z}}"))),
                    }
                }
                _ => return Err(perr(line, "unexpected directive".into())),
            }
        }
        if gates.len() != m {
            return Err(perr(last, format!("expected {m} gate rows, found {}", gates.len())));
        }
        CssSpec::new(mode, s, t, gates, hadamard.unwrap_or_else(|| vec![false; m + t]))
            .map_err(|e| perr(last, e.to_string()))
    }

    pub fn emit(&self) -> String {
        let mode = match self.mode {
            CssMode::Encode => "encode",
            CssMode::Syndrome => "syndrome",
        };
        let mut out = format!("css {mode} {} {}\n", self.s, self.t);
        for row in &self.gates {
            let _ = writeln!(out, "{}", row.iter().map(|g| g.symbol()).collect::<String>());
        }
        if self.hadamard.iter().any(|&h| h) {
            let mask: String = self.hadamard.iter().map(|&h| if h { '1' } else { '0' }).collect();
            let _ = writeln!(out, "hadamard {mask}");
        }
        out
    }
}

fn control_count(mode: CssMode, s: usize) -> usize {
    match mode {
        CssMode::Encode => s + 1,
        CssMode::Syndrome => s,
    }
}

/// Flat circuit: the Hadamard layer, then the controlled gates with `b`
/// first and `a_1` last (each target meets its controls in that order on
/// the chain), then for syndromes the Hadamard layer again.
pub fn css_flat(spec: &CssSpec) -> Circuit {
    let mut c = Circuit::new(spec.n());
    let h = spec.hadamard_layer();
    let mut gates = h.clone();
    for p in (0..spec.controls()).rev() {
        for j in (0..spec.t).rev() {
            gates.extend(spec.logical_gate(p, j));
        }
    }
    if spec.mode == CssMode::Syndrome {
        gates.extend(h);
    }
    for g in gates {
        c.push(g).expect("wires in range");
    }
    c
}

/// Present pairs of each level, level 1 first.
pub fn css_levels(spec: &CssSpec) -> Vec<Vec<(usize, usize)>> {
    let mut levels = vec![Vec::new(); spec.level_count()];
    for p in 0..spec.controls() {
        for j in 0..spec.t {
            if spec.gates[p][j] != CssGate::None {
                levels[spec.level_of(p, j) - 1].push((p, j));
            }
        }
    }
    for l in &mut levels {
        l.sort_by_key(|&(p, _)| std::cmp::Reverse(p));
    }
    levels
}

/// Chain placement: control `p` on site `p`, target `j` on site `n - 1 - j`.
pub fn css_initial_map(spec: &CssSpec) -> Permutation {
    let m = spec.controls();
    let n = spec.n();
    let map = (0..m).chain((0..spec.t).map(|j| n - 1 - j)).collect();
    Permutation::new(map).expect("placement is a bijection")
}

pub fn css_schedule_lnn(spec: &CssSpec) -> ScheduledCircuit {
    let n = spec.n();
    let init = css_initial_map(spec);
    let mut layout = Layout::from_map(&init);
    let h = spec.hadamard_layer();
    let mut gates: Vec<Gate> = h.iter().map(|g| layout.place(g)).collect();
    if spec.has_gates() {
        for level in 1..=spec.level_count() {
            let pairs: Vec<(usize, usize)> = (0..spec.controls())
                .rev()
                .filter_map(|p| {
                    let j = (spec.controls() - 1 - p + spec.t).checked_sub(level)?;
                    (j < spec.t).then_some((p, j))
                })
                .collect();
            for &(p, j) in &pairs {
                if let Some(g) = spec.logical_gate(p, j) {
                    gates.push(layout.place(&g));
                }
            }
            for &(p, j) in &pairs {
                let (u, v) = (layout.site(spec.control_wire(p)), layout.site(spec.target_wire(j)));
                debug_assert_eq!(u + 1, v, "level {level}: control must sit just left of its target");
                gates.push(Gate::Swap(u, v));
                layout.swap_sites(u, v);
            }
        }
    }
    if spec.mode == CssMode::Syndrome {
        gates.extend(h.iter().map(|g| layout.place(g)));
    }
    let c = Circuit::from_gates(n, gates).expect("gates are in range");
    ScheduledCircuit::new(c, Architecture::lnn(n), init).expect("level schedule is LNN-valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CssDepthReport {
    /// Two-qubit levels with each gate merged into its SWAP.
    pub generic_depth: usize,
    /// Depth of the schedule as emitted, Hadamards and SWAPs included.
    pub gate_level_depth: usize,
}

pub fn css_depth_report(spec: &CssSpec) -> CssDepthReport {
    let sc = css_schedule_lnn(spec);
    let two_qubit = sc.circuit().filtered(|g| g.is_two_qubit());
    CssDepthReport {
        generic_depth: two_qubit.generic_depth(),
        gate_level_depth: sc.depth(),
    }
}
