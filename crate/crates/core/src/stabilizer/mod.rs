//! Stabilizer circuits given as H-C-P-C-P-C-H-P-C-P-C stage sequences.

pub mod tableau;

use std::fmt::Write as _;

use rand::Rng;

pub use tableau::{schedule_tableau, tableau_equiv, PauliTableau};

use crate::arch::Architecture;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gf2::{read_rows, Gf2Matrix};
use crate::linsynth::{emit_linear, gauss_jordan, rearrange};
use crate::perm::Permutation;
use crate::schedule::{Layout, ScheduledCircuit};
use crate::text::{directives, parse_num};

/// Stage kinds in order.
pub const PATTERN: &str = "HCPCPCHPCPC";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    H(Vec<bool>),
    P(Vec<bool>),
    /// Linear reversible map `x -> A x`.
    C(Gf2Matrix),
}

impl Stage {
    fn letter(&self) -> char {
        match self {
            Stage::H(_) => 'H',
            Stage::P(_) => 'P',
            Stage::C(_) => 'C',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageDecomposition {
    n: usize,
    stages: Vec<Stage>,
}

impl StageDecomposition {
    pub fn new(n: usize, stages: Vec<Stage>) -> Result<StageDecomposition> {
        if n == 0 {
            return Err(Error::Invalid("decomposition needs at least one qubit".into()));
        }
        let kinds: String = stages.iter().map(Stage::letter).collect();
        if kinds != PATTERN {
            return Err(Error::Invalid(format!("stage pattern {kinds} is not {PATTERN}")));
        }
        for (i, s) in stages.iter().enumerate() {
            let ok = match s {
                Stage::H(m) | Stage::P(m) => m.len() == n,
                Stage::C(a) => {
                    if a.n() == n && !a.is_invertible() {
                        return Err(Error::Singular);
                    }
                    a.n() == n
                }
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "stage {} has the wrong size for {n} qubits",
                    i + 1
                )));
            }
        }
        Ok(StageDecomposition { n, stages })
    }

    /// All masks empty and all linear stages the identity.
    pub fn trivial(n: usize) -> StageDecomposition {
        let stages = PATTERN
            .chars()
            .map(|k| match k {
                'H' => Stage::H(vec![false; n]),
                'P' => Stage::P(vec![false; n]),
                _ => Stage::C(Gf2Matrix::identity(n)),
            })
            .collect();
        StageDecomposition { n, stages }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StageDecomposition {
        let mask = |rng: &mut R| (0..n).map(|_| rng.gen()).collect();
        let stages = PATTERN
            .chars()
            .map(|k| match k {
                'H' => Stage::H(mask(rng)),
                'P' => Stage::P(mask(rng)),
                _ => Stage::C(Gf2Matrix::random_invertible(n, rng)),
            })
            .collect();
        StageDecomposition { n, stages }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Unrestricted-architecture circuit, stage by stage. Linear stages use
    /// the plain elimination order of `A^{-1}`.
    pub fn flat_reference(&self) -> Circuit {
        let mut c = Circuit::new(self.n);
        for stage in &self.stages {
            let gates: Vec<Gate> = match stage {
                Stage::H(m) => masked(m, Gate::H),
                Stage::P(m) => masked(m, Gate::P),
                Stage::C(a) => gauss_jordan(&a.inverse().expect("checked on construction"))
                    .expect("invertible")
                    .gates(),
            };
            for g in gates {
                c.push(g).expect("wires in range");
            }
        }
        c
    }

    /// Text form: `stab N`, then eleven `stage h|p|c` blocks. H and P blocks
    /// hold one mask of `N` characters from `{0,1}`; C blocks `N` matrix rows.
    pub fn parse(text: &str) -> Result<StageDecomposition> {
        let perr = |line, reason: String| Error::Parse { line, reason };
        let mut lines = directives(text);
        let (line, head) = lines.next().ok_or(perr(1, "missing `stab N` header".into()))?;
        let n = match head.as_slice() {
            ["stab", n] => parse_num(n, line)?,
            _ => return Err(perr(line, "first directive must be `stab N`".into())),
        };
        if n == 0 {
            return Err(perr(line, "decomposition needs at least one qubit".into()));
        }
        let mut stages = Vec::new();
        let mut last = line;
        while let Some((line, toks)) = lines.next() {
            last = line;
            let kind = match toks.as_slice() {
                ["stage", k] => *k,
                _ => return Err(perr(line, "expected `stage h|p|c`".into())),
            };
            match kind {
                "h" | "p" => {
                    let mask = read_mask(&mut lines, n, line)?;
                    stages.push(if kind == "h" { Stage::H(mask) } else { Stage::P(mask) });
                }
                "c" => {
                    let (rows, end) = read_rows(&mut lines, n, line)?;
                    let a = Gf2Matrix::from_rows(&rows).map_err(|e| perr(end, e.to_string()))?;
                    stages.push(Stage::C(a));
                }
                other => return Err(perr(line, format!("unknown stage kind `{other}`"))),
            }
        }
        StageDecomposition::new(n, stages).map_err(|e| match e {
            Error::Singular => e,
            other => perr(last, other.to_string()),
        })
    }

    pub fn emit(&self) -> String {
        let bits = |m: &[bool]| m.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        let mut out = format!("stab {}\n", self.n);
        for s in &self.stages {
            match s {
                Stage::H(m) => {
                    let _ = writeln!(out, "stage h\n{}", bits(m));
                }
                Stage::P(m) => {
                    let _ = writeln!(out, "stage p\n{}", bits(m));
                }
                Stage::C(a) => {
                    out.push_str("stage c\n");
                    for i in 0..self.n {
                        let _ = writeln!(out, "{}", a.row_string(i));
                    }
                }
            }
        }
        out
    }
}

fn read_mask<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    n: usize,
    header_line: usize,
) -> Result<Vec<bool>> {
    match lines.next() {
        Some((_, toks)) if matches!(toks.as_slice(), [m] if m.len() == n && m.chars().all(|c| c == '0' || c == '1')) => {
            Ok(toks[0].chars().map(|c| c == '1').collect())
        }
        Some((line, _)) => Err(Error::Parse {
            line,
            reason: format!("expected a mask of {n} characters from {{0,1}}"),
        }),
        None => Err(Error::Parse {
            line: header_line + 1,
            reason: "missing stage mask".into(),
        }),
    }
}

fn masked(mask: &[bool], gate: fn(usize) -> Gate) -> Vec<Gate> {
    (0..mask.len()).filter(|&q| mask[q]).map(gate).collect()
}

/// LNN schedule: single-qubit stages go to wherever their wires currently
/// sit, linear stages are synthesized back to back on the chain.
pub fn schedule_stabilizer(d: &StageDecomposition) -> Result<ScheduledCircuit> {
    let n = d.n;
    let mut layout = Layout::identity(n);
    let mut gates = Vec::new();
    for stage in &d.stages {
        match stage {
            Stage::H(m) => gates.extend(masked(m, Gate::H).iter().map(|g| layout.place(g))),
            Stage::P(m) => gates.extend(masked(m, Gate::P).iter().map(|g| layout.place(g))),
            Stage::C(a) => {
                let r = rearrange(&gauss_jordan(&a.inverse()?)?);
                emit_linear(&mut layout, &r, &mut gates, true);
            }
        }
    }
    let c = Circuit::from_gates(n, gates)?;
    ScheduledCircuit::new(c, Architecture::lnn(n), Permutation::identity(n))
}
