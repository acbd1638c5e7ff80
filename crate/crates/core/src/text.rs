//! The line-oriented circuit format.
//!
//! ```text
//! # comment
//! qubits 3
//! h 0
//! cnot 0 1
//! cphase 2 1 2
//! ```
//!
//! Gate lines are `h q`, `p q`, `cnot c t`, `cz a b`, `swap a b`,
//! `cphase k a b` and `g a b`. Emission is canonical: single spaces and one
//! newline-terminated line per directive.

use std::fmt::Write as _;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
pub(crate) fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub(crate) fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("expected a non-negative integer, found {tok:?}"),
    })
}

fn parse_gate(toks: &[&str], line: usize) -> Result<Gate> {
    let num = |t: &str| parse_num(t, line);
    let gate = match toks {
        ["h", q] => Gate::H(num(q)?),
        ["p", q] => Gate::P(num(q)?),
        ["cnot", c, t] => Gate::cnot(num(c)?, num(t)?),
        ["cz", a, b] => Gate::Cz(num(a)?, num(b)?),
        ["swap", a, b] => Gate::Swap(num(a)?, num(b)?),
        ["g", a, b] => Gate::Generic2(num(a)?, num(b)?),
        ["cphase", k, a, b] => {
            let k = u32::try_from(num(k)?).map_err(|_| Error::Parse {
                line,
                reason: "cphase parameter too large".into(),
            })?;
            Gate::cphase(k, num(a)?, num(b)?)
        }
        _ => {
            return Err(Error::Parse {
                line,
                reason: format!("unrecognised directive `{}`", toks.join(" ")),
            })
        }
    };
    Ok(gate)
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = directives(text);
    let (line, head) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing `qubits N` header".into(),
    })?;
    let n = match head.as_slice() {
        ["qubits", n] => parse_num(n, line)?,
        _ => {
            return Err(Error::Parse {
                line,
                reason: "first directive must be `qubits N`".into(),
            })
        }
    };
    if n == 0 {
        return Err(Error::Parse {
            line,
            reason: "circuit needs at least one qubit".into(),
        });
    }
    let mut c = Circuit::new(n);
    for (line, toks) in lines {
        let gate = parse_gate(&toks, line)?;
        c.push(gate).map_err(|e| Error::Parse {
            line,
            reason: e.to_string(),
        })?;
    }
    Ok(c)
}

pub fn emit_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_wires());
    for g in c.gates() {
        let _ = writeln!(out, "{g}");
    }
    out
}
