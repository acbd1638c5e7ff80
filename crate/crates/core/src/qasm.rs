//! One-way export to OpenQASM 2.0 with the `qelib1.inc` gate set.

use std::fmt::Write as _;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;

/// `pi / 2^(k-1)`, the angle of `CPHASE(k)`.
fn angle(k: u32) -> String {
    match k {
        1 => "pi".to_string(),
        2..=64 => format!("pi/{}", 1u128 << (k - 1)),
        _ => format!("pi/2^{}", k - 1),
    }
}

/// Fails with [`Error::UnsupportedGate`] on `Generic2`, which has no matrix.
pub fn to_qasm(c: &Circuit) -> Result<String> {
    let mut out = format!("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{}];\n", c.n_wires());
    for g in c.gates() {
        let _ = match *g {
            Gate::H(a) => writeln!(out, "h q[{a}];"),
            Gate::P(a) => writeln!(out, "s q[{a}];"),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Cz(a, b) => writeln!(out, "cz q[{a}],q[{b}];"),
            Gate::Cphase { k, a, b } => writeln!(out, "cu1({}) q[{a}],q[{b}];", angle(k)),
            Gate::Swap(a, b) => writeln!(out, "swap q[{a}],q[{b}];"),
            Gate::Generic2(..) => return Err(Error::UnsupportedGate(*g)),
        };
    }
    Ok(out)
}
