use std::io::IsTerminal;

use serde::Serialize;

use chainforge::bounds::stage_audit;
use chainforge::linsynth::expand_to_cnot;
use chainforge::ScheduledCircuit;

/// Machine-readable summary of a schedule. Field names are stable.
#[derive(Debug, Serialize)]
pub struct Report {
    pub n: usize,
    pub gates: usize,
    pub depth: usize,
    pub generic_depth: usize,
    pub two_qubit_layers: usize,
    /// Depth once SWAPs are rewritten as CNOTs; `null` when the circuit has
    /// other two-qubit gates.
    pub cnot_depth: Option<usize>,
    pub initial_map: Vec<usize>,
    pub final_map: Vec<usize>,
    /// Windows breaking either stage requirement.
    pub violations: usize,
}

impl Report {
    pub fn of(sc: &ScheduledCircuit) -> Report {
        let c = sc.circuit();
        let audit = stage_audit(sc);
        Report {
            n: sc.n(),
            gates: c.len(),
            depth: sc.depth(),
            generic_depth: sc.generic_depth(),
            two_qubit_layers: c.two_qubit_layer_count(),
            cnot_depth: expand_to_cnot(sc).ok().map(|x| x.depth()),
            initial_map: sc.initial_map().as_slice().to_vec(),
            final_map: sc.final_map().as_slice().to_vec(),
            violations: audit.three_one.len() + audit.four_two.len(),
        }
    }

    pub fn text(&self) -> String {
        let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let cnot = self.cnot_depth.map_or("-".to_string(), |d| d.to_string());
        format!(
            "n {}\ngates {}\ndepth {}\ngeneric_depth {}\ntwo_qubit_layers {}\ncnot_depth {}\ninitial_map {}\nfinal_map {}\nviolations {}\n",
            self.n,
            self.gates,
            self.depth,
            self.generic_depth,
            self.two_qubit_layers,
            cnot,
            list(&self.initial_map),
            list(&self.final_map),
            self.violations
        )
    }
}

/// `CHAINFORGE_COLOR=0|1` overrides terminal detection.
pub fn use_color() -> bool {
    match std::env::var("CHAINFORGE_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => std::io::stdout().is_terminal(),
    }
}

pub fn verdict(ok: bool, yes: &str, no: &str) -> String {
    let word = if ok { yes } else { no };
    match (use_color(), ok) {
        (false, _) => word.to_string(),
        (true, true) => format!("\x1b[32m{word}\x1b[0m"),
        (true, false) => format!("\x1b[31m{word}\x1b[0m"),
    }
}
