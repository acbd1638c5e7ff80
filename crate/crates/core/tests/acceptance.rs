//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Exits non-zero when a criterion fails that is not listed in
//! `KNOWN_FALSE`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chainforge::bounds::{
    audit_circuit, brute_force_min_depth, is_feasible, lower_bound, ratio_report, stage_audit, ArchClass, BoundQuery,
    Layering, Model,
};
use chainforge::css::{css_depth_report, css_flat, css_levels, css_schedule_lnn, CssGate, CssMode, CssSpec};
use chainforge::linsynth::{expand_to_cnot, synthesize_lnn};
use chainforge::oracle::{
    column_distance, dft_column, gf2_action, gf2_apply, pauli_operator, schedule_distance, schedule_gf2_action,
    simulate, unitary_equiv, DenseUnitary, StateVector,
};
use chainforge::qft::{dft_placement, qft_lnn, QftSpec};
use chainforge::skeleton::{pairs, schedule_lnn, SkeletonSpec};
use chainforge::stabilizer::{schedule_stabilizer, schedule_tableau, PauliTableau, StageDecomposition};
use chainforge::{Architecture, Circuit, Gate, Permutation, ScheduledCircuit};

const SEED: u64 = 0x5eed;

/// Max-entry error for dense comparisons of scheduled circuits.
const DENSE_TOL: f64 = 1e-10;
/// Tolerance for the two-gate identity.
const MERGE_TOL: f64 = 1e-12;
/// Exact tableau rows are compared; this bounds the dense side.
const PAULI_TOL: f64 = 1e-12;
/// `depth = 4n + QFT_OFFSET` for every n >= 3.
const QFT_OFFSET: i64 = -4;
/// CNOT depth of expanded linear synthesis is at most `18n + LIN_CNOT_OFFSET`.
const LIN_CNOT_OFFSET: i64 = -27;
/// Stabilizer generic depth at most `30n + STAB_OFFSET`, expanded at most
/// `90n + STAB_CNOT_OFFSET`.
const STAB_OFFSET: i64 = -39;
const STAB_CNOT_OFFSET: i64 = -129;
/// Relative distance of the n = 60 ratio from 6/5.
const RATIO_REL_TOL: f64 = 0.05;

/// Criteria whose literal statement does not hold; see the detail line.
const KNOWN_FALSE: &[usize] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c1_qft_correctness() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=9 {
        let sc = qft_lnn(&QftSpec::new(n).unwrap());
        if sc.arch().validate(sc.circuit()).is_err() {
            return outcome(false, format!("n = {n}: schedule not LNN-valid"));
        }
        // Input bit i enters on site input[i]; output bit i is read on site output[i].
        let (input, output) = dft_placement(&sc);
        let d = column_distance(
            n,
            |l| Ok(dft_column(n, l)),
            |l| {
                let x: usize = (0..n).filter(|&i| l >> i & 1 == 1).map(|i| 1 << input[i]).sum();
                let out = simulate(sc.circuit(), &StateVector::basis(n, x)?)?;
                Ok(out.permute_wires(&output.inverse()).into_amplitudes())
            },
        )
        .unwrap();
        worst = worst.max(d);
    }
    outcome(worst <= DENSE_TOL, format!("n = 1..9, max entry error {worst:.1e}"))
}

fn c2_qft_depth() -> Outcome {
    let mut offsets = std::collections::BTreeSet::new();
    for n in 3..=64 {
        let sc = qft_lnn(&QftSpec::new(n).unwrap());
        let layers = sc.circuit().two_qubit_layer_count();
        if layers != 4 * n - 6 {
            return outcome(false, format!("n = {n}: {layers} two-qubit layers"));
        }
        offsets.insert(sc.depth() as i64 - 4 * n as i64);
    }
    let ok = offsets.len() == 1 && offsets.contains(&QFT_OFFSET);
    outcome(
        ok,
        format!("two-qubit layers = 4n-6 for n = 3..64; depth - 4n in {offsets:?}"),
    )
}

/// Shared instances for criteria 3 and 4.
fn linear_instances() -> Vec<(usize, chainforge::Gf2Matrix, ScheduledCircuit)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for n in [2, 4, 8, 16, 32] {
        for _ in 0..1000 {
            let a = chainforge::Gf2Matrix::random_invertible(n, &mut rng);
            let sc = synthesize_lnn(&a).unwrap();
            out.push((n, a, sc));
        }
    }
    out
}

fn c3_linear_correctness(inst: &[(usize, chainforge::Gf2Matrix, ScheduledCircuit)]) -> Outcome {
    for (n, a, sc) in inst {
        if sc.arch().validate(sc.circuit()).is_err() {
            return outcome(false, format!("n = {n}: adjacency violated"));
        }
        if schedule_gf2_action(sc).unwrap() != *a {
            return outcome(false, format!("n = {n}: wrong GF(2) action"));
        }
    }
    outcome(
        true,
        format!("{} matrices, n in {{2,4,8,16,32}}, bit-exact", inst.len()),
    )
}

fn c4_linear_depth(inst: &[(usize, chainforge::Gf2Matrix, ScheduledCircuit)]) -> Outcome {
    let mut worst_generic = i64::MIN;
    let mut worst_cnot = i64::MIN;
    for (n, _, sc) in inst {
        let n = *n as i64;
        worst_generic = worst_generic.max(sc.generic_depth() as i64 - 3 * (2 * n - 3));
        let cx = expand_to_cnot(sc).unwrap();
        if schedule_gf2_action(&cx).unwrap() != schedule_gf2_action(sc).unwrap() {
            return outcome(false, "CNOT expansion changed the action");
        }
        worst_cnot = worst_cnot.max(cx.depth() as i64 - 18 * n);
    }
    outcome(
        worst_generic <= 0 && worst_cnot <= LIN_CNOT_OFFSET,
        format!(
            "max(generic - 3(2n-3)) = {worst_generic}, max(cnot depth - 18n) = {worst_cnot} (pinned {LIN_CNOT_OFFSET})"
        ),
    )
}

fn c5_swap_cnot_merge() -> Outcome {
    let c = |gates: &[Gate]| Circuit::from_gates(2, gates.iter().copied()).unwrap();
    let id = Permutation::identity(2);
    let swap = Permutation::new(vec![1, 0]).unwrap();
    let pair = c(&[Gate::cnot(0, 1), Gate::Swap(0, 1)]);
    let literal = c(&[Gate::cnot(0, 1), Gate::cnot(1, 0)]);
    let fig = c(&[Gate::cnot(1, 0), Gate::cnot(0, 1)]);
    let literal_holds = unitary_equiv(&pair, &literal, &id, MERGE_TOL).unwrap();
    let fig_holds = unitary_equiv(&pair, &fig, &id, MERGE_TOL).unwrap();
    // The literal pair matches once its wires are exchanged, which is the same statement.
    let literal_relabeled = unitary_equiv(&pair, &literal, &swap, MERGE_TOL).unwrap();
    let gf2_relabeled = gf2_action(&pair).unwrap() == gf2_action(&literal.relabeled(swap.as_slice()).unwrap()).unwrap();
    let gf2_fig = gf2_action(&pair).unwrap() == gf2_action(&fig).unwrap();
    let detail = format!(
        "[CNOT(0,1),SWAP] vs [CNOT(0,1),CNOT(1,0)] identity relabel: {literal_holds}; \
         vs [CNOT(1,0),CNOT(0,1)]: {fig_holds}; literal with wires exchanged: {literal_relabeled}; \
         GF(2) with exchange: {gf2_relabeled}, GF(2) two-CNOT form: {gf2_fig}"
    );
    outcome(literal_holds && gf2_relabeled, detail)
}

fn c6_stabilizer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut worst = i64::MIN;
    let mut worst_cx = i64::MIN;
    for n in 2..=8usize {
        for _ in 0..200 {
            let d = StageDecomposition::random(n, &mut rng);
            let sc = schedule_stabilizer(&d).unwrap();
            let flat = PauliTableau::from_circuit(&d.flat_reference()).unwrap();
            if schedule_tableau(&sc).unwrap() != flat {
                return outcome(false, format!("n = {n}: tableau mismatch"));
            }
            let cx = expand_to_cnot(&sc).unwrap();
            if schedule_tableau(&cx).unwrap() != flat {
                return outcome(false, format!("n = {n}: expansion changed the tableau"));
            }
            worst = worst.max(sc.generic_depth() as i64 - 30 * n as i64);
            worst_cx = worst_cx.max(cx.depth() as i64 - 90 * n as i64);
        }
    }
    outcome(
        worst <= STAB_OFFSET && worst_cx <= STAB_CNOT_OFFSET,
        format!(
            "1400 decompositions; max(generic - 30n) = {worst} (pinned {STAB_OFFSET}), \
             max(expanded - 90n) = {worst_cx} (pinned {STAB_CNOT_OFFSET})"
        ),
    )
}

fn c7_css_depths() -> Outcome {
    for s in 1..=16 {
        for t in 1..=16 {
            let enc = css_depth_report(&CssSpec::full(CssMode::Encode, s, t, CssGate::Cnot).unwrap());
            if enc.generic_depth > s + t + 1 {
                return outcome(false, format!("ENCODE s={s} t={t}: {}", enc.generic_depth));
            }
            let syn = css_depth_report(&CssSpec::full(CssMode::Syndrome, s, t, CssGate::Cnot).unwrap());
            if syn.generic_depth > s + t - 1 {
                return outcome(false, format!("SYNDROME s={s} t={t}: {}", syn.generic_depth));
            }
        }
    }
    let level3 = css_levels(&CssSpec::full(CssMode::Encode, 3, 4, CssGate::Cnot).unwrap())[2].clone();
    // b is control 3, c_j is target j - 1.
    let expected = vec![(3, 1), (2, 2), (1, 3)];
    let steane = css_depth_report(&CssSpec::steane());
    let ok = level3 == expected && steane.generic_depth == 12 && steane.gate_level_depth <= 26;
    outcome(
        ok,
        format!(
            "bounds hold for s,t in 1..16; level 3 = {level3:?}; Steane generic {} unmerged {}",
            steane.generic_depth, steane.gate_level_depth
        ),
    )
}

fn c8_css_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut worst = 0.0f64;
    let mut count = 0;
    for s in 1..=8 {
        for t in 1..=8 {
            if s + t + 1 > 10 {
                continue;
            }
            for mode in [CssMode::Encode, CssMode::Syndrome] {
                for _ in 0..3 {
                    let spec = CssSpec::random(mode, s, t, &mut rng).unwrap();
                    let sc = css_schedule_lnn(&spec);
                    worst = worst.max(schedule_distance(&sc, &css_flat(&spec)).unwrap());
                    count += 1;
                }
            }
        }
    }
    // Negative control: one CNOT removed from the reference must be caught.
    let spec = CssSpec::full(CssMode::Encode, 3, 4, CssGate::Cnot).unwrap();
    let mut dropped = false;
    let broken = css_flat(&spec).filtered(|g| {
        let hit = !dropped && matches!(g, Gate::Cnot { .. });
        dropped |= hit;
        !hit
    });
    let control = schedule_distance(&css_schedule_lnn(&spec), &broken).unwrap();
    outcome(
        worst <= DENSE_TOL && control > 0.1,
        format!("{count} random specs, max entry error {worst:.1e}; broken reference at {control:.2}"),
    )
}

fn c9_bounds() -> Outcome {
    let r = Rational64::new;
    let q = |m, a| BoundQuery::new(m, a, 100).unwrap();
    let mut table = vec![
        (q(Model::A, ArchClass::Lnn), r(10, 3)),
        (q(Model::B, ArchClass::Lnn), r(3, 2)),
        (q(Model::A, ArchClass::Grid), r(3, 1)),
        (q(Model::B, ArchClass::Grid), r(5, 4)),
    ];
    for k in 2..=12 {
        table.push((q(Model::A, ArchClass::BoundedDegree(k)), r(2, 1) + r(2, k as i64)));
        table.push((q(Model::B, ArchClass::BoundedDegree(k)), r(1, 1) + r(1, k as i64)));
    }
    let exact = table
        .iter()
        .all(|(query, want)| lower_bound(query).coefficient == *want);
    let sc = schedule_lnn(&SkeletonSpec::full(60).unwrap());
    let ratio = ratio_report(&sc, &BoundQuery::new(Model::A, ArchClass::Lnn, 60).unwrap());
    let value = *ratio.numer() as f64 / *ratio.denom() as f64;
    let rel = (value - 1.2).abs() / 1.2;
    outcome(
        exact && rel <= RATIO_REL_TOL,
        format!(
            "table exact: {exact}; n = 60 ratio {ratio} = {value:.4}, {:.2}% from 6/5",
            rel * 100.0
        ),
    )
}

fn c10_audits(inst: &[(usize, chainforge::Gf2Matrix, ScheduledCircuit)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut schedules: Vec<(String, ScheduledCircuit)> = Vec::new();
    for n in 2..=32 {
        schedules.push((format!("skeleton {n}"), schedule_lnn(&SkeletonSpec::full(n).unwrap())));
        let mut sparse = SkeletonSpec::full(n).unwrap();
        for (a, b) in pairs(n) {
            sparse.set_present(a, b, rng.gen_bool(0.5));
        }
        schedules.push((format!("sparse skeleton {n}"), schedule_lnn(&sparse)));
        schedules.push((format!("qft {n}"), qft_lnn(&QftSpec::new(n).unwrap())));
        schedules.push((
            format!("aqft {n}"),
            qft_lnn(&QftSpec::approximate(n, 3.min(n as u32)).unwrap()),
        ));
    }
    for (n, _, sc) in inst.iter().step_by(10) {
        schedules.push((format!("linsynth {n}"), sc.clone()));
        schedules.push((format!("linsynth pruned {n}"), sc.prune_trailing_swaps()));
    }
    for n in 1..=8 {
        for _ in 0..20 {
            schedules.push((
                format!("stab {n}"),
                schedule_stabilizer(&StageDecomposition::random(n, &mut rng)).unwrap(),
            ));
        }
    }
    for s in 1..=10 {
        for t in 1..=10 {
            for mode in [CssMode::Encode, CssMode::Syndrome] {
                let spec = CssSpec::random(mode, s, t, &mut rng).unwrap();
                schedules.push((format!("css {s},{t}"), css_schedule_lnn(&spec)));
            }
        }
    }
    schedules.push(("steane".into(), css_schedule_lnn(&CssSpec::steane())));
    for (name, sc) in &schedules {
        if sc.arch().validate(sc.circuit()).is_err() {
            return outcome(false, format!("{name}: adjacency violated"));
        }
        let audit = stage_audit(sc);
        if !audit.is_compliant() {
            return outcome(false, format!("{name}: {}", audit.pattern()));
        }
    }
    let stripped = qft_lnn(&QftSpec::new(8).unwrap()).circuit().filtered(|g| !g.is_swap());
    let bad = audit_circuit(&stripped, Layering::Staged);
    let flagged = !bad.three_one.is_empty() && !bad.four_two.is_empty();
    outcome(
        flagged,
        format!(
            "{} schedules compliant; stripped QFT(8) flagged with {} + {} windows",
            schedules.len(),
            bad.three_one.len(),
            bad.four_two.len()
        ),
    )
}

fn c11_brute_force() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 3..=5 {
        let arch = Architecture::lnn(n);
        let a = brute_force_min_depth(Model::A, &arch).unwrap();
        let b = brute_force_min_depth(Model::B, &arch).unwrap();
        let sc = schedule_lnn(&SkeletonSpec::full(n).unwrap());
        ok &= 2 * n - 3 <= b && b <= a && a <= 4 * n - 6;
        ok &= sc.depth() == 4 * n - 6 && is_feasible(&sc, Model::A);
        rows.push(format!("n={n}: B={b} A={a}"));
    }
    outcome(
        ok,
        format!("{}; explicit 4n-6 schedule feasible in model A", rows.join(", ")),
    )
}

fn c12_cross_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    for i in 0..500 {
        let n = rng.gen_range(2..=10);
        let gates: Vec<Gate> = (0..rng.gen_range(0..60))
            .map(|_| {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                if rng.gen_bool(0.7) {
                    Gate::cnot(a, b)
                } else {
                    Gate::Swap(a, b)
                }
            })
            .collect();
        let c = Circuit::from_gates(n, gates).unwrap();
        for _ in 0..8 {
            let x = rng.gen_range(0..1usize << n);
            let bits: Vec<bool> = (0..n).map(|q| x >> q & 1 == 1).collect();
            let y: usize = gf2_apply(&c, &bits)
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(q, _)| 1 << q)
                .sum();
            let out = simulate(&c, &StateVector::basis(n, x).unwrap()).unwrap();
            let hit = out.amplitudes().iter().enumerate().all(|(z, amp)| {
                let want = if z == y {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                (amp - want).norm() < PAULI_TOL
            });
            if !hit {
                return outcome(false, format!("linear circuit {i}: simulators disagree"));
            }
        }
    }
    let mut single = 0;
    for n in 1..=3 {
        for a in 0..n {
            let mut gates = vec![Gate::H(a), Gate::P(a)];
            for b in (0..n).filter(|&b| b != a) {
                gates.extend([
                    Gate::cnot(a, b),
                    Gate::Cz(a, b),
                    Gate::Swap(a, b),
                    Gate::cphase(1, a, b),
                ]);
            }
            for g in gates {
                if !tableau_matches_dense(&Circuit::from_gates(n, [g]).unwrap()) {
                    return outcome(false, format!("{g} on {n} wires"));
                }
                single += 1;
            }
        }
    }
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let gates: Vec<Gate> = (0..rng.gen_range(0..40))
            .map(|_| {
                let a = rng.gen_range(0..n);
                let b = if n > 1 { (a + rng.gen_range(1..n)) % n } else { a };
                match rng.gen_range(0..if n > 1 { 5 } else { 2 }) {
                    0 => Gate::H(a),
                    1 => Gate::P(a),
                    2 => Gate::cnot(a, b),
                    3 => Gate::Cz(a, b),
                    _ => Gate::Swap(a, b),
                }
            })
            .collect();
        if !tableau_matches_dense(&Circuit::from_gates(n, gates).unwrap()) {
            return outcome(false, format!("random Clifford {i}: tableau and dense disagree"));
        }
    }
    outcome(
        true,
        format!("500 CNOT/SWAP circuits; {single} single gates and 100 random Cliffords"),
    )
}

/// Every tableau row must equal `U P U^dagger` for its generator, signs included.
fn tableau_matches_dense(c: &Circuit) -> bool {
    let n = c.n_wires();
    let t = PauliTableau::from_circuit(c).unwrap();
    let u = DenseUnitary::from_circuit(c).unwrap();
    (0..2 * n).all(|row| {
        let q = row % n;
        let gx: Vec<bool> = (0..n).map(|i| row < n && i == q).collect();
        let gz: Vec<bool> = (0..n).map(|i| row >= n && i == q).collect();
        let lhs = u.mul(&pauli_operator(&gx, &gz, false).unwrap()).mul(&u.adjoint());
        let (x, z, sign) = t.row(row);
        let rhs = pauli_operator(&x, &z, sign).unwrap();
        (0..lhs.dim()).all(|i| (0..lhs.dim()).all(|j| (lhs.get(i, j) - rhs.get(i, j)).norm() < PAULI_TOL))
    })
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome, Duration, Duration)> = Vec::new();
    let mut timed = |id, name, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((id, name, o, start.elapsed(), Duration::from_secs(limit)));
    };
    timed(1, "QFT correctness", 30, &mut c1_qft_correctness);
    timed(2, "QFT depth", 5, &mut c2_qft_depth);
    let start = Instant::now();
    let inst = linear_instances();
    let build = start.elapsed();
    timed(3, "linear synthesis correctness", 60, &mut || {
        let mut o = c3_linear_correctness(&inst);
        o.detail.push_str(&format!(", synthesis {:.2} s", build.as_secs_f64()));
        o
    });
    timed(4, "linear synthesis depth", 60, &mut || c4_linear_depth(&inst));
    timed(5, "SWAP-CNOT merge", 1, &mut c5_swap_cnot_merge);
    timed(6, "stabilizer staging", 120, &mut c6_stabilizer);
    timed(7, "CSS depths", 10, &mut c7_css_depths);
    timed(8, "CSS equivalence", 60, &mut c8_css_equivalence);
    timed(9, "lower bounds", 5, &mut c9_bounds);
    timed(10, "stage audits", 30, &mut || c10_audits(&inst));
    timed(11, "tiny-n brute force", 60, &mut c11_brute_force);
    timed(12, "cross-oracle consistency", 30, &mut c12_cross_oracles);

    let mut unexpected = 0;
    for (id, name, o, took, limit) in &results {
        let in_time = took <= limit;
        let pass = o.pass && in_time;
        let note = if !pass && KNOWN_FALSE.contains(id) {
            " [literal claim does not hold]"
        } else {
            ""
        };
        println!(
            "{} criterion {id:>2} {name}: {} ({:.2} s, limit {} s){note}",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !pass && !KNOWN_FALSE.contains(id) {
            unexpected += 1;
        }
        if pass && KNOWN_FALSE.contains(id) {
            println!("     criterion {id} now passes; remove it from KNOWN_FALSE");
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
