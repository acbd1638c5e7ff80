mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use chainforge::bounds::{audit_circuit, depth_ratio, lower_bound, ArchClass, BoundQuery, Layering, Model, Rational64};
use chainforge::css::{css_schedule_lnn, CssSpec};
use chainforge::gf2::Gf2Matrix;
use chainforge::linsynth::{expand_to_cnot, synthesize_lnn_with, SynthOptions};
use chainforge::oracle::{column_distance, gf2_action, simulate, StateVector, EQUIV_TOL, MAX_STATE_QUBITS};
use chainforge::qasm::to_qasm;
use chainforge::qft::{qft_lnn, QftSpec};
use chainforge::schedule::route_permutation;
use chainforge::skeleton::{schedule_lnn_with, LnnOptions, SkeletonSpec};
use chainforge::stabilizer::{schedule_stabilizer, PauliTableau, StageDecomposition};
use chainforge::text::{emit_circuit, parse_circuit};
use chainforge::{Architecture, Circuit, Gate, Permutation, ScheduledCircuit};

use report::{verdict, Report};

#[derive(Parser)]
#[command(
    name = "chainforge",
    version,
    about = "Depth-optimal circuit schedules for nearest-neighbour qubit chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum Fourier transform.
    Qft {
        #[arg(long)]
        n: usize,
        /// Drop rotations CPHASE(k) with k above this threshold.
        #[arg(long)]
        approx: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// CNOT+SWAP circuit for an invertible GF(2) matrix.
    Linsynth {
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Random invertible matrix of this size.
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Rewrite SWAPs so the output holds CNOTs only.
        #[arg(long)]
        cnot_only: bool,
        #[arg(long)]
        prune_swaps: bool,
        #[command(flatten)]
        output: Output,
    },
    /// CSS encoder or syndrome circuit.
    Css {
        #[arg(long, required_unless_present = "steane", conflicts_with = "steane")]
        spec: Option<PathBuf>,
        /// Built-in Steane code syndrome circuit.
        #[arg(long)]
        steane: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Stabilizer circuit from an eleven-stage decomposition.
    Stab {
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        spec: Option<PathBuf>,
        /// Random decomposition on this many qubits.
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cnot_only: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Skeleton circuit with generic two-qubit gates.
    Skeleton {
        #[arg(long, required_unless_present = "n", conflicts_with = "n")]
        spec: Option<PathBuf>,
        /// All gates present on this many qubits.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        drop_last_swaps: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Asymptotic depth lower bound.
    Bounds {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// lnn, grid or degree:K
        #[arg(long, value_parser = parse_arch_class)]
        arch: ArchClass,
        #[arg(long)]
        n: usize,
        /// Also report this circuit's depth relative to the bound.
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, value_enum)]
        report: Option<ReportFormat>,
    },
    /// Check adjacency and the computational/SWAP stage pattern of a circuit.
    Audit {
        #[arg(long)]
        circuit: PathBuf,
        /// lnn, grid:RxC or an architecture file.
        #[arg(long, default_value = "lnn", value_parser = parse_arch)]
        arch: ArchArg,
        #[arg(long, value_enum, default_value = "staged")]
        layering: LayeringArg,
        #[arg(long, value_enum)]
        report: Option<ReportFormat>,
    },
    /// Check two circuits for equivalence.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Rename wire w of `b` to relabel[w]: identity, reversal or a comma list.
        #[arg(long, default_value = "identity")]
        relabel: String,
        /// Read logical output i of `b` from wire final_map[i] (comma list).
        #[arg(long)]
        final_map: Option<String>,
        #[arg(long, default_value_t = EQUIV_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "auto")]
        backend: Backend,
    },
    /// Depth figures of a circuit file.
    Depth {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, value_enum)]
        report: Option<ReportFormat>,
    },
}

#[derive(Args)]
struct Output {
    /// Write the circuit to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a report on stdout; the circuit then only goes to --out.
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
    /// Write OpenQASM 2.0 instead of the native format.
    #[arg(long)]
    qasm: bool,
    /// lnn, grid:RxC or an architecture file.
    #[arg(long, default_value = "lnn", value_parser = parse_arch)]
    arch: ArchArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayeringArg {
    Staged,
    Asap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Auto,
    Gf2,
    Tableau,
    Dense,
}

#[derive(Clone, Debug)]
enum ArchArg {
    Lnn,
    Grid(usize, usize),
    File(PathBuf),
}

fn parse_arch(s: &str) -> std::result::Result<ArchArg, String> {
    if s == "lnn" {
        return Ok(ArchArg::Lnn);
    }
    if let Some(dims) = s.strip_prefix("grid:") {
        let (r, c) = dims.split_once('x').ok_or("grid wants grid:RxC")?;
        let r = r.parse().map_err(|_| format!("bad row count {r:?}"))?;
        let c = c.parse().map_err(|_| format!("bad column count {c:?}"))?;
        return Ok(ArchArg::Grid(r, c));
    }
    Ok(ArchArg::File(PathBuf::from(s)))
}

fn parse_arch_class(s: &str) -> std::result::Result<ArchClass, String> {
    match s {
        "lnn" => Ok(ArchClass::Lnn),
        "grid" => Ok(ArchClass::Grid),
        _ => {
            let k = s.strip_prefix("degree:").ok_or("expected lnn, grid or degree:K")?;
            let k: u32 = k.parse().map_err(|_| format!("bad degree {k:?}"))?;
            if k < 2 {
                return Err("degree must be at least 2".into());
            }
            Ok(ArchClass::BoundedDegree(k))
        }
    }
}

impl ArchArg {
    fn resolve(&self, n: usize) -> Result<Architecture> {
        Ok(match self {
            ArchArg::Lnn => Architecture::lnn(n),
            ArchArg::Grid(r, c) => Architecture::grid(*r, *c),
            ArchArg::File(path) => Architecture::parse(&read(path)?).with_context(|| format!("{}", path.display()))?,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    parse_circuit(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn parse_list(s: &str, n: usize) -> Result<Permutation> {
    let map = match s {
        "identity" => Permutation::identity(n),
        "reversal" => Permutation::reversal(n),
        _ => {
            let v: Vec<usize> = s
                .split(',')
                .map(|t| t.trim().parse().with_context(|| format!("bad index {t:?}")))
                .collect::<Result<_>>()?;
            Permutation::new(v)?
        }
    };
    if map.len() != n {
        bail!("permutation has {} entries, circuit has {n} wires", map.len());
    }
    Ok(map)
}

fn emit(sc: ScheduledCircuit, output: &Output) -> Result<()> {
    let sc = match output.arch {
        ArchArg::Lnn => sc,
        ref other => sc.embed(&other.resolve(sc.n())?)?,
    };
    let body = if output.qasm {
        to_qasm(sc.circuit())?
    } else {
        emit_circuit(sc.circuit())
    };
    if let Some(path) = &output.out {
        fs::write(path, &body).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match output.report {
        Some(ReportFormat::Json) => println!("{}", serde_json::to_string_pretty(&Report::of(&sc))?),
        Some(ReportFormat::Text) => print!("{}", Report::of(&sc).text()),
        None if output.out.is_none() => print!("{body}"),
        None => {}
    }
    Ok(())
}

fn seeded(seed: Option<u64>) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.expect("clap enforces --seed with --random"))
}

#[derive(Serialize)]
struct BoundsReport {
    model: &'static str,
    arch: String,
    n: usize,
    coefficient: String,
    formula: String,
    leading_term: f64,
    depth: Option<usize>,
    ratio: Option<String>,
    ratio_value: Option<f64>,
}

#[derive(Serialize)]
struct AuditReport {
    pattern: String,
    l_count: usize,
    s_count: usize,
    three_one: Vec<[usize; 2]>,
    four_two: Vec<[usize; 2]>,
    compliant: bool,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Qft { n, approx, output } => {
            let spec = match approx {
                Some(m) => QftSpec::approximate(n, m)?,
                None => QftSpec::new(n)?,
            };
            emit(qft_lnn(&spec), &output)?;
        }
        Command::Linsynth {
            matrix,
            random,
            seed,
            cnot_only,
            prune_swaps,
            output,
        } => {
            let a = match (matrix, random) {
                (Some(path), _) => Gf2Matrix::parse(&read(&path)?).with_context(|| format!("{}", path.display()))?,
                (None, Some(n)) => Gf2Matrix::random_invertible(n, &mut seeded(seed)),
                (None, None) => unreachable!("clap requires one source"),
            };
            let sc = synthesize_lnn_with(&a, SynthOptions { prune_swaps })?;
            emit(if cnot_only { expand_to_cnot(&sc)? } else { sc }, &output)?;
        }
        Command::Css { spec, steane, output } => {
            let spec = match spec {
                Some(path) => CssSpec::parse(&read(&path)?).with_context(|| format!("{}", path.display()))?,
                None => {
                    debug_assert!(steane);
                    CssSpec::steane()
                }
            };
            emit(css_schedule_lnn(&spec), &output)?;
        }
        Command::Stab {
            spec,
            random,
            seed,
            cnot_only,
            output,
        } => {
            let d = match (spec, random) {
                (Some(path), _) => {
                    StageDecomposition::parse(&read(&path)?).with_context(|| format!("{}", path.display()))?
                }
                (None, Some(n)) => {
                    if n == 0 {
                        bail!("decomposition needs at least one qubit");
                    }
                    StageDecomposition::random(n, &mut seeded(seed))
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let sc = schedule_stabilizer(&d)?;
            emit(if cnot_only { expand_to_cnot(&sc)? } else { sc }, &output)?;
        }
        Command::Skeleton {
            spec,
            n,
            drop_last_swaps,
            output,
        } => {
            let spec = match (spec, n) {
                (Some(path), _) => SkeletonSpec::parse(&read(&path)?).with_context(|| format!("{}", path.display()))?,
                (None, Some(n)) => SkeletonSpec::full(n)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            emit(schedule_lnn_with(&spec, LnnOptions { drop_last_swaps }), &output)?;
        }
        Command::Bounds {
            model,
            arch,
            n,
            circuit,
            report,
        } => {
            let model = match model {
                ModelArg::A => Model::A,
                ModelArg::B => Model::B,
            };
            let q = BoundQuery::new(model, arch, n)?;
            let lb = lower_bound(&q);
            let depth = circuit.map(|p| read_circuit(&p)).transpose()?.map(|c| c.depth());
            let ratio = depth.map(|d| depth_ratio(d, &q));
            let value = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
            let rep = BoundsReport {
                model: if model == Model::A { "A" } else { "B" },
                arch: match arch {
                    ArchClass::Lnn => "lnn".into(),
                    ArchClass::Grid => "grid".into(),
                    ArchClass::BoundedDegree(k) => format!("degree:{k}"),
                },
                n,
                coefficient: lb.coefficient.to_string(),
                formula: lb.formula.clone(),
                leading_term: value(lb.coefficient) * n as f64,
                depth,
                ratio: ratio.map(|r| r.to_string()),
                ratio_value: ratio.map(value),
            };
            match report {
                Some(ReportFormat::Json) => println!("{}", serde_json::to_string_pretty(&rep)?),
                _ => {
                    println!("coefficient {}", rep.coefficient);
                    println!("formula {}", rep.formula);
                    println!("leading_term {:.3}", rep.leading_term);
                    if let (Some(d), Some(r), Some(v)) = (rep.depth, &rep.ratio, rep.ratio_value) {
                        println!("depth {d}");
                        println!("ratio {r} ({v:.4})");
                    }
                }
            }
        }
        Command::Audit {
            circuit,
            arch,
            layering,
            report,
        } => {
            let c = read_circuit(&circuit)?;
            let arch = arch.resolve(c.n_wires())?;
            arch.validate(&c)?;
            let layering = match layering {
                LayeringArg::Staged => Layering::Staged,
                LayeringArg::Asap => Layering::Asap,
            };
            let audit = audit_circuit(&c, layering);
            let windows = |v: &[std::ops::Range<usize>]| v.iter().map(|r| [r.start, r.end]).collect::<Vec<_>>();
            let rep = AuditReport {
                pattern: audit.pattern(),
                l_count: audit.l_count,
                s_count: audit.s_count,
                three_one: windows(&audit.three_one),
                four_two: windows(&audit.four_two),
                compliant: audit.is_compliant(),
            };
            match report {
                Some(ReportFormat::Json) => println!("{}", serde_json::to_string_pretty(&rep)?),
                _ => {
                    println!("adjacency {}", verdict(true, "ok", "violated"));
                    println!("stages L={} S={}", rep.l_count, rep.s_count);
                    for (name, w) in [("3L->1S", &rep.three_one), ("4L->2S", &rep.four_two)] {
                        println!("{name} {} ({} windows)", verdict(w.is_empty(), "PASS", "FAIL"), w.len());
                        for [s, e] in w {
                            println!("  stages {s}..{e}: {}", &rep.pattern[*s..*e]);
                        }
                    }
                }
            }
            if !rep.compliant {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify {
            a,
            b,
            relabel,
            final_map,
            tol,
            backend,
        } => {
            let (ca, cb) = (read_circuit(&a)?, read_circuit(&b)?);
            let n = ca.n_wires();
            if cb.n_wires() != n {
                bail!("circuits have {n} and {} wires", cb.n_wires());
            }
            let mut ca = ca;
            if let Some(map) = final_map {
                let routing = route_permutation(&parse_list(&map, n)?, &Architecture::lnn(n))?;
                ca.extend_from(routing.circuit())?;
            }
            let cb = cb.relabeled(parse_list(&relabel, n)?.as_slice())?;
            let (used, same) = equivalent(&ca, &cb, backend, tol)?;
            println!("{} ({used})", verdict(same, "equivalent", "not equivalent"));
            if !same {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Depth { circuit, report } => {
            let c = read_circuit(&circuit)?;
            let n = c.n_wires();
            let arch = if Architecture::lnn(n).validate(&c).is_ok() {
                Architecture::lnn(n)
            } else {
                Architecture::graph(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))?
            };
            let sc = ScheduledCircuit::new(c, arch, Permutation::identity(n))?;
            let rep = Report::of(&sc);
            match report {
                Some(ReportFormat::Json) => println!("{}", serde_json::to_string_pretty(&rep)?),
                _ => print!("{}", rep.text()),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn equivalent(a: &Circuit, b: &Circuit, backend: Backend, tol: f64) -> Result<(&'static str, bool)> {
    let all = |f: fn(&Gate) -> bool| a.gates().iter().chain(b.gates()).all(f);
    let linear = all(|g| matches!(g, Gate::Cnot { .. } | Gate::Swap(..)));
    let clifford = all(Gate::is_clifford);
    let backend = match backend {
        Backend::Auto if linear => Backend::Gf2,
        Backend::Auto if clifford => Backend::Tableau,
        Backend::Auto => Backend::Dense,
        other => other,
    };
    Ok(match backend {
        Backend::Gf2 => ("gf2", gf2_action(a)? == gf2_action(b)?),
        Backend::Tableau => (
            "tableau",
            PauliTableau::from_circuit(a)? == PauliTableau::from_circuit(b)?,
        ),
        _ => {
            let n = a.n_wires();
            if n > MAX_STATE_QUBITS {
                bail!("dense check is limited to {MAX_STATE_QUBITS} qubits, circuits have {n}");
            }
            let col = |c: &Circuit, x: usize| -> chainforge::Result<_> {
                Ok(simulate(c, &StateVector::basis(n, x)?)?.into_amplitudes())
            };
            ("dense", column_distance(n, |x| col(a, x), |x| col(b, x))? <= tol)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
