//! `pbv`: translate parametric bit-vector problems to UFNIA, check the
//! translation against the brute-force oracle, generate invertibility
//! goal batches, and drive an external solver over them.

mod report;
mod solver;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pbv::ast::{parse_pbv, AxiomMode};
use pbv::goals::{self, Goal};
use pbv::oracle::{self, AxiomCheckConfig};
use pbv::sortcheck::eliminate_extract;
use pbv::translate::{self, to_smtlib, AssertStyle, TranslateOptions};
use report::{BatchReport, GoalResult, GoalStatus, Manifest, ManifestGoal, SCHEMA_VERSION};
use solver::SolverConfig;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Exit codes: 0 success, 1 check failure, 2 usage or input errors.
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "pbv",
    version,
    about = "parametric bit-vector to UFNIA translator"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Translate a .pbv problem to an SMT-LIB 2 (UFNIA) file.
    Translate(TranslateArgs),
    /// Run the brute-force oracle suites.
    Check(CheckArgs),
    /// Generate invertibility-condition goal batches.
    GenIc(GenIcArgs),
    /// Run an external solver over a goal batch and report.
    Prove(ProveArgs),
}

#[derive(Args)]
struct TranslateArgs {
    input: PathBuf,
    /// Axiomatization mode: full, partial, combined, or qf.
    #[arg(long, default_value = "combined")]
    mode: AxiomMode,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the verbatim urem-by-zero branch pow2(k)-1 instead of SMT-LIB's x.
    #[arg(long)]
    fig1_urem: bool,
    /// Assert prelude-and-body positively instead of the negated implication.
    #[arg(long)]
    sat: bool,
    /// Read the input as a fixed-width SMT-LIB 2 problem and lift it to a
    /// symbolic width first.
    #[arg(long)]
    lift: bool,
    /// With --lift, keep width-1 terms at concrete width 1 (Boolean reading)
    /// instead of rejecting a second width.
    #[arg(long, requires = "lift")]
    bool1: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// A .pbv problem whose translation to check against the oracle.
    input: Option<PathBuf>,
    /// Check the axiom blocks of this mode under the intended semantics.
    #[arg(long)]
    axioms: Option<AxiomMode>,
    /// Check the unsigned-interpretation lemma suite.
    #[arg(long)]
    lemmas: bool,
    /// Check every built-in conditional inverse exhaustively.
    #[arg(long)]
    inverses: bool,
    /// Supply the inverse/condition table instead of the built-ins.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Width bound for exhaustive checks.
    #[arg(long, default_value_t = 4)]
    widths: u32,
    /// Total-bits budget per width valuation.
    #[arg(long, default_value_t = 16)]
    bits: u32,
    /// Width bound for axiom/lemma instance enumeration.
    #[arg(long, default_value_t = 6)]
    kmax: u32,
    /// Additionally sample the inverses at these widths (comma separated).
    #[arg(long, value_delimiter = ',')]
    sample_widths: Vec<u32>,
    /// Samples per width for --sample-widths.
    #[arg(long, default_value_t = 256)]
    samples: u32,
    /// Deterministic seed for sampling.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    fig1_urem: bool,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenIcArgs {
    /// Use the built-in entries (known conditions, unconditional slots,
    /// and the bundled inverse tables).
    #[arg(long)]
    builtin: bool,
    /// Load entries from an .ic table instead.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Output directory for goal files and the manifest.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "combined")]
    mode: AxiomMode,
    #[arg(long)]
    fig1_urem: bool,
}

#[derive(Args)]
struct ProveArgs {
    /// Directory containing manifest.json from gen-ic.
    goals: PathBuf,
    /// Solver configuration (JSON); PBV_SOLVER=<binary> also works.
    #[arg(long)]
    solver: Option<PathBuf>,
    #[arg(long, default_value = "combined")]
    mode: AxiomMode,
    /// Parallel solver invocations.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Override the solver timeout in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Zero the wall-clock fields for byte-stable reports.
    #[arg(long)]
    no_timing: bool,
    /// Write the JSON report here (stdout gets the text rendering).
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    fig1_urem: bool,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::Translate(args) => cmd_translate(args),
        Cmd::Check(args) => cmd_check(args),
        Cmd::GenIc(args) => cmd_gen_ic(args),
        Cmd::Prove(args) => cmd_prove(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}

fn load_problem(path: &Path) -> Result<(pbv::ast::ParamFormula, pbv::ast::WidthMap)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (formula, omega) = parse_pbv(&text)?;
    Ok((formula, omega))
}

fn cmd_translate(args: TranslateArgs) -> Result<i32> {
    let (formula, omega) = if args.lift {
        let text = std::fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))?;
        let (formula, omega, _) =
            goals::lift_qfbv(&text, goals::LiftOptions { allow_width1: args.bool1 })?;
        (formula, omega)
    } else {
        load_problem(&args.input)?
    };
    let (formula, omega) = eliminate_extract(&formula, &omega)?;
    let opts = TranslateOptions {
        mode: args.mode,
        fig1_urem: args.fig1_urem,
    };
    let result = translate::translate(&formula, &omega, opts)?;
    let style = if args.sat {
        AssertStyle::Satisfiability
    } else {
        AssertStyle::Validity
    };
    let text = to_smtlib(&result, &omega, style);
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    if let Some(mode) = args.axioms {
        let cfg = AxiomCheckConfig {
            k_max: args.kmax,
            ..AxiomCheckConfig::default()
        };
        let report = oracle::check_axiom_validity(mode, cfg)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&report)?);
        } else {
            print!("{report}");
        }
        return Ok(if report.passed() {
            0
        } else {
            EXIT_CHECK_FAILED
        });
    }
    if args.lemmas {
        let report = oracle::check_lemma_suite(args.kmax.min(6));
        if args.json {
            println!("{}", serde_json::to_string_pretty(&report)?);
        } else {
            print!("{report}");
        }
        return Ok(if report.passed() {
            0
        } else {
            EXIT_CHECK_FAILED
        });
    }
    if args.inverses {
        let entries = match &args.table {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                goals::load_ic_table(&text)?
            }
            None => goals::builtin_ic_entries(),
        };
        #[derive(serde::Serialize)]
        struct InverseReport {
            width_bound: u32,
            checked: usize,
            failures: Vec<serde_json::Value>,
        }
        let mut report =
            InverseReport { width_bound: args.widths, checked: 0, failures: Vec::new() };
        for entry in &entries {
            if entry.inverse.is_none() {
                continue;
            }
            report.checked += 1;
            let verdict = goals::check_inverse(entry, args.widths)?;
            if let goals::InverseVerdict::Fail { witness } = &verdict {
                report.failures.push(serde_json::json!({
                    "slot": entry.slot_name(),
                    "witness": witness,
                }));
            }
            if !args.sample_widths.is_empty() {
                let sampled = goals::check_inverse_sampled(
                    entry,
                    &args.sample_widths,
                    args.samples,
                    args.seed,
                )?;
                if let goals::InverseVerdict::Fail { witness } = sampled {
                    report.failures.push(serde_json::json!({
                        "slot": entry.slot_name(),
                        "sampled": true,
                        "witness": witness,
                    }));
                }
            }
        }
        let failed = report.failures.len();
        if args.json {
            println!("{}", serde_json::to_string_pretty(&report)?);
        } else {
            for failure in &report.failures {
                println!("FAIL {failure}");
            }
            println!(
                "inverse verification: {} inverse(s) at widths 1..={}, {failed} failure(s)",
                report.checked, args.widths
            );
        }
        return Ok(if failed == 0 { 0 } else { EXIT_CHECK_FAILED });
    }
    let input = args.input.as_ref().ok_or_else(|| {
        anyhow!("check needs an input file or one of --axioms/--lemmas/--inverses")
    })?;
    let (formula, omega) = load_problem(input)?;
    let (formula, omega) = eliminate_extract(&formula, &omega)?;
    let opts = TranslateOptions {
        fig1_urem: args.fig1_urem,
        ..Default::default()
    };
    let report = oracle::check_translation_equiv(&formula, &omega, opts, args.widths, args.bits)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{report}");
    }
    Ok(if report.passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn translate_goal(goal: &Goal, mode: AxiomMode, fig1_urem: bool) -> Result<String> {
    let opts = TranslateOptions { mode, fig1_urem };
    let result = translate::translate(&goal.formula, &goal.omega, opts)
        .with_context(|| format!("translating goal {}", goal.id))?;
    Ok(to_smtlib(&result, &goal.omega, AssertStyle::Validity))
}

fn cmd_gen_ic(args: GenIcArgs) -> Result<i32> {
    let entries = match (&args.table, args.builtin) {
        (Some(_), true) => bail!("--builtin and --table are mutually exclusive"),
        (Some(path), false) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            goals::load_ic_table(&text)?
        }
        (None, true) => goals::builtin_ic_entries(),
        (None, false) => bail!("one of --builtin or --table is required"),
    };
    let grid = goals::GridReport::for_entries(&entries);
    let goal_list = goals::gen_ic_goals(&entries);
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let mut manifest_goals = Vec::with_capacity(goal_list.len());
    for goal in &goal_list {
        let pbv_name = format!("{}.pbv", goal.id);
        let smt_name = format!("{}.smt2", goal.id);
        std::fs::write(args.out.join(&pbv_name), goal.to_pbv())?;
        let smt = translate_goal(goal, args.mode, args.fig1_urem)?;
        std::fs::write(args.out.join(&smt_name), smt)?;
        manifest_goals.push(ManifestGoal {
            id: goal.id.clone(),
            kind: report::kind_str(goal.kind).to_string(),
            file: smt_name,
            pbv_file: pbv_name,
            expected: report::expected_str(goal.expected).to_string(),
            provenance: goal.provenance.clone(),
        });
    }
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        generator: "gen-ic".to_string(),
        mode: args.mode,
        grid: Some(grid),
        goals: manifest_goals,
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(args.out.join("manifest.json"), format!("{manifest_json}\n"))?;
    let grid = manifest.grid.as_ref().unwrap();
    println!(
        "wrote {} goal(s) for {} slot(s) ({} with explicit conditions, {} unconditional, {} with inverses) to {}",
        manifest.goals.len(),
        grid.slots,
        grid.with_explicit_condition,
        grid.top_conditions,
        grid.with_inverse,
        args.out.display()
    );
    Ok(0)
}

fn cmd_prove(args: ProveArgs) -> Result<i32> {
    let manifest_path = args.goals.join("manifest.json");
    let manifest_text = std::fs::read_to_string(&manifest_path)
        .with_context(|| format!("reading {}", manifest_path.display()))?;
    let manifest: Manifest = serde_json::from_str(&manifest_text)
        .with_context(|| format!("parsing {}", manifest_path.display()))?;

    let mut config = match &args.solver {
        Some(path) => SolverConfig::load(path)?,
        None => match std::env::var_os("PBV_SOLVER") {
            Some(binary) => SolverConfig::from_binary(PathBuf::from(binary)),
            None => bail!("no solver configured: pass --solver or set PBV_SOLVER"),
        },
    };
    // PBV_SOLVER overrides the configured binary path.
    if args.solver.is_some() {
        if let Some(binary) = std::env::var_os("PBV_SOLVER") {
            config.binary = PathBuf::from(binary);
        }
    }
    if let Some(timeout) = args.timeout {
        config.timeout_secs = timeout;
    }
    config.validate()?;

    // Translate each goal for the requested mode (the shipped files are
    // reused when they were generated under the same mode).
    let work_dir = args.goals.join(format!("translated-{}", args.mode));
    if manifest.mode != args.mode {
        std::fs::create_dir_all(&work_dir)?;
    }
    let mut inputs: Vec<(usize, PathBuf)> = Vec::with_capacity(manifest.goals.len());
    for (index, goal) in manifest.goals.iter().enumerate() {
        let path = if manifest.mode == args.mode {
            args.goals.join(&goal.file)
        } else {
            let pbv_path = args.goals.join(&goal.pbv_file);
            let text = std::fs::read_to_string(&pbv_path)
                .with_context(|| format!("reading {}", pbv_path.display()))?;
            let (formula, omega) = parse_pbv(&text)?;
            let opts = TranslateOptions {
                mode: args.mode,
                fig1_urem: args.fig1_urem,
            };
            let result = translate::translate(&formula, &omega, opts)?;
            let smt = to_smtlib(&result, &omega, AssertStyle::Validity);
            let path = work_dir.join(&goal.file);
            std::fs::write(&path, smt)?;
            path
        };
        inputs.push((index, path));
    }

    // A bounded worker pool over the goal list; results keep manifest order.
    let jobs = args.jobs.max(1);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<GoalResult>>> = Mutex::new(vec![None; manifest.goals.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(inputs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= inputs.len() {
                    break;
                }
                let (index, path) = &inputs[i];
                let goal = &manifest.goals[*index];
                let run = solver::run_solver(&config, path);
                let result = GoalResult {
                    id: goal.id.clone(),
                    kind: goal.kind.clone(),
                    expected: goal.expected.clone(),
                    status: GoalStatus::from_answer(run.answer),
                    answer: run.detail,
                    wall_ms: if args.no_timing {
                        0
                    } else {
                        run.wall.as_millis() as u64
                    },
                };
                results.lock().unwrap()[*index] = Some(result);
            });
        }
    });
    let goal_results: Vec<GoalResult> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every goal produced a result"))
        .collect();
    let report = BatchReport::new(args.mode, goal_results);
    print!("{}", report.to_text());
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let contradicted = report.goals.iter().any(|g| {
        g.expected == "valid" && matches!(g.status, GoalStatus::Disproved | GoalStatus::Error)
    });
    Ok(if contradicted { EXIT_CHECK_FAILED } else { 0 })
}
