//! Command-line front end.
//!
//! Exit codes: 0 when the instance is SAT or the check passes, 1 when it is
//! UNSAT or a counterexample/violation was found, 2 on usage or input errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use basisgrid_core::descent::{self, BlockPolicy, DescentOutcome, DescentTrace, RotaInstance, StepOutcome};
use basisgrid_core::grid::{self, GridInstance};
use basisgrid_core::instances;
use basisgrid_core::matroid::{self, MatroidOracle, Representation};
use clap::{Args, Parser, Subcommand};

use crate::format::{self, ParseError};
use crate::report::{self, CheckJson, Payload, RunReport, SolveJson, SweepJson, TraceJson, ViolationJson};
use crate::run::{self, Mode, TimedSolver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "basisgrid", version, about = "Exact matroid grid-completion toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GridInput {
    /// Grid-instance file, built-in instance name, or `-` for stdin (default).
    #[arg(long = "grid-instance", value_name = "PATH")]
    pub grid_instance: Option<String>,
    /// Skip the search for a partition of the ground set into k bases.
    #[arg(long)]
    pub skip_hypothesis_check: bool,
}

#[derive(Debug, Args)]
pub struct RotaInput {
    /// Matroid file or built-in name; its bases are consecutive blocks of
    /// rank-many elements.
    #[arg(long, value_name = "PATH")]
    pub matroid: Option<String>,
    /// Grid-instance file whose rows are the bases.
    #[arg(long = "grid-instance", value_name = "PATH", conflicts_with = "matroid")]
    pub grid_instance: Option<String>,
    /// Generate a random vector-matroid instance of this rank instead.
    #[arg(long, value_name = "N", conflicts_with_all = ["matroid", "grid_instance"])]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Block size of the subinstances.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Pick the pair with the largest overlap instead of the first one.
    #[arg(long)]
    pub largest_overlap: bool,
    /// Directory for counterexample certificate files.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide (or count) a grid instance.
    Solve {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, value_enum, default_value_t = Mode::Decide)]
        mode: Mode,
        /// Worker threads for decision mode.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Count every labelled grid of an instance.
    Count {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Build a Rota grid by descent over k-column subinstances.
    Rota {
        #[command(flatten)]
        input: RotaInput,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Run a single descent step from the initial double partition.
    DescentStep {
        #[command(flatten)]
        input: RotaInput,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Solve every row family of rank-3, nine-element matroids.
    VerifyC3 {
        /// Sweep this matroid only (file or built-in name) instead of the catalog.
        #[arg(long, value_name = "PATH")]
        matroid: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random vector matroids in the catalog.
        #[arg(long, default_value_t = 25)]
        linear: usize,
        /// Random multigraph matroids in the catalog.
        #[arg(long, default_value_t = 25)]
        graphic: usize,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Print or write a built-in instance.
    Instance {
        /// k4-c2, oxley-j, mcdiarmid, odd-wheel-<k> or u39.
        name: String,
        /// Write `<name>.matroid` and `<name>.grid` here instead of printing.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Parse a matroid and check the basis-exchange axiom.
    CheckMatroid {
        #[arg(long, value_name = "PATH")]
        matroid: String,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] basisgrid_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err("<stdin>"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(io_err(arg))
    }
}

fn load_matroid_file(path: &Path) -> Result<MatroidOracle, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Resolve {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    format::parse_matroid(&text).map_err(|e| ParseError::Resolve {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A built-in instance name, `-`/absent for stdin, or a file path.
pub fn load_grid_instance(arg: Option<&str>) -> Result<GridInstance, CliError> {
    let arg = arg.unwrap_or("-");
    if let Ok(named) = instances::by_name(arg) {
        if !Path::new(arg).exists() {
            return Ok(named.instance);
        }
    }
    let text = read_source(arg)?;
    let base = if arg == "-" {
        PathBuf::from(".")
    } else {
        Path::new(arg).parent().map(Path::to_path_buf).unwrap_or_default()
    };
    Ok(format::parse_grid_instance(&text, |p| load_matroid_file(&base.join(p)))?)
}

/// A built-in name (the matroid of that instance) or a matroid file.
pub fn load_matroid(arg: &str) -> Result<MatroidOracle, CliError> {
    if let Ok(named) = instances::by_name(arg) {
        if !Path::new(arg).exists() {
            return Ok(named.instance.matroid().clone());
        }
    }
    Ok(format::parse_matroid(&read_source(arg)?)?)
}

fn rota_from_matroid(m: MatroidOracle) -> Result<RotaInstance, CliError> {
    let n = m.full_rank();
    if n == 0 || m.size() != n * n {
        return Err(CliError::Usage(format!(
            "matroid of rank {n} on {} elements is not a Rota instance (needs rank² elements)",
            m.size()
        )));
    }
    let bases = (0..n).map(|i| (i * n..(i + 1) * n).collect()).collect();
    Ok(RotaInstance::new(Arc::new(m), bases)?)
}

fn load_rota(input: &RotaInput) -> Result<RotaInstance, CliError> {
    if let Some(n) = input.random {
        return Ok(instances::random_rota_instance(n, input.seed)?);
    }
    if let Some(arg) = &input.grid_instance {
        let inst = load_grid_instance(Some(arg))?;
        return Ok(RotaInstance::new(inst.matroid_arc().clone(), inst.row_sets().to_vec())?);
    }
    match &input.matroid {
        Some(arg) => rota_from_matroid(load_matroid(arg)?),
        None => Err(CliError::Usage("rota needs --matroid, --grid-instance or --random".into())),
    }
}

fn write_json(path: &Path, report: &RunReport) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialise") + "\n";
    if path == Path::new("-") {
        std::io::stdout().write_all(text.as_bytes()).map_err(io_err("<stdout>"))
    } else {
        std::fs::write(path, text).map_err(io_err(path))
    }
}

fn emit(json: &Option<PathBuf>, argv: &[String], digest: String, hypotheses: Option<String>, payload: Payload) -> Result<(), CliError> {
    if let Some(path) = json {
        let report = RunReport {
            command: argv.to_vec(),
            version: report::VERSION.into(),
            digest,
            hypotheses,
            payload,
        };
        write_json(path, &report)?;
    }
    Ok(())
}

fn print_grid(m: &MatroidOracle, rows: &[Vec<usize>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&e| m.ground().label(e)).collect();
        println!("  {}", cells.join("\t"));
    }
}

fn hypotheses_line(inst: &GridInstance, skip_partition: bool) -> String {
    match grid::check_hypotheses(inst, !skip_partition) {
        Ok(()) if skip_partition => "ok (basis partition not checked)".into(),
        Ok(()) => "ok".into(),
        Err(f) => f.to_string(),
    }
}

fn cmd_solve(argv: &[String], input: &GridInput, mode: Mode, parallel: usize, json: &Option<PathBuf>) -> Result<i32, CliError> {
    if mode == Mode::Count && parallel > 1 {
        return Err(CliError::Usage("--parallel is only available in decision mode".into()));
    }
    let inst = load_grid_instance(input.grid_instance.as_deref())?;
    let hyp = hypotheses_line(&inst, input.skip_hypothesis_check);
    let report = run::solve_timed(&inst, mode, parallel)?;
    if let Some(g) = &report.grid {
        grid::check_grid(&inst, g)?;
    }
    let js = SolveJson::from(&report);
    println!("hypotheses: {hyp}");
    println!("status: {}", js.status);
    if let Some(c) = js.count {
        println!("count: {c}");
    }
    println!("nodes: {}", js.nodes);
    println!("millis: {}", js.millis);
    if let Some(rows) = &js.grid {
        println!("grid:");
        print_grid(inst.matroid(), rows);
    }
    let digest = report::digest(&format::serialize_grid_instance(&inst, None));
    emit(json, argv, digest, Some(hyp), Payload::Solve(js))?;
    Ok(if report.is_sat() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn write_certificate(dir: &Path, cert: &descent::CounterexampleCertificate) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mpath = dir.join("certificate.matroid");
    let gpath = dir.join("certificate.grid");
    std::fs::write(&mpath, format::serialize_matroid(cert.instance.matroid())).map_err(io_err(&mpath))?;
    std::fs::write(&gpath, format::serialize_grid_instance(&cert.instance, Some("certificate.matroid")))
        .map_err(io_err(&gpath))?;
    eprintln!("counterexample certificate written to {} and {}", mpath.display(), gpath.display());
    Ok(())
}

fn policy(input: &RotaInput) -> BlockPolicy {
    if input.largest_overlap { BlockPolicy::LargestOverlap } else { BlockPolicy::FirstPair }
}

fn cmd_rota(argv: &[String], input: &RotaInput, json: &Option<PathBuf>) -> Result<i32, CliError> {
    let inst = load_rota(input)?;
    let trace: DescentTrace = descent::rota_solve(&inst, input.k, policy(input), &TimedSolver)?;
    let js = TraceJson::from(&trace);
    println!("n: {}  initial mu: {}  steps: {}", inst.n(), trace.initial_mu, trace.steps.len());
    for s in &trace.steps {
        println!("  block {:?}: mu {} -> {} ({} nodes)", s.block, s.mu_before, s.mu_after, s.report.nodes);
    }
    let code = match &trace.outcome {
        DescentOutcome::Grid(g) => {
            println!("grid:");
            print_grid(inst.matroid(), g.rows());
            EXIT_OK
        }
        DescentOutcome::Counterexample(cert) => {
            println!("counterexample: subinstance has no grid");
            write_certificate(input.out.as_deref().unwrap_or(Path::new(".")), cert)?;
            EXIT_NEGATIVE
        }
    };
    let digest = report::digest(&format::serialize_grid_instance(&inst.as_grid_instance(), None));
    emit(json, argv, digest, None, Payload::Rota(js))?;
    Ok(code)
}

fn cmd_descent_step(argv: &[String], input: &RotaInput, json: &Option<PathBuf>) -> Result<i32, CliError> {
    let inst = load_rota(input)?;
    let dp = descent::initial_double_partition(&inst);
    let mu = dp.mu();
    let digest = report::digest(&format::serialize_grid_instance(&inst.as_grid_instance(), None));
    let mut js = TraceJson { initial_mu: mu, steps: Vec::new(), outcome: "grid".into(), grid: None, certificate: None };
    let code = if mu == 0 {
        js.grid = Some(descent::grid_from_transversals(&inst, &dp)?.rows().to_vec());
        println!("mu is already 0");
        EXIT_OK
    } else {
        match descent::descent_step(&inst, &dp, input.k, policy(input), &TimedSolver)? {
            StepOutcome::Advanced { record, .. } => {
                println!("block {:?}: mu {} -> {}", record.block, record.mu_before, record.mu_after);
                js.outcome = "advanced".into();
                js.steps.push((&record).into());
                EXIT_OK
            }
            StepOutcome::Counterexample(cert) => {
                println!("counterexample: subinstance has no grid");
                write_certificate(input.out.as_deref().unwrap_or(Path::new(".")), &cert)?;
                js.outcome = "counterexample".into();
                js.certificate = Some(report::certificate_json(&cert));
                EXIT_NEGATIVE
            }
        }
    };
    emit(json, argv, digest, None, Payload::DescentStep(js))?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_c3(
    argv: &[String],
    matroid: &Option<String>,
    seed: u64,
    linear: usize,
    graphic: usize,
    parallel: usize,
    json: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let entries = match matroid {
        Some(arg) => {
            let m = load_matroid(arg)?;
            let name = if m.name().is_empty() { arg.clone() } else { m.name().to_string() };
            vec![instances::CatalogEntry { name, oracle: Arc::new(m), partition: Vec::new() }]
        }
        None => instances::catalog(seed, linear, graphic)?,
    };
    let reports = run::sweep_catalog(&entries, parallel)?;
    let mut unsat = 0;
    for r in &reports {
        println!("{}: {} families, {} SAT, {} UNSAT", r.matroid, r.families, r.sat, r.unsat);
        for f in &r.unsat_examples {
            println!("  UNSAT rows: {:?}", f.0);
        }
        unsat += r.unsat;
    }
    let total: u64 = reports.iter().map(|r| r.families).sum();
    println!("total: {} matroids, {total} families, {unsat} UNSAT", reports.len());
    let canonical: String = entries.iter().map(|e| format::serialize_matroid(&e.oracle)).collect();
    let payload = Payload::Sweep(reports.iter().map(SweepJson::from).collect());
    emit(json, argv, report::digest(&canonical), None, payload)?;
    Ok(if unsat == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_instance(name: &str, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let named = instances::by_name(name)?;
    match out {
        None => print!("{}", format::serialize_grid_instance(&named.instance, None)),
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(io_err(dir))?;
            let mfile = format!("{name}.matroid");
            let mpath = dir.join(&mfile);
            let gpath = dir.join(format!("{name}.grid"));
            std::fs::write(&mpath, format::serialize_matroid(named.instance.matroid())).map_err(io_err(&mpath))?;
            std::fs::write(&gpath, format::serialize_grid_instance(&named.instance, Some(&mfile)))
                .map_err(io_err(&gpath))?;
            println!("{}\n{}", mpath.display(), gpath.display());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check_matroid(argv: &[String], arg: &str, json: &Option<PathBuf>) -> Result<i32, CliError> {
    let m = load_matroid(arg)?;
    let kind = match m.representation() {
        Representation::Linear(_) => "LINEAR",
        Representation::Graphic(_) => "GRAPHIC",
        Representation::Bases(_) => "BASES",
    };
    let family = match m.representation() {
        Representation::Bases(b) => Some(b.bases().to_vec()),
        _ if m.size() <= matroid::DEFAULT_ENUMERATION_CAP => Some(m.enumerate_bases()?),
        // Vector and graphic matroids satisfy the axiom by construction.
        _ => None,
    };
    let violation = match &family {
        Some(f) => matroid::find_exchange_violation(f)?,
        None => None,
    };
    let js = CheckJson {
        name: m.name().to_string(),
        ground: m.size(),
        rank: m.full_rank(),
        kind: kind.into(),
        bases: family.as_ref().map(Vec::len),
        exchange_ok: violation.is_none(),
        violation: violation.as_ref().map(|v| ViolationJson { a: v.a.clone(), b: v.b.clone(), x: v.x }),
    };
    println!("{} ({kind}): {} elements, rank {}", if js.name.is_empty() { arg } else { &js.name }, js.ground, js.rank);
    if let Some(n) = js.bases {
        println!("bases: {n}");
    }
    match &violation {
        None => println!("basis exchange axiom: ok"),
        Some(v) => println!(
            "basis exchange axiom violated: removing {} from {:?} cannot be repaired from {:?}",
            v.x, v.a, v.b
        ),
    }
    emit(json, argv, report::digest(&format::serialize_matroid(&m)), None, Payload::CheckMatroid(js))?;
    Ok(if violation.is_none() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn dispatch(cli: &Cli, argv: &[String]) -> Result<i32, CliError> {
    match &cli.command {
        Command::Solve { input, mode, parallel, json } => cmd_solve(argv, input, *mode, *parallel, json),
        Command::Count { input, json } => cmd_solve(argv, input, Mode::Count, 1, json),
        Command::Rota { input, json } => cmd_rota(argv, input, json),
        Command::DescentStep { input, json } => cmd_descent_step(argv, input, json),
        Command::VerifyC3 { matroid, seed, linear, graphic, parallel, json } => {
            cmd_verify_c3(argv, matroid, *seed, *linear, *graphic, *parallel, json)
        }
        Command::Instance { name, out } => cmd_instance(name, out),
        Command::CheckMatroid { matroid, json } => cmd_check_matroid(argv, matroid, json),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let argv = args.get(1..).unwrap_or_default().to_vec();
    match dispatch(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
