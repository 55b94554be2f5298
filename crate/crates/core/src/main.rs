//! `satcube` command-line frontend.
//!
//! Exit codes: 0 success (and budget-exhausted solves), 1 I/O failure,
//! 2 flag/config errors, 3 enumeration cap exceeded, 4 input parse errors,
//! 5 verify mismatch; `solve` exits 10 for SAT and 20 for UNSAT.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use satcube::error::Error;
use satcube::experiments::{self, round_clauses, run_sweep_with_progress, SweepConfig};
use satcube::extremal;
use satcube::formula::{Formula, GenConfig, SampleMode};
use satcube::hypercube::{self, DEFAULT_ENUM_CAP};
use satcube::solver::{solve, SolveStatus, SolverConfig, ValueOrder, VarOrder};
use satcube::topology;
use satcube::{dimacs, Result};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "satcube",
    version,
    about = "Solution-space geometry of strict random 3-SAT"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random strict 3-SAT instance as DIMACS
    Gen(GenArgs),
    /// Exhaustively count the solutions of a DIMACS instance
    Enumerate(EnumerateArgs),
    /// Cluster / frozen-variable report for a DIMACS instance
    Topology(TopologyArgs),
    /// Clause-by-clause topology trajectory (JSON lines)
    Replay(ReplayArgs),
    /// Run the instrumented DFS solver (exit 10 SAT, 20 UNSAT)
    Solve(SolveArgs),
    /// Construct extremal instances
    Extremal(ExtremalArgs),
    /// Exact structural boundary counts for n variables
    Bounds(BoundsArgs),
    /// Seeded Monte Carlo sweep over an alpha grid (CSV + JSON sidecar)
    Sweep(SweepArgs),
    /// Check an instance against an expected status by enumeration
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Replacement,
    Unique,
}

impl From<ModeArg> for SampleMode {
    fn from(m: ModeArg) -> SampleMode {
        match m {
            ModeArg::Replacement => SampleMode::WithReplacement,
            ModeArg::Unique => SampleMode::Unique,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Number of variables (>= 3)
    #[arg(long)]
    vars: u32,
    /// Clause count M
    #[arg(long, conflicts_with = "alpha")]
    clauses: Option<u64>,
    /// Constraint density; M = round(alpha * vars), half-up
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Replacement)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Input DIMACS path (stdin when omitted)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Enumeration cap on N (hard ceiling 26)
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u32,
    /// Also dump the solution-set bit vector to this path
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct TopologyArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u32,
    /// Emit one JSON line per clause prefix instead of the final report
    #[arg(long)]
    replay: bool,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarOrderArg {
    Static,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueOrderArg {
    Zero,
    One,
    Random,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VarOrderArg::Static)]
    var_order: VarOrderArg,
    #[arg(long, value_enum, default_value_t = ValueOrderArg::Zero)]
    value_order: ValueOrderArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort after visiting this many nodes
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtremalArgs {
    #[command(subcommand)]
    which: ExtremalCmd,
}

#[derive(Subcommand)]
enum ExtremalCmd {
    /// All 8 sign patterns on one variable triple: unsatisfiable for any n
    MakeCore {
        #[arg(long)]
        vars: u32,
        /// Comma-separated triple, e.g. 2,5,9
        #[arg(long)]
        triple: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar JSON path (defaults to <out>.json when --out is given)
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// The 7*C(n,3)-clause instance whose unique solution is the target
    MakeMaxsat {
        #[arg(long)]
        vars: u32,
        /// Target assignment index (bit v-1 = value of variable v)
        #[arg(long)]
        target: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    vars: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration JSON
    #[arg(long)]
    config: PathBuf,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sidecar JSON path (defaults to <out>.json when --out is given)
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Expected outcome: sat | unsat | unique:<target index>
    #[arg(long)]
    expect: String,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let invocation = std::env::args().collect::<Vec<_>>().join(" ");
    let code = match run(cli.cmd, &invocation) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("satcube: error: {e}");
            exit_code_for(&e)
        }
    };
    ExitCode::from(code)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 4,
        Error::CapExceeded { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn run(cmd: Cmd, invocation: &str) -> Result<u8> {
    match cmd {
        Cmd::Gen(args) => cmd_gen(args, invocation),
        Cmd::Enumerate(args) => cmd_enumerate(args, invocation),
        Cmd::Topology(args) => cmd_topology(args.input, args.cap, args.replay, invocation),
        Cmd::Replay(args) => cmd_topology(args.input, args.cap, true, invocation),
        Cmd::Solve(args) => cmd_solve(args, invocation),
        Cmd::Extremal(args) => cmd_extremal(args.which, invocation),
        Cmd::Bounds(args) => cmd_bounds(args, invocation),
        Cmd::Sweep(args) => cmd_sweep(args, invocation),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p)?;
            f.write_all(bytes)?;
        }
        None => {
            io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn provenance_comments(invocation: &str, seed: Option<u64>) -> Vec<String> {
    let mut comments = vec![
        format!("satcube {VERSION}"),
        format!("invocation: {invocation}"),
    ];
    if let Some(seed) = seed {
        comments.push(format!("seed: {seed}"));
    }
    comments
}

fn with_provenance(mut value: serde_json::Value, invocation: &str) -> serde_json::Value {
    if let Some(map) = value.as_object_mut() {
        map.insert("tool_version".into(), json!(VERSION));
        map.insert("invocation".into(), json!(invocation));
    }
    value
}

fn cmd_gen(args: GenArgs, invocation: &str) -> Result<u8> {
    let n_clauses = match (args.clauses, args.alpha) {
        (Some(m), None) => m,
        (None, Some(a)) => {
            if !(a.is_finite() && a >= 0.0) {
                return Err(Error::Config("--alpha must be finite and >= 0".into()));
            }
            round_clauses(args.vars, a)
        }
        _ => {
            return Err(Error::Config(
                "give exactly one of --clauses / --alpha".into(),
            ))
        }
    };
    let f = Formula::random(&GenConfig {
        n_vars: args.vars,
        n_clauses,
        mode: args.mode.into(),
        seed: args.seed,
    })?;
    let text = dimacs::to_string(&f, &provenance_comments(invocation, Some(args.seed)));
    write_output(&args.out, text.as_bytes())?;
    Ok(0)
}

fn parse_formula(path: &Option<PathBuf>) -> Result<Formula> {
    dimacs::parse(read_input(path)?)
}

fn cmd_enumerate(args: EnumerateArgs, invocation: &str) -> Result<u8> {
    let f = parse_formula(&args.input)?;
    let s = hypercube::enumerate_with_cap(&f, args.cap)?;
    if let Some(dump) = &args.dump {
        let mut file = File::create(dump)?;
        s.write_binary(&mut file)?;
    }
    let report = with_provenance(
        json!({
            "n_vars": f.n_vars(),
            "n_clauses": f.n_clauses(),
            "n_solutions": s.count(),
            "is_empty": s.is_empty(),
        }),
        invocation,
    );
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

fn cmd_topology(input: Option<PathBuf>, cap: u32, replay: bool, invocation: &str) -> Result<u8> {
    let f = parse_formula(&input)?;
    if replay {
        let rows = topology::replay_topology_with_cap(&f, cap)?;
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for row in rows {
            writeln!(out, "{}", serde_json::to_string(&row)?)?;
        }
        return Ok(0);
    }
    let report = topology::topology_report(&f, cap)?;
    let value = with_provenance(serde_json::to_value(&report)?, invocation);
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(0)
}

fn cmd_solve(args: SolveArgs, invocation: &str) -> Result<u8> {
    let f = parse_formula(&args.input)?;
    let cfg = SolverConfig {
        var_order: match args.var_order {
            VarOrderArg::Static => VarOrder::StaticAscending,
            VarOrderArg::Random => VarOrder::SeededRandom,
        },
        value_order: match args.value_order {
            ValueOrderArg::Zero => ValueOrder::ZeroFirst,
            ValueOrderArg::One => ValueOrder::OneFirst,
            ValueOrderArg::Random => ValueOrder::SeededRandom,
        },
        seed: args.seed,
        node_budget: args.budget,
    };
    let result = solve(&f, &cfg)?;
    let model_lits = result.model.map(|idx| {
        (1..=f.n_vars())
            .map(|v| {
                let value = idx >> (v - 1) & 1 == 1;
                if value {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .collect::<Vec<_>>()
    });
    let report = with_provenance(
        json!({
            "status": result.status,
            "model": model_lits,
            "stats": result.stats,
        }),
        invocation,
    );
    let text = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(_) => write_output(&args.out, format!("{text}\n").as_bytes())?,
        None => println!("{text}"),
    }
    Ok(match result.status {
        SolveStatus::Sat => 10,
        SolveStatus::Unsat => 20,
        SolveStatus::BudgetExhausted => 0,
    })
}

fn parse_triple(text: &str) -> Result<(u32, u32, u32)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config("--triple expects i,j,k".into()));
    }
    let mut vals = [0u32; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad triple component `{part}`")))?;
    }
    Ok((vals[0], vals[1], vals[2]))
}

fn sidecar_path(out: &Option<PathBuf>, sidecar: Option<PathBuf>) -> Option<PathBuf> {
    sidecar.or_else(|| {
        out.as_ref().map(|p| {
            let mut name = p.as_os_str().to_os_string();
            name.push(".json");
            PathBuf::from(name)
        })
    })
}

fn write_sidecar(path: Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    if let Some(p) = path {
        let mut f = File::create(p)?;
        writeln!(f, "{}", serde_json::to_string_pretty(value)?)?;
    }
    Ok(())
}

fn cmd_extremal(cmd: ExtremalCmd, invocation: &str) -> Result<u8> {
    match cmd {
        ExtremalCmd::MakeCore {
            vars,
            triple,
            out,
            sidecar,
        } => {
            let triple = parse_triple(&triple)?;
            let f = extremal::make_unsat_core(vars, triple)?;
            let text = dimacs::to_string(&f, &provenance_comments(invocation, None));
            write_output(&out, text.as_bytes())?;
            let side = with_provenance(
                json!({
                    "kind": "unsat_core",
                    "triple": [triple.0, triple.1, triple.2],
                    "excluded_clauses": [],
                }),
                invocation,
            );
            write_sidecar(sidecar_path(&out, sidecar), &side)?;
            Ok(0)
        }
        ExtremalCmd::MakeMaxsat {
            vars,
            target,
            out,
            sidecar,
        } => {
            let inst = extremal::make_max_sat(vars, target)?;
            let text = dimacs::to_string(&inst.formula, &provenance_comments(invocation, None));
            write_output(&out, text.as_bytes())?;
            let side = with_provenance(
                json!({
                    "kind": "max_sat",
                    "target": target,
                    "excluded_clauses": inst
                        .excluded
                        .iter()
                        .map(|c| c.to_dimacs().to_vec())
                        .collect::<Vec<_>>(),
                }),
                invocation,
            );
            write_sidecar(sidecar_path(&out, sidecar), &side)?;
            Ok(0)
        }
    }
}

fn cmd_bounds(args: BoundsArgs, invocation: &str) -> Result<u8> {
    let summary = extremal::bounds_summary(args.vars)?;
    let value = with_provenance(summary.to_json(), invocation);
    let text = format!("{}\n", serde_json::to_string_pretty(&value)?);
    write_output(&args.out, text.as_bytes())?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs, invocation: &str) -> Result<u8> {
    let mut text = String::new();
    File::open(&args.config)?.read_to_string(&mut text)?;
    let cfg: SweepConfig = serde_json::from_str(&text)?;
    let outcome = run_sweep_with_progress(&cfg, |done, total| {
        eprintln!("satcube: sweep point {done}/{total} done");
    })?;
    let csv = experiments::rows_to_csv(&outcome.rows);
    write_output(&args.out, csv.as_bytes())?;
    let sidecar = with_provenance(experiments::sidecar_json(&cfg, &outcome), invocation);
    match sidecar_path(&args.out, args.sidecar) {
        Some(p) => write_sidecar(Some(p), &sidecar)?,
        None => eprintln!("satcube: no --out/--sidecar given, sidecar JSON skipped"),
    }
    Ok(0)
}

enum Expectation {
    Sat,
    Unsat,
    Unique(u64),
}

fn parse_expectation(text: &str) -> Result<Expectation> {
    match text {
        "sat" => Ok(Expectation::Sat),
        "unsat" => Ok(Expectation::Unsat),
        other => match other.strip_prefix("unique:") {
            Some(t) => t
                .parse()
                .map(Expectation::Unique)
                .map_err(|_| Error::Config(format!("bad target in `{other}`"))),
            None => Err(Error::Config(format!(
                "--expect must be sat, unsat, or unique:<target>, got `{other}`"
            ))),
        },
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let expect = parse_expectation(&args.expect)?;
    let f = parse_formula(&args.input)?;
    let s = hypercube::enumerate_with_cap(&f, args.cap)?;
    let count = s.count();
    let (ok, observed) = match expect {
        Expectation::Sat => (count > 0, format!("{count} solutions")),
        Expectation::Unsat => (count == 0, format!("{count} solutions")),
        Expectation::Unique(target) => {
            let matches = count == 1 && target < s.space_size() && s.contains(target);
            (matches, format!("{count} solutions"))
        }
    };
    if ok {
        println!("ok: expected {} and found {observed}", args.expect);
        Ok(0)
    } else {
        println!("mismatch: expected {} but found {observed}", args.expect);
        Ok(5)
    }
}
