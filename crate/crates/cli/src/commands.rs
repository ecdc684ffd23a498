//! Implementations of the CLI subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use trigsolve::oracle::{oracle_match, oracle_solve};
use trigsolve::{
    angle_distance, ik_two_link, solve, Mat2, SolutionSet, ToleranceConfig, TrigSystem, TwoLinkArm,
    Vec2,
};

use crate::gen::{mixed_class, planted_system, SingularClass};
use crate::schema::{exit_code_for, ResultDoc, SystemDoc, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    /// Matrix A, row-major: "a11,a12,a21,a22"
    #[arg(long)]
    pub a: Option<String>,
    /// Matrix B, row-major: "b11,b12,b21,b22"
    #[arg(long)]
    pub b: Option<String>,
    /// Vector C: "c1,c2"
    #[arg(long)]
    pub c: Option<String>,
    /// Read {"A": .., "B": .., "C": .., "tol": ..} from a JSON file instead
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    pub json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, clap::Args)]
pub struct BatchArgs {
    /// Input file: one JSON system document per line
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output file (stdout when omitted)
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
    /// Worker threads; output order matches input order regardless
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, clap::Args)]
pub struct RandomArgs {
    /// Number of systems to generate and solve
    #[arg(long)]
    pub count: usize,
    /// RNG seed; equal seeds give byte-identical reports
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Force one singularity class (default: 80/10/10 mixed)
    #[arg(long, value_enum)]
    pub singular: Option<SingularClass>,
    /// Add wall-clock statistics to the report (not byte-reproducible)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, clap::Args)]
pub struct OracleArgs {
    /// Input file: one JSON system document per line
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Grid resolution per axis (at least 256)
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    /// Residual acceptance for refined oracle minima
    #[arg(long, default_value_t = 1e-3)]
    pub accept: f64,
    /// Angle tolerance for matching solver and oracle points
    #[arg(long = "match-tol", default_value_t = 1e-3)]
    pub match_tol: f64,
}

#[derive(Debug, clap::Args)]
pub struct IkArgs {
    /// First link length (> 0)
    #[arg(long)]
    pub l1: f64,
    /// Second link length (> 0)
    #[arg(long)]
    pub l2: f64,
    /// Target x
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Target y
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
}

fn fail(message: impl AsRef<str>) -> i32 {
    eprintln!("error: {}", message.as_ref());
    2
}

fn parse_numbers(raw: &str, expected: usize, what: &str) -> Result<Vec<f64>, String> {
    let values: Result<Vec<f64>, _> = raw.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match values {
        Ok(values) if values.len() == expected => Ok(values),
        Ok(values) => Err(format!(
            "{what}: expected {expected} comma-separated numbers, got {}",
            values.len()
        )),
        Err(err) => Err(format!("{what}: {err}")),
    }
}

fn system_from_flags(args: &SolveArgs) -> Result<(TrigSystem, ToleranceConfig), String> {
    if let Some(path) = &args.json {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let doc: SystemDoc = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return doc.into_parts().map_err(|e| e.to_string());
    }
    let (a, b, c) = match (&args.a, &args.b, &args.c) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err("provide --a, --b and --c, or --json FILE".to_string()),
    };
    let a = parse_numbers(a, 4, "--a")?;
    let b = parse_numbers(b, 4, "--b")?;
    let c = parse_numbers(c, 2, "--c")?;
    let system = TrigSystem::new(
        Mat2::new(a[0], a[1], a[2], a[3]),
        Mat2::new(b[0], b[1], b[2], b[3]),
        Vec2::new(c[0], c[1]),
    )
    .map_err(|e| e.to_string())?;
    Ok((system, ToleranceConfig::default()))
}

pub fn solve_cmd(args: &SolveArgs) -> i32 {
    let (system, tol) = match system_from_flags(args) {
        Ok(parts) => parts,
        Err(message) => return fail(message),
    };
    let started = Instant::now();
    let report = solve(&system, &tol);
    let micros = started.elapsed().as_secs_f64() * 1e6;
    let doc = ResultDoc::from_report(&report);
    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string(&doc).expect("serializable")),
        OutputFormat::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", doc.csv_row(0, micros));
        }
    }
    exit_code_for(&report)
}

fn process_line(line: &str) -> (ResultDoc, f64) {
    let parsed: Result<SystemDoc, _> = serde_json::from_str(line);
    match parsed
        .map_err(|e| e.to_string())
        .and_then(|doc| doc.into_parts().map_err(|e| e.to_string()))
    {
        Ok((system, tol)) => {
            let started = Instant::now();
            let report = solve(&system, &tol);
            (
                ResultDoc::from_report(&report),
                started.elapsed().as_secs_f64() * 1e6,
            )
        }
        Err(message) => (ResultDoc::from_error(message), 0.0),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text
        .lines()
        .filter(|line| !line.trim().is_empty())
        .map(str::to_owned)
        .collect())
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| e.to_string())
        }
    }
}

pub fn batch_cmd(args: &BatchArgs) -> i32 {
    let lines = match read_lines(&args.input) {
        Ok(lines) => lines,
        Err(message) => return fail(message),
    };

    let results: Vec<(ResultDoc, f64)> = if args.parallel > 1 {
        let pool = match rayon::ThreadPoolBuilder::new()
            .num_threads(args.parallel)
            .build()
        {
            Ok(pool) => pool,
            Err(err) => return fail(format!("worker pool: {err}")),
        };
        pool.install(|| lines.par_iter().map(|line| process_line(line)).collect())
    } else {
        lines.iter().map(|line| process_line(line)).collect()
    };

    let mut out = String::new();
    match args.format {
        OutputFormat::Json => {
            for (doc, _) in &results {
                out.push_str(&serde_json::to_string(doc).expect("serializable"));
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for (index, (doc, micros)) in results.iter().enumerate() {
                out.push_str(&doc.csv_row(index, *micros));
                out.push('\n');
            }
        }
    }
    match write_output(args.output.as_ref(), &out) {
        Ok(()) => 0,
        Err(message) => fail(message),
    }
}

#[derive(Serialize)]
struct TimingDoc {
    mean_us: f64,
    median_us: f64,
}

#[derive(Serialize)]
struct RandomSummaryDoc {
    count: usize,
    seed: u64,
    singular: &'static str,
    success_count: usize,
    success_rate: f64,
    max_residual: f64,
    branch_histogram: BTreeMap<&'static str, usize>,
    solution_count_histogram: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_us: Option<TimingDoc>,
}

/// Planted truth recovered within 1e-8 rad and no accepted residual above
/// 1e-10: the completeness criterion of the self-test.
const RECOVERY_TOL: f64 = 1e-8;
const RESIDUAL_GATE: f64 = 1e-10;

pub fn random_cmd(args: &RandomArgs) -> i32 {
    if args.count == 0 {
        return fail("--count must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let tol = ToleranceConfig::default();

    let mut branch_histogram: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut solution_count_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures: Vec<usize> = Vec::new();
    let mut max_residual = 0.0f64;
    let mut times_us: Vec<f64> = Vec::with_capacity(args.count);

    for index in 0..args.count {
        let class = args.singular.unwrap_or_else(|| mixed_class(index));
        let planted = planted_system(&mut rng, class);
        let report = solve(&planted.system, &tol);
        times_us.push(report.elapsed.as_secs_f64() * 1e6);
        *branch_histogram.entry(report.branch.as_str()).or_insert(0) += 1;

        let bucket = match &report.solutions {
            SolutionSet::Finite(list) => list.len().to_string(),
            SolutionSet::Theta2Family { .. } | SolutionSet::Theta1Family => "family".to_string(),
            SolutionSet::Empty => "0".to_string(),
        };
        *solution_count_histogram.entry(bucket).or_insert(0) += 1;

        max_residual = max_residual.max(report.max_residual);
        let recovered = match (&planted.class, &report.solutions) {
            (SingularClass::Rank0, SolutionSet::Theta2Family { theta1 }) => theta1
                .iter()
                .any(|&t| angle_distance(t, planted.theta1) <= RECOVERY_TOL),
            (_, SolutionSet::Finite(list)) => list.iter().any(|s| {
                angle_distance(s.theta1, planted.theta1) <= RECOVERY_TOL
                    && angle_distance(s.theta2, planted.theta2) <= RECOVERY_TOL
            }),
            _ => false,
        };
        if !(recovered && report.max_residual <= RESIDUAL_GATE) {
            failures.push(index);
        }
    }

    let success_count = args.count - failures.len();
    failures.truncate(20);
    let timing_us = args.timing.then(|| {
        let mean = times_us.iter().sum::<f64>() / times_us.len() as f64;
        let mut sorted = times_us.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        TimingDoc {
            mean_us: mean,
            median_us: median,
        }
    });

    let summary = RandomSummaryDoc {
        count: args.count,
        seed: args.seed,
        singular: args.singular.map_or("mixed", SingularClass::as_str),
        success_count,
        success_rate: success_count as f64 / args.count as f64,
        max_residual,
        branch_histogram,
        solution_count_histogram,
        failures,
        timing_us,
    };
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    0
}

#[derive(Serialize)]
struct OracleLineDoc {
    index: usize,
    status: &'static str,
    #[serde(rename = "match")]
    matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_suspected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct OracleSummaryDoc {
    lines: usize,
    matched: usize,
    match_rate: f64,
}

pub fn oracle_cmd(args: &OracleArgs) -> i32 {
    if args.grid < 256 {
        return fail("--grid must be at least 256");
    }
    let lines = match read_lines(&args.input) {
        Ok(lines) => lines,
        Err(message) => return fail(message),
    };

    let mut matched_count = 0usize;
    for (index, line) in lines.iter().enumerate() {
        let parsed: Result<SystemDoc, _> = serde_json::from_str(line);
        let doc = match parsed
            .map_err(|e| e.to_string())
            .and_then(|doc| doc.into_parts().map_err(|e| e.to_string()))
        {
            Ok((system, tol)) => {
                let report = solve(&system, &tol);
                let outcome = oracle_solve(&system, args.grid, args.accept);
                match &report.solutions {
                    SolutionSet::Theta1Family | SolutionSet::Theta2Family { .. } => {
                        let matched = outcome.family_suspected;
                        OracleLineDoc {
                            index,
                            status: ResultDoc::from_report(&report).status,
                            matched,
                            solver_count: None,
                            oracle_count: Some(outcome.points.len()),
                            family_suspected: Some(outcome.family_suspected),
                            note: (!matched)
                                .then(|| "family not confirmed by oracle ridge scan".to_string()),
                        }
                    }
                    _ => {
                        let verdict = oracle_match(&report, &outcome.points, args.match_tol);
                        OracleLineDoc {
                            index,
                            status: ResultDoc::from_report(&report).status,
                            matched: verdict.matched,
                            solver_count: Some(verdict.solver_count),
                            oracle_count: Some(verdict.oracle_count),
                            family_suspected: Some(outcome.family_suspected),
                            note: (!verdict.matched)
                                .then(|| "unmatched (oracle resolution)".to_string()),
                        }
                    }
                }
            }
            Err(message) => OracleLineDoc {
                index,
                status: "error",
                matched: false,
                solver_count: None,
                oracle_count: None,
                family_suspected: None,
                note: Some(message),
            },
        };
        if doc.matched {
            matched_count += 1;
        }
        println!("{}", serde_json::to_string(&doc).expect("serializable"));
    }

    let summary = OracleSummaryDoc {
        lines: lines.len(),
        matched: matched_count,
        match_rate: if lines.is_empty() {
            1.0
        } else {
            matched_count as f64 / lines.len() as f64
        },
    };
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    0
}

#[derive(Serialize)]
struct IkDoc {
    status: &'static str,
    l1: f64,
    l2: f64,
    target: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    solutions: Option<Vec<crate::schema::SolutionDoc>>,
}

pub fn ik_cmd(args: &IkArgs) -> i32 {
    let arm = match TwoLinkArm::new(args.l1, args.l2, Vec2::new(args.x, args.y)) {
        Ok(arm) => arm,
        Err(err) => return fail(err.to_string()),
    };
    let set = ik_two_link(&arm, &ToleranceConfig::default());
    let (status, solutions) = match &set {
        SolutionSet::Finite(list) => (
            "finite",
            Some(
                list.iter()
                    .map(|s| crate::schema::SolutionDoc {
                        theta1: s.theta1,
                        theta2: s.theta2,
                        residual: s.residual,
                    })
                    .collect(),
            ),
        ),
        SolutionSet::Theta1Family => ("theta1_family", None),
        SolutionSet::Theta2Family { .. } => ("theta2_family", None),
        SolutionSet::Empty => ("empty", None),
    };
    let doc = IkDoc {
        status,
        l1: args.l1,
        l2: args.l2,
        target: [args.x, args.y],
        solutions,
    };
    println!("{}", serde_json::to_string(&doc).expect("serializable"));
    if set.is_empty() {
        3
    } else {
        0
    }
}
