//! Command-line front end: validates intersection matrices, prints pair
//! verdict matrices, runs the structural criteria, and cross-checks verdicts
//! against the bounded witness search.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use nashmat::{
    canonical_vector, check_consistency, cross_validate, decide_pair, generate_random,
    parse_matrix_file, structural_verdicts, GenusVector, IntersectionMatrix, StructuralVerdict,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Parse and validate only.
    Validate,
    /// Pair verdict matrix.
    Nn,
    /// Structural criteria.
    Classify,
    /// Witness-search cross-check.
    Oracle,
    /// Everything, plus the criteria-vs-engine consistency check.
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "nashmat",
    version,
    about = "Decides the arc-ordering conditions for exceptional curve pairs of a resolution"
)]
struct Args {
    /// Input matrix files (see README for the format).
    files: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Mode::All)]
    mode: Mode,

    /// Upper bound of the witness search box.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
    bound: i64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Generate an input instead of reading it: n=<n>[,d=<d>][,seed=<s>].
    /// May be repeated.
    #[arg(long = "gen", value_name = "SPEC")]
    generate: Vec<String>,

    /// Skip the engine and oracle sections (exact but superlinear) above
    /// this size.
    #[arg(long, default_value_t = 24)]
    max_n: usize,
}

#[derive(Serialize)]
struct TheoremReport {
    id: String,
    applicable: bool,
    verdict: String,
    evidence: Vec<String>,
}

impl TheoremReport {
    fn from(v: &StructuralVerdict) -> Self {
        TheoremReport {
            id: v.id.to_string(),
            applicable: v.applicable,
            verdict: v.verdict.to_string(),
            evidence: v.evidence.clone(),
        }
    }
}

#[derive(Serialize)]
struct OracleReport {
    bound: i64,
    confirmed: usize,
    consistent_false: usize,
    mismatches: usize,
}

#[derive(Serialize)]
struct Report {
    n: Option<usize>,
    valid: bool,
    nn: Option<Vec<Vec<Option<u8>>>>,
    is_nash: Option<bool>,
    theorems: Option<Vec<TheoremReport>>,
    oracle: Option<OracleReport>,
    #[serde(skip)]
    label: String,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    notes: Vec<String>,
    #[serde(skip)]
    exit: u8,
}

struct Input {
    label: String,
    loaded: Result<(IntersectionMatrix, GenusVector)>,
}

fn parse_gen_spec(spec: &str) -> Result<(usize, u32, u64)> {
    let (mut n, mut d, mut seed) = (None, 2u32, 0u64);
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("--gen expects key=value parts, got '{part}'"))?;
        match key.trim() {
            "n" => n = Some(value.trim().parse()?),
            "d" => d = value.trim().parse()?,
            "seed" => seed = value.trim().parse()?,
            other => bail!("--gen: unknown key '{other}' (expected n, d, or seed)"),
        }
    }
    let n = n.ok_or_else(|| anyhow!("--gen requires n=<size>"))?;
    if n == 0 {
        bail!("--gen: n must be at least 1");
    }
    Ok((n, d, seed))
}

fn gather_inputs(args: &Args) -> Result<Vec<Input>> {
    let mut inputs = Vec::new();
    for path in &args.files {
        let label = path.display().to_string();
        let loaded = fs::read_to_string(path)
            .map_err(|e| anyhow!("cannot read {label}: {e}"))
            .and_then(|text| {
                parse_matrix_file(&text).map_err(|e| anyhow!(e))
            });
        inputs.push(Input { label, loaded });
    }
    for spec in &args.generate {
        let (n, d, seed) = parse_gen_spec(spec)?;
        let m = generate_random(n, d, seed);
        let genus = GenusVector::zero(n);
        inputs.push(Input {
            label: format!("gen(n={n},d={d},seed={seed})"),
            loaded: Ok((m, genus)),
        });
    }
    if inputs.is_empty() {
        bail!("no inputs: pass matrix files or --gen n=<size>");
    }
    Ok(inputs)
}

/// All ordered pair verdicts, decided in parallel, assembled in row-major
/// order regardless of scheduling.
fn pair_grid(m: &IntersectionMatrix) -> Result<Vec<Vec<Option<u8>>>> {
    let n = m.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let decided: Vec<((usize, usize), bool)> = pairs
        .par_iter()
        .map(|&(i, j)| decide_pair(m, i, j).map(|v| ((i, j), v)))
        .collect::<Result<_, _>>()?;
    let mut grid = vec![vec![None; n]; n];
    for ((i, j), v) in decided {
        grid[i][j] = Some(u8::from(v));
    }
    Ok(grid)
}

fn grid_to_text(grid: &[Vec<Option<u8>>]) -> String {
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                None => ".".to_string(),
                Some(v) => v.to_string(),
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn one_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
}

fn process(input: &Input, args: &Args) -> Report {
    let mut report = Report {
        n: None,
        valid: false,
        nn: None,
        is_nash: None,
        theorems: None,
        oracle: None,
        label: input.label.clone(),
        text: String::new(),
        notes: Vec::new(),
        exit: 0,
    };
    let label = &input.label;

    let (m, genus) = match &input.loaded {
        Ok(pair) => pair,
        Err(e) => {
            report.text = format!("invalid: {e}\n");
            report.notes.push(format!("error: {label}: {e}"));
            report.exit = 1;
            return report;
        }
    };
    let n = m.n();
    report.n = Some(n);
    report.valid = true;
    let mut text = format!("n = {n}\nvalid: true\n");

    if genus.iter().any(|p| p > 0) {
        report.notes.push(format!(
            "note: {label}: positive genus entries; pair verdicts are computed from the \
             intersection matrix alone, so the bounded witness search is the recommended \
             cross-check"
        ));
    }

    let engine_wanted = matches!(args.mode, Mode::Nn | Mode::All);
    let oracle_wanted = matches!(args.mode, Mode::Oracle | Mode::All);
    let too_big = n > args.max_n;
    if too_big && (engine_wanted || oracle_wanted) {
        report.notes.push(format!(
            "note: {label}: n = {n} exceeds --max-n {}; engine and oracle sections skipped",
            args.max_n
        ));
    }

    if engine_wanted && !too_big {
        match pair_grid(m) {
            Ok(grid) => {
                let all_true = grid
                    .iter()
                    .flatten()
                    .all(|c| *c != Some(0));
                let rendered = grid_to_text(&grid);
                if args.mode == Mode::Nn {
                    text = rendered;
                } else {
                    let _ = write!(text, "nn:\n{rendered}is_nash: {all_true}\n");
                }
                report.nn = Some(grid);
                report.is_nash = Some(all_true);
            }
            Err(e) => {
                report.notes.push(format!("error: {label}: {e}"));
                report.exit = 2;
                return report;
            }
        }
    }

    if matches!(args.mode, Mode::Classify | Mode::All) {
        let verdicts = structural_verdicts(m);
        if args.mode == Mode::All {
            text.push_str("criteria:\n");
        }
        for v in &verdicts {
            let line = if v.applicable {
                let mut s = format!("{}: {}", v.id, v.verdict);
                if !v.evidence.is_empty() {
                    let _ = write!(s, " [{}]", v.evidence.join("; "));
                }
                s
            } else {
                format!("{}: not applicable", v.id)
            };
            let _ = writeln!(text, "  {line}");
        }
        if let (Mode::All, Some(is_nash)) = (args.mode, report.is_nash) {
            if let Err(e) = check_consistency(&verdicts, is_nash) {
                report.notes.push(format!("error: {label}: {e}"));
                report.exit = 2;
            }
        }
        report.theorems = Some(verdicts.iter().map(TheoremReport::from).collect());
    }

    if oracle_wanted && !too_big {
        match canonical_vector(m, genus).map_err(anyhow::Error::from).and_then(|c| {
            cross_validate(m, &c, args.bound).map_err(anyhow::Error::from)
        }) {
            Ok(cv) => {
                let _ = writeln!(
                    text,
                    "oracle: bound {}: {} confirmed, {} consistent false, {} unconfirmed",
                    cv.bound,
                    cv.confirmed(),
                    cv.consistent_false(),
                    cv.mismatches()
                );
                if cv.mismatches() > 0 {
                    report.notes.push(format!(
                        "warning: {label}: {} TRUE pairs have no witness within bound {} \
                         (1-based): {:?}",
                        cv.mismatches(),
                        cv.bound,
                        one_based(&cv.mismatch_pairs())
                    ));
                    report.exit = report.exit.max(2);
                }
                report.oracle = Some(OracleReport {
                    bound: cv.bound,
                    confirmed: cv.confirmed(),
                    consistent_false: cv.consistent_false(),
                    mismatches: cv.mismatches(),
                });
            }
            Err(e) => {
                report.notes.push(format!("error: {label}: {e}"));
                report.exit = report.exit.max(1);
            }
        }
    }

    report.text = text;
    report
}

fn run(args: &Args) -> Result<u8> {
    let inputs = gather_inputs(args)?;
    let reports: Vec<Report> = inputs.par_iter().map(|inp| process(inp, args)).collect();

    match args.format {
        Format::Json => {
            if reports.len() == 1 {
                println!("{}", serde_json::to_string_pretty(&reports[0])?);
            } else {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            }
        }
        Format::Text => {
            let many = reports.len() > 1;
            for (k, r) in reports.iter().enumerate() {
                if many {
                    if k > 0 {
                        println!();
                    }
                    println!("== {} ==", r.label);
                }
                print!("{}", r.text);
            }
        }
    }
    for r in &reports {
        for note in &r.notes {
            eprintln!("{note}");
        }
    }
    Ok(reports.iter().map(|r| r.exit).max().unwrap_or(0))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
