//! Command-line front end for `pairweight`.
//!
//! [`run`] takes the full argument list and returns the exit code together
//! with everything that would be printed, so the binary is a thin wrapper
//! and tests can drive commands in-process.
//!
//! Exit codes: 0 when the analysis completed (whatever the verdict), 2 for
//! bad arguments or input, 3 when an internal consistency check failed or
//! `--verify` found the fast answer contradicting brute force.

pub mod input;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use pairweight::code::{hamming_weight, pair_support, pair_weight};
use pairweight::combinat::{build_incidence, check_incidence_identities};
use pairweight::criterion::{is_hamming_equiweight, is_pair_equiweight, r_equiweight_analysis};
use pairweight::hierarchy::{check_pair_invariants, hamming_hierarchy, ldp, mpds_report, pair_hierarchy};
use pairweight::iso::{gap_analysis, preserves_pair_weights};
use pairweight::linalg::{enumerate_pg, line_count, normalized_vectors};
use pairweight::oracle::{benchmark_equiweight_with, bf_equiweight, bf_hamming_equiweight, bf_iso, random_code};
use pairweight::{Answer, Exec, FieldSpec, LinearCode, Rule, Seed, Verdict};

pub use input::{parse_code_file, parse_iso_file, render_code_file, InputError};
pub use report::Report;

/// Most codewords listed by `weights`.
pub const WEIGHTS_LIMIT: u64 = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAULT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pairweight", version, about = "Symbol-pair weights of linear codes over finite fields")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hamming,
    Pair,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hamming and pair weight of every nonzero codeword up to scaling.
    Weights { file: PathBuf },
    /// Generalized Hamming and pair weight hierarchies.
    Hierarchy {
        file: PathBuf,
        /// Highest dimension to compute (default k).
        #[arg(long)]
        max_r: Option<usize>,
        #[arg(long, value_enum, default_value_t = Kind::Both)]
        kind: Kind,
    },
    /// Whether all r-dimensional subcodes share one pair weight.
    Equiweight {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Confirm by enumeration; settles undecided cases.
        #[arg(long)]
        verify: bool,
    },
    /// Pair hierarchy against the Singleton-type bounds.
    Mpds { file: PathBuf },
    /// Length/dimension profile.
    Ldp { file: PathBuf },
    /// Whether the row-matched isomorphism in an iso file preserves pair weights.
    Iso {
        file: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Incidence matrix of r-subspaces in s-subspaces of F_q^k.
    Tmatrix {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        /// Check the incidence identities for this (q, k) instead.
        #[arg(long)]
        check: bool,
    },
    /// A seeded random full-rank code, in code file format.
    Random {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Line-sum criterion against an exhaustive codeword scan, as CSV.
    Bench {
        /// Code file; a seeded random code is used when absent.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 31)]
        q: u32,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the exhaustive scan.
        #[arg(long)]
        no_scan: bool,
        /// Run the scan on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Fault(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Code { source: pairweight::Error::Fault(_), .. } => Failure::Fault(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<pairweight::Error> for Failure {
    fn from(e: pairweight::Error) -> Self {
        match e {
            pairweight::Error::Fault(_) => Failure::Fault(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// A finished report, plus a fault message when a check disagreed.
struct Done {
    report: Report,
    fault: Option<String>,
}

impl From<Report> for Done {
    fn from(report: Report) -> Self {
        Done { report, fault: None }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(done) => {
            let stdout = if cli.json { done.report.to_json() } else { done.report.to_text() };
            match done.fault {
                None => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
                Some(msg) => Outcome { code: EXIT_FAULT, stdout, stderr: format!("error: {msg}\n") },
            }
        }
        Err(Failure::Input(msg)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Fault(msg)) => {
            Outcome { code: EXIT_FAULT, stdout: String::new(), stderr: format!("internal fault: {msg}\n") }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    parse_code_file(&read(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: InputError) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        f => f,
    }
}

fn execute(cmd: &Command) -> Result<Done, Failure> {
    match cmd {
        Command::Weights { file } => weights(&load_code(file)?).map(Done::from),
        Command::Hierarchy { file, max_r, kind } => {
            let code = load_code(file)?;
            let max_r = max_r.unwrap_or(code.k());
            let hamming = matches!(kind, Kind::Hamming | Kind::Both).then(|| hamming_hierarchy(&code, max_r)).transpose()?;
            let pair = matches!(kind, Kind::Pair | Kind::Both).then(|| pair_hierarchy(&code, max_r)).transpose()?;
            if let (Some(h), Some(p)) = (&hamming, &pair) {
                if max_r == code.k() {
                    check_pair_invariants(code.k(), code.n(), h, p)?;
                }
            }
            Ok(Report::Hierarchy { code: report::CodeInfo::of(&code), hamming, pair }.into())
        }
        Command::Equiweight { file, r, verify } => equiweight(&load_code(file)?, *r, *verify),
        Command::Mpds { file } => {
            let code = load_code(file)?;
            Ok(Report::Mpds { code: report::CodeInfo::of(&code), report: mpds_report(&code)? }.into())
        }
        Command::Ldp { file } => {
            let code = load_code(file)?;
            Ok(Report::Ldp { code: report::CodeInfo::of(&code), ldp: ldp(&code)? }.into())
        }
        Command::Iso { file, verify } => {
            let pair = parse_iso_file(&read(file)?).map_err(|e| with_path(file, e))?;
            let gap = gap_analysis(&pair);
            let verdict = preserves_pair_weights(&pair);
            let mut fault = None;
            let oracle = if *verify {
                let bf = bf_iso(&pair)?;
                let agrees = bf == verdict.is_yes();
                if !agrees {
                    fault = Some(format!("criterion says {}, brute force says {}", verdict.answer, bool_answer(bf)));
                }
                Some(report::OracleCheck { pair: bf, hamming: None, agrees })
            } else {
                None
            };
            let code = report::CodeInfo::of(pair.source());
            Ok(Done { report: Report::Iso { code, gap, verdict, oracle }, fault })
        }
        Command::Tmatrix { q, k, r, s, check } => {
            let spec = FieldSpec::with_order(*q)?;
            if *check {
                let report = check_incidence_identities(*k, &spec, Exec::default())?;
                let fault = (!report.all_passed()).then(|| "an incidence identity failed".to_string());
                return Ok(Done { report: Report::Identities { report }, fault });
            }
            let t = build_incidence(*r, *s, *k, &spec, Exec::default())?;
            let entries = (0..t.n_rows()).map(|i| t.row(i).iter().map(|&x| char::from(b'0' + x)).collect()).collect();
            Ok(Report::Tmatrix {
                q: *q,
                k: *k,
                r: *r,
                s: *s,
                row_spaces: t.row_spaces.iter().map(|v| v.to_string()).collect(),
                col_spaces: t.col_spaces.iter().map(|v| v.to_string()).collect(),
                entries,
            }
            .into())
        }
        Command::Random { q, n, k, seed } => {
            let code = random_code(&FieldSpec::with_order(*q)?, *n, *k, Seed(*seed))?;
            let generator = code.generator().row_vecs();
            Ok(Report::Random { code: report::CodeInfo::of(&code), seed: *seed, generator }.into())
        }
        Command::Bench { file, q, n, k, seed, no_scan, sequential } => {
            let (code, seed) = match file {
                Some(f) => (load_code(f)?, None),
                None => (random_code(&FieldSpec::with_order(*q)?, *n, *k, Seed(*seed))?, Some(*seed)),
            };
            let exec = if *sequential { Exec::Sequential } else { Exec::default() };
            let benchmark = benchmark_equiweight_with(&code, exec, !no_scan)?;
            let fault = (!benchmark.agree()).then(|| "criterion and exhaustive scan disagree".to_string());
            Ok(Done { report: Report::Bench { seed, benchmark }, fault })
        }
    }
}

fn bool_answer(b: bool) -> Answer {
    if b {
        Answer::Yes
    } else {
        Answer::No
    }
}

fn weights(code: &LinearCode) -> Result<Report, Failure> {
    let count = line_count(code.spec(), code.k());
    if count > WEIGHTS_LIMIT {
        return Err(Failure::Input(format!("{count} codewords to list exceed the limit of {WEIGHTS_LIMIT}")));
    }
    let mut words = Vec::new();
    let mut dist = BTreeMap::new();
    for y in normalized_vectors(code.spec(), code.k()) {
        let c = code.encode(&y)?;
        let (h, p) = (hamming_weight(&c), pair_weight(&c));
        *dist.entry(p).or_insert(0) += 1;
        words.push(report::WordWeights { message: y, codeword: c.0, hamming: h, pair: p });
    }
    let min_hamming = words.iter().map(|w| w.hamming).min().unwrap_or(0);
    let min_pair = words.iter().map(|w| w.pair).min().unwrap_or(0);
    let pair_distribution = dist.into_iter().map(|(weight, count)| report::WeightCount { weight, count }).collect();
    Ok(Report::Weights { code: report::CodeInfo::of(code), words, min_hamming, min_pair, pair_distribution })
}

fn equiweight(code: &LinearCode, r: usize, verify: bool) -> Result<Done, Failure> {
    let mut pair = if r == 1 { is_pair_equiweight(code) } else { r_equiweight_analysis(code, r)? };
    let mut hamming = (r == 1).then(|| is_hamming_equiweight(code));
    let mut fault = None;
    let mut oracle = None;
    if verify {
        let bf = bf_equiweight(code, r)?;
        let bf_h = if r == 1 { Some(bf_hamming_equiweight(code)?) } else { None };
        let mut agrees = true;
        if pair.answer == Answer::Indeterminate {
            pair = resolved(code, r, bf)?;
        } else if pair.is_yes() != bf {
            agrees = false;
            fault = Some(format!("criterion says {}, brute force says {}", pair.answer, bool_answer(bf)));
        }
        if let (Some(h), Some(b)) = (&mut hamming, bf_h) {
            if h.is_yes() != b {
                agrees = false;
                fault.get_or_insert(format!("Hamming criterion says {}, brute force says {}", h.answer, bool_answer(b)));
            }
        }
        oracle = Some(report::OracleCheck { pair: bf, hamming: bf_h, agrees });
    }
    let code_info = report::CodeInfo::of(code);
    Ok(Done { report: Report::Equiweight { code: code_info, r, pair, hamming, oracle }, fault })
}

/// Verdict taken from enumeration.
fn resolved(code: &LinearCode, r: usize, equiweight: bool) -> Result<Verdict, Failure> {
    let weight = if equiweight {
        let d = enumerate_pg(r, code.k(), code.spec())?;
        Some(pair_support(&code.encode_subspace(&d[0])?).len())
    } else {
        None
    };
    Ok(Verdict { answer: bool_answer(equiweight), decided_by: Rule::BruteForce, weight, witness: None })
}
