//! Reports produced by the commands, in JSON and as plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use pairweight::combinat::IdentityReport;
use pairweight::criterion::{LineValue, PlaneValue};
use pairweight::hierarchy::MpdsReport;
use pairweight::iso::GapAnalysis;
use pairweight::oracle::Benchmark;
use pairweight::{FieldElement, Hierarchy, LinearCode, Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeInfo {
    pub q: u32,
    pub n: usize,
    pub k: usize,
}

impl CodeInfo {
    pub fn of(code: &LinearCode) -> Self {
        CodeInfo { q: code.spec().q(), n: code.n(), k: code.k() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordWeights {
    pub message: Vec<FieldElement>,
    pub codeword: Vec<FieldElement>,
    pub hamming: usize,
    pub pair: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCount {
    pub weight: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// Brute-force answer for the pair question.
    pub pair: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamming: Option<bool>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Weights {
        code: CodeInfo,
        /// One entry per nonzero codeword up to scaling.
        words: Vec<WordWeights>,
        min_hamming: usize,
        min_pair: usize,
        /// Number of codewords up to scaling at each pair weight.
        pair_distribution: Vec<WeightCount>,
    },
    Hierarchy {
        code: CodeInfo,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hamming: Option<Hierarchy>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair: Option<Hierarchy>,
    },
    Equiweight {
        code: CodeInfo,
        r: usize,
        pair: Verdict,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hamming: Option<Verdict>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleCheck>,
    },
    Mpds {
        code: CodeInfo,
        report: MpdsReport,
    },
    Ldp {
        code: CodeInfo,
        ldp: Vec<usize>,
    },
    Iso {
        code: CodeInfo,
        gap: GapAnalysis,
        verdict: Verdict,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleCheck>,
    },
    Tmatrix {
        q: u32,
        k: usize,
        r: usize,
        s: usize,
        /// Row and column subspaces in enumeration order.
        row_spaces: Vec<String>,
        col_spaces: Vec<String>,
        /// One string of `0`/`1` per row.
        entries: Vec<String>,
    },
    Identities {
        report: IdentityReport,
    },
    Random {
        code: CodeInfo,
        seed: u64,
        generator: Vec<Vec<FieldElement>>,
    },
    Bench {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        benchmark: Benchmark,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Weights { code, words, min_hamming, min_pair, pair_distribution } => {
                header(&mut o, code);
                let _ = writeln!(o, "message | codeword | w_H | w_p");
                for w in words {
                    let _ = writeln!(o, "{} | {} | {} | {}", vector(&w.message), vector(&w.codeword), w.hamming, w.pair);
                }
                let _ = writeln!(o, "minimum Hamming weight: {min_hamming}");
                let _ = writeln!(o, "minimum pair weight: {min_pair}");
                let dist: Vec<String> = pair_distribution.iter().map(|d| format!("{}:{}", d.weight, d.count)).collect();
                let _ = writeln!(o, "pair weight distribution: {}", dist.join(" "));
            }
            Report::Hierarchy { code, hamming, pair } => {
                header(&mut o, code);
                if let Some(h) = hamming {
                    let _ = writeln!(o, "Hamming hierarchy: {h}");
                }
                if let Some(p) = pair {
                    let _ = writeln!(o, "pair hierarchy: {p}");
                }
            }
            Report::Equiweight { code, r, pair, hamming, oracle } => {
                header(&mut o, code);
                let what = if *r == 1 { "pair equiweight".to_string() } else { format!("pair {r}-equiweight") };
                verdict(&mut o, &what, pair);
                if let Some(h) = hamming {
                    verdict(&mut o, "Hamming equiweight", h);
                }
                if let Some(c) = oracle {
                    let mut line = format!("brute force: pair {}", yes_no(c.pair));
                    if let Some(h) = c.hamming {
                        let _ = write!(line, ", Hamming {}", yes_no(h));
                    }
                    let _ = writeln!(o, "{line}; {}", if c.agrees { "agrees" } else { "DISAGREES" });
                }
            }
            Report::Mpds { code, report } => {
                header(&mut o, code);
                let _ = writeln!(o, "pair hierarchy: {}", report.hierarchy);
                let _ = writeln!(o, "r | d_p^r | bound");
                for row in &report.bound_table {
                    let _ = writeln!(o, "{} | {} | {}", row.r, row.value, row.bound);
                }
                let _ = writeln!(o, "MPDS: {}", yes_no(report.is_mpds));
            }
            Report::Ldp { code, ldp } => {
                header(&mut o, code);
                let v: Vec<String> = ldp.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(o, "length/dimension profile: {{{}}}", v.join(", "));
            }
            Report::Iso { code, gap, verdict: v, oracle } => {
                header(&mut o, code);
                if gap.constant_gap {
                    let _ = writeln!(o, "line-sum difference: constant, gap {}", gap.gap.unwrap_or_default());
                } else {
                    let _ = writeln!(o, "line-sum difference: not constant");
                }
                verdict(&mut o, "preserves pair weights", v);
                if let Some(c) = oracle {
                    let _ = writeln!(o, "brute force: {}; {}", yes_no(c.pair), if c.agrees { "agrees" } else { "DISAGREES" });
                }
            }
            Report::Tmatrix { q, k, r, s, row_spaces, col_spaces, entries } => {
                let _ = writeln!(o, "incidence of {r}- in {s}-subspaces of F_{q}^{k}: {} x {}", row_spaces.len(), col_spaces.len());
                for (space, row) in row_spaces.iter().zip(entries) {
                    let _ = writeln!(o, "{row}  {space}");
                }
            }
            Report::Identities { report } => {
                let _ = writeln!(o, "incidence identities over F_{}, k = {}", report.q, report.k);
                for c in &report.checks {
                    let _ = writeln!(o, "{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.identity, c.params);
                }
            }
            Report::Random { code, seed, generator } => {
                let _ = writeln!(o, "# seed {seed}\nq {}\nn {}\nk {}", code.q, code.n, code.k);
                for row in generator {
                    let r: Vec<String> = row.iter().map(|x| x.0.to_string()).collect();
                    let _ = writeln!(o, "{}", r.join(" "));
                }
            }
            Report::Bench { benchmark, .. } => {
                let _ = writeln!(o, "{}\n{}", Benchmark::CSV_HEADER, benchmark.csv_row());
            }
        }
        o
    }
}

fn header(o: &mut String, c: &CodeInfo) {
    let _ = writeln!(o, "[{}, {}] code over F_{}", c.n, c.k, c.q);
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn vector(v: &[FieldElement]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

fn line_value(l: &LineValue) -> String {
    format!("line #{} <{}> = {}", l.index, vector(&l.line), l.value)
}

fn plane_value(p: &PlaneValue) -> String {
    let rows: Vec<String> = p.plane.iter().map(|r| vector(r)).collect();
    format!("plane <{}> = {}", rows.join(", "), p.value)
}

fn verdict(o: &mut String, what: &str, v: &Verdict) {
    let _ = write!(o, "{what}: {} ({})", v.answer, v.decided_by);
    if let Some(w) = v.weight {
        let _ = write!(o, ", weight {w}");
    }
    let _ = writeln!(o);
    if let Some(w) = &v.witness {
        let text = match w {
            Witness::Lines { first, second } => format!("{} vs {}", line_value(first), line_value(second)),
            Witness::Planes { first, second } => format!("{} vs {}", plane_value(first), plane_value(second)),
            Witness::Gap { gap } => format!("constant gap {gap}"),
        };
        let _ = writeln!(o, "  witness: {text}");
    }
}
