//! Differential battery: every fast procedure against its brute-force
//! counterpart on streams of seeded random codes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{hamming_support, pair_support, pair_weight_via_runs, LinearCode};
use crate::criterion::{
    compute_mg, cor43_check, is_hamming_equiweight, is_pair_equiweight, omega_sums_by_mg, omega_sums_with_work,
    pair_weight_theta_with, plane_sums_constancy, r_equiweight_analysis, weighted_line_sums, Answer, Constancy,
};
use crate::error::Result;
use crate::gf::{FieldElement, FieldSpec};
use crate::hierarchy::{check_pair_invariants, hamming_hierarchy_with, ldp_with, mpds_report_with, pair_hierarchy_with};
use crate::iso::{gap_analysis, preserves_pair_weights, IsoPair};
use crate::linalg::enumerate_pg;
use crate::oracle::{
    bf_constant_gap, bf_equiweight_with, bf_hamming_equiweight, bf_iso, change_basis, monomial_image, Sampler, Seed,
};
use crate::par::{map_slice, Exec};

/// Codes longer than this skip the subset-based profile check.
pub const LDP_CHECK_MAX_N: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Subcode pair weight from the spans equals the direct support size.
    SpanFormula,
    /// Run decomposition of the Hamming support equals the pair support.
    RunFormula,
    /// Line-sum equiweight verdict equals enumeration.
    Equiweight,
    /// Interleaved-code Hamming verdict equals enumeration.
    HammingEquiweight,
    /// The two ways of computing line sums agree, and few lines are touched.
    LineSums,
    /// `r`-equiweight verdicts never contradict enumeration.
    REquiweight,
    /// Necessary condition holds on every `r`-equiweight code.
    NecessaryCondition,
    /// Sufficient condition only fires on `r`-equiweight codes.
    SufficientCondition,
    /// Plane-gated verdict never contradicts enumeration.
    PlaneGate,
    /// Hierarchy bounds and monotonicity.
    HierarchyBounds,
    /// Length/dimension profile equals the pair hierarchy.
    Profile,
    /// Iso verdict on a coordinate permutation equals enumeration.
    IsoPermutation,
    /// Iso verdict on a basis change plus monomial map equals enumeration.
    IsoMonomial,
    /// Constant line-sum difference iff constant weight gap.
    GapEquivalence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub q: u32,
    pub k: usize,
    pub n: usize,
}

impl Cell {
    /// Seed of this cell's instance stream.
    pub fn seed(&self, base: Seed) -> Seed {
        let id = ((self.q as u64) << 32) | ((self.k as u64) << 16) | self.n as u64;
        Seed(base.0 ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Counts of what the random instances looked like, to show the battery
/// reached both outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub codes: usize,
    pub equiweight: usize,
    pub hamming_equiweight: usize,
    pub r_yes: usize,
    pub r_no: usize,
    pub r_indeterminate: usize,
    pub iso_permutation_yes: usize,
    pub iso_permutation_no: usize,
    pub iso_monomial_yes: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub tallies: BTreeMap<Check, Tally>,
    pub coverage: Coverage,
}

impl BatteryReport {
    pub fn failures(&self) -> usize {
        self.tallies.values().map(|t| t.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn tally(&self, c: Check) -> Tally {
        self.tallies.get(&c).cloned().unwrap_or_default()
    }

    fn record(&mut self, c: Check, ok: bool, context: impl FnOnce() -> String) {
        let t = self.tallies.entry(c).or_default();
        t.checked += 1;
        if !ok {
            t.failures += 1;
            if t.first_failure.is_none() {
                t.first_failure = Some(context());
            }
        }
    }

    fn merge(&mut self, other: BatteryReport) {
        for (c, t) in other.tallies {
            let mine = self.tallies.entry(c).or_default();
            mine.checked += t.checked;
            mine.failures += t.failures;
            if mine.first_failure.is_none() {
                mine.first_failure = t.first_failure;
            }
        }
        let (a, b) = (&mut self.coverage, other.coverage);
        a.codes += b.codes;
        a.equiweight += b.equiweight;
        a.hamming_equiweight += b.hamming_equiweight;
        a.r_yes += b.r_yes;
        a.r_no += b.r_no;
        a.r_indeterminate += b.r_indeterminate;
        a.iso_permutation_yes += b.iso_permutation_yes;
        a.iso_permutation_no += b.iso_permutation_no;
        a.iso_monomial_yes += b.iso_monomial_yes;
    }
}

impl fmt::Display for BatteryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, t) in &self.tallies {
            write!(f, "{c:?}: {}/{} ok", t.checked - t.failures, t.checked)?;
            if let Some(why) = &t.first_failure {
                write!(f, " (first failure: {why})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:?}", self.coverage)
    }
}

/// Runs `samples` codes in each cell, cells side by side under `exec`.
pub fn run_battery(cells: &[Cell], samples: usize, base: Seed, exec: Exec) -> Result<BatteryReport> {
    let parts = map_slice(exec, cells, |cell| run_cell(*cell, samples, base));
    let mut report = BatteryReport::default();
    for p in parts {
        report.merge(p?);
    }
    Ok(report)
}

/// The grid `q x k x n`.
pub fn grid(qs: &[u32], ks: &[usize], ns: &[usize]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &q in qs {
        for &k in ks {
            for &n in ns {
                if k <= n {
                    cells.push(Cell { q, k, n });
                }
            }
        }
    }
    cells
}

pub fn run_cell(cell: Cell, samples: usize, base: Seed) -> Result<BatteryReport> {
    let spec = FieldSpec::with_order(cell.q)?;
    let mut sampler = Sampler::new(cell.seed(base));
    let mut report = BatteryReport::default();
    for i in 0..samples {
        let code = sampler.code(&spec, cell.n, cell.k)?;
        let perm = sampler.permutation(cell.n);
        let scales: Vec<FieldElement> = (0..cell.n).map(|_| sampler.nonzero_element(&spec)).collect();
        let basis = sampler.invertible(&spec, cell.k);
        let tag = |what: &str| format!("{what} on q={} k={} n={} #{i}: G = {}", cell.q, cell.k, cell.n, code.generator());

        check_code(&code, &mut report, &tag)?;

        let ones = vec![FieldElement::ONE; cell.n];
        let permuted = IsoPair::new(code.clone(), monomial_image(&code, &perm, &ones)?)?;
        let want = bf_iso(&permuted)?;
        let got = preserves_pair_weights(&permuted).is_yes();
        report.record(Check::IsoPermutation, got == want, || tag("permutation iso"));
        if want {
            report.coverage.iso_permutation_yes += 1;
        } else {
            report.coverage.iso_permutation_no += 1;
        }
        report.record(Check::GapEquivalence, gap_analysis(&permuted).constant_gap == bf_constant_gap(&permuted)?, || {
            tag("gap equivalence (permutation)")
        });

        let moved = IsoPair::new(code.clone(), change_basis(&monomial_image(&code, &perm, &scales)?, &basis)?)?;
        let want = bf_iso(&moved)?;
        let got = preserves_pair_weights(&moved).is_yes();
        report.record(Check::IsoMonomial, got == want, || tag("monomial iso"));
        report.coverage.iso_monomial_yes += usize::from(want);
        report.record(Check::GapEquivalence, gap_analysis(&moved).constant_gap == bf_constant_gap(&moved)?, || {
            tag("gap equivalence (monomial)")
        });
    }
    Ok(report)
}

fn check_code(code: &LinearCode, report: &mut BatteryReport, tag: &dyn Fn(&str) -> String) -> Result<()> {
    let (n, k, q) = (code.n(), code.k(), code.spec().q() as usize);
    let seq = Exec::Sequential;
    report.coverage.codes += 1;

    let mg = compute_mg(code);
    for r in 1..=k {
        for d in enumerate_pg(r, k, code.spec())? {
            let basis = code.encode_subspace(&d)?;
            let direct = pair_support(&basis).len();
            report.record(Check::SpanFormula, pair_weight_theta_with(code, &mg, &d)? == direct, || {
                tag(&format!("span formula at {d}"))
            });
            report.record(Check::RunFormula, pair_weight_via_runs(&basis) == direct, || {
                tag(&format!("run formula at {d} (support {:?})", hamming_support(&basis)))
            });
        }
    }

    let (profile, work) = omega_sums_with_work(code);
    let routes_agree = profile.dense(code.spec())? == omega_sums_by_mg(code, 2)?;
    report.record(Check::LineSums, routes_agree && work <= n * (q + 1), || tag("line sums"));

    let bf_eq = bf_equiweight_with(code, 1, seq)?;
    report.coverage.equiweight += usize::from(bf_eq);
    let v = is_pair_equiweight(code);
    let weight_ok = !v.is_yes() || v.weight == Some(pair_support(&[code.row(0)]).len());
    report.record(Check::Equiweight, v.is_yes() == bf_eq && weight_ok, || tag("pair equiweight"));

    let bf_heq = bf_hamming_equiweight(code)?;
    report.coverage.hamming_equiweight += usize::from(bf_heq);
    let v = is_hamming_equiweight(code);
    let weight_ok = !v.is_yes() || v.weight == Some(hamming_support(&[code.row(0)]).len());
    report.record(Check::HammingEquiweight, v.is_yes() == bf_heq && weight_ok, || tag("hamming equiweight"));

    let v = cor43_check(code);
    report.record(Check::PlaneGate, v.answer == Answer::Indeterminate || v.is_yes() == bf_eq, || tag("plane gate"));

    for r in 1..k {
        let bf = bf_equiweight_with(code, r, seq)?;
        let v = r_equiweight_analysis(code, r)?;
        let consistent = match v.answer {
            Answer::Yes => bf,
            Answer::No => !bf,
            Answer::Indeterminate => (2..=k.saturating_sub(2)).contains(&r),
        };
        match v.answer {
            Answer::Yes => report.coverage.r_yes += 1,
            Answer::No => report.coverage.r_no += 1,
            Answer::Indeterminate => report.coverage.r_indeterminate += 1,
        }
        report.record(Check::REquiweight, consistent, || tag(&format!("r-equiweight r={r} ({:?})", v.answer)));
        if (2..=k.saturating_sub(2)).contains(&r) {
            if bf {
                let constant = matches!(weighted_line_sums(code, &mg, r).constancy(code.spec()), Constancy::Constant(_));
                report.record(Check::NecessaryCondition, constant, || tag(&format!("necessary sums r={r}")));
            }
            if matches!(plane_sums_constancy(code, &mg, r)?, Constancy::Constant(_)) {
                report.record(Check::SufficientCondition, bf, || tag(&format!("plane sums r={r}")));
            }
        }
    }

    let hamming = hamming_hierarchy_with(code, k, seq);
    let pair = pair_hierarchy_with(code, k, seq);
    let bounds = match (&hamming, &pair) {
        (Ok(h), Ok(p)) => check_pair_invariants(k, n, h, p).is_ok() && mpds_report_with(code, seq).is_ok(),
        _ => false,
    };
    report.record(Check::HierarchyBounds, bounds, || tag(&format!("hierarchy bounds {hamming:?} {pair:?}")));

    if n <= LDP_CHECK_MAX_N {
        if let Ok(p) = &pair {
            let m = ldp_with(code, seq)?;
            report.record(Check::Profile, m == p.values, || tag(&format!("profile {m:?} vs {:?}", p.values)));
        }
    }
    Ok(())
}
