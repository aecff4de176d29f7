//! Fast decision procedures built on the column-pair spans of a generator
//! matrix.
//!
//! For a generator `G = (G_0, ..., G_{n-1})` let `S_j = <G_j, G_{j+1}>`
//! (indices mod `n`). The multiset of the `S_j` is recorded in an [`MgMap`].
//! Every pair weight of the code can be read off it: a subcode with message
//! space `D` has pair weight `n - #{j : S_j ⊆ D^⊥}`. The line sums
//! `f_i = Σ_{j : V_i ⊆ S_j} q^{-dim S_j}` over the lines `V_i` of `F_q^k`
//! are constant exactly when the code is pair equiweight, and only lines
//! lying in some `S_j` can have a nonzero sum, so at most `n (q + 1)` lines
//! are ever touched.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{hat_code, pair_support, LinearCode};
use crate::combinat::gaussian_binomial;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg::{
    enumerate_pg, line_count, line_from_index, line_index, orthogonal_complement, span_of_pair, subspace_leq,
    Subspace,
};
use crate::rational::Rational;

/// Cap on the planes enumerated by the plane-sum sufficient condition.
pub const PLANE_LIMIT: u128 = 1_000_000;

/// Multiplicities of the column-pair spans `S_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgMap {
    k: usize,
    n: usize,
    counts: BTreeMap<Subspace, usize>,
}

impl MgMap {
    pub fn get(&self, v: &Subspace) -> usize {
        self.counts.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Subspace, usize)> {
        self.counts.iter().map(|(v, &c)| (v, c))
    }

    /// Always equals the code length.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entries whose key has the given dimension.
    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = (&Subspace, usize)> {
        self.iter().filter(move |(v, _)| v.dim() == d)
    }
}

/// The spans `S_j = <G_j, G_{(j+1) mod n}>`, in column order.
pub fn column_pair_spans(code: &LinearCode) -> Vec<Subspace> {
    let n = code.n();
    let cols: Vec<Vec<FieldElement>> = (0..n).map(|j| code.column(j)).collect();
    (0..n)
        .map(|j| span_of_pair(code.spec(), &cols[j], &cols[(j + 1) % n]).expect("columns share length k"))
        .collect()
}

pub fn compute_mg(code: &LinearCode) -> MgMap {
    let mut counts = BTreeMap::new();
    for s in column_pair_spans(code) {
        *counts.entry(s).or_insert(0) += 1;
    }
    MgMap { k: code.k(), n: code.n(), counts }
}

/// Number of `j` with `S_j ⊆ U`.
pub fn theta_g(spec: &FieldSpec, mg: &MgMap, u: &Subspace) -> Result<usize> {
    if u.ambient_dim() != mg.k {
        return Err(Error::Dimension(format!("subspace of F_q^{} for k = {}", u.ambient_dim(), mg.k)));
    }
    let mut total = 0;
    for (v, c) in mg.iter() {
        if subspace_leq(spec, v, u)? {
            total += c;
        }
    }
    Ok(total)
}

/// Pair weight of the subcode `D~ G` computed as `n - θ_G(D~^⊥)`.
pub fn pair_weight_theta(code: &LinearCode, dtilde: &Subspace) -> Result<usize> {
    let mg = compute_mg(code);
    pair_weight_theta_with(code, &mg, dtilde)
}

pub fn pair_weight_theta_with(code: &LinearCode, mg: &MgMap, dtilde: &Subspace) -> Result<usize> {
    let comp = orthogonal_complement(code.spec(), dtilde);
    Ok(code.n() - theta_g(code.spec(), mg, &comp)?)
}

/// A line of `F_q^k` together with a value attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineValue {
    /// Position in the lexicographic order of normalized vectors.
    pub index: u64,
    /// Normalized generator of the line.
    pub line: Vec<FieldElement>,
    pub value: Rational,
}

impl fmt::Display for LineValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.line.iter().map(|x| x.to_string()).collect();
        write!(f, "line #{} <({})> = {}", self.index, v.join(","), self.value)
    }
}

/// Outcome of testing a function on lines (or planes) for constancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constancy<W> {
    Constant(Rational),
    Differs(W, W),
}

/// A function on the lines of `F_q^k`, stored sparsely: lines absent from
/// the map have value zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProfile {
    k: usize,
    values: BTreeMap<Subspace, Rational>,
}

impl LineProfile {
    pub fn from_map(k: usize, mut values: BTreeMap<Subspace, Rational>) -> Self {
        values.retain(|_, v| !v.is_zero());
        LineProfile { k, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, line: &Subspace) -> Rational {
        self.values.get(line).copied().unwrap_or(Rational::ZERO)
    }

    /// Value on the line spanned by `v` (any nonzero generator).
    pub fn value_at(&self, spec: &FieldSpec, v: &[FieldElement]) -> Result<Rational> {
        Ok(self.get(&Subspace::line(spec, v)?))
    }

    /// Lines with a nonzero value.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Subspace, Rational)> {
        self.values.iter().map(|(l, &v)| (l, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.len()
    }

    /// Entry-wise difference.
    pub fn difference(&self, other: &LineProfile) -> LineProfile {
        let mut values = self.values.clone();
        for (l, &v) in &other.values {
            *values.entry(l.clone()).or_insert(Rational::ZERO) += -v;
        }
        LineProfile::from_map(self.k, values)
    }

    /// Values on every line, in [`enumerate_pg`]`(1, k)` order.
    pub fn dense(&self, spec: &FieldSpec) -> Result<Vec<Rational>> {
        Ok(enumerate_pg(1, self.k, spec)?.iter().map(|l| self.get(l)).collect())
    }

    fn line_value(&self, spec: &FieldSpec, line: &Subspace) -> LineValue {
        let v = line.line_vector().expect("profile keys are lines").to_vec();
        LineValue { index: line_index(spec, &v).expect("normalized"), line: v, value: self.get(line) }
    }

    /// Whether the function is constant over all lines, with a pair of lines
    /// carrying different values when it is not.
    pub fn constancy(&self, spec: &FieldSpec) -> Constancy<LineValue> {
        let total = line_count(spec, self.k);
        let mut it = self.values.iter();
        let Some((first_line, &first)) = it.next() else {
            return Constancy::Constant(Rational::ZERO);
        };
        if (self.values.len() as u64) < total {
            // some line is missing from the map and carries zero
            let missing = (0..total)
                .map(|i| Subspace::line(spec, &line_from_index(spec, self.k, i)).expect("nonzero"))
                .find(|l| !self.values.contains_key(l))
                .expect("fewer entries than lines");
            let a = self.line_value(spec, first_line);
            let b = self.line_value(spec, &missing);
            return if a.index < b.index { Constancy::Differs(a, b) } else { Constancy::Differs(b, a) };
        }
        match it.find(|(_, &v)| v != first) {
            None => Constancy::Constant(first),
            Some((other, _)) => Constancy::Differs(self.line_value(spec, first_line), self.line_value(spec, other)),
        }
    }
}

/// Line sums `f_i = Σ_j [V_i ⊆ S_j] q^{-dim S_j}`, touching only lines that
/// lie in some `S_j`. Also returns the number of distinct lines touched.
pub fn omega_sums_with_work(code: &LinearCode) -> (LineProfile, usize) {
    let spec = code.spec();
    let q = spec.q() as i128;
    let mut values: BTreeMap<Subspace, Rational> = BTreeMap::new();
    for s in column_pair_spans(code) {
        if s.dim() == 0 {
            continue;
        }
        let w = Rational::new(1, q.pow(s.dim() as u32));
        for line in s.lines(spec) {
            *values.entry(line).or_insert(Rational::ZERO) += w;
        }
    }
    let touched = values.len();
    (LineProfile::from_map(code.k(), values), touched)
}

pub fn omega_sums(code: &LinearCode) -> LineProfile {
    omega_sums_with_work(code).0
}

/// The same line sums computed the other way round: for every line `V_i`,
/// add `m_G(V) / q^{dim V}` over the spans `V ⊇ V_i` with
/// `dim V <= max_dim`. With `max_dim >= 2` this agrees term by term with
/// [`omega_sums`]. Dense, so only for small `k`.
pub fn omega_sums_by_mg(code: &LinearCode, max_dim: usize) -> Result<Vec<Rational>> {
    let spec = code.spec();
    let q = spec.q() as i128;
    let mg = compute_mg(code);
    let lines = enumerate_pg(1, code.k(), spec)?;
    lines
        .iter()
        .map(|line| {
            let mut acc = Rational::ZERO;
            for (v, c) in mg.iter() {
                if v.dim() == 0 || v.dim() > max_dim {
                    continue;
                }
                if subspace_leq(spec, line, v)? {
                    acc += Rational::new(c as i128, q.pow(v.dim() as u32));
                }
            }
            Ok(acc)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Answer {
    Yes,
    No,
    Indeterminate,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Indeterminate => "INDETERMINATE",
        })
    }
}

/// The rule that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// One-dimensional codes are trivially equiweight.
    SingleLine,
    /// Constancy of the line sums (exact for `r = 1`).
    LineSums,
    /// Constancy of `m_G` on lines (exact for `r = k - 1`).
    LineMultiplicities,
    /// Constant `m_G` on planes reduces the question to lines.
    PlaneConstant,
    /// The plane hypothesis does not hold, or `k < 3`.
    PlaneHypothesisFailed,
    /// The weighted line sums, necessary for `r`-equiweight, are not constant.
    NecessaryFailed,
    /// The plane sums, sufficient for `r`-equiweight, are constant.
    PlaneSufficient,
    /// Necessary condition holds but the sufficient one does not.
    Undecided,
    /// Pair weight of the zero-interleaved code.
    InterleavedCode,
    /// Line-sum differences of two codes plus one matching codeword.
    GapSums,
    /// Exhaustive enumeration.
    BruteForce,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
        Rule::SingleLine => "single-line",
        Rule::LineSums => "line-sums",
        Rule::LineMultiplicities => "line-multiplicities",
        Rule::PlaneConstant => "plane-constant",
        Rule::PlaneHypothesisFailed => "plane-hypothesis-failed",
        Rule::NecessaryFailed => "necessary-failed",
        Rule::PlaneSufficient => "plane-sufficient",
        Rule::Undecided => "undecided",
        Rule::InterleavedCode => "interleaved-code",
        Rule::GapSums => "gap-sums",
        Rule::BruteForce => "brute-force",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneValue {
    /// RREF basis rows of the plane.
    pub plane: Vec<Vec<FieldElement>>,
    pub value: Rational,
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two lines where a line function takes different values.
    Lines { first: LineValue, second: LineValue },
    /// Two planes where the plane sums differ.
    Planes { first: PlaneValue, second: PlaneValue },
    /// Constant but nonzero weight gap `w_p(c) - w_p(φ(c))`.
    Gap { gap: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub decided_by: Rule,
    /// Common weight of the `r`-dimensional subcodes, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes(rule: Rule, weight: Option<usize>) -> Self {
        Verdict { answer: Answer::Yes, decided_by: rule, weight, witness: None }
    }

    pub fn no(rule: Rule, witness: Witness) -> Self {
        Verdict { answer: Answer::No, decided_by: rule, weight: None, witness: Some(witness) }
    }

    pub fn indeterminate(rule: Rule, witness: Option<Witness>) -> Self {
        Verdict { answer: Answer::Indeterminate, decided_by: rule, weight: None, witness }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

/// Span of the first `r` standard basis vectors of `F_q^k`.
fn coordinate_subspace(spec: &FieldSpec, k: usize, r: usize) -> Subspace {
    if r == 0 {
        return Subspace::zero(k);
    }
    let rows: Vec<Vec<FieldElement>> = (0..r)
        .map(|i| (0..k).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }).collect())
        .collect();
    Subspace::span(spec, k, &rows).expect("rows have length k")
}

fn common_weight(code: &LinearCode, mg: &MgMap, r: usize) -> Result<usize> {
    pair_weight_theta_with(code, mg, &coordinate_subspace(code.spec(), code.k(), r))
}

/// Whether every nonzero codeword has the same pair weight.
pub fn is_pair_equiweight(code: &LinearCode) -> Verdict {
    if code.k() == 1 {
        let w = pair_support(&[code.row(0)]).len();
        return Verdict::yes(Rule::SingleLine, Some(w));
    }
    let mg = compute_mg(code);
    match omega_sums(code).constancy(code.spec()) {
        Constancy::Constant(_) => {
            let w = common_weight(code, &mg, 1).expect("k matches");
            Verdict::yes(Rule::LineSums, Some(w))
        }
        Constancy::Differs(first, second) => Verdict::no(Rule::LineSums, Witness::Lines { first, second }),
    }
}

/// Hamming equiweight test through the zero-interleaved code, whose pair
/// weights are twice the Hamming weights.
pub fn is_hamming_equiweight(code: &LinearCode) -> Verdict {
    let mut v = is_pair_equiweight(&hat_code(code));
    v.weight = v.weight.map(|w| w / 2);
    if v.decided_by == Rule::LineSums {
        v.decided_by = Rule::InterleavedCode;
    }
    v
}

/// `m_G` restricted to the lines, as a line profile.
fn line_multiplicities(mg: &MgMap) -> LineProfile {
    let values = mg.of_dim(1).map(|(l, c)| (l.clone(), Rational::from(c))).collect();
    LineProfile::from_map(mg.k, values)
}

/// Whether `m_G` is constant on all planes of `F_q^k`.
fn plane_multiplicities_constant(spec: &FieldSpec, mg: &MgMap) -> bool {
    let planes = gaussian_binomial(2, mg.k as i64, spec.q() as u64);
    let counts: Vec<usize> = mg.of_dim(2).map(|(_, c)| c).collect();
    if counts.is_empty() {
        return true;
    }
    counts.len() as u128 == planes && counts.iter().all(|&c| c == counts[0])
}

/// Equiweight test for `k >= 3` codes whose `m_G` is constant on planes:
/// then the code is pair equiweight iff `m_G` is constant on lines.
/// Returns INDETERMINATE when that hypothesis fails.
pub fn cor43_check(code: &LinearCode) -> Verdict {
    if code.k() < 3 {
        return Verdict::indeterminate(Rule::PlaneHypothesisFailed, None);
    }
    let spec = code.spec();
    let mg = compute_mg(code);
    if !plane_multiplicities_constant(spec, &mg) {
        return Verdict::indeterminate(Rule::PlaneHypothesisFailed, None);
    }
    match line_multiplicities(&mg).constancy(spec) {
        Constancy::Constant(_) => Verdict::yes(Rule::PlaneConstant, Some(common_weight(code, &mg, 1).expect("k"))),
        Constancy::Differs(first, second) => Verdict::no(Rule::PlaneConstant, Witness::Lines { first, second }),
    }
}

/// Decides whether every `r`-dimensional subcode has the same pair weight,
/// `1 <= r <= k - 1`.
///
/// Exact for `r = 1` and `r = k - 1`. In between, a NO comes from a failed
/// necessary condition and a YES from a satisfied sufficient one; anything
/// else is INDETERMINATE and can be settled by
/// [`crate::oracle::bf_equiweight`].
pub fn r_equiweight_analysis(code: &LinearCode, r: usize) -> Result<Verdict> {
    let k = code.k();
    if k < 2 || r == 0 || r >= k {
        return Err(Error::OutOfRange(format!("need 1 <= r <= k - 1, got r = {r}, k = {k}")));
    }
    let spec = code.spec();
    let mg = compute_mg(code);
    if r == k - 1 {
        return Ok(match line_multiplicities(&mg).constancy(spec) {
            Constancy::Constant(_) => Verdict::yes(Rule::LineMultiplicities, Some(common_weight(code, &mg, r)?)),
            Constancy::Differs(first, second) => {
                Verdict::no(Rule::LineMultiplicities, Witness::Lines { first, second })
            }
        });
    }
    if r == 1 {
        return Ok(is_pair_equiweight(code));
    }

    if let Constancy::Differs(first, second) = weighted_line_sums(code, &mg, r).constancy(spec) {
        return Ok(Verdict::no(Rule::NecessaryFailed, Witness::Lines { first, second }));
    }
    match plane_sums_constancy(code, &mg, r)? {
        Constancy::Constant(_) => Ok(Verdict::yes(Rule::PlaneSufficient, Some(common_weight(code, &mg, r)?))),
        Constancy::Differs(first, second) => {
            Ok(Verdict::indeterminate(Rule::Undecided, Some(Witness::Planes { first, second })))
        }
    }
}

/// `Σ_{V ⊇ V_i, dim V <= 2} n_{k-r-dim V, k-1-dim V} / q^{dim V} · m_G(V)`
/// for every line `V_i`; constant whenever the code is `r`-equiweight.
pub fn weighted_line_sums(code: &LinearCode, mg: &MgMap, r: usize) -> LineProfile {
    let spec = code.spec();
    let k = code.k() as i64;
    let r = r as i64;
    let q = spec.q() as u64;
    let coeff = |d: i64| {
        let nb = gaussian_binomial(k - r - d, k - 1 - d, q);
        Rational::from(nb) / Rational::from_int((q as i128).pow(d as u32))
    };
    let (c1, c2) = (coeff(1), coeff(2));
    let mut values: BTreeMap<Subspace, Rational> = BTreeMap::new();
    for (v, c) in mg.iter() {
        match v.dim() {
            1 => *values.entry(v.clone()).or_insert(Rational::ZERO) += c1 * Rational::from(c),
            2 => {
                for line in v.lines(spec) {
                    *values.entry(line).or_insert(Rational::ZERO) += c2 * Rational::from(c);
                }
            }
            _ => {}
        }
    }
    LineProfile::from_map(code.k(), values)
}

/// Constancy over all planes `P` of `m_G(P) + Σ_{L ⊂ P} m_G(L) / n_{1,k-r-1}`.
pub fn plane_sums_constancy(code: &LinearCode, mg: &MgMap, r: usize) -> Result<Constancy<PlaneValue>> {
    let spec = code.spec();
    let k = code.k();
    let planes = gaussian_binomial(2, k as i64, spec.q() as u64);
    if planes > PLANE_LIMIT {
        return Err(Error::Guard(format!("{planes} planes exceed {PLANE_LIMIT}")));
    }
    let denom = Rational::from(gaussian_binomial(1, (k - r - 1) as i64, spec.q() as u64));
    let value = |p: &Subspace| {
        let lines: usize = p.lines(spec).iter().map(|l| mg.get(l)).sum();
        Rational::from(mg.get(p)) + Rational::from(lines) / denom
    };
    let all = enumerate_pg(2, k, spec)?;
    let pv = |p: &Subspace| PlaneValue { plane: p.basis().row_vecs(), value: value(p) };
    let first = &all[0];
    let first_value = value(first);
    Ok(match all.iter().find(|p| value(p) != first_value) {
        None => Constancy::Constant(first_value),
        Some(other) => Constancy::Differs(pv(first), pv(other)),
    })
}
