//! Dense matrices over `F_q`, reduced row-echelon form, and canonical
//! subspaces of `F_q^k`.
//!
//! A [`Subspace`] is always stored by its RREF basis, which makes it a unique
//! key: two subspaces are equal exactly when their bases are identical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::gaussian_binomial;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Hard cap on the number of subspaces materialized by one enumeration.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(FqMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from row vectors of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(FqMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix from integer codes, range-checked against `spec`.
    pub fn from_codes(spec: &FieldSpec, rows: usize, cols: usize, codes: &[u32]) -> Result<Self> {
        let data = codes.iter().map(|&c| spec.element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(rows, cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Row vector times matrix: `y * self`.
    pub fn left_mul(&self, spec: &FieldSpec, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if y.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                y.len(),
                self.rows
            )));
        }
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = spec.add(*o, spec.mul(yi, g));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, spec: &FieldSpec, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            data.extend(other.left_mul(spec, self.row(i))?);
        }
        FqMatrix::new(self.rows, other.cols, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Row-equivalent matrix in reduced row-echelon form, same shape as the input.
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(spec: &FieldSpec, m: &FqMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = spec.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = spec.mul(a.get(r, j), inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = spec.sub(a.get(i, j), spec.mul(f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: r, pivots }
}

pub fn rank(spec: &FieldSpec, m: &FqMatrix) -> usize {
    rref(spec, m).rank
}

/// Basis of `{x : M x^T = 0}`, one vector per free column of the RREF.
pub fn null_space(spec: &FieldSpec, m: &FqMatrix) -> Vec<Vec<FieldElement>> {
    let red = rref(spec, m);
    let k = m.cols();
    let mut is_pivot = vec![false; k];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..k)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![FieldElement::ZERO; k];
            x[f] = FieldElement::ONE;
            for (i, &p) in red.pivots.iter().enumerate() {
                x[p] = spec.neg(red.matrix.get(i, f));
            }
            x
        })
        .collect()
}

/// Scales a vector so its first nonzero coordinate is 1. Zero stays zero.
pub fn normalize(spec: &FieldSpec, v: &[FieldElement]) -> Vec<FieldElement> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = spec.inv(lead).expect("nonzero");
            v.iter().map(|&x| spec.mul(x, inv)).collect()
        }
    }
}

pub fn dot(spec: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| spec.add(acc, spec.mul(x, y)))
}

/// A subspace of `F_q^k`, keyed by its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FqMatrix,
}

impl Subspace {
    pub fn zero(k: usize) -> Self {
        Subspace { ambient_dim: k, basis: FqMatrix::zeros(0, k) }
    }

    pub fn full(k: usize) -> Self {
        Subspace { ambient_dim: k, basis: FqMatrix::identity(k) }
    }

    /// Span of the rows of `m`.
    pub fn row_space(spec: &FieldSpec, m: &FqMatrix) -> Self {
        let red = rref(spec, m);
        let k = m.cols();
        let data = red.matrix.entries()[..red.rank * k].to_vec();
        Subspace { ambient_dim: k, basis: FqMatrix { rows: red.rank, cols: k, data } }
    }

    /// Span of a set of vectors of length `k`.
    pub fn span(spec: &FieldSpec, k: usize, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        let m = FqMatrix::from_rows(k, vectors)?;
        Ok(Self::row_space(spec, &m))
    }

    /// Takes a basis already in RREF without re-reducing it.
    fn from_rref_unchecked(basis: FqMatrix) -> Self {
        Subspace { ambient_dim: basis.cols(), basis }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
            .collect()
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, spec: &FieldSpec, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let f = w[p];
            if f.is_zero() {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = spec.sub(*x, spec.mul(f, b));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, spec: &FieldSpec, other: &Subspace) -> Result<bool> {
        subspace_leq(spec, self, other)
    }

    pub fn orthogonal_complement(&self, spec: &FieldSpec) -> Subspace {
        orthogonal_complement(spec, self)
    }

    /// All one-dimensional subspaces of `self`, each given by its normalized
    /// generator. Combinations `c * basis` with `c` normalized are already
    /// normalized because the basis is in RREF.
    pub fn lines(&self, spec: &FieldSpec) -> Vec<Subspace> {
        let d = self.dim();
        let k = self.ambient_dim;
        normalized_vectors(spec, d)
            .map(|c| {
                let v = self.basis.left_mul(spec, &c).expect("length matches");
                Subspace::from_rref_unchecked(FqMatrix { rows: 1, cols: k, data: v })
            })
            .collect()
    }

    /// Normalized generator of a line.
    pub fn line_vector(&self) -> Option<&[FieldElement]> {
        (self.dim() == 1).then(|| self.basis.row(0))
    }

    pub fn line(spec: &FieldSpec, v: &[FieldElement]) -> Result<Self> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::OutOfRange("the zero vector spans no line".into()));
        }
        let k = v.len();
        Ok(Subspace::from_rref_unchecked(FqMatrix { rows: 1, cols: k, data: normalize(spec, v) }))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "<0>");
        }
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                let r: Vec<String> = self.basis.row(i).iter().map(|x| x.to_string()).collect();
                format!("({})", r.join(","))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

pub fn orthogonal_complement(spec: &FieldSpec, v: &Subspace) -> Subspace {
    let k = v.ambient_dim();
    if v.dim() == 0 {
        return Subspace::full(k);
    }
    let kernel = null_space(spec, v.basis());
    Subspace::span(spec, k, &kernel).expect("kernel vectors have length k")
}

pub fn subspace_leq(spec: &FieldSpec, v: &Subspace, w: &Subspace) -> Result<bool> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::Dimension(format!(
            "ambient dimensions {} and {} differ",
            v.ambient_dim(),
            w.ambient_dim()
        )));
    }
    if v.dim() > w.dim() {
        return Ok(false);
    }
    Ok((0..v.dim()).all(|i| w.contains(spec, v.basis().row(i))))
}

pub fn span_of_pair(spec: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<Subspace> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("vectors of length {} and {}", a.len(), b.len())));
    }
    Subspace::span(spec, a.len(), &[a.to_vec(), b.to_vec()])
}

/// Nonzero vectors of `F_q^k` whose first nonzero coordinate is 1, in
/// lexicographic order of their coordinate codes.
pub fn normalized_vectors(spec: &FieldSpec, k: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let total = line_count(spec, k);
    (0..total).map(move |i| line_from_index(spec, k, i))
}

/// `n_{1,k} = (q^k - 1)/(q - 1)`.
pub fn line_count(spec: &FieldSpec, k: usize) -> u64 {
    let q = spec.q() as u64;
    (q.pow(k as u32) - 1) / (q - 1)
}

/// Position of a normalized vector in [`normalized_vectors`] order.
pub fn line_index(spec: &FieldSpec, v: &[FieldElement]) -> Option<u64> {
    let k = v.len();
    let q = spec.q() as u64;
    let p = v.iter().position(|x| !x.is_zero())?;
    if v[p] != FieldElement::ONE {
        return None;
    }
    let start = (q.pow((k - 1 - p) as u32) - 1) / (q - 1);
    let tail = v[p + 1..].iter().fold(0u64, |acc, x| acc * q + x.code() as u64);
    Some(start + tail)
}

/// Inverse of [`line_index`].
pub fn line_from_index(spec: &FieldSpec, k: usize, index: u64) -> Vec<FieldElement> {
    let q = spec.q() as u64;
    // blocks by leading position: p = k-1 first (size 1), then k-2 (size q), ...
    let mut start = 0u64;
    let mut p = k - 1;
    loop {
        let size = q.pow((k - 1 - p) as u32);
        if index < start + size || p == 0 {
            let mut tail = index - start;
            let mut v = vec![FieldElement::ZERO; k];
            v[p] = FieldElement::ONE;
            for j in (p + 1..k).rev() {
                v[j] = FieldElement((tail % q) as u32);
                tail /= q;
            }
            return v;
        }
        start += size;
        p -= 1;
    }
}

/// All `r`-dimensional subspaces of `F_q^k`, sorted lexicographically by
/// their RREF basis entries.
pub fn enumerate_pg(r: usize, k: usize, spec: &FieldSpec) -> Result<Vec<Subspace>> {
    if r > k {
        return Err(Error::OutOfRange(format!("subspace dimension {r} exceeds ambient {k}")));
    }
    let count = gaussian_binomial(r as i64, k as i64, spec.q() as u64);
    if count > ENUMERATION_LIMIT {
        return Err(Error::Guard(format!("PG^{r}(F_{}^{k}) has {count} elements", spec.q())));
    }
    if r == 0 {
        return Ok(vec![Subspace::zero(k)]);
    }
    if r == 1 {
        return Ok(normalized_vectors(spec, k)
            .map(|v| Subspace::from_rref_unchecked(FqMatrix { rows: 1, cols: k, data: v }))
            .collect());
    }
    let q = spec.q();
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(k, r) {
        // free positions: (row i, col j) with j > pivot_i and j not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (p + 1..k).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut m = FqMatrix::zeros(r, k);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, FieldElement::ONE);
            }
            for (&(i, j), &d) in free.iter().zip(&digits) {
                m.set(i, j, FieldElement(d));
            }
            out.push(Subspace::from_rref_unchecked(m));
            // odometer
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.basis.data.cmp(&b.basis.data));
    Ok(out)
}

/// `PG^r(F_q^k)` in the indexing used for incidence matrices: lexicographic
/// for `r <= k/2`, and for `r > k/2` the `i`-th element is the orthogonal
/// complement of the `i`-th element of `PG^{k-r}`.
pub fn enumerate_pg_paired(r: usize, k: usize, spec: &FieldSpec) -> Result<Vec<Subspace>> {
    if r > k {
        return Err(Error::OutOfRange(format!("subspace dimension {r} exceeds ambient {k}")));
    }
    if 2 * r <= k {
        return enumerate_pg(r, k, spec);
    }
    Ok(enumerate_pg(k - r, k, spec)?.iter().map(|v| orthogonal_complement(spec, v)).collect())
}

/// `r`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
