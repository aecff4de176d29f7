//! Linear codes and definition-level weight and support computations.
//!
//! Pair weights here are cyclic: position `i` pairs `x_i` with
//! `x_{(i+1) mod n}`, so the last coordinate pairs with the first.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg::{null_space, rank, FqMatrix, Subspace};

/// A vector of `F_q^n`. Not necessarily a member of any particular code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codeword(pub Vec<FieldElement>);

impl Codeword {
    pub fn zero(n: usize) -> Self {
        Codeword(vec![FieldElement::ZERO; n])
    }

    pub fn from_codes(codes: &[u32]) -> Self {
        Codeword(codes.iter().map(|&c| FieldElement(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sorted set of coordinate positions in `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(pub BTreeSet<usize>);

impl IndexSet {
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet(iter.into_iter().collect())
    }
}

/// An `[n, k]` linear code over `F_q`, given by a rank-`k` generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    spec: FieldSpec,
    generator: FqMatrix,
}

impl LinearCode {
    /// Requires `n >= 2`, `1 <= k <= n` and `rank(G) = k`.
    pub fn new(spec: FieldSpec, generator: FqMatrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if n < 2 {
            return Err(Error::InvalidCode(format!("length must be at least 2, got {n}")));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("dimension must be in 1..={n}, got {k}")));
        }
        if let Some(x) = generator.entries().iter().find(|x| x.code() >= spec.q()) {
            return Err(Error::InvalidCode(format!("entry {x} outside F_{}", spec.q())));
        }
        let rk = rank(&spec, &generator);
        if rk != k {
            return Err(Error::InvalidCode(format!("generator has rank {rk}, expected {k}")));
        }
        Ok(LinearCode { spec, generator })
    }

    /// Convenience constructor from rows of integer codes.
    pub fn from_rows(spec: FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let codes: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        let g = FqMatrix::from_codes(&spec, rows.len(), n, &codes)?;
        Self::new(spec, g)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    /// Column `j` of the generator matrix, a vector of `F_q^k`.
    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        self.generator.column(j)
    }

    pub fn row(&self, i: usize) -> Codeword {
        Codeword(self.generator.row(i).to_vec())
    }

    pub fn encode(&self, y: &[FieldElement]) -> Result<Codeword> {
        self.generator.left_mul(&self.spec, y).map(Codeword)
    }

    /// Basis of the subcode `D = D~ G` for a message-space subspace `D~`.
    pub fn encode_subspace(&self, message: &Subspace) -> Result<Vec<Codeword>> {
        if message.ambient_dim() != self.k() {
            return Err(Error::Dimension(format!(
                "message subspace lives in F_q^{}, code has k = {}",
                message.ambient_dim(),
                self.k()
            )));
        }
        (0..message.dim()).map(|i| self.encode(message.basis().row(i))).collect()
    }
}

pub fn encode(code: &LinearCode, y: &[FieldElement]) -> Result<Codeword> {
    code.encode(y)
}

/// Number of cyclic positions `i` with `(x_i, x_{i+1}) != (0, 0)`.
pub fn pair_weight(x: &Codeword) -> usize {
    pair_weight_of(x.coords())
}

#[inline]
pub fn pair_weight_of(x: &[FieldElement]) -> usize {
    let n = x.len();
    (0..n).filter(|&i| !x[i].is_zero() || !x[(i + 1) % n].is_zero()).count()
}

pub fn hamming_weight(x: &Codeword) -> usize {
    x.coords().iter().filter(|c| !c.is_zero()).count()
}

fn common_length(basis: &[Codeword]) -> Option<usize> {
    let n = basis.first()?.len();
    debug_assert!(basis.iter().all(|b| b.len() == n));
    Some(n)
}

/// Union of coordinate supports of the basis vectors.
pub fn hamming_support(basis: &[Codeword]) -> IndexSet {
    let Some(n) = common_length(basis) else {
        return IndexSet::default();
    };
    (0..n).filter(|&i| basis.iter().any(|b| !b.0[i].is_zero())).collect()
}

/// Positions `i` where some vector of the span has a nonzero pair at `i`,
/// read off from the basis: `i` qualifies iff some basis vector is nonzero
/// at `i` or at `i + 1`.
pub fn pair_support(basis: &[Codeword]) -> IndexSet {
    let Some(n) = common_length(basis) else {
        return IndexSet::default();
    };
    let hs = hamming_support(basis);
    (0..n).filter(|&i| hs.contains(i) || hs.contains((i + 1) % n)).collect()
}

/// Pair weight of a subspace via its maximal cyclic runs of Hamming support:
/// `w_H + L`, or `n` when the Hamming support is everything.
pub fn pair_weight_via_runs(basis: &[Codeword]) -> usize {
    let Some(n) = common_length(basis) else {
        return 0;
    };
    let hs = hamming_support(basis);
    if hs.len() == n {
        return n;
    }
    // each run ends at exactly one i in the support whose successor is not
    let runs = hs.iter().filter(|&i| !hs.contains((i + 1) % n)).count();
    hs.len() + runs
}

/// Basis of `C_J = {c in C : (c_i, c_{i+1}) = (0, 0) for all i not in J}`.
pub fn subcode(code: &LinearCode, j: &IndexSet) -> Result<Vec<Codeword>> {
    let n = code.n();
    if let Some(bad) = j.iter().find(|&i| i >= n) {
        return Err(Error::OutOfRange(format!("index {bad} not in 0..{n}")));
    }
    let zeroed = forced_zero_positions(n, j);
    let kernel = message_kernel(code, &zeroed);
    kernel.iter().map(|y| code.encode(y)).collect()
}

/// Dimension of `C_J` without building its basis.
pub fn subcode_dim(code: &LinearCode, j: &IndexSet) -> usize {
    let zeroed = forced_zero_positions(code.n(), j);
    code.k() - constraint_rank(code, &zeroed)
}

fn forced_zero_positions(n: usize, j: &IndexSet) -> Vec<usize> {
    let mut zero = vec![false; n];
    for i in (0..n).filter(|&i| !j.contains(i)) {
        zero[i] = true;
        zero[(i + 1) % n] = true;
    }
    (0..n).filter(|&i| zero[i]).collect()
}

fn constraint_matrix(code: &LinearCode, positions: &[usize]) -> FqMatrix {
    let k = code.k();
    let rows: Vec<Vec<FieldElement>> = positions.iter().map(|&p| code.column(p)).collect();
    FqMatrix::from_rows(k, &rows).expect("columns have length k")
}

fn constraint_rank(code: &LinearCode, positions: &[usize]) -> usize {
    if positions.is_empty() {
        return 0;
    }
    rank(code.spec(), &constraint_matrix(code, positions))
}

/// Messages `y` with `y . G_p = 0` for every listed column `p`.
fn message_kernel(code: &LinearCode, positions: &[usize]) -> Vec<Vec<FieldElement>> {
    let k = code.k();
    if positions.is_empty() {
        return FqMatrix::identity(k).row_vecs();
    }
    null_space(code.spec(), &constraint_matrix(code, positions))
}

/// The `[2n, k]` code with a zero column after every column of `G`.
pub fn hat_code(code: &LinearCode) -> LinearCode {
    let (k, n) = (code.k(), code.n());
    let mut g = FqMatrix::zeros(k, 2 * n);
    for i in 0..k {
        for j in 0..n {
            g.set(i, 2 * j, code.generator().get(i, j));
        }
    }
    LinearCode::new(code.spec().clone(), g).expect("interleaving zero columns keeps rank k")
}

/// Image of a codeword under the hat embedding.
pub fn hat_word(c: &Codeword) -> Codeword {
    Codeword(c.coords().iter().flat_map(|&x| [x, FieldElement::ZERO]).collect())
}

/// The dual `[n, n-k]` code. The dual of the full space is `{0}`, which is
/// not representable here.
pub fn dual_code(code: &LinearCode) -> Result<LinearCode> {
    if code.k() == code.n() {
        return Err(Error::InvalidCode("dual of the full space is the zero code".into()));
    }
    let rows = null_space(code.spec(), code.generator());
    let h = FqMatrix::from_rows(code.n(), &rows)?;
    LinearCode::new(code.spec().clone(), h)
}
