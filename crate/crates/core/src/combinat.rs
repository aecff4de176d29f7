//! Gaussian binomials and subspace incidence matrices.
//!
//! The incidence matrices `T_{r,s}` are only built for small ambient
//! dimensions; they back the identity checks used to validate the
//! line-sum criteria, not the criteria themselves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::{enumerate_pg_paired, subspace_leq, Subspace};
use crate::par::{self, Exec};
use crate::rational::Rational;

/// Largest side length of an incidence matrix we are willing to build.
pub const INCIDENCE_LIMIT: u128 = 10_000;

/// Number of `r`-dimensional subspaces of `F_q^k`: 1 for `r = 0`, 0 outside
/// `0..=k`.
///
/// Panics if the value does not fit in a `u128`.
pub fn gaussian_binomial(r: i64, k: i64, q: u64) -> u128 {
    if r < 0 || r > k {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    // acc after step j is the Gaussian binomial [k choose j+1]_q, an integer.
    for j in 0..r as u32 {
        let num = q.checked_pow(k as u32 - j).expect("gaussian binomial overflow") - 1;
        let den = q.pow(j + 1) - 1;
        acc = acc.checked_mul(num).expect("gaussian binomial overflow") / den;
    }
    acc
}

/// 0/1 containment matrix between `PG^r(F_q^k)` (rows) and `PG^s(F_q^k)` (columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub row_spaces: Vec<Subspace>,
    pub col_spaces: Vec<Subspace>,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn n_rows(&self) -> usize {
        self.row_spaces.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_spaces.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n_cols() + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let c = self.n_cols();
        &self.entries[i * c..(i + 1) * c]
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.n_rows(),
            cols: self.n_cols(),
            data: self.entries.iter().map(|&x| Rational::from_int(x as i128)).collect(),
        }
    }
}

#[allow(non_snake_case)]
pub fn build_T(r: usize, s: usize, k: usize, spec: &FieldSpec) -> Result<IncidenceMatrix> {
    build_incidence(r, s, k, spec, Exec::default())
}

pub fn build_incidence(r: usize, s: usize, k: usize, spec: &FieldSpec, exec: Exec) -> Result<IncidenceMatrix> {
    if r > s || s > k {
        return Err(Error::OutOfRange(format!("need 0 <= r <= s <= k, got r={r} s={s} k={k}")));
    }
    let rows = guarded_pg(r, k, spec)?;
    let cols = guarded_pg(s, k, spec)?;
    Ok(incidence_from(r, s, k, spec, rows, cols, exec))
}

fn guarded_pg(r: usize, k: usize, spec: &FieldSpec) -> Result<Vec<Subspace>> {
    let n = gaussian_binomial(r as i64, k as i64, spec.q() as u64);
    if n > INCIDENCE_LIMIT {
        return Err(Error::Guard(format!("n_{{{r},{k}}} = {n} exceeds {INCIDENCE_LIMIT}")));
    }
    enumerate_pg_paired(r, k, spec)
}

fn incidence_from(
    r: usize,
    s: usize,
    k: usize,
    spec: &FieldSpec,
    rows: Vec<Subspace>,
    cols: Vec<Subspace>,
    exec: Exec,
) -> IncidenceMatrix {
    let entries: Vec<Vec<u8>> = par::map_slice(exec, &rows, |v| {
        cols.iter().map(|w| subspace_leq(spec, v, w).expect("same ambient") as u8).collect()
    });
    IncidenceMatrix { r, s, k, row_spaces: rows, col_spaces: cols, entries: entries.concat() }
}

/// Small dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn filled(rows: usize, cols: usize, v: Rational) -> Self {
        RatMatrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::filled(n, n, Rational::ZERO);
        for i in 0..n {
            m.data[i * n + i] = Rational::ONE;
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, Rational::ONE)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        RatMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut data = vec![Rational::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        RatMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| a * c).collect() }
    }

    /// Sum of all rows.
    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// Which identity: `a` (column sums), `b` (inverse of `T_{1,k-1}`),
    /// `c` (`T_{r,k-1} T_{1,k-1}`), `d` (product rule).
    pub identity: String,
    pub params: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub q: u32,
    pub k: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, identity: &str) -> bool {
        self.checks.iter().filter(|c| c.identity == identity).all(|c| c.passed)
    }
}

/// Verifies the incidence identities for every admissible dimension triple
/// with exact rational arithmetic.
#[allow(non_snake_case)]
pub fn check_T_identities(k: usize, spec: &FieldSpec) -> Result<IdentityReport> {
    check_incidence_identities(k, spec, Exec::default())
}

pub fn check_incidence_identities(k: usize, spec: &FieldSpec, exec: Exec) -> Result<IdentityReport> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("identities need k >= 2, got {k}")));
    }
    let q = spec.q() as i128;
    let qu = spec.q() as u64;
    let pg: Vec<Vec<Subspace>> = (0..=k).map(|r| guarded_pg(r, k, spec)).collect::<Result<_>>()?;
    let mut t: Vec<Vec<Option<IncidenceMatrix>>> = vec![vec![None; k + 1]; k + 1];
    for r in 0..=k {
        for s in r..=k {
            t[r][s] = Some(incidence_from(r, s, k, spec, pg[r].clone(), pg[s].clone(), exec));
        }
    }
    let tm = |r: usize, s: usize| t[r][s].as_ref().expect("built above").to_rational();
    let nb = |r: usize, s: usize| Rational::from(gaussian_binomial(r as i64, s as i64, qu));
    let pow = |e: usize| q.pow(e as u32);
    let mut checks = Vec::new();

    // (a) every column of T_{r,s} sums to n_{r,s}
    for r in 0..=k {
        for s in r..=k {
            let expected = nb(r, s);
            let passed = tm(r, s).column_sums().iter().all(|&x| x == expected);
            checks.push(IdentityCheck { identity: "a".into(), params: format!("r={r},s={s}"), passed });
        }
    }

    // (b) T_{1,k-1} is symmetric and its inverse has the closed form
    let t1 = tm(1, k - 1);
    let n1 = t1.rows();
    let c = Rational::new(pow(k - 2) - 1, pow(k - 1) - 1);
    let inv = t1.add(&RatMatrix::ones(n1, n1).scale(-c)).scale(Rational::new(1, pow(k - 2)));
    let symmetric = t1 == t1.transpose();
    let inverse_ok = t1.mul(&inv) == RatMatrix::identity(n1) && inv.mul(&t1) == RatMatrix::identity(n1);
    checks.push(IdentityCheck { identity: "b".into(), params: "symmetric".into(), passed: symmetric });
    checks.push(IdentityCheck { identity: "b".into(), params: "inverse".into(), passed: inverse_ok });

    // (c) T_{r,k-1} T_{1,k-1} and T_{r,k-1} T_{1,k-1}^{-1} for 1 <= r <= k-1
    for r in 1..k {
        let lhs = tm(r, k - 1).mul(&t1);
        let nr = lhs.rows();
        let rhs = tm(1, r)
            .transpose()
            .scale(Rational::from_int(pow(k - r - 1)))
            .add(&RatMatrix::ones(nr, n1).scale(Rational::new(pow(k - r - 1) - 1, q - 1)));
        checks.push(IdentityCheck { identity: "c".into(), params: format!("r={r},product"), passed: lhs == rhs });

        let lhs = tm(r, k - 1).mul(&inv);
        let rhs = tm(1, r)
            .transpose()
            .scale(Rational::new(1, pow(r - 1)))
            .add(&RatMatrix::ones(nr, n1).scale(-Rational::new(pow(r - 1) - 1, pow(r - 1) * (pow(k - 1) - 1))));
        checks.push(IdentityCheck { identity: "c".into(), params: format!("r={r},inverse"), passed: lhs == rhs });
    }

    // (d) T_{r,s} T_{s,z} = n_{s-r,z-r} T_{r,z}
    for r in 1..=k {
        for s in r..=k {
            for z in s..=k {
                let lhs = tm(r, s).mul(&tm(s, z));
                let rhs = tm(r, z).scale(nb(s - r, z - r));
                checks.push(IdentityCheck {
                    identity: "d".into(),
                    params: format!("r={r},s={s},z={z}"),
                    passed: lhs == rhs,
                });
            }
        }
    }

    Ok(IdentityReport { q: spec.q(), k, checks })
}
