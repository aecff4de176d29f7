//! Generalized Hamming and pair weight hierarchies.
//!
//! `d^r` is the smallest support size of an `r`-dimensional subcode. Subcodes
//! are enumerated through their message spaces, the points of `PG^r(F_q^k)`,
//! so each one is visited exactly once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{hamming_support, pair_support, subcode_dim, IndexSet, LinearCode};
use crate::combinat::gaussian_binomial;
use crate::criterion::{compute_mg, pair_weight_theta_with};
use crate::error::{Error, Result};
use crate::linalg::{combinations, enumerate_pg};
use crate::par::{map_slice, Exec};

/// Largest number of `r`-subspaces enumerated for one level.
pub const HIERARCHY_LIMIT: u128 = 1_000_000;

/// Largest code length accepted by [`ldp`].
pub const LDP_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HierarchyKind {
    Hamming,
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hierarchy {
    pub kind: HierarchyKind,
    /// `values[r - 1] = d^r`.
    pub values: Vec<usize>,
}

impl Hierarchy {
    /// `d^r`, 1-based.
    pub fn d(&self, r: usize) -> Option<usize> {
        r.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }
}

impl fmt::Display for Hierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", v.join(", "))
    }
}

fn check_levels(code: &LinearCode, max_r: usize) -> Result<()> {
    let k = code.k();
    if max_r == 0 || max_r > k {
        return Err(Error::OutOfRange(format!("max_r = {max_r} outside 1..={k}")));
    }
    let q = code.spec().q() as u64;
    for r in 1..=max_r {
        let count = gaussian_binomial(r as i64, k as i64, q);
        if count > HIERARCHY_LIMIT {
            return Err(Error::Guard(format!(
                "{count} subspaces of dimension {r} exceed the limit of {HIERARCHY_LIMIT}"
            )));
        }
    }
    Ok(())
}

pub fn hamming_hierarchy(code: &LinearCode, max_r: usize) -> Result<Hierarchy> {
    hamming_hierarchy_with(code, max_r, Exec::default())
}

pub fn hamming_hierarchy_with(code: &LinearCode, max_r: usize, exec: Exec) -> Result<Hierarchy> {
    check_levels(code, max_r)?;
    let mut values = Vec::with_capacity(max_r);
    for r in 1..=max_r {
        let spaces = enumerate_pg(r, code.k(), code.spec())?;
        let sizes = map_slice(exec, &spaces, |d| {
            hamming_support(&code.encode_subspace(d).expect("message space of F_q^k")).len()
        });
        values.push(sizes.into_iter().min().expect("PG^r is nonempty"));
    }
    let h = Hierarchy { kind: HierarchyKind::Hamming, values };
    check_shape(&h, code.n())?;
    Ok(h)
}

pub fn pair_hierarchy(code: &LinearCode, max_r: usize) -> Result<Hierarchy> {
    pair_hierarchy_with(code, max_r, Exec::default())
}

/// Every subcode's pair weight is computed twice, from the pair support of
/// its encoded basis and from the column-pair spans; a mismatch is a fault.
pub fn pair_hierarchy_with(code: &LinearCode, max_r: usize, exec: Exec) -> Result<Hierarchy> {
    check_levels(code, max_r)?;
    let mg = compute_mg(code);
    let mut values = Vec::with_capacity(max_r);
    for r in 1..=max_r {
        let spaces = enumerate_pg(r, code.k(), code.spec())?;
        let sizes = map_slice(exec, &spaces, |d| {
            let direct = pair_support(&code.encode_subspace(d)?).len();
            let via_spans = pair_weight_theta_with(code, &mg, d)?;
            if direct != via_spans {
                return Err(Error::Fault(format!(
                    "pair weight of subcode {d}: support gives {direct}, spans give {via_spans}"
                )));
            }
            Ok(direct)
        });
        let mut best = usize::MAX;
        for s in sizes {
            best = best.min(s?);
        }
        values.push(best);
    }
    let h = Hierarchy { kind: HierarchyKind::Pair, values };
    check_shape(&h, code.n())?;
    Ok(h)
}

/// Shape every hierarchy must have. Hamming: `1 <= d^1 < d^2 < ... <= n`.
/// Pair: `2 <= d^1 < ... < d^{k-1} <= d^k <= n`, where the last step may
/// be flat only for the full code. A violation is a fault.
pub fn check_shape(h: &Hierarchy, n: usize) -> Result<()> {
    let fault = |why: &str| Err(Error::Fault(format!("{:?} hierarchy {h} for n = {n}: {why}", h.kind)));
    let Some(&first) = h.values.first() else { return Ok(()) };
    let floor = match h.kind {
        HierarchyKind::Hamming => 1,
        HierarchyKind::Pair => 2.min(n),
    };
    if first < floor {
        return fault("first value too small");
    }
    if h.values.iter().any(|&d| d > n) {
        return fault("value exceeds n");
    }
    for w in h.values.windows(2) {
        if w[0] > w[1] {
            return fault("decreasing");
        }
    }
    Ok(())
}

/// Strictness of the pair hierarchy, which needs the code dimension: only
/// the last step `d^{k-1} <= d^k` may be flat, and then both equal `n`.
/// Also checks `d_H^r + 1 <= d_p^r <= 2 d_H^r`, with `d_p^k = n` in place
/// of the lower bound when `d_H^k = n`.
pub fn check_pair_invariants(k: usize, n: usize, hamming: &Hierarchy, pair: &Hierarchy) -> Result<()> {
    let fault = |why: String| Err(Error::Fault(format!("hamming {hamming}, pair {pair}, n = {n}: {why}")));
    check_shape(hamming, n)?;
    check_shape(pair, n)?;
    for (i, w) in pair.values.windows(2).enumerate() {
        let r = i + 1;
        if w[0] == w[1] && !(r + 1 == k && w[0] == n) {
            return fault(format!("d_p^{r} = d_p^{} below the top level", r + 1));
        }
    }
    for (i, (&dh, &dp)) in hamming.values.iter().zip(&pair.values).enumerate() {
        let r = i + 1;
        if dp > 2 * dh {
            return fault(format!("d_p^{r} > 2 d_H^{r}"));
        }
        if r == k && dh == n {
            if dp != n {
                return fault(format!("d_H^{k} = n but d_p^{k} != n"));
            }
        } else if dp < dh + 1 {
            return fault(format!("d_p^{r} < d_H^{r} + 1"));
        }
    }
    if k >= 2 && pair.values.len() == k && pair.values[k - 2] == pair.values[k - 1] {
        match hamming.values.get(k - 1) {
            Some(&dh) if dh == n => {}
            Some(_) => return fault("flat top step but d_H^k < n".to_string()),
            None => {}
        }
    }
    Ok(())
}

/// Length/dimension profile: `m_r = min{|J| : dim C_J >= r}` for
/// `r = 1..=k`, where `C_J` keeps the codewords vanishing at every pair
/// position outside `J`. Subsets are scanned by increasing size and the
/// scan stops once `C_J = C`.
pub fn ldp(code: &LinearCode) -> Result<Vec<usize>> {
    ldp_with(code, Exec::default())
}

pub fn ldp_with(code: &LinearCode, exec: Exec) -> Result<Vec<usize>> {
    let n = code.n();
    if n > LDP_MAX_N {
        return Err(Error::Guard(format!("n = {n} exceeds the subset enumeration limit {LDP_MAX_N}")));
    }
    let k = code.k();
    let mut m = vec![0usize; k];
    let mut reached = 0;
    for size in 0..=n {
        let subsets = combinations(n, size);
        let dims = map_slice(exec, &subsets, |j| subcode_dim(code, &IndexSet(j.iter().copied().collect())));
        let top = dims.into_iter().max().unwrap_or(0);
        while reached < top {
            m[reached] = size;
            reached += 1;
        }
        if reached == k {
            break;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub r: usize,
    pub value: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpdsReport {
    pub n: usize,
    pub k: usize,
    pub is_mpds: bool,
    pub hierarchy: Hierarchy,
    pub bound_table: Vec<BoundRow>,
}

/// Compares the pair hierarchy with the Singleton-type bounds
/// `d_p^r <= n - k + r + 1` (`r < k`) and `d_p^k <= n`. A code is MPDS when
/// `d_p^1 = n - k + 2`.
pub fn mpds_report(code: &LinearCode) -> Result<MpdsReport> {
    mpds_report_with(code, Exec::default())
}

pub fn mpds_report_with(code: &LinearCode, exec: Exec) -> Result<MpdsReport> {
    let (n, k) = (code.n(), code.k());
    let hierarchy = pair_hierarchy_with(code, k, exec)?;
    let bound_table: Vec<BoundRow> = hierarchy
        .values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let r = i + 1;
            let bound = if r < k { n + r + 1 - k } else { n };
            BoundRow { r, value, bound }
        })
        .collect();
    if let Some(row) = bound_table.iter().find(|row| row.value > row.bound) {
        return Err(Error::Fault(format!(
            "d_p^{} = {} exceeds the Singleton-type bound {}",
            row.r, row.value, row.bound
        )));
    }
    let is_mpds = hierarchy.values[0] == n + 2 - k;
    Ok(MpdsReport { n, k, is_mpds, hierarchy, bound_table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn code(q: u32, rows: &[&[u32]]) -> LinearCode {
        LinearCode::from_rows(FieldSpec::with_order(q).unwrap(), rows).unwrap()
    }

    #[test]
    fn hamming_examples() {
        let c = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(hamming_hierarchy(&c, 2).unwrap().values, vec![2, 4]);
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(hamming_hierarchy(&c, 2).unwrap().values, vec![2, 3]);
        let c = code(3, &[&[1, 0, 2, 2, 0]]);
        assert_eq!(hamming_hierarchy(&c, 1).unwrap().values, vec![3]);
    }

    #[test]
    fn pair_examples() {
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(pair_hierarchy(&c, 2).unwrap().values, vec![3, 3]);
        let c = code(3, &[&[1, 0, 1, 1], &[0, 1, 2, 1]]);
        assert_eq!(pair_hierarchy(&c, 2).unwrap().values, vec![4, 4]);
        let c = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(pair_hierarchy(&c, 2).unwrap().values, vec![3, 4]);
        assert_eq!(pair_hierarchy(&c, 1).unwrap().values, vec![3]);
    }

    #[test]
    fn range_errors() {
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(matches!(pair_hierarchy(&c, 0), Err(Error::OutOfRange(_))));
        assert!(matches!(hamming_hierarchy(&c, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn guard_trips_on_large_levels() {
        let f = FieldSpec::with_order(31).unwrap();
        let rows: Vec<Vec<u32>> = (0..5).map(|i| (0..6).map(|j| u32::from(i == j || j == 5)).collect()).collect();
        let refs: Vec<&[u32]> = rows.iter().map(|r| r.as_slice()).collect();
        let c = LinearCode::from_rows(f, &refs).unwrap();
        assert!(matches!(pair_hierarchy(&c, 2), Err(Error::Guard(_))));
    }

    #[test]
    fn ldp_examples() {
        let c = code(2, &[&[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(ldp(&c).unwrap()[0], 2);
        let c = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(ldp(&c).unwrap(), vec![3, 3]);
        let c = code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(ldp(&c).unwrap(), pair_hierarchy(&c, 2).unwrap().values);
    }

    #[test]
    fn ldp_guard() {
        let row: Vec<u32> = (0..21).map(|i| u32::from(i % 2 == 0)).collect();
        let c = code(2, &[&row]);
        assert!(matches!(ldp(&c), Err(Error::Guard(_))));
    }

    #[test]
    fn mpds_examples() {
        let r = mpds_report(&code(3, &[&[1, 0, 1, 1], &[0, 1, 2, 1]])).unwrap();
        assert!(r.is_mpds);
        assert_eq!(r.bound_table[0], BoundRow { r: 1, value: 4, bound: 4 });
        assert_eq!(r.bound_table[1], BoundRow { r: 2, value: 4, bound: 4 });
        assert!(!mpds_report(&code(2, &[&[1, 1, 0, 0], &[0, 1, 1, 0]])).unwrap().is_mpds);
        assert!(mpds_report(&code(2, &[&[1, 1, 0], &[0, 1, 1]])).unwrap().is_mpds);
    }

    #[test]
    fn invariants_hold_on_examples() {
        for c in [
            code(2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
            code(2, &[&[1, 1, 0], &[0, 1, 1]]),
            code(3, &[&[1, 0, 1, 1], &[0, 1, 2, 1]]),
        ] {
            let h = hamming_hierarchy(&c, c.k()).unwrap();
            let p = pair_hierarchy(&c, c.k()).unwrap();
            check_pair_invariants(c.k(), c.n(), &h, &p).unwrap();
        }
    }

    #[test]
    fn invariant_checker_flags_bad_input() {
        let h = Hierarchy { kind: HierarchyKind::Hamming, values: vec![2, 3] };
        let p = Hierarchy { kind: HierarchyKind::Pair, values: vec![5, 5] };
        assert!(matches!(check_pair_invariants(2, 6, &h, &p), Err(Error::Fault(_))));
        let p = Hierarchy { kind: HierarchyKind::Pair, values: vec![3, 2] };
        assert!(matches!(check_shape(&p, 6), Err(Error::Fault(_))));
    }

    #[test]
    fn strategies_agree() {
        let c = code(3, &[&[1, 0, 1, 2, 0, 1], &[0, 1, 1, 0, 2, 2], &[0, 0, 0, 1, 1, 1]]);
        assert_eq!(pair_hierarchy_with(&c, 3, Exec::Sequential).unwrap(), pair_hierarchy_with(&c, 3, Exec::Parallel).unwrap());
        assert_eq!(ldp_with(&c, Exec::Sequential).unwrap(), ldp_with(&c, Exec::Parallel).unwrap());
    }
}
