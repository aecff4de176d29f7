//! `r`-equiweight verdicts strictly between 1 and k - 1, where random codes
//! almost never reach the interesting branches.

use pairweight::code::{hat_code, pair_support};
use pairweight::criterion::{
    compute_mg, is_pair_equiweight, plane_sums_constancy, r_equiweight_analysis, weighted_line_sums, Constancy,
};
use pairweight::linalg::{normalized_vectors, FqMatrix};
use pairweight::oracle::bf_equiweight;
use pairweight::{Answer, FieldSpec, LinearCode, Rule, Witness};

/// Columns are the normalized nonzero vectors of `F_q^k`.
fn simplex(q: u32, k: usize) -> LinearCode {
    let spec = FieldSpec::with_order(q).unwrap();
    let cols: Vec<_> = normalized_vectors(&spec, k).collect();
    let n = cols.len();
    let mut g = FqMatrix::zeros(k, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            g.set(i, j, x);
        }
    }
    LinearCode::new(spec, g).unwrap()
}

/// Column `j` is the 4-bit number `cols[j]`, least significant bit in row 0.
fn binary_k4(cols: &[u32]) -> LinearCode {
    let spec = FieldSpec::prime(2).unwrap();
    let mut g = FqMatrix::zeros(4, cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for i in 0..4 {
            g.set(i, j, pairweight::FieldElement((c >> i) & 1));
        }
    }
    LinearCode::new(spec, g).unwrap()
}

#[test]
fn interleaved_simplex_is_equiweight_at_every_level() {
    for q in [2, 3] {
        let c = hat_code(&simplex(q, 4));
        let v = is_pair_equiweight(&c);
        assert!(v.is_yes());
        // simplex codewords have Hamming weight q^{k-1}
        assert_eq!(v.weight, Some(2 * (q as usize).pow(3)));

        let v = r_equiweight_analysis(&c, 2).unwrap();
        assert_eq!((v.answer, v.decided_by), (Answer::Yes, Rule::PlaneSufficient));
        assert!(bf_equiweight(&c, 2).unwrap());
        let mg = compute_mg(&c);
        assert!(matches!(weighted_line_sums(&c, &mg, 2).constancy(c.spec()), Constancy::Constant(_)));
        let d = pairweight::linalg::enumerate_pg(2, 4, c.spec()).unwrap();
        assert_eq!(v.weight, Some(pair_support(&c.encode_subspace(&d[0]).unwrap()).len()));

        let v = r_equiweight_analysis(&c, 3).unwrap();
        assert_eq!((v.answer, v.decided_by), (Answer::Yes, Rule::LineMultiplicities));
        assert!(bf_equiweight(&c, 3).unwrap());
    }
}

#[test]
fn necessary_without_sufficient_is_left_open() {
    // every line sees the same weighted count of spans, yet the plane sums differ
    let c = binary_k4(&[10, 12, 2, 13, 8, 11, 4, 1, 7, 9]);
    let mg = compute_mg(&c);
    assert!(matches!(weighted_line_sums(&c, &mg, 2).constancy(c.spec()), Constancy::Constant(_)));
    assert!(matches!(plane_sums_constancy(&c, &mg, 2).unwrap(), Constancy::Differs(..)));
    let v = r_equiweight_analysis(&c, 2).unwrap();
    assert_eq!((v.answer, v.decided_by), (Answer::Indeterminate, Rule::Undecided));
    match v.witness {
        Some(Witness::Planes { first, second }) => assert_ne!(first.value, second.value),
        other => panic!("expected plane witness, got {other:?}"),
    }
    assert!(!bf_equiweight(&c, 2).unwrap());
}

#[test]
fn failed_necessary_condition_is_a_no() {
    let c = binary_k4(&[1, 2, 4, 8, 3, 0]);
    let v = r_equiweight_analysis(&c, 2).unwrap();
    assert_eq!((v.answer, v.decided_by), (Answer::No, Rule::NecessaryFailed));
    assert!(!bf_equiweight(&c, 2).unwrap());
}
