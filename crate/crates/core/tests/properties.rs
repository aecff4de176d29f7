use proptest::prelude::*;

use pairweight::code::{hamming_weight, hat_word, pair_weight};
use pairweight::criterion::{is_hamming_equiweight, is_pair_equiweight, omega_sums, omega_sums_with_work, pair_weight_theta};
use pairweight::iso::{gap_analysis, preserves_pair_weights};
use pairweight::linalg::{normalized_vectors, Subspace};
use pairweight::oracle::{bf_equiweight, bf_hamming_equiweight, bf_iso, change_basis, random_code, Sampler};
use pairweight::{FieldSpec, IsoPair, LinearCode, Rational, Seed};

fn arb_code() -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), 2usize..10, 1usize..5, any::<u64>()).prop_filter_map(
        "k <= n",
        |(q, n, k, seed)| (k <= n).then(|| random_code(&FieldSpec::with_order(q).unwrap(), n, k, Seed(seed)).unwrap()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pair_weight_bounds_and_scaling(c in arb_code(), seed in any::<u64>()) {
        let mut s = Sampler::new(Seed(seed));
        let spec = c.spec().clone();
        let y: Vec<_> = (0..c.k()).map(|_| s.element(&spec)).collect();
        let x = c.encode(&y).unwrap();
        let (wh, wp) = (hamming_weight(&x), pair_weight(&x));
        if wh == 0 {
            prop_assert_eq!(wp, 0);
        } else if wh == c.n() {
            prop_assert_eq!(wp, c.n());
        } else {
            prop_assert!(wh < wp && wp <= 2 * wh);
        }
        let l = s.nonzero_element(&spec);
        let scaled: Vec<_> = y.iter().map(|&v| spec.mul(l, v)).collect();
        prop_assert_eq!(pair_weight(&c.encode(&scaled).unwrap()), wp);
        prop_assert_eq!(pair_weight(&hat_word(&x)), 2 * wh);
    }

    #[test]
    fn span_formula_on_lines(c in arb_code()) {
        for y in normalized_vectors(c.spec(), c.k()).take(64) {
            let line = Subspace::line(c.spec(), &y).unwrap();
            prop_assert_eq!(pair_weight_theta(&c, &line).unwrap(), pair_weight(&c.encode(&y).unwrap()));
        }
    }

    #[test]
    fn criteria_match_enumeration(c in arb_code()) {
        prop_assert_eq!(is_pair_equiweight(&c).is_yes(), bf_equiweight(&c, 1).unwrap());
        prop_assert_eq!(is_hamming_equiweight(&c).is_yes(), bf_hamming_equiweight(&c).unwrap());
        let (_, work) = omega_sums_with_work(&c);
        prop_assert!(work <= c.n() * (c.spec().q() as usize + 1));
    }

    #[test]
    fn line_sums_total(c in arb_code()) {
        // each span of dimension d has (q^d - 1)/(q - 1) lines of weight q^-d
        let q = c.spec().q() as i128;
        let total: Rational = omega_sums(&c).nonzero().map(|(_, v)| v).sum();
        let mut want = Rational::ZERO;
        for s in pairweight::criterion::column_pair_spans(&c) {
            let d = s.dim() as u32;
            want += Rational::new((q.pow(d) - 1) / (q - 1), q.pow(d));
        }
        prop_assert_eq!(total, want);
    }

    #[test]
    fn basis_change_preserves_everything(c in arb_code(), seed in any::<u64>()) {
        let a = Sampler::new(Seed(seed)).invertible(c.spec(), c.k());
        let p = IsoPair::new(c.clone(), change_basis(&c, &a).unwrap()).unwrap();
        let back = IsoPair::new(p.target().clone(), c.clone()).unwrap();
        prop_assert_eq!(preserves_pair_weights(&p).is_yes(), bf_iso(&p).unwrap());
        let (g, h) = (gap_analysis(&p), gap_analysis(&back));
        prop_assert_eq!(g.constant_gap, h.constant_gap);
        prop_assert_eq!(g.gap.map(|x| -x), h.gap);
    }

    #[test]
    fn self_map_is_trivial(c in arb_code()) {
        let p = IsoPair::new(c.clone(), c).unwrap();
        let g = gap_analysis(&p);
        prop_assert!(g.constant_gap);
        prop_assert_eq!(g.gap, Some(0));
    }
}
