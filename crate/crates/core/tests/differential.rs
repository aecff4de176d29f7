use std::time::Instant;

use pairweight::battery::{grid, run_battery, Check};
use pairweight::{Exec, Seed};

const SAMPLES: usize = 200;

#[test]
fn random_codes_agree_with_enumeration() {
    let cells = grid(&[2, 3], &[2, 3, 4], &[4, 5, 6, 7, 8, 9, 10]);
    assert_eq!(cells.len(), 42);
    let start = Instant::now();
    let report = run_battery(&cells, SAMPLES, Seed(2024), Exec::default()).unwrap();
    println!("{report}\nelapsed {:?}", start.elapsed());
    assert!(report.passed(), "{report}");

    let cov = &report.coverage;
    assert_eq!(cov.codes, 42 * SAMPLES);
    for c in [Check::SpanFormula, Check::RunFormula, Check::Equiweight, Check::IsoPermutation, Check::Profile] {
        assert!(report.tally(c).checked >= cov.codes, "{c:?} under-sampled");
    }
    // both outcomes must actually occur
    assert!(cov.equiweight > 0 && cov.equiweight < cov.codes);
    assert!(cov.iso_permutation_no > 0 && cov.iso_permutation_yes > 0);
    assert!(cov.r_yes > 0 && cov.r_no > 0);
}

#[test]
fn same_seed_same_report() {
    let cells = grid(&[3], &[3], &[6]);
    let a = run_battery(&cells, 20, Seed(5), Exec::Sequential).unwrap();
    let b = run_battery(&cells, 20, Seed(5), Exec::Parallel).unwrap();
    assert_eq!(a, b);
    let c = run_battery(&cells, 20, Seed(6), Exec::Sequential).unwrap();
    assert_eq!(a.tally(Check::Equiweight).checked, c.tally(Check::Equiweight).checked);
}
