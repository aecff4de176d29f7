//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use pairweight::battery::{grid, run_battery, Check};
use pairweight::combinat::check_T_identities;
use pairweight::criterion::omega_sums;
use pairweight::{Answer, Exec, FieldSpec, Rational, Seed, Witness};
use pairweight_cli::{parse_code_file, run, Report};

type Checked = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Checked);

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> Result<Report, String> {
    let mut full = vec!["pairweight", "--json"];
    full.extend_from_slice(args);
    let out = run(full);
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| format!("{args:?}: bad JSON: {e}"))
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn equiweight_pair(file: &str) -> Result<(Answer, Answer, Option<usize>), String> {
    match json(&["equiweight", &fixture(file), "--verify"])? {
        Report::Equiweight { pair, hamming: Some(h), .. } => Ok((pair.answer, h.answer, pair.weight)),
        other => Err(format!("unexpected report {other:?}")),
    }
}

fn dual_verdicts() -> Checked {
    let (p1, h1, _) = equiweight_pair("pair_not_hamming.code")?;
    let (p2, h2, _) = equiweight_pair("hamming_not_pair.code")?;
    ensure((p1, h1, p2, h2) == (Answer::Yes, Answer::No, Answer::No, Answer::Yes), || {
        format!("C_1 pair {p1} Hamming {h1}; C_2 pair {p2} Hamming {h2}")
    })?;
    Ok(format!("C_1 pair {p1} / Hamming {h1}, C_2 pair {p2} / Hamming {h2}"))
}

fn ternary_mpds() -> Checked {
    let Report::Mpds { report, .. } = json(&["mpds", &fixture("mpds_ternary.code")])? else {
        return Err("not an mpds report".into());
    };
    ensure(report.hierarchy.values == [4, 4] && report.is_mpds, || format!("{report:?}"))?;
    Ok(format!("pair hierarchy {}, MPDS {}", report.hierarchy, report.is_mpds))
}

fn small_hierarchies() -> Checked {
    let Report::Hierarchy { code, pair: Some(p), .. } = json(&["hierarchy", &fixture("full_support.code")])? else {
        return Err("not a hierarchy report".into());
    };
    ensure(p.values == [3, 3] && code.n == 3, || format!("full support: {p} with n = {}", code.n))?;
    let Report::Hierarchy { hamming: Some(h), pair: Some(q), .. } = json(&["hierarchy", &fixture("split_pairs.code")])?
    else {
        return Err("not a hierarchy report".into());
    };
    ensure(h.d(2) == Some(4) && q.values == [3, 4], || format!("split pairs: Hamming {h}, pair {q}"))?;
    Ok(format!("pair {p} at n = 3; d_H^2 = 4, pair {q}"))
}

fn n21_table() -> Checked {
    let (pair, _, weight) = equiweight_pair("equiweight_n21.code")?;
    ensure(pair == Answer::Yes && weight == Some(14), || format!("verdict {pair}, weight {weight:?}"))?;
    let Report::Weights { words, .. } = json(&["weights", &fixture("equiweight_n21.code")])? else {
        return Err("not a weights report".into());
    };
    let table = [
        "011000001010001001011",
        "001011000001011001010",
        "000001011001001011001",
        "010011001011010000001",
        "011001010011000010010",
        "001010011000010010011",
        "010010010010011011000",
    ];
    let mut got: Vec<String> = words.iter().map(|w| w.codeword.iter().map(|x| x.to_string()).collect()).collect();
    got.sort();
    let mut want: Vec<String> = table.iter().map(|s| s.to_string()).collect();
    want.sort();
    ensure(got == want, || format!("codewords {got:?}"))?;
    ensure(words.iter().all(|w| w.pair == 14), || "a codeword without pair weight 14".into())?;
    Ok("YES, 7/7 table codewords at pair weight 14".into())
}

fn line_sums_and_isos() -> Checked {
    let reps: [&[u32]; 7] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 1]];
    let h = Rational::new(1, 2);
    let t = Rational::new(1, 4);
    let (z, one) = (Rational::ZERO, Rational::ONE);
    let expected = [
        ("iso_source.code", [h, one, h, h, h, z, z]),
        ("iso_target_kept.code", [h, one, h, h, h, z, z]),
        ("iso_target_broken.code", [h, one, h, t, t, t, z]),
    ];
    for (file, want) in expected {
        let text = std::fs::read_to_string(fixture(file)).map_err(|e| e.to_string())?;
        let code = parse_code_file(&text).map_err(|e| e.to_string())?;
        let prof = omega_sums(&code);
        let got: Vec<Rational> = reps
            .iter()
            .map(|v| {
                let v: Vec<_> = v.iter().map(|&x| pairweight::FieldElement(x)).collect();
                prof.value_at(code.spec(), &v).unwrap()
            })
            .collect();
        ensure(got == want, || format!("{file}: {got:?}"))?;
    }
    let Report::Iso { verdict: kept, .. } = json(&["iso", &fixture("iso_kept.iso"), "--verify"])? else {
        return Err("not an iso report".into());
    };
    let Report::Iso { verdict: broken, .. } = json(&["iso", &fixture("iso_broken.iso"), "--verify"])? else {
        return Err("not an iso report".into());
    };
    ensure(kept.is_yes() && broken.is_no(), || format!("kept {}, broken {}", kept.answer, broken.answer))?;
    ensure(matches!(broken.witness, Some(Witness::Lines { .. })), || "broken map lacks a line witness".into())?;
    Ok("line sums match on V_1..V_7; kept map YES, broken map NO".into())
}

fn incidence_identities() -> Checked {
    let mut count = 0;
    for (q, k) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        let spec = FieldSpec::with_order(q).unwrap();
        let rep = check_T_identities(k, &spec).map_err(|e| e.to_string())?;
        for id in ["a", "b", "c", "d"] {
            let present = rep.checks.iter().any(|c| c.identity == id);
            ensure(present && rep.passed(id), || format!("identity ({id}) at q={q}, k={k}"))?;
        }
        count += rep.checks.len();
    }
    Ok(format!("{count} identity instances over 4 (q, k) pairs"))
}

fn differential_battery() -> Checked {
    let cells = grid(&[2, 3], &[2, 3, 4], &[4, 5, 6, 7, 8, 9, 10]);
    let samples = 200;
    let report = run_battery(&cells, samples, Seed(2024), Exec::default()).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_string())?;
    let codes = report.coverage.codes;
    ensure(codes == cells.len() * samples, || format!("{codes} codes"))?;
    for c in [
        Check::SpanFormula,
        Check::RunFormula,
        Check::Equiweight,
        Check::HierarchyBounds,
        Check::Profile,
        Check::IsoPermutation,
    ] {
        ensure(report.tally(c).checked >= codes, || format!("{c:?} checked only {}", report.tally(c).checked))?;
    }
    let checks: usize = report.tallies.values().map(|t| t.checked).sum();
    Ok(format!("{codes} codes in {} cells, {checks} comparisons, 0 disagreements", cells.len()))
}

fn f31_benchmark() -> Checked {
    let Report::Bench { benchmark: b, .. } = json(&["bench", "--q", "31", "--n", "10", "--k", "5", "--seed", "0"])? else {
        return Err("not a bench report".into());
    };
    let bf_ns = b.bruteforce_ns.ok_or("scan skipped")?;
    let ratio = bf_ns as f64 / b.criterion_ns.max(1) as f64;
    let detail = format!(
        "criterion_work {}, bruteforce_work {}, {:.0}x faster ({} ns vs {} ns)",
        b.criterion_work, b.bruteforce_work, ratio, b.criterion_ns, bf_ns
    );
    ensure(b.criterion_work <= 320 && b.bruteforce_work == 28_629_151, || detail.clone())?;
    ensure(b.agree(), || format!("verdicts disagree: {detail}"))?;
    ensure(ratio >= 10.0, || detail.clone())?;
    Ok(detail)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("pair vs Hamming equiweight fixtures", Duration::from_secs(1), dual_verdicts),
        ("ternary MPDS hierarchy", Duration::from_secs(1), ternary_mpds),
        ("small hierarchies", Duration::from_secs(1), small_hierarchies),
        ("n = 21 equiweight table", Duration::from_secs(1), n21_table),
        ("line sums and isomorphisms", Duration::from_secs(1), line_sums_and_isos),
        ("incidence identities", Duration::from_secs(10), incidence_identities),
        ("differential battery", Duration::from_secs(300), differential_battery),
        ("F_31 benchmark", Duration::from_secs(120), f31_benchmark),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} {}. {name}: {detail} [{elapsed:.2?}]", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
