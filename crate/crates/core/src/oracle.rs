//! Brute-force ground truth and seeded random instances.
//!
//! Random instances come from SplitMix64 (Vigna's reference algorithm, state
//! initialised to the seed, one `next_u64` per draw), with bounded draws by
//! rejection, so a seed describes the same instance on any platform.

use std::time::Instant;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::code::{hamming_weight, pair_support, pair_weight, pair_weight_of, LinearCode};
use crate::combinat::gaussian_binomial;
use crate::criterion::{omega_sums_with_work, Constancy};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::hierarchy::HIERARCHY_LIMIT;
use crate::iso::IsoPair;
use crate::linalg::{enumerate_pg, normalized_vectors, rank, FqMatrix};
use crate::par::{map_range, map_slice, Exec};

/// Largest message count for the per-message brute-force checks.
pub const MESSAGE_LIMIT: u128 = 1_000_000;

/// Largest message count for the exhaustive codeword scan.
pub const SCAN_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// A deterministic stream of random field data.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: Seed) -> Self {
        Sampler { rng: SplitMix64::seed_from_u64(seed.0) }
    }

    /// Uniform in `0..m`, `m > 0`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0, "empty range");
        let zone = u64::MAX - u64::MAX % m;
        loop {
            let x = self.rng.next_u64();
            if x < zone {
                return x % m;
            }
        }
    }

    pub fn element(&mut self, spec: &FieldSpec) -> FieldElement {
        FieldElement(self.below(spec.q() as u64) as u32)
    }

    pub fn nonzero_element(&mut self, spec: &FieldSpec) -> FieldElement {
        FieldElement(1 + self.below(spec.q() as u64 - 1) as u32)
    }

    pub fn matrix(&mut self, spec: &FieldSpec, rows: usize, cols: usize) -> FqMatrix {
        let data = (0..rows * cols).map(|_| self.element(spec)).collect();
        FqMatrix::new(rows, cols, data).expect("data has rows * cols entries")
    }

    /// Uniform among `k x k` invertible matrices.
    pub fn invertible(&mut self, spec: &FieldSpec, k: usize) -> FqMatrix {
        loop {
            let m = self.matrix(spec, k, k);
            if rank(spec, &m) == k {
                return m;
            }
        }
    }

    /// Uniform permutation of `0..n` (Fisher-Yates).
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }

    /// Uniform `k x n` generator conditioned on rank `k`.
    pub fn code(&mut self, spec: &FieldSpec, n: usize, k: usize) -> Result<LinearCode> {
        if n < 2 || k == 0 || k > n {
            return Err(Error::Dimension(format!("need n >= 2 and 1 <= k <= n, got n = {n}, k = {k}")));
        }
        loop {
            let g = self.matrix(spec, k, n);
            if rank(spec, &g) == k {
                return LinearCode::new(spec.clone(), g);
            }
        }
    }
}

pub fn random_code(spec: &FieldSpec, n: usize, k: usize, seed: Seed) -> Result<LinearCode> {
    Sampler::new(seed).code(spec, n, k)
}

/// The code with generator `G M`, where `M` sends column `j` to column
/// `perm[j]` scaled by `scales[j]`.
pub fn monomial_image(code: &LinearCode, perm: &[usize], scales: &[FieldElement]) -> Result<LinearCode> {
    let (n, k) = (code.n(), code.k());
    if perm.len() != n || scales.len() != n {
        return Err(Error::Dimension(format!("monomial map of length {} on n = {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidCode("not a permutation".into()));
        }
    }
    if scales.iter().any(|s| s.is_zero()) {
        return Err(Error::InvalidCode("zero scale in monomial map".into()));
    }
    let spec = code.spec();
    let mut g = FqMatrix::zeros(k, n);
    for i in 0..k {
        for j in 0..n {
            g.set(i, perm[j], spec.mul(code.generator().get(i, j), scales[j]));
        }
    }
    LinearCode::new(spec.clone(), g)
}

/// The code with generator `A G`: same code, new basis, so row `i` of the
/// result is the image of row `i` under the message change `A`.
pub fn change_basis(code: &LinearCode, a: &FqMatrix) -> Result<LinearCode> {
    let g = a.mul(code.spec(), code.generator())?;
    LinearCode::new(code.spec().clone(), g)
}

fn check_messages(code: &LinearCode) -> Result<()> {
    let count = (code.spec().q() as u128).pow(code.k() as u32);
    if count > MESSAGE_LIMIT {
        return Err(Error::Guard(format!("{count} messages exceed the limit of {MESSAGE_LIMIT}")));
    }
    Ok(())
}

fn all_equal(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Whether every `r`-dimensional subcode has the same pair weight.
pub fn bf_equiweight(code: &LinearCode, r: usize) -> Result<bool> {
    bf_equiweight_with(code, r, Exec::default())
}

pub fn bf_equiweight_with(code: &LinearCode, r: usize, exec: Exec) -> Result<bool> {
    let k = code.k();
    if r == 0 || r > k {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..={k}")));
    }
    if r == 1 {
        check_messages(code)?;
        let ys: Vec<_> = normalized_vectors(code.spec(), k).collect();
        let w = map_slice(exec, &ys, |y| pair_weight(&code.encode(y).expect("length k")));
        return Ok(all_equal(&w));
    }
    let count = gaussian_binomial(r as i64, k as i64, code.spec().q() as u64);
    if count > HIERARCHY_LIMIT {
        return Err(Error::Guard(format!("{count} subspaces exceed the limit of {HIERARCHY_LIMIT}")));
    }
    let spaces = enumerate_pg(r, k, code.spec())?;
    let w = map_slice(exec, &spaces, |d| pair_support(&code.encode_subspace(d).expect("dimension k")).len());
    Ok(all_equal(&w))
}

pub fn bf_hamming_equiweight(code: &LinearCode) -> Result<bool> {
    check_messages(code)?;
    let w: Vec<usize> =
        normalized_vectors(code.spec(), code.k()).map(|y| hamming_weight(&code.encode(&y).expect("length k"))).collect();
    Ok(all_equal(&w))
}

/// Pair weights of source and target image, one entry per normalized message.
fn iso_weights(pair: &IsoPair) -> Result<Vec<(usize, usize)>> {
    check_messages(pair.source())?;
    Ok(normalized_vectors(pair.source().spec(), pair.source().k())
        .map(|y| {
            let a = pair_weight(&pair.source().encode(&y).expect("length k"));
            let b = pair_weight(&pair.target().encode(&y).expect("length k"));
            (a, b)
        })
        .collect())
}

/// Whether `w_p(y G) = w_p(y G~)` for every message `y`.
pub fn bf_iso(pair: &IsoPair) -> Result<bool> {
    Ok(iso_weights(pair)?.iter().all(|(a, b)| a == b))
}

/// Whether `w_p(y G) - w_p(y G~)` is the same for every message `y`.
pub fn bf_constant_gap(pair: &IsoPair) -> Result<bool> {
    let gaps: Vec<i64> = iso_weights(pair)?.iter().map(|&(a, b)| a as i64 - b as i64).collect();
    Ok(gaps.windows(2).all(|w| w[0] == w[1]))
}

/// Result of pair-weighting every codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scan {
    /// Messages enumerated, `q^k` (the zero message included).
    pub messages: u128,
    pub min_weight: usize,
    pub max_weight: usize,
}

impl Scan {
    pub fn equiweight(&self) -> bool {
        self.min_weight == self.max_weight
    }
}

/// Pair weight of every nonzero codeword, split over the leading message
/// digit. Each branch walks the remaining digits depth first, keeping one
/// partial sum per level so that a step costs `O(n)` additions.
pub fn scan_codewords(code: &LinearCode, exec: Exec) -> Result<Scan> {
    let spec = code.spec();
    let (n, k, q) = (code.n(), code.k(), spec.q() as usize);
    let messages = (q as u128).pow(k as u32);
    if messages > SCAN_LIMIT {
        return Err(Error::Guard(format!("{messages} codewords exceed the scan limit of {SCAN_LIMIT}")));
    }
    let elems: Vec<FieldElement> = spec.elements().collect();
    // multiples[i][e] = e * g_i
    let multiples: Vec<Vec<Vec<FieldElement>>> = (0..k)
        .map(|i| {
            let row = code.row(i);
            elems.iter().map(|&e| row.0.iter().map(|&x| spec.mul(e, x)).collect()).collect()
        })
        .collect();

    let branch = |lead: usize| -> (usize, usize) {
        let mut lo = usize::MAX;
        let mut hi = 0;
        // partial[l] = Σ_{i <= l} digit_i g_i
        let mut partial = vec![vec![FieldElement::ZERO; n]; k];
        partial[0].clone_from(&multiples[0][lead]);
        let mut digits = vec![0usize; k];
        digits[0] = lead;
        let mut level = 1;
        loop {
            for l in level..k {
                let (before, after) = partial.split_at_mut(l);
                let m = &multiples[l][digits[l]];
                for ((dst, &a), &b) in after[0].iter_mut().zip(&before[l - 1]).zip(m) {
                    *dst = spec.add(a, b);
                }
            }
            let w = pair_weight_of(&partial[k - 1]);
            if digits.iter().any(|&d| d != 0) {
                lo = lo.min(w);
                hi = hi.max(w);
            }
            // advance the odometer on digits 1..k
            let mut l = k;
            loop {
                if l == 1 {
                    return (lo, hi);
                }
                l -= 1;
                digits[l] += 1;
                if digits[l] < q {
                    break;
                }
                digits[l] = 0;
            }
            level = l;
        }
    };
    let parts = map_range(exec, q, branch);
    let min_weight = parts.iter().map(|p| p.0).min().unwrap_or(0);
    let max_weight = parts.iter().map(|p| p.1).max().unwrap_or(0);
    Ok(Scan { messages, min_weight, max_weight })
}

/// Work and wall-clock of the line-sum criterion against the exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Benchmark {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Distinct lines touched by the criterion.
    pub criterion_work: usize,
    /// Codewords enumerated by the exhaustive scan, `q^k`.
    pub bruteforce_work: u64,
    /// Lines a line-by-line search would test, `(q^k - 1)/(q - 1)`.
    pub bruteforce_lines: u64,
    pub criterion_equiweight: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_equiweight: Option<bool>,
    pub criterion_ns: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_ns: Option<u64>,
}

impl Benchmark {
    pub const CSV_HEADER: &'static str = "q,n,k,criterion_work,bruteforce_work,criterion_ns,bruteforce_ns";

    /// One CSV row; a skipped scan leaves `bruteforce_ns` empty.
    pub fn csv_row(&self) -> String {
        let bf = self.bruteforce_ns.map(|t| t.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.q, self.n, self.k, self.criterion_work, self.bruteforce_work, self.criterion_ns, bf
        )
    }

    pub fn agree(&self) -> bool {
        self.bruteforce_equiweight.is_none_or(|b| b == self.criterion_equiweight)
    }
}

pub fn benchmark_equiweight(code: &LinearCode) -> Result<Benchmark> {
    benchmark_equiweight_with(code, Exec::default(), true)
}

/// Times the criterion and, if `run_scan`, the exhaustive scan.
pub fn benchmark_equiweight_with(code: &LinearCode, exec: Exec, run_scan: bool) -> Result<Benchmark> {
    let q = code.spec().q();
    let k = code.k();
    let start = Instant::now();
    let (profile, criterion_work) = omega_sums_with_work(code);
    let criterion_equiweight = k == 1 || matches!(profile.constancy(code.spec()), Constancy::Constant(_));
    let criterion_ns = start.elapsed().as_nanos() as u64;

    let (bruteforce_equiweight, bruteforce_ns) = if run_scan {
        let start = Instant::now();
        let scan = scan_codewords(code, exec)?;
        (Some(scan.equiweight()), Some(start.elapsed().as_nanos() as u64))
    } else {
        (None, None)
    };
    Ok(Benchmark {
        q,
        n: code.n(),
        k,
        criterion_work,
        bruteforce_work: (q as u64).pow(k as u32),
        bruteforce_lines: gaussian_binomial(1, k as i64, q as u64) as u64,
        criterion_equiweight,
        bruteforce_equiweight,
        criterion_ns,
        bruteforce_ns,
    })
}
