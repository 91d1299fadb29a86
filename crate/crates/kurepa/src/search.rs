//! Search for prime-power divisors of left factorial values, and the
//! bookkeeping around them.
//!
//! A *pair* `(p, n)` records `p^order || K(n)` (exact order) for an odd
//! prime `p` and `3 < n < p`. The upper constraint is not imposed but a
//! theorem: `K` is eventually constant mod `p` (all terms of the defining
//! sum from `p!` on vanish), so a divisor hit at any `n >= p` is
//! equivalent to `p | K(p)` — a counterexample to the left-factorial
//! hypothesis. The scan therefore probes `n` up to and including `p` and
//! converts a hit at `n >= p` into [`Error::KhViolation`] instead of a
//! pair; the lower constraint `n > 3` is likewise automatic, because an
//! odd prime cannot divide `K(1) = 1`, `K(2) = 2`, or `K(3) = 4`.
//!
//! Orders are resolved by re-streaming survivors modulo `p^2, p^3, ...`
//! until none remain; almost all pairs die at order 1, so the refinement
//! passes are nearly free.
//!
//! `index(p)` is the number of pairs a prime has. Scanning all odd primes
//! below a limit yields a [`DistributionReport`]: the histogram of
//! indexes and the share of primes per index, rendered to five decimals
//! (half-up) for stable text output.

use serde::{Deserialize, Serialize};

use crate::congruence::{CheckResult, Polarity, PrimeTables};
use crate::modular::{
    factorial_residues, is_prime, left_factorial_mod, left_factorial_residues, sieve_primes,
    Modulus, PrimePower,
};
use crate::par::{try_map_ordered, Jobs};
use crate::{Error, Result};

/// One divisor record: `p^order` divides `K(n)` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KurepaPair {
    pub p: u64,
    pub n: u64,
    /// Exact multiplicity: `p^order | K(n)` but `p^(order+1) ∤ K(n)`.
    pub order: u32,
}

/// All pairs of one prime, ascending in `n`, with the resulting index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIndexRecord {
    pub p: u64,
    /// Number of pairs; 0 means `p` divides no `K(n)` in its range.
    pub index: u64,
    pub pairs: Vec<KurepaPair>,
}

impl PrimeIndexRecord {
    pub fn new(p: u64, pairs: Vec<KurepaPair>) -> Self {
        PrimeIndexRecord {
            p,
            index: pairs.len() as u64,
            pairs,
        }
    }
}

/// How often each index value occurs among the scanned primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionReport {
    /// Scan covered all odd primes below this bound.
    pub limit: u64,
    /// Number of odd primes scanned (the ratio denominator).
    pub odd_primes: u64,
    pub max_index: u64,
    /// `histogram[i]` = number of primes with index `i`.
    pub histogram: Vec<u64>,
    pub ratios: Vec<RatioEntry>,
}

/// Share of scanned primes holding one particular index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioEntry {
    pub index: u64,
    pub count: u64,
    /// `count / odd_primes` in lowest terms ...
    pub numerator: u64,
    pub denominator: u64,
    /// ... and rounded half-up to five decimals, e.g. `"0.37378"`.
    pub rendered: String,
}

/// Round `num/den` half-up to five decimals without floating point.
pub fn render_ratio_5dp(num: u64, den: u64) -> String {
    assert!(den > 0, "ratio denominator must be positive");
    let scaled = (num as u128 * 100_000 + den as u128 / 2) / den as u128;
    format!("{}.{:05}", scaled / 100_000, scaled % 100_000)
}

impl DistributionReport {
    pub fn from_records(limit: u64, records: &[PrimeIndexRecord]) -> Self {
        let odd_primes = records.len() as u64;
        let max_index = records.iter().map(|r| r.index).max().unwrap_or(0);
        let mut histogram = vec![0u64; (max_index + 1) as usize];
        if odd_primes == 0 {
            return DistributionReport {
                limit,
                odd_primes,
                max_index,
                histogram: Vec::new(),
                ratios: Vec::new(),
            };
        }
        for r in records {
            histogram[r.index as usize] += 1;
        }
        let ratios = histogram
            .iter()
            .enumerate()
            .map(|(index, &count)| {
                let g = num_integer::gcd(count, odd_primes);
                RatioEntry {
                    index: index as u64,
                    count,
                    numerator: count / g,
                    denominator: odd_primes / g,
                    rendered: render_ratio_5dp(count, odd_primes),
                }
            })
            .collect();
        DistributionReport {
            limit,
            odd_primes,
            max_index,
            histogram,
            ratios,
        }
    }
}

/// `K(n) mod p^r` for `n = 0..=p`, the working state of a scan at one
/// refinement level.
#[derive(Debug, Clone)]
pub struct ResidueProfile {
    pub p: u64,
    pub r: u32,
    m: Modulus,
    /// `values[n] = K(n) mod p^r` for `n = 0..=p`.
    pub values: Vec<u64>,
}

impl ResidueProfile {
    pub fn new(pp: PrimePower) -> Self {
        let m = pp.modulus();
        let values = left_factorial_residues(m)
            .take((pp.p() + 1) as usize)
            .collect();
        ResidueProfile {
            p: pp.p(),
            r: pp.r(),
            m,
            values,
        }
    }

    /// Structural self-check: `values[0] = 0` and consecutive entries
    /// differ by exactly `n!` mod the profile modulus.
    pub fn difference_invariant_holds(&self) -> bool {
        if self.values.first() != Some(&0) {
            return false;
        }
        let mut fact = factorial_residues(self.m);
        self.values.windows(2).all(|w| {
            let f = fact.next().expect("stream is infinite");
            self.m.sub(w[1], w[0]) == f
        })
    }
}

/// All `n` in `[1, n_max]` with `p | K(n)`, ascending. A hit at
/// `n >= p` is reported as [`Error::KhViolation`]; callers must pass an
/// odd prime for that reading to be sound.
fn divisibility_hits(p: u64, n_max: u64) -> Result<Vec<u64>> {
    let m = Modulus::new(p)?;
    let mut hits = Vec::new();
    for (n, v) in left_factorial_residues(m)
        .take((n_max + 1) as usize)
        .enumerate()
        .skip(1)
    {
        if v == 0 {
            let n = n as u64;
            if n >= p {
                return Err(Error::KhViolation { p });
            }
            hits.push(n);
        }
    }
    Ok(hits)
}

/// Resolve exact orders for `n` values already known to satisfy
/// `p^start_r | K(n)`. Streams `K mod p^(r+1)` over the survivors of
/// level `r` until none survive or `max_power` caps the search (capped
/// entries keep order = cap). Errors only if an uncapped refinement
/// would need a modulus beyond the `u64` range.
fn refine_orders(
    p: u64,
    hits: Vec<u64>,
    start_r: u32,
    max_power: Option<u32>,
) -> Result<Vec<(u64, u32)>> {
    let mut orders: Vec<(u64, u32)> = hits.into_iter().map(|n| (n, start_r)).collect();
    let mut live: Vec<usize> = (0..orders.len()).collect();
    let mut r = start_r;
    while !live.is_empty() {
        if let Some(cap) = max_power {
            if r >= cap {
                break;
            }
        }
        let m = PrimePower::new(p, r + 1)?.modulus();
        let mut stream = left_factorial_residues(m);
        let mut at = 0u64;
        let mut value = stream.next().expect("stream is infinite");
        let mut survivors = Vec::new();
        for idx in live {
            let target = orders[idx].0;
            while at < target {
                value = stream.next().expect("stream is infinite");
                at += 1;
            }
            if value == 0 {
                orders[idx].1 = r + 1;
                survivors.push(idx);
            }
        }
        live = survivors;
        r += 1;
    }
    Ok(orders)
}

/// Pairs of the odd prime `p` with `n <= n_max`, exact orders unless
/// `max_power` caps the refinement. Scanning past `p` only adds
/// counterexample detection, since `K(n) ≡ K(p)` (mod p) for `n >= p`.
pub fn find_pairs_bounded(
    p: u64,
    n_max: u64,
    max_power: Option<u32>,
) -> Result<Vec<KurepaPair>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let hits = divisibility_hits(p, n_max)?;
    debug_assert!(
        hits.iter().all(|&n| n > 3),
        "odd prime divides none of K(1) = 1, K(2) = 2, K(3) = 4"
    );
    let orders = refine_orders(p, hits, 1, max_power)?;
    Ok(orders
        .into_iter()
        .map(|(n, order)| KurepaPair { p, n, order })
        .collect())
}

/// All pairs of the odd prime `p` (scan range `[1, p]`, so the
/// left-factorial hypothesis is probed at `p` itself on the way).
pub fn find_pairs(p: u64) -> Result<PrimeIndexRecord> {
    let pairs = find_pairs_bounded(p, p, None)?;
    Ok(PrimeIndexRecord::new(p, pairs))
}

/// Divisor search over an explicit range `n ∈ [1, n_max]`, e.g. for
/// probing far beyond `p` with a composite-order target in mind.
pub fn find_pairs_up_to(p: u64, n_max: u64) -> Result<Vec<KurepaPair>> {
    find_pairs_bounded(p, n_max, None)
}

/// Same answer as [`find_pairs`], computed from a mod-`p^2` profile in
/// one pass: entries divisible by `p` split into order exactly 1
/// (nonzero mod `p^2`) and order >= 2 (zero mod `p^2`, refined further).
/// Exists as an independent route for cross-checking the scanner.
pub fn find_pairs_via_profile(p: u64) -> Result<PrimeIndexRecord> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let profile = ResidueProfile::new(PrimePower::new(p, 2)?);
    if profile.values[p as usize] % p == 0 {
        return Err(Error::KhViolation { p });
    }
    let mut simple = Vec::new();
    let mut deep = Vec::new();
    for n in 4..p {
        let v = profile.values[n as usize];
        if v % p == 0 {
            if v == 0 {
                deep.push(n);
            } else {
                simple.push((n, 1));
            }
        }
    }
    let mut orders = refine_orders(p, deep, 2, None)?;
    orders.extend(simple);
    orders.sort_unstable();
    let pairs = orders
        .into_iter()
        .map(|(n, order)| KurepaPair { p, n, order })
        .collect();
    Ok(PrimeIndexRecord::new(p, pairs))
}

/// `n <= n_max` with `p^2 | K(n)`, with exact orders. Works for `p = 2`
/// as well (where it reports the lone square `K(3) = 4`); for odd `p` a
/// hit at `n >= p` is a counterexample and comes back as an error.
pub fn order_two_search(p: u64, n_max: u64) -> Result<Vec<(u64, u32)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = PrimePower::new(p, 2)?.modulus();
    let mut hits = Vec::new();
    for (n, v) in left_factorial_residues(m)
        .take((n_max + 1) as usize)
        .enumerate()
        .skip(1)
    {
        if v == 0 {
            let n = n as u64;
            if p > 2 && n >= p {
                return Err(Error::KhViolation { p });
            }
            hits.push(n);
        }
    }
    refine_orders(p, hits, 2, None)
}

/// [`find_pairs`] over a list of odd primes, order-preserving; with
/// parallel jobs the records still come back in input order.
pub fn scan_primes(primes: &[u64], jobs: Jobs) -> Result<Vec<PrimeIndexRecord>> {
    try_map_ordered(jobs, primes, |&p| find_pairs(p))
}

/// Scan every odd prime below `limit` and summarize the index
/// distribution.
pub fn scan_range(limit: u64, jobs: Jobs) -> Result<(Vec<PrimeIndexRecord>, DistributionReport)> {
    let primes: Vec<u64> = sieve_primes(limit)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    let records = scan_primes(&primes, jobs)?;
    let report = DistributionReport::from_records(limit, &records);
    Ok((records, report))
}

fn pair_checks_from(t: &PrimeTables, pair: &KurepaPair) -> [CheckResult; 3] {
    let (p, n) = (pair.p, pair.n);
    let bounds = CheckResult::predicate("pair-bounds", p, Some(n), p > n && n > 3);
    // K(p) ≡ (-1)^n n! S(p-1-n) (mod p), the closed form every pair
    // must satisfy.
    let s = t.sub[(p - 1 - n) as usize];
    let prod = t.m.mul(t.fact[n as usize], s);
    let rhs = if n % 2 == 0 { prod } else { t.m.neg(prod) };
    let congruence = CheckResult::congruence(
        "pair-congruence",
        p,
        Some(n),
        Polarity::MustHold,
        t.left[p as usize],
        rhs,
        p,
    );
    // ... which forces S(p-1-n) to be a unit mod p wherever K(p) is.
    let unit = CheckResult::congruence(
        "pair-subfactorial-unit",
        p,
        Some(n),
        Polarity::MustFail,
        s,
        0,
        p,
    );
    [bounds, congruence, unit]
}

/// The three per-pair constraints (bounds, closed-form congruence,
/// subfactorial unit) for a single pair.
pub fn check_pair_constraints(pair: &KurepaPair) -> Vec<CheckResult> {
    let t = PrimeTables::new(pair.p);
    pair_checks_from(&t, pair).to_vec()
}

/// Consecutive pairs of one prime sit at least 4 apart in `n`. On
/// failure `aux` carries the right endpoint of the offending gap.
pub fn check_gap_property(record: &PrimeIndexRecord) -> CheckResult {
    let bad = record
        .pairs
        .windows(2)
        .find(|w| w[1].n - w[0].n < 4)
        .map(|w| w[1].n);
    CheckResult::predicate("pair-gaps", record.p, bad, bad.is_none())
}

/// `index(p) <= (p-1)/4`; `aux` carries the observed index.
pub fn check_index_bound(record: &PrimeIndexRecord) -> CheckResult {
    CheckResult::predicate(
        "index-bound",
        record.p,
        Some(record.index),
        record.index <= (record.p - 1) / 4,
    )
}

/// Everything checkable about one record: the three constraints per
/// pair, then the gap property and the index bound.
pub fn verify_record(record: &PrimeIndexRecord) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if !record.pairs.is_empty() {
        let t = PrimeTables::new(record.p);
        for pair in &record.pairs {
            out.extend(pair_checks_from(&t, pair));
        }
    }
    out.push(check_gap_property(record));
    out.push(check_index_bound(record));
    out
}

/// `K(n) mod 4` locks in immediately: even from `n = 2`, and equal to 2
/// from `n = 4` on. Checks every `n <= n_max`; `aux` is the first
/// offender on failure.
pub fn check_mod4_behavior(n_max: u64) -> CheckResult {
    let m = Modulus::new(4).expect("4 is a valid modulus");
    let mut bad = None;
    for (n, v) in left_factorial_residues(m)
        .take((n_max + 1) as usize)
        .enumerate()
    {
        let n = n as u64;
        let ok = match n {
            0 | 1 => true,
            2 | 3 => v % 2 == 0,
            _ => v == 2,
        };
        if !ok {
            bad = Some(n);
            break;
        }
    }
    CheckResult::predicate("mod-four-pattern", n_max, bad, bad.is_none())
}

/// Audit a completed scan for non-simple powers. Two results: every
/// recorded order equals 1 (`aux` = first offending `n` otherwise), and
/// the one known square below the pair domain, `K(3) = 4 = 2^2`, still
/// checks out.
pub fn simple_power_audit(limit: u64, records: &[PrimeIndexRecord]) -> Vec<CheckResult> {
    let bad = records
        .iter()
        .flat_map(|r| r.pairs.iter())
        .find(|pair| pair.order != 1)
        .map(|pair| pair.n);
    let simple = CheckResult::predicate("simple-power", limit, bad, bad.is_none());
    let m4 = Modulus::new(4).expect("4 is a valid modulus");
    let square = CheckResult::congruence(
        "square-below-domain",
        3,
        None,
        Polarity::MustHold,
        left_factorial_mod(3, m4),
        0,
        4,
    );
    vec![simple, square]
}
