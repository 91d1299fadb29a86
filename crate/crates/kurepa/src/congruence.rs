//! Executable congruence checks tying the left factorial `K`, the
//! subfactorial `S`, and the Bell numbers `B` together modulo primes
//! (and, for the index-driven families, arbitrary `n`).
//!
//! Families with polarity [`Polarity::MustHold`]:
//!
//! * alternating sums at an odd prime `p`:
//!   `sum_{k=0}^{p} (-1)^k B(k) ≡ 0`, `sum (-1)^k S(k) ≡ 0`,
//!   plus the endpoint values `B(p) ≡ 2` and `S(p) ≡ -1` (mod p);
//! * the Touchard recurrence `B(n+p) ≡ B(n+1) + B(n)` (mod p);
//! * the Bell link `K(p) ≡ B(p-1) - 1` (mod p);
//! * the subfactorial link `K(n) ≡ (-1)^{n-1} S(n-1)` (mod n);
//! * its floor form `K(n) ≡ (-1)^{n-1} floor((n-1)!/e) + δ_{n-1}` (mod n);
//! * the floor identity `floor(n!/e) ≡ -δ_{n-1}` (mod n);
//! * the Wilson shift `(p-k)! ≡ (-1)^k / (k-1)!` (mod p) for `1 <= k <= p`;
//! * the difference rule `K(p) - K(p-l) ≡ -S(l-1)/(l-1)!` (mod p).
//!
//! Families with polarity [`Polarity::MustFail`] encode "≢" statements
//! equivalent to the left-factorial hypothesis (`K(p) ≢ 0 mod p`): the
//! floor difference `floor(n!/e) - floor((n-1)!/e) ≢ 0` (mod n) for
//! `n > 2`, and the nonvanishing family `l! K(p-1-l) ≢ floor(l!/e) + δ_l`
//! (mod p) for `0 <= l < p`. A MustFail check that observes the
//! congruence *holding* is reported as a failed check with its witness —
//! a genuine counterexample must surface loudly, never as a silent pass.
//!
//! All checks run on streamed residues; no exact big integer is ever
//! formed here, so a full-suite run is linear per prime (plus the
//! unavoidable quadratic Bell triangle).

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::exact::parity_delta;
use crate::modular::{
    factorial_residues, is_prime, left_factorial_residues, sieve_primes, Modulus,
};
use crate::par::{try_map_ordered, Jobs};

/// Whether a statement claims congruence or non-congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    /// Pass means `lhs = rhs` (or the predicate holds).
    MustHold,
    /// Pass means `lhs != rhs`; encodes "≢" claims.
    MustFail,
}

/// What was actually compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    /// Two residues already reduced into `[0, modulus)`.
    Congruence { lhs: u64, rhs: u64, modulus: u64 },
    /// A structural yes/no fact (bounds, gaps, counts).
    Predicate { holds: bool },
}

/// Outcome of one congruence or structural check, with enough witness
/// data to reproduce a failure by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Statement family, e.g. `"wilson-shift"`.
    pub name: Cow<'static, str>,
    /// Main parameter of the statement (the prime `p` or index `n`).
    pub subject: u64,
    /// Auxiliary parameter (`l`, `k`, or a witness index), if any.
    pub aux: Option<u64>,
    pub claim: Claim,
    pub polarity: Polarity,
    /// `true` iff the claim came out as the polarity demands.
    pub passed: bool,
}

impl CheckResult {
    /// A congruence-shaped check; `lhs` and `rhs` must be reduced.
    pub fn congruence(
        name: &'static str,
        subject: u64,
        aux: Option<u64>,
        polarity: Polarity,
        lhs: u64,
        rhs: u64,
        modulus: u64,
    ) -> Self {
        let equal = lhs == rhs;
        let passed = match polarity {
            Polarity::MustHold => equal,
            Polarity::MustFail => !equal,
        };
        CheckResult {
            name: Cow::Borrowed(name),
            subject,
            aux,
            claim: Claim::Congruence { lhs, rhs, modulus },
            polarity,
            passed,
        }
    }

    /// A plain structural assertion.
    pub fn predicate(name: &'static str, subject: u64, aux: Option<u64>, holds: bool) -> Self {
        CheckResult {
            name: Cow::Borrowed(name),
            subject,
            aux,
            claim: Claim::Predicate { holds },
            polarity: Polarity::MustHold,
            passed: holds,
        }
    }

    /// The degenerate modulus-1 case: every congruence holds.
    fn trivial_mod_one(name: &'static str, subject: u64) -> Self {
        CheckResult::congruence(name, subject, None, Polarity::MustHold, 0, 0, 1)
    }
}

/// Stream of `S(n) mod m` for `n = 0, 1, 2, ...` via
/// `S(n) = n*S(n-1) + (-1)^n`, reduced at every step. Never ends.
#[derive(Debug, Clone)]
pub struct SubfactorialResidues {
    m: Modulus,
    n: u64,
    value: u64,
}

/// Stream `S(0) mod m, S(1) mod m, ...`.
pub fn subfactorial_residues(m: Modulus) -> SubfactorialResidues {
    SubfactorialResidues { m, n: 0, value: 1 }
}

impl Iterator for SubfactorialResidues {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.value;
        self.n += 1;
        let t = self.m.mul(self.value, self.n % self.m.get());
        self.value = if self.n % 2 == 0 {
            self.m.add(t, 1)
        } else {
            self.m.sub(t, 1)
        };
        Some(out)
    }
}

/// Stream of `B(n) mod m` for `n = 0, 1, 2, ...` via the Bell triangle
/// (additions only), keeping a single row of residues. Step `n` costs
/// `O(n)` additions and the row holds `n` words, so reaching `B(N)`
/// costs `O(N^2)` time and `O(N)` space — no big integers, which matters
/// because `B(p)` itself has on the order of `p log p` bits. Never ends.
#[derive(Debug, Clone)]
pub struct BellResidues {
    m: Modulus,
    row: Vec<u64>,
}

/// Stream `B(0) mod m, B(1) mod m, ...`.
pub fn bell_residues(m: Modulus) -> BellResidues {
    BellResidues { m, row: Vec::new() }
}

impl Iterator for BellResidues {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.row.is_empty() {
            self.row.push(1);
            return Some(1);
        }
        // Next triangle row: starts with the previous row's last entry,
        // each following entry adds the previous row entrywise.
        let mut next = Vec::with_capacity(self.row.len() + 1);
        next.push(*self.row.last().expect("row is non-empty"));
        for &v in &self.row {
            let prev = *next.last().expect("row is non-empty");
            next.push(self.m.add(prev, v));
        }
        self.row = next;
        Some(self.row[0])
    }
}

/// Residue tables mod an odd prime `p`, shared by the per-prime checks:
/// `k! `, `(k!)^{-1}`, `S(k)`, and `K(k)` for `k` up to `p`.
pub(crate) struct PrimeTables {
    pub p: u64,
    pub m: Modulus,
    /// `k! mod p` for `k = 0..=p`.
    pub fact: Vec<u64>,
    /// `(k!)^{-1} mod p` for `k = 0..=p-1` (one extended-gcd inversion,
    /// then the backward recurrence `(k-1)!^{-1} = k * (k!)^{-1}`).
    pub inv_fact: Vec<u64>,
    /// `S(k) mod p` for `k = 0..=p`.
    pub sub: Vec<u64>,
    /// `K(k) mod p` for `k = 0..=p`.
    pub left: Vec<u64>,
}

impl PrimeTables {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p), "PrimeTables needs a prime modulus");
        let m = Modulus::new(p).expect("prime is a valid modulus");
        let len = (p + 1) as usize;
        let fact: Vec<u64> = factorial_residues(m).take(len).collect();
        let sub: Vec<u64> = subfactorial_residues(m).take(len).collect();
        let left: Vec<u64> = left_factorial_residues(m).take(len).collect();
        let top = (p - 1) as usize;
        let mut inv_fact = vec![0u64; top + 1];
        inv_fact[top] = m.inv(fact[top]).expect("(p-1)! is a unit mod p");
        for k in (1..=top).rev() {
            inv_fact[k - 1] = m.mul(inv_fact[k], k as u64);
        }
        PrimeTables {
            p,
            m,
            fact,
            inv_fact,
            sub,
            left,
        }
    }
}

fn alternating_sum(m: Modulus, values: &[u64]) -> u64 {
    let mut acc = 0;
    for (k, &v) in values.iter().enumerate() {
        acc = if k % 2 == 0 { m.add(acc, v) } else { m.sub(acc, v) };
    }
    acc
}

fn alternating_sums_from(t: &PrimeTables, bell: &[u64]) -> [CheckResult; 4] {
    use Polarity::MustHold;
    let (p, m) = (t.p, t.m);
    let upto = (p + 1) as usize;
    let bell_alt = alternating_sum(m, &bell[..upto]);
    let sub_alt = alternating_sum(m, &t.sub[..upto]);
    [
        CheckResult::congruence("bell-alternating-sum", p, None, MustHold, bell_alt, 0, p),
        CheckResult::congruence(
            "subfactorial-alternating-sum",
            p,
            None,
            MustHold,
            sub_alt,
            0,
            p,
        ),
        CheckResult::congruence("bell-at-prime", p, None, MustHold, bell[p as usize], 2, p),
        CheckResult::congruence(
            "subfactorial-at-prime",
            p,
            None,
            MustHold,
            t.sub[p as usize],
            p - 1,
            p,
        ),
    ]
}

/// At an odd prime `p`: both alternating sums vanish, `B(p) ≡ 2`, and
/// `S(p) ≡ -1` (mod p). Returns the four results in that order.
pub fn check_alternating_sums(p: u64) -> [CheckResult; 4] {
    debug_assert!(p > 2 && is_prime(p), "needs an odd prime");
    let t = PrimeTables::new(p);
    let bell: Vec<u64> = bell_residues(t.m).take((p + 1) as usize).collect();
    alternating_sums_from(&t, &bell)
}

fn touchard_from(m: Modulus, p: u64, bell: &[u64], n: u64) -> CheckResult {
    let lhs = bell[(n + p) as usize];
    let rhs = m.add(bell[(n + 1) as usize], bell[n as usize]);
    CheckResult::congruence("touchard", p, Some(n), Polarity::MustHold, lhs, rhs, p)
}

/// Touchard congruence `B(n+p) ≡ B(n+1) + B(n)` (mod p) at a prime `p`.
pub fn check_touchard(p: u64, n: u64) -> CheckResult {
    debug_assert!(is_prime(p));
    let m = Modulus::new(p).expect("prime is a valid modulus");
    let bell: Vec<u64> = bell_residues(m).take((n + p + 1) as usize).collect();
    touchard_from(m, p, &bell, n)
}

fn bell_link_from(t: &PrimeTables, bell: &[u64]) -> CheckResult {
    let lhs = t.left[t.p as usize];
    let rhs = t.m.sub(bell[(t.p - 1) as usize], 1);
    CheckResult::congruence("bell-link", t.p, None, Polarity::MustHold, lhs, rhs, t.p)
}

/// `K(p) ≡ B(p-1) - 1` (mod p) at a prime `p`.
pub fn check_bell_link(p: u64) -> CheckResult {
    debug_assert!(is_prime(p));
    let t = PrimeTables::new(p);
    let bell: Vec<u64> = bell_residues(t.m).take(t.p as usize).collect();
    bell_link_from(&t, &bell)
}

/// `K(n) ≡ (-1)^{n-1} S(n-1)` (mod n) for `n >= 1`; mod 1 trivially.
pub fn check_subfactorial_link(n: u64) -> CheckResult {
    debug_assert!(n >= 1);
    if n == 1 {
        return CheckResult::trivial_mod_one("subfactorial-link", 1);
    }
    let m = Modulus::new(n).expect("n >= 2");
    let lhs = crate::modular::left_factorial_mod(n, m);
    let s = subfactorial_residues(m)
        .nth((n - 1) as usize)
        .expect("stream is infinite");
    let rhs = if n % 2 == 1 { s } else { m.neg(s) };
    CheckResult::congruence("subfactorial-link", n, None, Polarity::MustHold, lhs, rhs, n)
}

/// `K(n) ≡ (-1)^{n-1} floor((n-1)!/e) + δ_{n-1}` (mod n) for `n >= 1`.
pub fn check_floor_link(n: u64) -> CheckResult {
    debug_assert!(n >= 1);
    if n == 1 {
        return CheckResult::trivial_mod_one("floor-link", 1);
    }
    let m = Modulus::new(n).expect("n >= 2");
    let lhs = crate::modular::left_factorial_mod(n, m);
    let s_prev = subfactorial_residues(m)
        .nth((n - 1) as usize)
        .expect("stream is infinite");
    let d_prev = parity_delta(n - 1);
    // floor((n-1)!/e) = S(n-1) - δ_{n-1}, exactly.
    let floor_prev = m.sub(s_prev, d_prev);
    let signed = if n % 2 == 1 { floor_prev } else { m.neg(floor_prev) };
    let rhs = m.add(signed, d_prev);
    CheckResult::congruence("floor-link", n, None, Polarity::MustHold, lhs, rhs, n)
}

/// `floor(n!/e) ≡ -δ_{n-1}` (mod n) — valid for every `n >= 1`.
pub fn check_floor_delta(n: u64) -> CheckResult {
    debug_assert!(n >= 1);
    if n == 1 {
        return CheckResult::trivial_mod_one("floor-delta", 1);
    }
    let m = Modulus::new(n).expect("n >= 2");
    let s_n = subfactorial_residues(m)
        .nth(n as usize)
        .expect("stream is infinite");
    let lhs = m.sub(s_n, parity_delta(n));
    let rhs = m.neg(parity_delta(n - 1));
    CheckResult::congruence("floor-delta", n, None, Polarity::MustHold, lhs, rhs, n)
}

/// `floor(n!/e) - floor((n-1)!/e) ≡ 0` (mod n) holds exactly for
/// `n ∈ {1, 2}`; for larger `n` the family flips to MustFail (the
/// non-congruence restates the left-factorial hypothesis).
pub fn check_floor_diff(n: u64) -> CheckResult {
    debug_assert!(n >= 1);
    if n == 1 {
        return CheckResult::trivial_mod_one("floor-diff", 1);
    }
    let m = Modulus::new(n).expect("n >= 2");
    let mut s = subfactorial_residues(m).skip((n - 1) as usize);
    let s_prev = s.next().expect("stream is infinite");
    let s_n = s.next().expect("stream is infinite");
    let floor_prev = m.sub(s_prev, parity_delta(n - 1));
    let floor_n = m.sub(s_n, parity_delta(n));
    let lhs = m.sub(floor_n, floor_prev);
    let polarity = if n <= 2 {
        Polarity::MustHold
    } else {
        Polarity::MustFail
    };
    CheckResult::congruence("floor-diff", n, None, polarity, lhs, 0, n)
}

fn wilson_shift_from(t: &PrimeTables, k: u64) -> CheckResult {
    debug_assert!((1..=t.p).contains(&k));
    let lhs = t.fact[(t.p - k) as usize];
    let inv = t.inv_fact[(k - 1) as usize];
    let rhs = if k % 2 == 0 { inv } else { t.m.neg(inv) };
    CheckResult::congruence("wilson-shift", t.p, Some(k), Polarity::MustHold, lhs, rhs, t.p)
}

/// Shifted Wilson congruence `(p-k)! ≡ (-1)^k / (k-1)!` (mod p) for
/// `1 <= k <= p`; `k = 1` is Wilson's theorem itself.
pub fn check_wilson_shift(p: u64, k: u64) -> CheckResult {
    debug_assert!(p > 2 && is_prime(p));
    wilson_shift_from(&PrimeTables::new(p), k)
}

fn left_factorial_diff_from(t: &PrimeTables, l: u64) -> CheckResult {
    debug_assert!((1..=t.p).contains(&l));
    let lhs = t.m.sub(t.left[t.p as usize], t.left[(t.p - l) as usize]);
    let idx = (l - 1) as usize;
    let rhs = t.m.neg(t.m.mul(t.sub[idx], t.inv_fact[idx]));
    CheckResult::congruence("k-diff", t.p, Some(l), Polarity::MustHold, lhs, rhs, t.p)
}

/// Difference rule `K(p) - K(p-l) ≡ -S(l-1)/(l-1)!` (mod p) for
/// `1 <= l <= p`; at `l = p` this collapses to `K(p) ≡ S(p-1)`.
pub fn check_left_factorial_diff(p: u64, l: u64) -> CheckResult {
    debug_assert!(p > 2 && is_prime(p));
    left_factorial_diff_from(&PrimeTables::new(p), l)
}

fn nonvanishing_from(t: &PrimeTables, l: u64) -> CheckResult {
    debug_assert!(l < t.p);
    let lhs = t.m.mul(t.fact[l as usize], t.left[(t.p - 1 - l) as usize]);
    // Right side is floor(l!/e) + δ_l, which collapses to S(l) by the
    // exact floor identity; the small-l cases read K(p-1) ≢ 1,
    // K(p-2) ≢ 0, K(p-3) ≢ 1/2, K(p-4) ≢ 1/3 after dividing by l!.
    let rhs = t.sub[l as usize];
    CheckResult::congruence("nonvanishing", t.p, Some(l), Polarity::MustFail, lhs, rhs, t.p)
}

/// Nonvanishing family `l! K(p-1-l) ≢ floor(l!/e) + δ_l` (mod p) for
/// `0 <= l < p` — each instance is a consequence of the left-factorial
/// hypothesis at `p`, and at `l = p-1` it is exactly equivalent to it.
pub fn check_nonvanishing(p: u64, l: u64) -> CheckResult {
    debug_assert!(p > 2 && is_prime(p));
    nonvanishing_from(&PrimeTables::new(p), l)
}

/// The check families the batch suite can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    SubfactorialLink,
    FloorLink,
    FloorDelta,
    FloorDiff,
    AlternatingSums,
    BellLink,
    Touchard,
    WilsonShift,
    LeftFactorialDiff,
    Nonvanishing,
}

impl SuiteKind {
    /// Every family, in suite execution order (index-driven first).
    pub const ALL: [SuiteKind; 10] = [
        SuiteKind::SubfactorialLink,
        SuiteKind::FloorLink,
        SuiteKind::FloorDelta,
        SuiteKind::FloorDiff,
        SuiteKind::AlternatingSums,
        SuiteKind::BellLink,
        SuiteKind::Touchard,
        SuiteKind::WilsonShift,
        SuiteKind::LeftFactorialDiff,
        SuiteKind::Nonvanishing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::SubfactorialLink => "subfactorial-link",
            SuiteKind::FloorLink => "floor-link",
            SuiteKind::FloorDelta => "floor-delta",
            SuiteKind::FloorDiff => "floor-diff",
            SuiteKind::AlternatingSums => "alt-sums",
            SuiteKind::BellLink => "bell-link",
            SuiteKind::Touchard => "touchard",
            SuiteKind::WilsonShift => "wilson-shift",
            SuiteKind::LeftFactorialDiff => "k-diff",
            SuiteKind::Nonvanishing => "nonvanishing",
        }
    }

    pub fn from_name(s: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Primes up to this bound sweep their full `l`/`k` domains in the
/// suite; larger primes sample the edges (`{1,2,3,p-1,p}`, and
/// `{0,1,2,3,4,p-1}` for the nonvanishing family) to keep the scan
/// linear per prime.
pub const FULL_RANGE_PRIME_CAP: u64 = 300;

fn shift_domain(p: u64) -> Vec<u64> {
    if p <= FULL_RANGE_PRIME_CAP {
        (1..=p).collect()
    } else {
        vec![1, 2, 3, p - 1, p]
    }
}

fn nonvanishing_domain(p: u64) -> Vec<u64> {
    if p <= FULL_RANGE_PRIME_CAP {
        (0..p).collect()
    } else {
        vec![0, 1, 2, 3, 4, p - 1]
    }
}

fn prime_block(kinds: &[SuiteKind], p: u64, n_to: u64) -> Vec<CheckResult> {
    let needs_tables = kinds.iter().any(|k| {
        matches!(
            k,
            SuiteKind::AlternatingSums
                | SuiteKind::BellLink
                | SuiteKind::WilsonShift
                | SuiteKind::LeftFactorialDiff
                | SuiteKind::Nonvanishing
        )
    });
    let bell_to = kinds
        .iter()
        .filter_map(|k| match k {
            SuiteKind::AlternatingSums => Some(p),
            SuiteKind::BellLink => Some(p - 1),
            SuiteKind::Touchard => Some(n_to + p),
            _ => None,
        })
        .max();
    let m = Modulus::new(p).expect("prime is a valid modulus");
    let tables = if needs_tables { Some(PrimeTables::new(p)) } else { None };
    let bell: Option<Vec<u64>> =
        bell_to.map(|hi| bell_residues(m).take((hi + 1) as usize).collect());

    let mut out = Vec::new();
    for &kind in kinds {
        match kind {
            SuiteKind::AlternatingSums => {
                let (t, b) = (tables.as_ref().unwrap(), bell.as_deref().unwrap());
                out.extend(alternating_sums_from(t, b));
            }
            SuiteKind::BellLink => {
                let (t, b) = (tables.as_ref().unwrap(), bell.as_deref().unwrap());
                out.push(bell_link_from(t, b));
            }
            SuiteKind::Touchard => {
                let b = bell.as_deref().unwrap();
                out.extend((0..=n_to).map(|n| touchard_from(m, p, b, n)));
            }
            SuiteKind::WilsonShift => {
                let t = tables.as_ref().unwrap();
                out.extend(shift_domain(p).into_iter().map(|k| wilson_shift_from(t, k)));
            }
            SuiteKind::LeftFactorialDiff => {
                let t = tables.as_ref().unwrap();
                out.extend(
                    shift_domain(p)
                        .into_iter()
                        .map(|l| left_factorial_diff_from(t, l)),
                );
            }
            SuiteKind::Nonvanishing => {
                let t = tables.as_ref().unwrap();
                out.extend(
                    nonvanishing_domain(p)
                        .into_iter()
                        .map(|l| nonvanishing_from(t, l)),
                );
            }
            // Index-driven kinds are handled outside the per-prime pass.
            _ => {}
        }
    }
    out
}

/// Run the selected families over all `n <= n_to` (index-driven) and all
/// odd primes `<= primes_to` (prime-driven), in deterministic order:
/// index families first (ascending `n`), then one block per prime in
/// ascending order. Failures are data, not errors.
pub fn run_selected(
    kinds: &[SuiteKind],
    primes_to: u64,
    n_to: u64,
    jobs: Jobs,
) -> Vec<CheckResult> {
    let selected = |k: SuiteKind| kinds.contains(&k);
    let mut out = Vec::new();

    type IndexCheck = fn(u64) -> CheckResult;
    let index_families: [(SuiteKind, IndexCheck); 4] = [
        (SuiteKind::SubfactorialLink, check_subfactorial_link),
        (SuiteKind::FloorLink, check_floor_link),
        (SuiteKind::FloorDelta, check_floor_delta),
        (SuiteKind::FloorDiff, check_floor_diff),
    ];
    let ns: Vec<u64> = (1..=n_to).collect();
    for (kind, f) in index_families {
        if selected(kind) {
            let block =
                try_map_ordered(jobs, &ns, |&n| Ok(f(n))).expect("index checks are infallible");
            out.extend(block);
        }
    }

    let prime_kinds: Vec<SuiteKind> = [
        SuiteKind::AlternatingSums,
        SuiteKind::BellLink,
        SuiteKind::Touchard,
        SuiteKind::WilsonShift,
        SuiteKind::LeftFactorialDiff,
        SuiteKind::Nonvanishing,
    ]
    .into_iter()
    .filter(|&k| selected(k))
    .collect();
    if !prime_kinds.is_empty() {
        let primes: Vec<u64> = sieve_primes(primes_to)
            .into_iter()
            .filter(|&p| p > 2)
            .collect();
        let blocks = try_map_ordered(jobs, &primes, |&p| Ok(prime_block(&prime_kinds, p, n_to)))
            .expect("prime checks are infallible");
        out.extend(blocks.into_iter().flatten());
    }
    out
}

/// [`run_selected`] over every family.
pub fn run_suite(primes_to: u64, n_to: u64, jobs: Jobs) -> Vec<CheckResult> {
    run_selected(&SuiteKind::ALL, primes_to, n_to, jobs)
}
