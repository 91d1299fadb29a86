//! Eventual constancy of `K(n)` modulo prime powers.
//!
//! Modulo `p^r`, the terms `k!` of the left factorial sum vanish once
//! `ord_p(k!) >= r`, so `K(n) mod p^r` is constant for all `n` past the
//! first such `k`. The multiplicity `ord_p((lp)!)` equals
//! `l + (l - σ_p(l)) / (p-1)` (base-`p` digit sum `σ_p`), giving the
//! exact threshold multiplier
//!
//! `l_r = min { l >= 1 : l + (l - σ_p(l)) / (p-1) >= r }`,
//!
//! with the stream constant from `n = l_r * p` on. Since the valuation
//! of `k!` only grows at multiples of `p`, that threshold is sharp as a
//! multiple of `p`; `l_r <= r` always (the `l = r` candidate works).
//!
//! [`verify_stabilization`] doesn't take the theorem on faith: it
//! streams the residues across a window past the threshold and
//! manufactures a certificate out of what it saw, panicking if the
//! stream moved after the threshold (that would be a bug in the residue
//! arithmetic, not an open question).

use serde::{Deserialize, Serialize};

use crate::congruence::CheckResult;
use crate::modular::{digit_sum, is_prime, left_factorial_residues, legendre_ord, PrimePower};
use crate::Result;

/// Minimal `l` with `ord_p((lp)!) >= r`, evaluated via the digit-sum
/// form. `l = r` always satisfies the bound, so the scan terminates.
pub fn compute_l_r(p: u64, r: u32) -> u64 {
    debug_assert!(is_prime(p) && r >= 1);
    let r = r as u64;
    (1..=r)
        .find(|&l| l + (l - digit_sum(p, l)) / (p - 1) >= r)
        .expect("l = r satisfies the threshold inequality")
}

/// Observed stabilization of `K mod p^r`, with both the predicted
/// threshold and what the stream actually did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub p: u64,
    pub r: u32,
    /// Threshold multiplier from the digit-sum formula.
    pub l_r: u64,
    /// `l_r * p`: the stream is constant from this index on.
    pub threshold: u64,
    /// `p^r`.
    pub modulus: u64,
    /// The constant value `K(n) mod p^r` for `n >= threshold`.
    pub stable_value: u64,
    /// How far past the threshold constancy was watched.
    pub window: u64,
    /// Largest `n <= threshold + window` where the stream still moved;
    /// at most `threshold`, sometimes smaller when residues happen to
    /// repeat early.
    pub observed_first_stable: u64,
    /// `ord_p(threshold!)`, the multiplicity that kills the tail.
    pub valuation_at_threshold: u64,
}

/// Stream `K mod p^r` out to `l_r * p + window` and certify constancy
/// from the threshold on.
pub fn verify_stabilization(p: u64, r: u32, window: u64) -> Result<StabilizationCertificate> {
    debug_assert!(window >= 1);
    let power = PrimePower::new(p, r)?;
    let m = power.modulus();
    let l_r = compute_l_r(p, r);
    let threshold = l_r * p;
    let end = threshold + window;

    let mut last_change = 0u64;
    let mut prev = 0u64;
    let mut stable_value = 0u64;
    for (n, v) in left_factorial_residues(m).take((end + 1) as usize).enumerate() {
        let n = n as u64;
        if n > 0 && v != prev {
            last_change = n;
        }
        if n == threshold {
            stable_value = v;
        }
        prev = v;
    }
    assert!(
        last_change <= threshold,
        "K mod {} moved at n = {last_change}, past the proven threshold {threshold}",
        power.value()
    );

    let valuation_at_threshold = legendre_ord(p, threshold);
    assert!(
        valuation_at_threshold >= r as u64,
        "threshold valuation fell short: ord_{p}({threshold}!) = {valuation_at_threshold} < {r}"
    );

    Ok(StabilizationCertificate {
        p,
        r,
        l_r,
        threshold,
        modulus: power.value(),
        stable_value,
        window,
        observed_first_stable: last_change,
        valuation_at_threshold,
    })
}

/// `l_r <= r` and `r -> l_r` nondecreasing, for `r = 1..=r_max`; `aux`
/// carries the first `r` violating either on failure.
pub fn check_l_r_bound(p: u64, r_max: u32) -> CheckResult {
    let mut prev = 0u64;
    let mut bad = None;
    for r in 1..=r_max {
        let l = compute_l_r(p, r);
        if l > r as u64 || l < prev {
            bad = Some(r as u64);
            break;
        }
        prev = l;
    }
    CheckResult::predicate("l-r-bound", p, bad, bad.is_none())
}
