//! Exact arbitrary-precision values of the three sequences and their
//! elementary companions:
//!
//! * `K(n) = 0! + 1! + ... + (n-1)!` — the left factorial, `K(0) = 0`;
//! * `S(n)` — the subfactorial (number of derangements of `n` items),
//!   via the recurrence `S(n) = n*S(n-1) + (-1)^n` and, independently,
//!   `S(n) = (n-1)(S(n-1) + S(n-2))`;
//! * `B(n)` — Bell numbers via the umbral binomial recurrence
//!   `B(n+1) = sum_k C(n,k) B(k)`;
//! * `floor(n!/e)` — computed exactly, no floating point (see
//!   [`floor_fact_over_e`]);
//! * tiny brute-force counters for derangements and set partitions that
//!   serve as ground-truth oracles in tests.
//!
//! Every generator comes in single-value and infinite-stream form; the
//! streams are the canonical path for table tests.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// δ_n: 1 when `n` is even (so δ_0 = 1), 0 when odd.
///
/// This is the correction term in `S(n) = floor(n!/e) + δ_n`.
#[inline]
pub fn parity_delta(n: u64) -> u64 {
    (n + 1) % 2
}

/// Exact `n!`.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Stream `0!, 1!, 2!, ...`.
pub fn factorials() -> Factorials {
    Factorials {
        k: 0,
        value: BigUint::one(),
    }
}

/// Infinite iterator over exact factorials.
#[derive(Debug, Clone)]
pub struct Factorials {
    k: u64,
    value: BigUint,
}

impl Iterator for Factorials {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.value.clone();
        self.k += 1;
        self.value *= self.k;
        Some(out)
    }
}

/// Exact left factorial `K(n)`, with `K(0) = 0`.
pub fn left_factorial(n: u64) -> BigUint {
    left_factorials()
        .nth(n as usize)
        .expect("stream is infinite")
}

/// Stream `K(0), K(1), K(2), ...` built incrementally from
/// `K(n+1) = K(n) + n!`.
pub fn left_factorials() -> LeftFactorials {
    LeftFactorials {
        fact: factorials(),
        sum: BigUint::zero(),
    }
}

/// Infinite iterator over exact left factorials.
#[derive(Debug, Clone)]
pub struct LeftFactorials {
    fact: Factorials,
    sum: BigUint,
}

impl Iterator for LeftFactorials {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.sum.clone();
        self.sum += self.fact.next().expect("factorial stream is infinite");
        Some(out)
    }
}

/// Exact subfactorial `S(n)` via `S(n) = n*S(n-1) + (-1)^n`, `S(0) = 1`.
pub fn subfactorial(n: u64) -> BigUint {
    subfactorials().nth(n as usize).expect("stream is infinite")
}

/// Stream `S(0), S(1), S(2), ...`.
pub fn subfactorials() -> Subfactorials {
    Subfactorials {
        n: 0,
        value: BigUint::one(),
    }
}

/// Infinite iterator over exact subfactorials.
#[derive(Debug, Clone)]
pub struct Subfactorials {
    n: u64,
    value: BigUint,
}

impl Iterator for Subfactorials {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.value.clone();
        self.n += 1;
        self.value *= self.n;
        if self.n % 2 == 0 {
            self.value += 1u32;
        } else {
            // n*S(n-1) >= 1 whenever n is odd, so this never underflows.
            self.value -= 1u32;
        }
        Some(out)
    }
}

/// Exact `S(n)` via the second recurrence
/// `S(n) = (n-1)(S(n-1) + S(n-2))` with seeds `S(0) = 1`, `S(1) = 0`.
///
/// Kept independent of [`subfactorial`] so the two recurrences can be
/// checked against each other.
pub fn subfactorial_alt(n: u64) -> BigUint {
    match n {
        0 => return BigUint::one(),
        1 => return BigUint::zero(),
        _ => {}
    }
    let mut prev2 = BigUint::one(); // S(0)
    let mut prev1 = BigUint::zero(); // S(1)
    for k in 2..=n {
        let next = (&prev1 + &prev2) * (k - 1);
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// Exact Bell number `B(n)`.
pub fn bell(n: u64) -> BigUint {
    bells().nth(n as usize).expect("stream is infinite")
}

/// Stream `B(0), B(1), B(2), ...` via the umbral binomial recurrence
/// `B(n+1) = sum_{k=0}^{n} C(n,k) B(k)`, carrying a Pascal row for the
/// binomials (additions only).
pub fn bells() -> Bells {
    Bells {
        bells: Vec::new(),
        row: Vec::new(),
    }
}

/// Infinite iterator over exact Bell numbers.
#[derive(Debug, Clone)]
pub struct Bells {
    bells: Vec<BigUint>, // B(0)..B(n) already produced
    row: Vec<BigUint>,   // C(n, 0)..C(n, n) for n = bells.len() - 1
}

impl Iterator for Bells {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = if self.bells.is_empty() {
            BigUint::one()
        } else {
            // B(n+1) = sum C(n,k) B(k) with the current Pascal row.
            let sum = self
                .row
                .iter()
                .zip(&self.bells)
                .map(|(c, b)| c * b)
                .sum::<BigUint>();
            // Advance the row to C(n+1, *) in place, from the right.
            self.row.push(BigUint::one());
            for k in (1..self.row.len() - 1).rev() {
                let left = self.row[k - 1].clone();
                self.row[k] += left;
            }
            sum
        };
        if self.row.is_empty() {
            self.row.push(BigUint::one());
        }
        self.bells.push(out.clone());
        Some(out)
    }
}

/// Exact `floor(n!/e)`, computed without floating point.
///
/// The alternating series `n!/e = n! * sum_{k>=0} (-1)^k/k!` truncated at
/// `k = n` equals `S(n)` exactly, and the dropped tail is
/// `(-1)^{n+1} ρ_n` with `0 < ρ_n < 1` (the terms alternate and shrink).
/// Hence `n!/e` lies strictly between `S(n) - 1` and `S(n) + 1`, on the
/// side determined by the parity of `n`, which pins the floor to
/// `floor(n!/e) = S(n) - δ_n` — exact for every `n`. Tests additionally
/// bracket `n!/e` between high-precision rational partial sums for small
/// `n` to confirm the derivation.
pub fn floor_fact_over_e(n: u64) -> BigUint {
    subfactorial(n) - parity_delta(n)
}

/// Number of fixpoint-free permutations of `n` items by exhaustive
/// enumeration (Heap's algorithm); ground truth for [`subfactorial`].
/// Refuses `n > 8` to stay well under a second.
pub fn derangements_bruteforce(n: u64) -> Result<BigUint> {
    const MAX: u64 = 8;
    if n > MAX {
        return Err(Error::OutOfOracleRange { n, max: MAX });
    }
    let len = n as usize;
    let mut perm: Vec<usize> = (0..len).collect();
    let mut count: u64 = is_derangement(&perm) as u64;
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; len];
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            count += is_derangement(&perm) as u64;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(BigUint::from(count))
}

fn is_derangement(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &v)| i != v)
}

/// Number of set partitions of an `n`-set by exhaustive enumeration of
/// restricted growth strings; ground truth for [`bell`]. Refuses `n > 6`.
pub fn set_partitions_bruteforce(n: u64) -> Result<BigUint> {
    const MAX: u64 = 6;
    if n > MAX {
        return Err(Error::OutOfOracleRange { n, max: MAX });
    }
    // A restricted growth string a_0..a_{n-1} has a_0 = 0 and
    // a_i <= 1 + max(a_0..a_{i-1}); each encodes exactly one partition.
    fn extend(prefix: &mut Vec<u64>, max_so_far: u64, remaining: u64, count: &mut u64) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for label in 0..=max_so_far + 1 {
            prefix.push(label);
            extend(prefix, max_so_far.max(label), remaining - 1, count);
            prefix.pop();
        }
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let mut count = 0;
    // First element is always labeled 0.
    extend(&mut vec![0], 0, n - 1, &mut count);
    Ok(BigUint::from(count))
}
