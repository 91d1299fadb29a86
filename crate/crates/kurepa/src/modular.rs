//! Fixed-width modular arithmetic for factorial-sum scans.
//!
//! Moduli are capped at `2^63` so that a sum of two reduced residues fits
//! in `u64` and a product fits in `u128`, with exact reduction at every
//! step. That range covers everything the higher layers need, including
//! `p^3` for five-digit primes in order-two searches.
//!
//! The building blocks are:
//!
//! * [`Modulus`] / [`Residue`] — checked modulus plus value-with-modulus
//!   arithmetic (`+`, `-`, `*`, `pow`, `inv`).
//! * [`sieve_primes`] and [`is_prime`] — Eratosthenes for ranges, a
//!   deterministic strong-pseudoprime test for ad-hoc 64-bit queries.
//! * [`factorial_residues`] / [`left_factorial_residues`] — streams of
//!   `k! mod m` and `K(n) mod m` with one multiplication (plus one
//!   addition) per step, where `K(n) = 0! + 1! + ... + (n-1)!`.
//! * [`digit_sum`] / [`legendre_ord`] — base-p digit sums and the exact
//!   power of p dividing n!.

use std::fmt;

use crate::{Error, Result};

/// A modulus `m` with `2 <= m <= 2^63`.
///
/// The upper bound guarantees `a + b` of two reduced residues never
/// overflows `u64` and `a * b` never overflows `u128`, so all arithmetic
/// here is exact without special cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u64);

impl Modulus {
    /// Largest supported modulus, `2^63`.
    pub const MAX: u64 = 1 << 63;

    /// Validates `2 <= m <= 2^63`.
    pub fn new(m: u64) -> Result<Self> {
        if (2..=Self::MAX).contains(&m) {
            Ok(Modulus(m))
        } else {
            Err(Error::ModulusRange(m))
        }
    }

    /// The raw modulus value.
    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Wrap `x` as a residue, reducing it first.
    pub fn residue(self, x: u64) -> Residue {
        Residue {
            value: x % self.0,
            modulus: self,
        }
    }

    /// `(a + b) mod m` for already-reduced `a`, `b`.
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0 && b < self.0);
        let s = a + b; // no overflow: both < 2^63
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    /// `(a - b) mod m` for already-reduced `a`, `b`.
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0 && b < self.0);
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    /// `-a mod m` for reduced `a`.
    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        debug_assert!(a < self.0);
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// `(a * b) mod m` through a double-wide intermediate.
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.0 as u128) as u64
    }

    /// `a^e mod m` by binary exponentiation.
    pub fn pow(self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of `a` via the extended Euclidean algorithm.
    ///
    /// Deliberately not exponentiation-based: this works for composite
    /// moduli too, which the congruence checks mod arbitrary `n` rely on.
    /// Fails with [`Error::NonInvertible`] when `gcd(a, m) != 1`.
    pub fn inv(self, a: u64) -> Result<u64> {
        let m = self.0;
        let a = a % m;
        // Invariants: r0 = s0*a (mod m), r1 = s1*a (mod m). Coefficients
        // stay below m in absolute value, far inside i128.
        let (mut r0, mut r1) = (m as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return Err(Error::NonInvertible {
                value: a,
                modulus: m,
            });
        }
        let mut x = s0 % m as i128;
        if x < 0 {
            x += m as i128;
        }
        Ok(x as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {}", self.0)
    }
}

/// A value in `[0, m)` tied to its modulus.
///
/// Arithmetic between residues of different moduli is a programming
/// error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    /// The reduced value in `[0, m)`.
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    /// The modulus this residue lives under.
    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    /// `self^e`.
    pub fn pow(self, e: u64) -> Residue {
        Residue {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse, if `gcd(value, m) = 1`.
    pub fn inv(self) -> Result<Residue> {
        Ok(Residue {
            value: self.modulus.inv(self.value)?,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.modulus)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(
                    self.modulus, rhs.modulus,
                    "residue arithmetic across different moduli"
                );
                Residue {
                    value: self.modulus.$op(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

residue_binop!(Add, add, add);
residue_binop!(Sub, sub, sub);
residue_binop!(Mul, mul, mul);

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

/// Multiplicative inverse of a residue (extended Euclid; composite moduli
/// are fine as long as the value is coprime to them).
pub fn mod_inv(a: Residue) -> Result<Residue> {
    a.inv()
}

/// A prime power `p^r` (`r >= 1`) validated to fit the modulus bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    r: u32,
    value: u64,
}

impl PrimePower {
    /// Checks that `p` is prime and `p^r` lies in `[2, 2^63]`.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut value: u64 = 1;
        for _ in 0..r {
            value = value
                .checked_mul(p)
                .filter(|&v| v <= Modulus::MAX)
                .ok_or(Error::PrimePowerOverflow { p, r })?;
        }
        // r = 0 leaves value = 1, which is not a usable modulus.
        Modulus::new(value)?;
        Ok(PrimePower { p, r, value })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn r(self) -> u32 {
        self.r
    }

    /// The number `p^r` itself.
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    /// `p^r` as a modulus (validated at construction).
    #[inline]
    pub fn modulus(self) -> Modulus {
        Modulus(self.value)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.r)
    }
}

/// All primes `<= limit`, ascending (sieve of Eratosthenes).
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = a % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test for any `u64`.
///
/// Trial division by the primes below 40, then a strong-pseudoprime test
/// with the fixed base set {2, 325, 9375, 28178, 450775, 9780504,
/// 1795265022}, which is known to classify every 64-bit integer
/// correctly. Useful for one-off queries like `54503` without building a
/// sieve that far.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sum of the base-`p` digits of `l`.
pub fn digit_sum(p: u64, l: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut l = l;
    let mut sum = 0;
    while l > 0 {
        sum += l % p;
        l /= p;
    }
    sum
}

/// Exact exponent of the prime `p` in `n!`.
///
/// Computed by the digit-sum form of Legendre's formula,
/// `ord_p(n!) = (n - digit_sum(p, n)) / (p - 1)`, which equals
/// `sum_i floor(n / p^i)`.
pub fn legendre_ord(p: u64, n: u64) -> u64 {
    debug_assert!(is_prime(p), "legendre_ord needs a prime base");
    (n - digit_sum(p, n)) / (p - 1)
}

/// Stream of `k! mod m` for `k = 0, 1, 2, ...` — one modular
/// multiplication per step, exact reduction throughout. Never ends.
#[derive(Debug, Clone)]
pub struct FactorialResidues {
    m: Modulus,
    k: u64,
    value: u64,
}

/// Stream `0! mod m, 1! mod m, ...`.
pub fn factorial_residues(m: Modulus) -> FactorialResidues {
    FactorialResidues { m, k: 0, value: 1 }
}

impl Iterator for FactorialResidues {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.value;
        self.k += 1;
        self.value = self.m.mul(self.value, self.k % self.m.get());
        Some(out)
    }
}

/// Stream of `K(n) mod m` for `n = 0, 1, 2, ...` where
/// `K(n) = 0! + 1! + ... + (n-1)!` and `K(0) = 0`. Never ends.
#[derive(Debug, Clone)]
pub struct LeftFactorialResidues {
    fact: FactorialResidues,
    sum: u64,
}

/// Stream `K(0) mod m, K(1) mod m, ...`.
pub fn left_factorial_residues(m: Modulus) -> LeftFactorialResidues {
    LeftFactorialResidues {
        fact: factorial_residues(m),
        sum: 0,
    }
}

impl Iterator for LeftFactorialResidues {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.sum;
        let m = self.fact.m;
        let f = self.fact.next().expect("factorial stream is infinite");
        self.sum = m.add(self.sum, f);
        Some(out)
    }
}

/// One-shot `n! mod m` (linear in `n`).
pub fn factorial_mod(n: u64, m: Modulus) -> u64 {
    let mut acc = 1 % m.get();
    for k in 2..=n {
        acc = m.mul(acc, k % m.get());
    }
    acc
}

/// One-shot `K(n) mod m` (linear in `n`).
pub fn left_factorial_mod(n: u64, m: Modulus) -> u64 {
    left_factorial_residues(m)
        .nth(n as usize)
        .expect("stream is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_finds_first_primes() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2), vec![2]);
        assert!(sieve_primes(1).is_empty());
    }

    #[test]
    fn sieve_counts_primes_to_ten_thousand() {
        let primes = sieve_primes(10_000);
        assert_eq!(primes.len(), 1229, "pi(10^4) = 1229");
        // 1228 odd primes once 2 is dropped.
        assert_eq!(primes.iter().filter(|&&p| p % 2 == 1).count(), 1228);
    }

    #[test]
    fn modulus_bounds_are_enforced() {
        assert!(Modulus::new(2).is_ok());
        assert_eq!(Modulus::new(1), Err(Error::ModulusRange(1)));
        assert_eq!(Modulus::new(0), Err(Error::ModulusRange(0)));
        assert!(Modulus::new(Modulus::MAX).is_ok());
        assert_eq!(
            Modulus::new(Modulus::MAX + 1),
            Err(Error::ModulusRange(Modulus::MAX + 1))
        );
    }

    #[test]
    fn inverse_of_small_residues() {
        let m7 = Modulus::new(7).unwrap();
        assert_eq!(mod_inv(m7.residue(1)).unwrap().value(), 1);
        let m5 = Modulus::new(5).unwrap();
        assert_eq!(mod_inv(m5.residue(2)).unwrap().value(), 3);
    }

    #[test]
    fn inverse_fails_without_coprimality() {
        let m9 = Modulus::new(9).unwrap();
        assert_eq!(
            mod_inv(m9.residue(3)),
            Err(Error::NonInvertible {
                value: 3,
                modulus: 9
            })
        );
        assert_eq!(
            m9.inv(0),
            Err(Error::NonInvertible {
                value: 0,
                modulus: 9
            })
        );
    }

    #[test]
    fn inverse_works_for_composite_moduli() {
        let m = Modulus::new(100).unwrap();
        for a in (1..100).filter(|a| a % 2 != 0 && a % 5 != 0) {
            let inv = m.inv(a).unwrap();
            assert_eq!(m.mul(a, inv), 1, "a = {a}");
        }
    }

    #[test]
    fn residue_operators_close_over_the_modulus() {
        let m = Modulus::new(1000).unwrap();
        let a = m.residue(997);
        let b = m.residue(8);
        assert_eq!((a + b).value(), 5);
        assert_eq!((a - b).value(), 989);
        assert_eq!((b - a).value(), 11);
        assert_eq!((a * b).value(), 976);
        assert_eq!((-b).value(), 992);
        assert_eq!(m.residue(2).pow(10).value(), 24);
    }

    #[test]
    fn large_modulus_products_are_exact() {
        // Near the 2^63 cap, products need the full u128 intermediate.
        let m = Modulus::new(Modulus::MAX).unwrap();
        let a = Modulus::MAX - 1;
        // (2^63 - 1)^2 = 2^126 - 2^64 + 1 ≡ 1 (mod 2^63)
        assert_eq!(m.mul(a, a), 1);
    }

    #[test]
    fn factorial_stream_mod_ten() {
        let m = Modulus::new(10).unwrap();
        let got: Vec<u64> = factorial_residues(m).take(7).collect();
        assert_eq!(got, vec![1, 1, 2, 6, 4, 0, 0], "5! = 120 ≡ 0 mod 10");
    }

    #[test]
    fn factorial_stream_reaches_wilson_value() {
        // (p-1)! ≡ -1 (mod p) at p = 7.
        let m = Modulus::new(7).unwrap();
        assert_eq!(factorial_residues(m).nth(6).unwrap(), 6);
    }

    #[test]
    fn factorial_vanishes_mod_prime_square() {
        // ord_5(10!) = 2, so 10! ≡ 0 (mod 25).
        let m = Modulus::new(25).unwrap();
        assert_eq!(factorial_residues(m).nth(10).unwrap(), 0);
        assert_eq!(factorial_mod(10, m), 0);
    }

    #[test]
    fn left_factorial_stream_matches_table_mod_1000() {
        // K(0)..K(10) = 0,1,2,4,10,34,154,874,5914,46234,409114
        let m = Modulus::new(1000).unwrap();
        let got: Vec<u64> = left_factorial_residues(m).take(11).collect();
        assert_eq!(got, vec![0, 1, 2, 4, 10, 34, 154, 874, 914, 234, 114]);
        assert_eq!(left_factorial_mod(10, m), 114);
    }

    #[test]
    fn legendre_ord_counts_prime_factors_of_factorials() {
        assert_eq!(legendre_ord(3, 9), 4, "9! = 362880 = 3^4 * 4480");
        assert_eq!(legendre_ord(2, 4), 3, "4! = 24 = 2^3 * 3");
        assert_eq!(legendre_ord(5, 0), 0, "0! = 1");
    }

    #[test]
    fn digit_sums_in_prime_bases() {
        assert_eq!(digit_sum(2, 5), 2, "5 = 101 in base 2");
        assert_eq!(digit_sum(5, 5), 1, "5 = 10 in base 5");
        assert_eq!(digit_sum(7, 0), 0);
    }

    #[test]
    fn deterministic_primality_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(54503));
        assert!(is_prime(2203) && is_prime(5227) && is_prime(6689));
        assert!(!is_prime(2047), "2047 = 23 * 89 fools base 2 alone");
        assert!(!is_prime(3215031751), "strong pseudoprime to bases 2,3,5,7");
        assert!(is_prime((1 << 61) - 1), "Mersenne prime 2^61 - 1");
        assert!(!is_prime(u64::MAX), "2^64 - 1 = 3 * 5 * 17 * ...");
    }

    #[test]
    fn sieve_and_deterministic_test_agree_below_2000() {
        let sieved = sieve_primes(2000);
        let tested: Vec<u64> = (0..=2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, tested);
    }

    #[test]
    fn prime_power_construction() {
        let pp = PrimePower::new(5, 2).unwrap();
        assert_eq!(pp.value(), 25);
        assert_eq!(pp.modulus().get(), 25);
        assert_eq!(PrimePower::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(
            PrimePower::new(3, 40),
            Err(Error::PrimePowerOverflow { p: 3, r: 40 }),
            "3^40 > 2^63"
        );
        assert_eq!(PrimePower::new(3, 0), Err(Error::ModulusRange(1)));
        // 54503^3 stays in range (needed by order-two refinement).
        assert!(PrimePower::new(54503, 3).is_ok());
    }

    #[test]
    fn pow_handles_edge_exponents() {
        let m = Modulus::new(13).unwrap();
        assert_eq!(m.pow(6, 0), 1);
        assert_eq!(m.pow(0, 5), 0);
        assert_eq!(m.pow(6, 12), 1, "Fermat at p = 13");
    }
}
