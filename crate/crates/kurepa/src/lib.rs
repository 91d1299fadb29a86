//! Exact and modular arithmetic around Kurepa's left factorial
//! `K(n) = 0! + 1! + ... + (n-1)!`.
//!
//! The crate has five layers:
//!
//! * [`modular`] — fixed-width modular arithmetic (moduli up to 2^63),
//!   prime sieving, factorial residue streams, and p-adic valuations.
//! * [`exact`] — arbitrary-precision generators for `K(n)`, the
//!   subfactorial `S(n)`, Bell numbers, and `floor(n!/e)`, plus small
//!   brute-force counting oracles.
//! * [`congruence`] — executable congruence checks relating the three
//!   sequences (Wilson-shift, Touchard, alternating sums, and the
//!   left-factorial hypothesis family), runnable as a batch suite.
//! * [`search`] — Kurepa pair search per prime, order computation, and
//!   index distribution tables over prime ranges.
//! * [`stabilize`] — thresholds past which `K(n) mod p^r` is constant,
//!   with verified certificates.
//!
//! Long scans parallelize across primes with rayon when the `parallel`
//! feature (default) is enabled; disabling it leaves a purely sequential
//! build with the same results.

pub mod congruence;
pub mod exact;
pub mod modular;
pub mod report;
pub mod search;
pub mod stabilize;

mod par;

pub use congruence::{CheckResult, Claim, Polarity, SuiteKind};
pub use modular::{Modulus, PrimePower, Residue};
pub use par::Jobs;
pub use search::{DistributionReport, KurepaPair, PrimeIndexRecord};
pub use stabilize::StabilizationCertificate;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Modulus outside the supported range [2, 2^63].
    #[error("modulus {0} out of range (need 2 <= m <= 2^63)")]
    ModulusRange(u64),
    /// A residue has no inverse because it shares a factor with the modulus.
    #[error("{value} is not invertible mod {modulus}")]
    NonInvertible { value: u64, modulus: u64 },
    /// p^r does not fit the modulus bound.
    #[error("{p}^{r} exceeds the modulus bound 2^63")]
    PrimePowerOverflow { p: u64, r: u32 },
    /// A prime was required.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// An odd prime was required.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    /// Brute-force oracle asked for an input beyond its cutoff.
    #[error("n = {n} exceeds the brute-force oracle cutoff {max}")]
    OutOfOracleRange { n: u64, max: u64 },
    /// p | K(p) was observed for an odd prime; this would disprove the
    /// left-factorial hypothesis, so scans abort loudly instead of
    /// continuing past it.
    #[error("left-factorial hypothesis violated: {p} divides K({p})")]
    KhViolation { p: u64 },
    /// Malformed serialized input (CSV or checkpoint text).
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
