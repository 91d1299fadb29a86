//! Cross-route invariants: every quantity the crate computes is checked
//! here against an independent derivation — big-integer arithmetic
//! against streamed residues, closed forms against brute force, direct
//! formulas against their defining recurrences — plus randomized
//! property checks for the modular layer and the text codecs.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kurepa::congruence::{
    bell_residues, check_left_factorial_diff, check_subfactorial_link, run_suite,
    subfactorial_residues,
};
use kurepa::exact;
use kurepa::modular::{
    factorial_residues, is_prime, left_factorial_mod, left_factorial_residues, legendre_ord,
    sieve_primes, Modulus, PrimePower,
};
use kurepa::report::{checkpoint_from_str, checkpoint_to_string};
use kurepa::search::{
    find_pairs, find_pairs_via_profile, render_ratio_5dp, scan_range, simple_power_audit,
    verify_record, PrimeIndexRecord, ResidueProfile,
};
use kurepa::stabilize::{check_l_r_bound, compute_l_r, verify_stabilization};
use kurepa::{Error, Jobs};

/// `n! * sum_{k=0}^{m} (-1)^k / k!` as an exact rational.
fn alternating_tail(n: u64, m: u64) -> BigRational {
    let fact_n = BigInt::from(exact::factorial(n));
    let mut sum = BigRational::zero();
    let mut k_fact = BigInt::one();
    for k in 0..=m {
        if k > 0 {
            k_fact *= k;
        }
        let term = BigRational::new(fact_n.clone(), k_fact.clone());
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

fn to_u64(b: &BigUint) -> u64 {
    b.to_u64().expect("value fits u64")
}

#[test]
fn factorial_valuations_match_direct_factor_counting() {
    for p in sieve_primes(50) {
        assert_eq!(legendre_ord(p, 0), 0);
        let mut total = 0u64;
        for n in 1..=2000u64 {
            let mut k = n;
            while k % p == 0 {
                total += 1;
                k /= p;
            }
            assert_eq!(legendre_ord(p, n), total, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn residue_streams_match_big_integer_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let moduli: Vec<u64> = (0..12)
        .map(|_| rng.gen_range(2u64..=1_000_000))
        .chain([2, 3, 4, 10, 1 << 62])
        .collect();
    let facts: Vec<BigUint> = exact::factorials().take(161).collect();
    let lefts: Vec<BigUint> = exact::left_factorials().take(161).collect();
    let subs: Vec<BigUint> = exact::subfactorials().take(161).collect();
    let bells: Vec<BigUint> = exact::bells().take(61).collect();
    for m in moduli {
        let modulus = Modulus::new(m).unwrap();
        let big_m = BigUint::from(m);
        let reduce = |v: &BigUint| to_u64(&(v % &big_m));
        let got: Vec<u64> = factorial_residues(modulus).take(161).collect();
        assert_eq!(got, facts.iter().map(reduce).collect::<Vec<_>>(), "k! mod {m}");
        let got: Vec<u64> = left_factorial_residues(modulus).take(161).collect();
        assert_eq!(got, lefts.iter().map(reduce).collect::<Vec<_>>(), "K mod {m}");
        let got: Vec<u64> = subfactorial_residues(modulus).take(161).collect();
        assert_eq!(got, subs.iter().map(reduce).collect::<Vec<_>>(), "S mod {m}");
        let got: Vec<u64> = bell_residues(modulus).take(61).collect();
        assert_eq!(got, bells.iter().map(reduce).collect::<Vec<_>>(), "B mod {m}");
    }
}

#[test]
fn modular_inverse_agrees_with_gcd_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10_000 {
        let m = rng.gen_range(2u64..=(1 << 63));
        let a = rng.gen_range(0..m);
        let modulus = Modulus::new(m).unwrap();
        match modulus.inv(a) {
            Ok(inv) => {
                assert_eq!(num_integer::gcd(a, m), 1, "a = {a}, m = {m}");
                assert_eq!(modulus.mul(a, inv), 1 % m, "a = {a}, m = {m}");
                assert!(inv < m);
            }
            Err(Error::NonInvertible { value, modulus }) => {
                assert_eq!((value, modulus), (a, m));
                assert!(num_integer::gcd(a, m) > 1, "a = {a}, m = {m}");
            }
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
}

#[test]
fn wilson_congruence_holds_for_every_prime_to_ten_thousand() {
    for p in sieve_primes(10_000) {
        let m = Modulus::new(p).unwrap();
        let top = factorial_residues(m)
            .nth((p - 1) as usize)
            .expect("stream is infinite");
        assert_eq!(top, p - 1, "(p-1)! mod p for p = {p}");
    }
}

#[test]
fn subfactorial_recurrences_and_rational_formula_agree() {
    // Three independent routes: the first-order recurrence (canonical),
    // the two-term recurrence, and the exact rational identity
    // S(n) = n! * sum_{k<=n} (-1)^k / k!.
    let subs: Vec<BigUint> = exact::subfactorials().take(201).collect();
    for (n, s) in subs.iter().enumerate() {
        let n = n as u64;
        assert_eq!(exact::subfactorial_alt(n), *s, "n = {n}");
        let rational = alternating_tail(n, n);
        assert!(rational.is_integer());
        assert_eq!(rational.to_integer(), BigInt::from(s.clone()), "n = {n}");
    }
}

#[test]
fn floor_of_factorial_over_e_sits_between_rational_tails() {
    // Partial sums of n! * sum (-1)^k / k! alternate around n!/e once
    // the terms shrink, so an odd cutoff m > n gives
    // P_m < n!/e < P_{m+1}. Squeezing floor_fact_over_e(n) between
    // them proves it is the true floor, without any floating point.
    for n in 0..=30u64 {
        let f = BigRational::from_integer(BigInt::from(exact::floor_fact_over_e(n)));
        let mut m = n + 25;
        if m % 2 == 0 {
            m += 1;
        }
        let below = alternating_tail(n, m);
        let above = alternating_tail(n, m + 1);
        assert!(below.is_positive() || n == 0);
        assert!(f <= below, "n = {n}: floor above the lower tail");
        assert!(above <= &f + BigRational::one(), "n = {n}: floor too small");
    }
}

#[test]
fn floor_differences_recover_the_subfactorial_shape() {
    // floor(n!/e) = S(n) - δ_n exactly; pushing S(n) = n S(n-1) + (-1)^n
    // through the delta shift gives the floor recurrence
    // floor(n!/e) = n floor((n-1)!/e) + (n-1)[n odd].
    for n in 2..=120u64 {
        let lhs = exact::floor_fact_over_e(n);
        let prev = exact::floor_fact_over_e(n - 1);
        let mut rhs = prev * n;
        if n % 2 == 1 {
            rhs += n - 1;
        }
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn umbral_binomial_sum_of_subfactorials_gives_factorials() {
    // sum_k C(n,k) S(k) counts all permutations by fixed-point set: n!.
    let subs: Vec<BigUint> = exact::subfactorials().take(101).collect();
    let mut facts = exact::factorials();
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for n in 0..=100usize {
        let total: BigUint = row.iter().zip(&subs).map(|(c, s)| c * s).sum();
        assert_eq!(total, facts.next().unwrap(), "n = {n}");
        row.push(BigUint::one());
        for k in (1..row.len() - 1).rev() {
            let carry = row[k - 1].clone();
            row[k] += carry;
        }
    }
}

#[test]
fn left_factorial_steps_by_factorials() {
    let lefts: Vec<BigUint> = exact::left_factorials().take(201).collect();
    let mut facts = exact::factorials();
    assert!(lefts[0].is_zero());
    for w in lefts.windows(2) {
        assert_eq!(&w[1] - &w[0], facts.next().unwrap());
    }
}

#[test]
fn counting_oracles_match_the_sequence_definitions() {
    for n in 0..=8u64 {
        assert_eq!(
            exact::derangements_bruteforce(n).unwrap(),
            exact::subfactorial(n),
            "derangements of {n}"
        );
    }
    for n in 0..=6u64 {
        assert_eq!(
            exact::set_partitions_bruteforce(n).unwrap(),
            exact::bell(n),
            "partitions of {n}"
        );
    }
    assert!(matches!(
        exact::derangements_bruteforce(9),
        Err(Error::OutOfOracleRange { n: 9, max: 8 })
    ));
    assert!(matches!(
        exact::set_partitions_bruteforce(7),
        Err(Error::OutOfOracleRange { n: 7, max: 6 })
    ));
}

#[test]
fn difference_rule_at_full_shift_collapses_to_the_subfactorial_link() {
    // l = p turns K(p) - K(0) ≡ -S(p-1)/(p-1)! into K(p) ≡ S(p-1),
    // which is the n = p case of the subfactorial link; the two code
    // paths must produce literally the same claim.
    for p in sieve_primes(1000).into_iter().filter(|&p| p > 2) {
        let diff = check_left_factorial_diff(p, p);
        let link = check_subfactorial_link(p);
        assert_eq!(diff.claim, link.claim, "p = {p}");
        assert!(diff.passed && link.passed, "p = {p}");
    }
}

#[test]
fn suite_is_green_across_the_sampling_boundary() {
    // primes_to = 350 crosses the full-range cap, so both the exhaustive
    // and the sampled shift domains run; nothing may fail either way.
    let results = run_suite(350, 120, Jobs::Auto);
    let failures: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    assert!(failures.is_empty(), "failures: {failures:?}");
    // The sampled domain still probes the far edge l = p - 1.
    assert!(results
        .iter()
        .any(|r| r.name == "wilson-shift" && r.subject == 349 && r.aux == Some(348)));
    assert!(results
        .iter()
        .any(|r| r.name == "nonvanishing" && r.subject == 349 && r.aux == Some(348)));
}

#[test]
fn residue_profiles_validate_on_random_prime_powers() {
    let primes = sieve_primes(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let p = primes[rng.gen_range(0..primes.len())];
        let r = rng.gen_range(1u32..=3);
        let profile = ResidueProfile::new(PrimePower::new(p, r).unwrap());
        assert!(profile.difference_invariant_holds(), "p = {p}, r = {r}");
        assert_eq!(profile.values.len() as u64, p + 1);
        // Reducing the profile endpoint mod p recovers the one-shot value.
        let m = Modulus::new(p).unwrap();
        assert_eq!(profile.values[p as usize] % p, left_factorial_mod(p, m));
    }
}

#[test]
fn both_search_routes_agree_below_five_hundred() {
    for p in sieve_primes(500).into_iter().filter(|&p| p > 2) {
        assert_eq!(
            find_pairs(p).unwrap(),
            find_pairs_via_profile(p).unwrap(),
            "p = {p}"
        );
    }
}

#[test]
fn scans_of_nested_ranges_agree_on_the_shared_prefix() {
    let (small, report_small) = scan_range(100, Jobs::Sequential).unwrap();
    let (large, report_large) = scan_range(300, Jobs::Auto).unwrap();
    assert!(large.starts_with(&small));
    assert_eq!(report_small.odd_primes as usize, small.len());
    assert_eq!(
        report_large.odd_primes - report_small.odd_primes,
        (large.len() - small.len()) as u64
    );
    assert_eq!(
        report_small.histogram.iter().sum::<u64>(),
        report_small.odd_primes
    );
}

#[test]
fn every_record_to_two_thousand_verifies_and_has_simple_powers() {
    let (records, _) = scan_range(2000, Jobs::Auto).unwrap();
    for record in &records {
        let results = verify_record(record);
        let bad: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(bad.is_empty(), "p = {}: {bad:?}", record.p);
    }
    let audit = simple_power_audit(2000, &records);
    assert!(audit.iter().all(|r| r.passed), "{audit:?}");
}

#[test]
fn stabilization_certificates_hold_to_one_hundred() {
    for p in sieve_primes(100) {
        for r in 1..=5u32 {
            let cert = verify_stabilization(p, r, 2 * p).unwrap();
            assert_eq!(cert.l_r, compute_l_r(p, r), "p = {p}, r = {r}");
            assert_eq!(cert.threshold, cert.l_r * p);
            assert_eq!(cert.modulus, p.checked_pow(r).unwrap());
            assert!(cert.observed_first_stable <= cert.threshold);
            assert!(cert.valuation_at_threshold >= r as u64);
            assert!(cert.l_r <= r as u64);
        }
        assert!(check_l_r_bound(p, 8).passed, "p = {p}");
    }
}

fn checkpoint_fixture() -> &'static (Vec<PrimeIndexRecord>, String) {
    static FIXTURE: OnceLock<(Vec<PrimeIndexRecord>, String)> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let (records, _) = scan_range(150, Jobs::Sequential).unwrap();
        let text = checkpoint_to_string(&records);
        (records, text)
    })
}

proptest! {
    #[test]
    fn modular_ops_match_wide_arithmetic(
        m in 2u64..=(1u64 << 63),
        a in any::<u64>(),
        b in any::<u64>(),
        e in 0u64..64,
    ) {
        let modulus = Modulus::new(m).unwrap();
        let (a, b) = (a % m, b % m);
        let wide = m as u128;
        prop_assert_eq!(modulus.add(a, b), ((a as u128 + b as u128) % wide) as u64);
        prop_assert_eq!(modulus.sub(a, b), ((a as u128 + wide - b as u128) % wide) as u64);
        prop_assert_eq!(modulus.neg(a), ((wide - a as u128) % wide) as u64);
        prop_assert_eq!(modulus.mul(a, b), ((a as u128 * b as u128) % wide) as u64);
        let want = BigUint::from(a).modpow(&BigUint::from(e), &BigUint::from(m));
        prop_assert_eq!(modulus.pow(a, e), to_u64(&want));
    }

    #[test]
    fn sieve_outputs_are_prefixes_of_larger_sieves(a in 2u64..3000, delta in 0u64..500) {
        let small = sieve_primes(a);
        let large = sieve_primes(a + delta);
        prop_assert!(large.starts_with(&small));
        prop_assert!(large.iter().all(|&p| is_prime(p)));
        let grown = ((a + 1)..=(a + delta)).filter(|&n| is_prime(n)).count();
        prop_assert_eq!(large.len() - small.len(), grown);
    }

    #[test]
    fn checkpoint_parser_keeps_a_record_prefix_under_any_truncation(cut in 0usize..4000) {
        let (records, text) = checkpoint_fixture();
        let cut = cut.min(text.len());
        let parsed = checkpoint_from_str(&text[..cut]);
        prop_assert!(records.starts_with(&parsed));
        // Cutting nothing yields everything.
        prop_assert_eq!(&checkpoint_from_str(text), records);
    }

    #[test]
    fn ratio_rendering_stays_within_half_a_unit(num in 0u64..100_000, den in 1u64..100_000) {
        let rendered = render_ratio_5dp(num, den);
        let (whole, frac) = rendered.split_once('.').expect("decimal point");
        prop_assert_eq!(frac.len(), 5);
        let scaled = whole.parse::<u128>().unwrap() * 100_000 + frac.parse::<u128>().unwrap();
        // |scaled/10^5 - num/den| <= 1/(2*10^5), i.e. half-up rounding.
        let lhs = scaled * den as u128;
        let rhs = num as u128 * 100_000;
        let gap = lhs.abs_diff(rhs) * 2;
        prop_assert!(gap <= den as u128, "{num}/{den} -> {rendered}");
    }
}
