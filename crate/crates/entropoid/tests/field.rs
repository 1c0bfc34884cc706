mod common;

use std::collections::HashSet;

use entropoid::field::{
    gen_safe_prime, is_prime, is_safe_prime, mod_inv, Mont, PrimeField, PrimeModulus, Residue,
};
use entropoid::Error;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn mod_inv_small_cases() {
    let m = PrimeModulus::from_u64(7).unwrap();
    for (a, expect) in [(1, 1), (4, 2), (3, 5)] {
        assert_eq!(mod_inv(&big(a), &m).unwrap(), big(expect));
        assert_eq!(common::inv_search(a, 7), expect);
    }
    assert_eq!(mod_inv(&big(0), &m), Err(Error::ZeroInverse));
    assert_eq!(mod_inv(&big(14), &m), Err(Error::ZeroInverse));
}

#[test]
fn mod_inv_is_an_involution_mod_small_primes() {
    for p in [7u64, 11, 13, 101, 65537] {
        let f = PrimeField::<u64>::new(PrimeModulus::from_u64(p).unwrap()).unwrap();
        for a in 1..p.min(2000) {
            let inv = f.inv(&a).unwrap();
            assert_eq!(a * inv % p, 1);
            assert_eq!(f.inv(&inv).unwrap(), a);
        }
    }
}

#[test]
fn safe_prime_classification() {
    assert!(is_safe_prime(&big(7)));
    assert!(is_safe_prime(&big(23)));
    assert!(!is_safe_prime(&big(13)));
    assert!(!is_safe_prime(&big(4)));
    for n in 5u64..5000 {
        let expect = common::is_prime_naive(n) && common::is_prime_naive(n / 2) && n % 2 == 1;
        assert_eq!(is_safe_prime(&big(n)), expect, "n = {n}");
    }
}

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0u64..20000 {
        assert_eq!(is_prime(&big(n)), common::is_prime_naive(n), "n = {n}");
    }
    // Carmichael numbers and a strong pseudoprime to base 2
    for n in [561u64, 1105, 1729, 2047, 3215031751, 3825123056546413051] {
        assert!(!is_prime(&big(n)), "{n}");
    }
    assert!(is_prime(&((BigUint::from(1u32) << 127) - 1u32)));
    assert!(!is_prime(&((BigUint::from(1u32) << 128) + 1u32)));
}

#[test]
fn tiny_safe_primes_are_forced() {
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    for _ in 0..20 {
        assert_eq!(gen_safe_prime(3, &mut rng).unwrap().p(), &big(7));
        assert_eq!(gen_safe_prime(4, &mut rng).unwrap().p(), &big(11));
        assert_eq!(gen_safe_prime(5, &mut rng).unwrap().p(), &big(23));
    }
}

#[test]
fn generated_safe_primes_have_exact_width() {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    for bits in [6u32, 8, 12, 16, 24, 32, 64, 128] {
        let m = gen_safe_prime(bits, &mut rng).unwrap();
        assert_eq!(m.bits(), bits);
        assert_eq!(m.p().bits(), bits as u64);
        assert!(is_safe_prime(m.p()));
        assert_eq!(m.q().unwrap() * 2u32 + 1u32, *m.p());
    }
}

#[test]
fn random_excluding_respects_exclusions() {
    let f = PrimeField::<u64>::new(PrimeModulus::from_u64(7).unwrap()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let ex: HashSet<u64> = [0].into();
    for _ in 0..1000 {
        let v = f.random_excluding(&mut rng, &ex);
        assert!((1..7).contains(&v));
    }
}

#[test]
fn residues_are_uniform_mod_7() {
    let f = PrimeField::<u64>::new(PrimeModulus::from_u64(7).unwrap()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let n = 100_000f64;
    let mut counts = [0u32; 7];
    for _ in 0..n as usize {
        counts[f.random(&mut rng) as usize] += 1;
    }
    let mean = n / 7.0;
    let sigma = (n * (1.0 / 7.0) * (6.0 / 7.0)).sqrt();
    for c in counts {
        assert!((c as f64 - mean).abs() < 5.0 * sigma, "{counts:?}");
    }
    // Same check through the big-integer sampler.
    let g = PrimeField::<BigUint>::new(PrimeModulus::from_u64(7).unwrap()).unwrap();
    let mut counts = [0u32; 7];
    for _ in 0..n as usize {
        let v: u64 = g.random(&mut rng).try_into().unwrap();
        counts[v as usize] += 1;
    }
    for c in counts {
        assert!((c as f64 - mean).abs() < 5.0 * sigma, "{counts:?}");
    }
}

fn check_against_bigint<R: Residue>(p: &BigUint, trials: usize, seed: u64) {
    let f = PrimeField::<R>::new(PrimeModulus::new(p.clone()).unwrap()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = entropoid::field::uniform_below(p, &mut rng);
        let b = entropoid::field::uniform_below(p, &mut rng);
        let (ra, rb) = (f.from_biguint(&a), f.from_biguint(&b));
        assert_eq!(f.to_biguint(&ra), a);
        assert_eq!(f.to_biguint(&f.add(&ra, &rb)), (&a + &b) % p);
        assert_eq!(f.to_biguint(&f.sub(&ra, &rb)), (&a + p - &b) % p);
        assert_eq!(f.to_biguint(&f.mul(&ra, &rb)), (&a * &b) % p);
        assert_eq!(f.to_biguint(&f.neg(&ra)), (p - &a) % p);
    }
}

const P256: &str = "115792089237316195423570985008687907853269984665640564039457584007908834671663";


#[test]
fn montgomery_matches_naive_reduction_at_256_bits() {
    let p: BigUint = P256.parse().unwrap();
    check_against_bigint::<Mont<4>>(&p, 10_000, 5);
    check_against_bigint::<BigUint>(&p, 2_000, 6);
}

#[test]
fn montgomery_matches_naive_reduction_at_other_widths() {
    let p128 = common::safe_prime(128);
    check_against_bigint::<Mont<2>>(&p128, 5_000, 7);
    check_against_bigint::<Mont<1>>(&big(18446744073709551557), 5_000, 8);
    check_against_bigint::<u64>(&big(18446744073709551557), 5_000, 9);
    check_against_bigint::<Mont<3>>(&big(49223), 2_000, 10);
}

#[test]
fn narrow_montgomery_rejects_wide_modulus() {
    let p: BigUint = P256.parse().unwrap();
    assert!(PrimeField::<Mont<2>>::new(PrimeModulus::new(p).unwrap()).is_err());
}

proptest! {
    #[test]
    fn inverse_roundtrip_u64(a in 1u64..1_000_000_006) {
        let f = PrimeField::<u64>::new(PrimeModulus::from_u64(1_000_000_007).unwrap()).unwrap();
        let inv = f.inv(&a).unwrap();
        prop_assert_eq!(f.mul(&a, &inv), 1);
        prop_assert_eq!(f.inv(&inv).unwrap(), a);
    }

    #[test]
    fn montgomery_inverse_roundtrip(seed in any::<u64>()) {
        let p = common::safe_prime(128);
        let f = PrimeField::<Mont<2>>::new(PrimeModulus::new(p).unwrap()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let a = f.random_nonzero(&mut rng);
        let inv = f.inv(&a).unwrap();
        prop_assert_eq!(f.mul(&a, &inv), f.one());
    }
}

#[test]
fn fixed_test_primes_are_safe() {
    for bits in [16u32, 20, 24, 32, 64, 128, 192, 256, 384, 512] {
        let p = common::safe_prime(bits);
        assert_eq!(p.bits(), bits as u64);
        assert!(is_safe_prime(&p), "{bits}");
    }
}
