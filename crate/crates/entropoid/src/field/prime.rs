use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use super::residue::uniform_below;
use crate::error::{Error, Result};

/// Random Miller-Rabin rounds above the deterministic range; error < 4^-64.
pub const MR_ROUNDS: usize = 64;

/// Candidate budget used by [`gen_safe_prime`].
pub const DEFAULT_SAFE_PRIME_BUDGET: u64 = 1 << 22;

const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 2048usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < limit {
            if sieve[i] {
                let mut j = i * i;
                while j < limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..limit).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mr_witness(n: &BigUint, n1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n1 {
            return false;
        }
    }
    true
}

/// Miller-Rabin with trial division. Deterministic below 3.3e24, otherwise
/// [`MR_ROUNDS`] rounds with bases derived from `n` itself so the answer is
/// reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &sp in small_primes() {
        let sp_big = BigUint::from(sp);
        if n == &sp_big {
            return true;
        }
        if (n % sp).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().expect("n > 2");
    let d = &n1 >> s;

    let det_limit: BigUint = "3317044064679887385961981".parse().expect("literal");
    if n < &det_limit {
        return !DETERMINISTIC_BASES
            .iter()
            .any(|&a| mr_witness(n, &n1, &d, s, &BigUint::from(a)));
    }
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&Sha256::digest(n.to_bytes_le()));
    let mut rng = ChaCha20Rng::from_seed(seed);
    let span = n - 3u32;
    (0..MR_ROUNDS).all(|_| {
        let a = uniform_below(&span, &mut rng) + 2u32;
        !mr_witness(n, &n1, &d, s, &a)
    })
}

pub fn is_safe_prime(p: &BigUint) -> bool {
    if p < &BigUint::from(5u32) || !p.bit(0) {
        return false;
    }
    let q = p >> 1;
    is_prime(&q) && is_prime(p)
}

/// A prime modulus, with its Sophie Germain cofactor when `p = 2q + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: BigUint,
    q: Option<BigUint>,
    bits: u32,
}

impl PrimeModulus {
    pub fn new(p: BigUint) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let q = (p.bit(0) && p > BigUint::from(3u32))
            .then(|| &p >> 1)
            .filter(is_prime);
        let bits = p.bits() as u32;
        Ok(PrimeModulus { p, q, bits })
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn safe(p: BigUint) -> Result<Self> {
        let m = Self::new(p)?;
        if m.q.is_none() {
            return Err(Error::NotSafePrime(m.p.to_string()));
        }
        Ok(m)
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> Option<&BigUint> {
        self.q.as_ref()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_safe(&self) -> bool {
        self.q.is_some()
    }

    /// Bytes needed for one canonical residue.
    pub fn byte_len(&self) -> usize {
        self.bits.div_ceil(8) as usize
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.p.to_u64()
    }
}

/// Safe prime of exactly `bits` bits whose cofactor `q` is odd.
pub fn gen_safe_prime<G: RngCore + ?Sized>(bits: u32, rng: &mut G) -> Result<PrimeModulus> {
    gen_safe_prime_with_budget(bits, DEFAULT_SAFE_PRIME_BUDGET, rng)
}

pub fn gen_safe_prime_with_budget<G: RngCore + ?Sized>(
    bits: u32,
    budget: u64,
    rng: &mut G,
) -> Result<PrimeModulus> {
    if bits < 3 {
        return Err(Error::Unsupported(format!("{bits}-bit safe prime")));
    }
    let low = BigUint::one() << (bits - 2);
    'candidates: for _ in 0..budget {
        let mut q = uniform_below(&low, rng) + &low;
        q.set_bit(0, true);
        let p: BigUint = (&q << 1u32) + 1u32;
        for &sp in small_primes() {
            let sp_big = BigUint::from(sp);
            if ((&q % sp).is_zero() && q != sp_big) || ((&p % sp).is_zero() && p != sp_big) {
                continue 'candidates;
            }
        }
        if is_prime(&q) && is_prime(&p) {
            return Ok(PrimeModulus {
                p,
                q: Some(q),
                bits,
            });
        }
    }
    Err(Error::ExhaustedAttempts(budget))
}
