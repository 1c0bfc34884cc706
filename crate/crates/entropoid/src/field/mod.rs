//! Prime-field arithmetic over an interchangeable residue representation.

mod mont;
mod prime;
mod residue;

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::RngCore;

pub use mont::{Mont, MontCtx};
pub use prime::{
    gen_safe_prime, gen_safe_prime_with_budget, is_prime, is_safe_prime, PrimeModulus,
    DEFAULT_SAFE_PRIME_BUDGET, MR_ROUNDS,
};
pub use residue::{uniform_below, Residue};

use crate::error::{Error, Result};

/// The field `F_p` bound to a residue type.
#[derive(Clone, Debug)]
pub struct PrimeField<R: Residue> {
    modulus: PrimeModulus,
    ctx: R::Ctx,
    p_minus_2: BigUint,
}

impl<R: Residue> PrimeField<R> {
    pub fn new(modulus: PrimeModulus) -> Result<Self> {
        let ctx = R::context(modulus.p())?;
        let p_minus_2 = modulus.p() - 2u32;
        Ok(PrimeField {
            modulus,
            ctx,
            p_minus_2,
        })
    }

    pub fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }

    pub fn p(&self) -> &BigUint {
        self.modulus.p()
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn zero(&self) -> R {
        R::zero_of(&self.ctx)
    }

    pub fn one(&self) -> R {
        R::one_of(&self.ctx)
    }

    pub fn from_u64(&self, v: u64) -> R {
        R::from_u64(v, self.p(), &self.ctx)
    }

    /// Reduces `v` modulo p.
    pub fn from_biguint(&self, v: &BigUint) -> R {
        R::from_biguint(&(v % self.p()), &self.ctx)
    }

    /// Rejects values that are not already reduced.
    pub fn from_canonical(&self, v: &BigUint) -> Result<R> {
        if v >= self.p() {
            return Err(Error::NonCanonical);
        }
        Ok(R::from_biguint(v, &self.ctx))
    }

    pub fn to_biguint(&self, a: &R) -> BigUint {
        a.to_biguint(&self.ctx)
    }

    #[inline]
    pub fn add(&self, a: &R, b: &R) -> R {
        a.add(b, &self.ctx)
    }

    #[inline]
    pub fn sub(&self, a: &R, b: &R) -> R {
        a.sub(b, &self.ctx)
    }

    #[inline]
    pub fn mul(&self, a: &R, b: &R) -> R {
        a.mul(b, &self.ctx)
    }

    #[inline]
    pub fn neg(&self, a: &R) -> R {
        a.neg(&self.ctx)
    }

    pub fn is_zero(&self, a: &R) -> bool {
        *a == self.zero()
    }

    pub fn pow(&self, a: &R, e: &BigUint) -> R {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(&self, a: &R) -> Result<R> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, &self.p_minus_2))
    }

    pub fn div(&self, a: &R, b: &R) -> Result<R> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn random<G: RngCore + ?Sized>(&self, rng: &mut G) -> R {
        R::random(self.p(), &self.ctx, rng)
    }

    /// Uniform over `[0, p)` minus `exclude`.
    pub fn random_excluding<G: RngCore + ?Sized>(&self, rng: &mut G, exclude: &HashSet<R>) -> R {
        assert!(
            BigUint::from(exclude.len()) < *self.p(),
            "exclusion set covers the whole field"
        );
        loop {
            let v = self.random(rng);
            if !exclude.contains(&v) {
                return v;
            }
        }
    }

    pub fn random_nonzero<G: RngCore + ?Sized>(&self, rng: &mut G) -> R {
        loop {
            let v = self.random(rng);
            if !self.is_zero(&v) {
                return v;
            }
        }
    }
}

/// Inverse of `a` modulo the prime `m`, on plain integers.
pub fn mod_inv(a: &BigUint, m: &PrimeModulus) -> Result<BigUint> {
    let f = PrimeField::<BigUint>::new(m.clone())?;
    let r = f.inv(&f.from_biguint(a))?;
    Ok(r)
}
