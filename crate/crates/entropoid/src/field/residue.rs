use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;

use crate::error::{Error, Result};

/// Scalar type holding a residue modulo a fixed prime.
///
/// Arithmetic is routed through a context built once per modulus, so the
/// same entropoid code runs on machine words, fixed-width Montgomery limbs,
/// or arbitrary-precision integers.
pub trait Residue: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    type Ctx: Clone + Debug + Send + Sync;

    const NAME: &'static str;

    fn context(p: &BigUint) -> Result<Self::Ctx>;
    /// `v` must already be reduced below p.
    fn from_biguint(v: &BigUint, ctx: &Self::Ctx) -> Self;
    fn to_biguint(&self, ctx: &Self::Ctx) -> BigUint;

    fn zero_of(ctx: &Self::Ctx) -> Self;
    fn one_of(ctx: &Self::Ctx) -> Self;
    fn add(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn sub(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;
    fn mul(&self, rhs: &Self, ctx: &Self::Ctx) -> Self;

    fn neg(&self, ctx: &Self::Ctx) -> Self {
        Self::zero_of(ctx).sub(self, ctx)
    }

    fn from_u64(v: u64, p: &BigUint, ctx: &Self::Ctx) -> Self {
        Self::from_biguint(&(BigUint::from(v) % p), ctx)
    }

    /// Uniform residue in `[0, p)`.
    fn random<G: RngCore + ?Sized>(p: &BigUint, ctx: &Self::Ctx, rng: &mut G) -> Self {
        Self::from_biguint(&uniform_below(p, rng), ctx)
    }
}

/// Rejection sampling of a uniform integer in `[0, bound)`.
pub fn uniform_below<G: RngCore + ?Sized>(bound: &BigUint, rng: &mut G) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let top_mask = if bits.is_multiple_of(8) { 0xff } else { (1u8 << (bits % 8)) - 1 };
    let mut buf = vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        if let Some(last) = buf.last_mut() {
            *last &= top_mask;
        }
        let v = BigUint::from_bytes_le(&buf);
        if &v < bound {
            return v;
        }
    }
}

impl Residue for u64 {
    type Ctx = u64;

    const NAME: &'static str = "u64";

    fn context(p: &BigUint) -> Result<u64> {
        p.to_u64().ok_or(Error::UnsupportedModulus(Self::NAME))
    }

    fn from_biguint(v: &BigUint, _: &u64) -> u64 {
        v.to_u64().expect("reduced residue fits in u64")
    }

    fn to_biguint(&self, _: &u64) -> BigUint {
        BigUint::from(*self)
    }

    fn zero_of(_: &u64) -> u64 {
        0
    }

    fn one_of(_: &u64) -> u64 {
        1
    }

    #[inline]
    fn add(&self, rhs: &u64, p: &u64) -> u64 {
        let (s, carry) = self.overflowing_add(*rhs);
        if carry || s >= *p {
            s.wrapping_sub(*p)
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, rhs: &u64, p: &u64) -> u64 {
        if self >= rhs {
            self - rhs
        } else {
            self.wrapping_sub(*rhs).wrapping_add(*p)
        }
    }

    #[inline]
    fn mul(&self, rhs: &u64, p: &u64) -> u64 {
        if *p <= u32::MAX as u64 {
            self * rhs % p
        } else {
            ((*self as u128 * *rhs as u128) % *p as u128) as u64
        }
    }

    fn from_u64(v: u64, _: &BigUint, p: &u64) -> u64 {
        v % p
    }

    fn random<G: RngCore + ?Sized>(_: &BigUint, p: &u64, rng: &mut G) -> u64 {
        let zone = u64::MAX - (u64::MAX % p);
        loop {
            let v = rng.next_u64();
            if v < zone {
                return v % p;
            }
        }
    }
}

impl Residue for BigUint {
    type Ctx = BigUint;

    const NAME: &'static str = "BigUint";

    fn context(p: &BigUint) -> Result<BigUint> {
        Ok(p.clone())
    }

    fn from_biguint(v: &BigUint, _: &BigUint) -> BigUint {
        v.clone()
    }

    fn to_biguint(&self, _: &BigUint) -> BigUint {
        self.clone()
    }

    fn zero_of(_: &BigUint) -> BigUint {
        BigUint::zero()
    }

    fn one_of(_: &BigUint) -> BigUint {
        BigUint::one()
    }

    fn add(&self, rhs: &BigUint, p: &BigUint) -> BigUint {
        let s = self + rhs;
        if &s >= p {
            s - p
        } else {
            s
        }
    }

    fn sub(&self, rhs: &BigUint, p: &BigUint) -> BigUint {
        if self >= rhs {
            self - rhs
        } else {
            p - rhs + self
        }
    }

    fn mul(&self, rhs: &BigUint, p: &BigUint) -> BigUint {
        (self * rhs) % p
    }
}
