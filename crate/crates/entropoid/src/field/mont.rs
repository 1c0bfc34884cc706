//! Fixed-width Montgomery residues with `N` 64-bit limbs.

use num_bigint::BigUint;
use num_traits::One;

use super::residue::Residue;
use crate::error::{Error, Result};

/// Residue stored in Montgomery form `x * 2^(64N) mod p`, little-endian limbs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mont<const N: usize>([u64; N]);

#[derive(Clone, Copy, Debug)]
pub struct MontCtx<const N: usize> {
    p: [u64; N],
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    r2: [u64; N],
    one: [u64; N],
}

fn to_limbs<const N: usize>(v: &BigUint) -> [u64; N] {
    let digits = v.to_u64_digits();
    assert!(digits.len() <= N, "value wider than {N} limbs");
    let mut out = [0u64; N];
    out[..digits.len()].copy_from_slice(&digits);
    out
}

fn from_limbs<const N: usize>(l: &[u64; N]) -> BigUint {
    let mut bytes = Vec::with_capacity(8 * N);
    for w in l {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

#[inline]
fn geq<const N: usize>(a: &[u64; N], b: &[u64; N]) -> bool {
    for i in (0..N).rev() {
        if a[i] != b[i] {
            return a[i] > b[i];
        }
    }
    true
}

#[inline]
fn sub_in_place<const N: usize>(a: &mut [u64; N], b: &[u64; N]) -> bool {
    let mut borrow = false;
    for i in 0..N {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        a[i] = d2;
        borrow = b1 || b2;
    }
    borrow
}

#[inline]
fn add_in_place<const N: usize>(a: &mut [u64; N], b: &[u64; N]) -> bool {
    let mut carry = false;
    for i in 0..N {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        a[i] = s2;
        carry = c1 || c2;
    }
    carry
}

impl<const N: usize> MontCtx<N> {
    /// Coarsely interleaved operand scanning; output is fully reduced.
    #[inline]
    fn mul(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let p = &self.p;
        let mut t = [0u64; N];
        let mut t_hi: u64 = 0;
        for &bi in b.iter() {
            let mut c: u64 = 0;
            for j in 0..N {
                let s = t[j] as u128 + a[j] as u128 * bi as u128 + c as u128;
                t[j] = s as u64;
                c = (s >> 64) as u64;
            }
            let s = t_hi as u128 + c as u128;
            let t_n = s as u64;
            let t_n1 = (s >> 64) as u64;

            let m = t[0].wrapping_mul(self.pinv);
            let s = t[0] as u128 + m as u128 * p[0] as u128;
            let mut c = (s >> 64) as u64;
            for j in 1..N {
                let s = t[j] as u128 + m as u128 * p[j] as u128 + c as u128;
                t[j - 1] = s as u64;
                c = (s >> 64) as u64;
            }
            let s = t_n as u128 + c as u128;
            t[N - 1] = s as u64;
            t_hi = t_n1 + (s >> 64) as u64;
        }
        if t_hi != 0 || geq(&t, p) {
            sub_in_place(&mut t, p);
        }
        t
    }
}

impl<const N: usize> Residue for Mont<N> {
    type Ctx = MontCtx<N>;

    const NAME: &'static str = "Mont";

    fn context(p: &BigUint) -> Result<MontCtx<N>> {
        if p.bits() > 64 * N as u64 || !p.bit(0) || p <= &BigUint::one() {
            return Err(Error::UnsupportedModulus(Self::NAME));
        }
        let limbs = to_limbs::<N>(p);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(limbs[0].wrapping_mul(inv)));
        }
        let r = (BigUint::one() << (64 * N)) % p;
        let r2 = (&r * &r) % p;
        Ok(MontCtx {
            p: limbs,
            pinv: inv.wrapping_neg(),
            r2: to_limbs(&r2),
            one: to_limbs(&r),
        })
    }

    fn from_biguint(v: &BigUint, ctx: &MontCtx<N>) -> Self {
        Mont(ctx.mul(&to_limbs(v), &ctx.r2))
    }

    fn to_biguint(&self, ctx: &MontCtx<N>) -> BigUint {
        let mut unit = [0u64; N];
        unit[0] = 1;
        from_limbs(&ctx.mul(&self.0, &unit))
    }

    fn zero_of(_: &MontCtx<N>) -> Self {
        Mont([0; N])
    }

    fn one_of(ctx: &MontCtx<N>) -> Self {
        Mont(ctx.one)
    }

    #[inline]
    fn add(&self, rhs: &Self, ctx: &MontCtx<N>) -> Self {
        let mut s = self.0;
        let carry = add_in_place(&mut s, &rhs.0);
        if carry || geq(&s, &ctx.p) {
            sub_in_place(&mut s, &ctx.p);
        }
        Mont(s)
    }

    #[inline]
    fn sub(&self, rhs: &Self, ctx: &MontCtx<N>) -> Self {
        let mut d = self.0;
        if sub_in_place(&mut d, &rhs.0) {
            add_in_place(&mut d, &ctx.p);
        }
        Mont(d)
    }

    #[inline]
    fn mul(&self, rhs: &Self, ctx: &MontCtx<N>) -> Self {
        Mont(ctx.mul(&self.0, &rhs.0))
    }
}
