//! The finite entropoid: pairs over `F_p` with an entropic, non-commutative,
//! non-associative multiplication and a compatible additive group.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::field::{PrimeField, PrimeModulus, Residue};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Element<R> {
    pub x1: R,
    pub x2: R,
}

impl<R> Element<R> {
    pub fn new(x1: R, x2: R) -> Self {
        Element { x1, x2 }
    }
}

#[derive(Clone, Debug)]
pub struct EntropoidParams<R: Residue> {
    field: PrimeField<R>,
    a3: R,
    a8: R,
    b2: R,
    b7: R,
    c1: R,
    c2: R,
    d1: R,
    d2: R,
    /// a3/a8 and b2/b7, the shifts of the additive structure.
    alpha: R,
    beta: R,
    zero: Element<R>,
    one: Element<R>,
}

impl<R: Residue> EntropoidParams<R> {
    pub fn new(modulus: PrimeModulus, a3: &BigUint, a8: &BigUint, b2: &BigUint, b7: &BigUint) -> Result<Self> {
        let f = PrimeField::<R>::new(modulus)?;
        let [a3, a8, b2, b7] = [a3, a8, b2, b7].map(|v| f.from_biguint(v));
        Self::from_residues(f, a3, a8, b2, b7)
    }

    pub fn from_u64(p: u64, a3: u64, a8: u64, b2: u64, b7: u64) -> Result<Self> {
        let m = PrimeModulus::from_u64(p)?;
        Self::new(m, &a3.into(), &a8.into(), &b2.into(), &b7.into())
    }

    /// Draws nonzero constants uniformly.
    pub fn random<G: RngCore + ?Sized>(modulus: PrimeModulus, rng: &mut G) -> Result<Self> {
        let f = PrimeField::<R>::new(modulus)?;
        let a3 = f.random_nonzero(rng);
        let a8 = f.random_nonzero(rng);
        let b2 = f.random_nonzero(rng);
        let b7 = f.random_nonzero(rng);
        Self::from_residues(f, a3, a8, b2, b7)
    }

    pub fn from_residues(f: PrimeField<R>, a3: R, a8: R, b2: R, b7: R) -> Result<Self> {
        for (v, name) in [(&a3, "a3"), (&a8, "a8"), (&b2, "b2"), (&b7, "b7")] {
            if f.is_zero(v) {
                return Err(Error::InvalidConstant(name));
            }
        }
        let a8b7 = f.mul(&a8, &b7);
        let inv_a8b7 = f.inv(&a8b7)?;
        let inv_a8 = f.inv(&a8)?;
        let inv_b7 = f.inv(&b7)?;
        let c1 = f.mul(&f.mul(&a3, &f.sub(&f.mul(&a8, &b2), &b7)), &inv_a8b7);
        let c2 = f.mul(&f.mul(&a8, &b2), &inv_b7);
        let d1 = f.neg(&f.mul(&f.mul(&b2, &f.sub(&a8, &f.mul(&a3, &b7))), &inv_a8b7));
        let d2 = f.mul(&f.mul(&a3, &b7), &inv_a8);
        let alpha = f.mul(&a3, &inv_a8);
        let beta = f.mul(&b2, &inv_b7);
        let zero = Element::new(f.neg(&alpha), f.neg(&beta));
        let one = Element::new(f.sub(&inv_b7, &alpha), f.sub(&inv_a8, &beta));
        let e = EntropoidParams {
            field: f,
            a3,
            a8,
            b2,
            b7,
            c1,
            c2,
            d1,
            d2,
            alpha,
            beta,
            zero,
            one,
        };
        debug_assert!(e.self_check(100), "distinguished elements misbehave");
        Ok(e)
    }

    fn self_check(&self, samples: usize) -> bool {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        (0..samples).all(|_| {
            let x = self.random_element(&mut rng);
            self.star(&self.one, &x) == x
                && self.star(&self.zero, &x) == self.zero
                && self.star(&x, &self.zero) == self.zero
        })
    }

    pub fn field(&self) -> &PrimeField<R> {
        &self.field
    }

    pub fn modulus(&self) -> &PrimeModulus {
        self.field.modulus()
    }

    pub fn p(&self) -> &BigUint {
        self.field.p()
    }

    /// `(a3, a8, b2, b7)` as integers.
    pub fn constants(&self) -> [BigUint; 4] {
        [&self.a3, &self.a8, &self.b2, &self.b7].map(|v| self.field.to_biguint(v))
    }

    pub fn zero_star(&self) -> &Element<R> {
        &self.zero
    }

    pub fn one_star(&self) -> &Element<R> {
        &self.one
    }

    pub fn element(&self, x1: &BigUint, x2: &BigUint) -> Element<R> {
        Element::new(self.field.from_biguint(x1), self.field.from_biguint(x2))
    }

    pub fn elem(&self, x1: u64, x2: u64) -> Element<R> {
        Element::new(self.field.from_u64(x1), self.field.from_u64(x2))
    }

    pub fn pair(&self, x: &Element<R>) -> (BigUint, BigUint) {
        (self.field.to_biguint(&x.x1), self.field.to_biguint(&x.x2))
    }

    /// Components as machine words; panics if p does not fit.
    pub fn pair_u64(&self, x: &Element<R>) -> (u64, u64) {
        let (a, b) = self.pair(x);
        (a.to_u64().expect("component fits u64"), b.to_u64().expect("component fits u64"))
    }

    pub fn show(&self, x: &Element<R>) -> String {
        let (a, b) = self.pair(x);
        format!("({a}, {b})")
    }

    #[inline]
    pub fn star(&self, x: &Element<R>, y: &Element<R>) -> Element<R> {
        let f = &self.field;
        let t1 = f.add(&self.a3, &f.mul(&self.a8, &y.x1));
        let r1 = f.add(&f.add(&self.c1, &f.mul(&self.c2, &y.x1)), &f.mul(&x.x2, &t1));
        let t2 = f.add(&self.b2, &f.mul(&self.b7, &y.x2));
        let r2 = f.add(&f.add(&self.d1, &f.mul(&self.d2, &y.x2)), &f.mul(&x.x1, &t2));
        Element::new(r1, r2)
    }

    pub fn box_add(&self, x: &Element<R>, y: &Element<R>) -> Element<R> {
        let f = &self.field;
        Element::new(
            f.add(&f.add(&x.x1, &y.x1), &self.alpha),
            f.add(&f.add(&x.x2, &y.x2), &self.beta),
        )
    }

    pub fn box_sub(&self, x: &Element<R>, y: &Element<R>) -> Element<R> {
        let f = &self.field;
        Element::new(
            f.sub(&f.sub(&x.x1, &y.x1), &self.alpha),
            f.sub(&f.sub(&x.x2, &y.x2), &self.beta),
        )
    }

    pub fn box_neg(&self, x: &Element<R>) -> Element<R> {
        self.box_sub(&self.zero, x)
    }

    pub fn inv_star(&self, x: &Element<R>) -> Result<Element<R>> {
        let f = &self.field;
        let den1 = f.mul(&self.a8, &f.add(&self.b2, &f.mul(&self.b7, &x.x2)));
        let den2 = f.mul(&self.b7, &f.add(&self.a3, &f.mul(&self.a8, &x.x1)));
        if f.is_zero(&den1) || f.is_zero(&den2) {
            return Err(Error::NotInvertible);
        }
        let base = f.sub(&f.one(), &f.mul(&self.a3, &self.b2));
        let num1 = f.sub(&base, &f.mul(&f.mul(&self.a3, &self.b7), &x.x2));
        let num2 = f.sub(&base, &f.mul(&f.mul(&self.a8, &self.b2), &x.x1));
        Ok(Element::new(f.div(&num1, &den1)?, f.div(&num2, &den2)?))
    }

    /// Membership in the maximal multiplicative subgroupoid of order (p-1)^2.
    pub fn is_unit(&self, x: &Element<R>) -> bool {
        x.x1 != self.zero.x1 && x.x2 != self.zero.x2
    }

    pub fn random_element<G: RngCore + ?Sized>(&self, rng: &mut G) -> Element<R> {
        Element::new(self.field.random(rng), self.field.random(rng))
    }

    pub fn random_unit<G: RngCore + ?Sized>(&self, rng: &mut G) -> Element<R> {
        loop {
            let x = self.random_element(rng);
            if self.is_unit(&x) {
                return x;
            }
        }
    }

    fn small_p(&self, guard: u64) -> Result<u64> {
        match self.modulus().to_u64() {
            Some(p) if p <= guard => Ok(p),
            _ => Err(Error::TooLarge(format!("p = {} exceeds {guard}", self.p()))),
        }
    }

    /// Every element of G, row-major by `(x1, x2)`.
    pub fn all_elements(&self) -> Result<Vec<Element<R>>> {
        let p = self.small_p(1 << 12)?;
        Ok((0..p)
            .flat_map(|i| (0..p).map(move |j| (i, j)))
            .map(|(i, j)| self.elem(i, j))
            .collect())
    }

    pub fn all_units(&self) -> Result<Vec<Element<R>>> {
        Ok(self.all_elements()?.into_iter().filter(|x| self.is_unit(x)).collect())
    }

    /// Solutions of `x * x = 1_*`; linear in `x2` once `x1` is fixed.
    pub fn sqrt_units(&self) -> Result<BTreeSet<Element<R>>> {
        let p = self.small_p(1 << 20)?;
        let f = &self.field;
        let mut out = BTreeSet::new();
        for i in 0..p {
            let x1 = f.from_u64(i);
            let coef = f.add(&self.a3, &f.mul(&self.a8, &x1));
            let rhs = f.sub(&f.sub(&self.one.x1, &self.c1), &f.mul(&self.c2, &x1));
            if f.is_zero(&coef) {
                if f.is_zero(&rhs) {
                    for j in 0..p {
                        let x = Element::new(x1.clone(), f.from_u64(j));
                        if self.star(&x, &x) == self.one {
                            out.insert(x);
                        }
                    }
                }
                continue;
            }
            let x = Element::new(x1, f.div(&rhs, &coef)?);
            if self.star(&x, &x) == self.one {
                out.insert(x);
            }
        }
        Ok(out)
    }

    pub fn encoded_len(&self) -> usize {
        2 * self.modulus().byte_len()
    }

    /// `x1 || x2`, each fixed-width little-endian.
    pub fn encode(&self, x: &Element<R>) -> Vec<u8> {
        let w = self.modulus().byte_len();
        let mut out = Vec::with_capacity(2 * w);
        for c in [&x.x1, &x.x2] {
            let mut b = self.field.to_biguint(c).to_bytes_le();
            b.resize(w, 0);
            out.extend_from_slice(&b);
        }
        out
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<Element<R>> {
        let w = self.modulus().byte_len();
        if bytes.len() != 2 * w {
            return Err(Error::BadLength {
                expected: 2 * w,
                got: bytes.len(),
            });
        }
        let x1 = self.field.from_canonical(&BigUint::from_bytes_le(&bytes[..w]))?;
        let x2 = self.field.from_canonical(&BigUint::from_bytes_le(&bytes[w..]))?;
        Ok(Element::new(x1, x2))
    }
}

impl<R: Residue> fmt::Display for EntropoidParams<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a3, a8, b2, b7] = self.constants();
        write!(f, "E_{{{}^2}}({a3}, {a8}, {b2}, {b7})", self.p())
    }
}

/// Interchange-law test `(x*y)*(z*w) = (x*z)*(y*w)` on random quadruples.
pub fn check_entropic<R: Residue, G: RngCore + ?Sized>(
    e: &EntropoidParams<R>,
    trials: usize,
    rng: &mut G,
) -> bool {
    check_entropic_with(|x, y| e.star(x, y), || e.random_element(rng), trials)
}

pub fn check_entropic_with<T, F, S>(op: F, mut sample: S, trials: usize) -> bool
where
    T: PartialEq,
    F: Fn(&T, &T) -> T,
    S: FnMut() -> T,
{
    (0..trials).all(|_| {
        let [x, y, z, w] = [sample(), sample(), sample(), sample()];
        entropic_quad(&op, &x, &y, &z, &w)
    })
}

pub fn entropic_quad<T: PartialEq, F: Fn(&T, &T) -> T>(op: &F, x: &T, y: &T, z: &T, w: &T) -> bool {
    op(&op(x, y), &op(z, w)) == op(&op(x, z), &op(y, w))
}

/// The implication `x*y = z*w => x*z = y*w`. Weaker than it looks: it fails
/// on G (take `x = z = 0_*`), so it is only a diagnostic.
pub fn implication_holds<T: PartialEq, F: Fn(&T, &T) -> T>(op: &F, x: &T, y: &T, z: &T, w: &T) -> bool {
    op(x, y) != op(z, w) || op(x, z) == op(y, w)
}

/// Exhaustive interchange check over all quadruples of G; small p only.
pub fn check_entropic_exhaustive<R: Residue>(e: &EntropoidParams<R>) -> Result<bool> {
    let all = e.all_elements()?;
    if all.len() > 64 {
        return Err(Error::TooLarge(format!("{} elements", all.len())));
    }
    let op = |a: &Element<R>, b: &Element<R>| e.star(a, b);
    Ok(all.iter().all(|x| {
        all.iter()
            .all(|y| all.iter().all(|z| all.iter().all(|w| entropic_quad(&op, x, y, z, w))))
    }))
}
