//! Succinct non-associative power indices and the fast exponentiation ladder.

mod classes;
mod combinatorics;
mod shape;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore};

pub use classes::{equivalence_classes, ShapeClass, ShapeClasses, MEMBER_LIST_LIMIT, SHAPE_CLASS_LIMIT};
pub use combinatorics::{b_max, catalan, narayana, narayana_row};
pub use shape::{enumerate_shapes, pow_oracle, ShapeTree};

use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::{uniform_below, Residue};

/// `(A, b)`: little-endian base-`b` digits of the integer part together with
/// one bracketing digit per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerIndex {
    base: u32,
    digits: Vec<u32>,
    pattern: Vec<u32>,
}

impl PowerIndex {
    pub fn new(base: u32, a: &BigUint, pattern: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidIndex(format!("base {base} < 2")));
        }
        if a.is_zero() {
            return Err(Error::InvalidIndex("integer part must be positive".into()));
        }
        let digits = radix_digits(a, base);
        Self::from_digits(base, digits, pattern)
    }

    pub fn from_digits(base: u32, digits: Vec<u32>, pattern: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidIndex(format!("base {base} < 2")));
        }
        if digits.is_empty() || digits.len() != pattern.len() {
            return Err(Error::InvalidIndex(format!(
                "{} digits but {} pattern entries",
                digits.len(),
                pattern.len()
            )));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidIndex(format!("digit {d} out of range for base {base}")));
        }
        if let Some(d) = pattern.iter().find(|&&d| d > base - 2) {
            return Err(Error::InvalidIndex(format!("pattern digit {d} exceeds {}", base - 2)));
        }
        if *digits.last().expect("non-empty") == 0 {
            return Err(Error::InvalidIndex("leading digit is zero".into()));
        }
        Ok(PowerIndex {
            base,
            digits,
            pattern,
        })
    }

    /// `(a, [0, .., 0], b)`.
    pub fn constant(base: u32, a: &BigUint) -> Result<Self> {
        let n = radix_digits(a, base).len();
        Self::new(base, a, vec![0; n])
    }

    /// `(a, [0], 2)`, the binary index with the all-zero pattern.
    pub fn binary(a: u64) -> Result<Self> {
        Self::constant(2, &BigUint::from(a))
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn pattern(&self) -> &[u32] {
        &self.pattern
    }

    /// Position of the most significant digit.
    pub fn k(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn a(&self) -> BigUint {
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * self.base + d)
    }

    pub fn a_u64(&self) -> Option<u64> {
        self.a().to_u64()
    }
}

/// Little-endian base-`base` digits; `[0]` for zero.
pub fn radix_digits(a: &BigUint, base: u32) -> Vec<u32> {
    if a.is_zero() {
        return vec![0];
    }
    if base <= 256 {
        return a.to_radix_le(base).into_iter().map(u32::from).collect();
    }
    let mut out = Vec::new();
    let mut v = a.clone();
    while !v.is_zero() {
        let d = (&v % base).to_u32().expect("digit below base");
        out.push(d);
        v /= base;
    }
    out
}

/// Number of base-`b` digits of `a`.
pub fn digit_len(a: &BigUint, base: u32) -> usize {
    radix_digits(a, base).len()
}

impl fmt::Display for PowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pat: Vec<String> = self.pattern.iter().map(u32::to_string).collect();
        write!(f, "b:{};a:{};p:{}", self.base, self.a(), pat.join(","))
    }
}

impl FromStr for PowerIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidIndex(format!("{m} in {s:?}"));
        let mut base = None;
        let mut a = None;
        let mut pattern = None;
        for part in s.trim().split(';') {
            let (key, val) = part.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            match key.trim() {
                "b" => base = Some(val.trim().parse::<u32>().map_err(|_| bad("bad base"))?),
                "a" => a = Some(val.trim().parse::<BigUint>().map_err(|_| bad("bad integer"))?),
                "p" => {
                    pattern = Some(
                        val.split(',')
                            .map(|d| d.trim().parse::<u32>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|_| bad("bad pattern"))?,
                    )
                }
                _ => return Err(bad("unknown field")),
            }
        }
        match (base, a, pattern) {
            (Some(b), Some(a), Some(p)) => PowerIndex::new(b, &a, p),
            _ => Err(bad("missing field")),
        }
    }
}

/// `R_a(w)[j]`: `j+1` right-nested copies, times `w` on the right, then
/// `a-2-j` left multiplications by `w`. Uses exactly `a-1` products.
pub fn representative_with<T: Clone, F: FnMut(&T, &T) -> T>(w: &T, a: u32, j: u32, mul: &mut F) -> T {
    debug_assert!(a >= 2 && j + 2 <= a);
    let mut t = w.clone();
    for _ in 0..j {
        t = mul(w, &t);
    }
    let mut u = mul(&t, w);
    for _ in 0..(a - 2 - j) {
        u = mul(w, &u);
    }
    u
}

/// Evaluates the ladder for `idx` with an arbitrary product. Used for
/// exponentiation, operation counting and symbolic unfolding alike.
pub fn ladder<T: Clone, F: FnMut(&T, &T) -> T>(x: &T, idx: &PowerIndex, mut mul: F) -> T {
    let b = idx.base;
    let mut w = x.clone();
    let mut acc: Option<T> = None;
    for (i, (&ai, &pi)) in idx.digits.iter().zip(&idx.pattern).enumerate() {
        if i > 0 {
            w = representative_with(&w, b, pi, &mut mul);
        }
        if ai == 0 {
            continue;
        }
        let r = if ai == 1 {
            w.clone()
        } else {
            representative_with(&w, ai, pi % (ai - 1), &mut mul)
        };
        acc = Some(match acc {
            None => r,
            Some(prev) => {
                if idx.pattern[i - 1].is_multiple_of(2) {
                    mul(&r, &prev)
                } else {
                    mul(&prev, &r)
                }
            }
        });
    }
    acc.expect("leading digit is nonzero")
}

pub fn pow_fast<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, idx: &PowerIndex) -> Element<R> {
    ladder(x, idx, |u, v| e.star(u, v))
}

/// `k(b-1) - 1 + sum of nonzero digits`.
pub fn op_count(idx: &PowerIndex) -> u64 {
    let k = idx.k() as u64;
    let s: u64 = idx.digits.iter().map(|&d| d as u64).sum();
    k * (idx.base as u64 - 1) + s - 1
}

/// Counts the products the ladder actually performs.
pub fn counted_op_count(idx: &PowerIndex) -> u64 {
    let mut n = 0u64;
    ladder(&(), idx, |_, _| n += 1);
    n
}

/// `R_a(x)` through the recurrence: prepend `x*` to every entry of
/// `R_{a-1}(x)` and append `R_{a-1}(x)[0] * x`.
pub fn representatives<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, a: u32) -> Result<Vec<Element<R>>> {
    if a < 2 {
        return Err(Error::InvalidIndex(format!("a = {a} < 2")));
    }
    if a > 1 << 20 {
        return Err(Error::TooLarge(format!("a = {a}")));
    }
    let mut reps = vec![e.star(x, x)];
    for _ in 3..=a {
        let tail = e.star(&reps[0], x);
        for r in reps.iter_mut() {
            *r = e.star(x, r);
        }
        reps.push(tail);
    }
    Ok(reps)
}

/// Single entry `R_a(x)[j]` computed directly.
pub fn representative<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, a: u32, j: u32) -> Result<Element<R>> {
    if a < 2 || j + 2 > a {
        return Err(Error::InvalidIndex(format!("R_{a}[{j}]")));
    }
    Ok(representative_with(x, a, j, &mut |u, v| e.star(u, v)))
}

/// Uniform integer part in `[1, a_bound)` and uniform pattern digits.
pub fn random_index<G: RngCore + ?Sized>(base: u32, a_bound: &BigUint, rng: &mut G) -> Result<PowerIndex> {
    if base < 2 || a_bound < &BigUint::from(2u32) {
        return Err(Error::InvalidIndex(format!("base {base}, bound {a_bound}")));
    }
    let a = uniform_below(&(a_bound - 1u32), rng) + 1u32;
    let n = digit_len(&a, base);
    let pattern = random_pattern(base, n, rng);
    PowerIndex::new(base, &a, pattern)
}

pub fn random_pattern<G: RngCore + ?Sized>(base: u32, len: usize, rng: &mut G) -> Vec<u32> {
    (0..len).map(|_| rng.random_range(0..=base - 2)).collect()
}
