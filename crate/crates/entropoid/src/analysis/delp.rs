use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::census::Walker;
use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::{uniform_below, Residue};
use crate::powindex::{b_max, pow_fast, radix_digits, random_pattern, PowerIndex};

/// Largest group order the exhaustive solver accepts.
pub const BRUTE_LIMIT: u64 = 1 << 20;

fn group_order(e: &EntropoidParams<impl Residue>) -> BigUint {
    let pm1 = e.p() - 1u32;
    &pm1 * &pm1
}

/// Guesses indices with a uniform integer part in `[1, (p-1)^2]`, a uniform
/// base in `[3, b_max]` and a uniform pattern until one hits `y`.
pub fn delp_random<R: Residue, G: RngCore + ?Sized>(
    e: &EntropoidParams<R>,
    g: &Element<R>,
    y: &Element<R>,
    budget: u64,
    rng: &mut G,
) -> Option<PowerIndex> {
    let order = group_order(e);
    let top = b_max(e.p()).clamp(3, u32::MAX as u64) as u32;
    for _ in 0..budget {
        let base = rng.random_range(3..=top);
        let a = uniform_below(&order, rng) + 1u32;
        let digits = radix_digits(&a, base);
        let pattern = random_pattern(base, digits.len(), rng);
        let idx = PowerIndex::from_digits(base, digits, pattern).expect("digits come from radix_digits");
        if pow_fast(e, g, &idx) == *y {
            return Some(idx);
        }
    }
    None
}

/// Tries `a = 2, 3, ..` up to the group order and, for each, every pattern,
/// returning the first index that reaches `y`.
pub fn delp_brute<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, y: &Element<R>, base: u32) -> Result<Option<PowerIndex>> {
    if base < 3 || base.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!("brute force needs an odd base >= 3, got {base}")));
    }
    let order = group_order(e)
        .to_u64()
        .filter(|&n| n <= BRUTE_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("group order {} > {BRUTE_LIMIT}", group_order(e))))?;
    for a in 2..=order {
        if let Some(idx) = first_match(e, g, y, base, a) {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// Every pattern of `(a, *, base)` that reaches `y`.
pub fn delp_solutions<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, y: &Element<R>, base: u32, a: u64) -> Result<Vec<PowerIndex>> {
    if base < 2 || a == 0 {
        return Err(Error::InvalidIndex(format!("a = {a}, base {base}")));
    }
    let digits = radix_digits(&BigUint::from(a), base);
    let space = ((base - 1) as u64).checked_pow(digits.len() as u32);
    if space.is_none_or(|s| s > BRUTE_LIMIT) {
        return Err(Error::TooLarge(format!("patterns of a = {a} at base {base}")));
    }
    let mut out = Vec::new();
    let _ = Walker::new(e, base, &digits).walk(g, &[], &mut |pat, v| {
        if v == y {
            out.push(PowerIndex::from_digits(base, digits.clone(), pat.to_vec()).expect("valid digits"));
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn first_match<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>, y: &Element<R>, base: u32, a: u64) -> Option<PowerIndex> {
    let digits = radix_digits(&BigUint::from(a), base);
    let mut found = None;
    let _ = Walker::new(e, base, &digits).walk(g, &[], &mut |pat, v| {
        if v == y {
            found = Some(pat.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(|pat| PowerIndex::from_digits(base, digits, pat).expect("valid digits"))
}
