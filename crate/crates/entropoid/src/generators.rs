//! Generator heuristics, generated sets and the parity distinguisher.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::RngCore;

use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::Residue;
use crate::powindex::{pow_fast, PowerIndex};

/// Default cap on materialized sets.
pub const DEFAULT_GUARD: u64 = 1 << 20;

/// Attempts made by [`gen`] before giving up.
pub const GEN_ATTEMPTS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate<R> {
    pub g: Element<R>,
    pub checks_passed: [bool; 5],
    pub claimed_order: BigUint,
}

/// `x^{(a, [0], 2)}`.
pub fn binary_power<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, a: &BigUint) -> Element<R> {
    let idx = PowerIndex::constant(2, a).expect("positive exponent");
    pow_fast(e, x, &idx)
}

/// The five inequalities a generator candidate must satisfy.
pub fn five_checks<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>) -> [bool; 5] {
    let p = e.p();
    let gg = e.star(g, g);
    let g_gg = e.star(g, &gg);
    let gg_g = e.star(&gg, g);
    [
        *g != binary_power(e, g, p),
        gg != binary_power(e, g, &(p - 1u32)),
        g_gg != binary_power(e, g, &(p - 2u32)),
        g_gg != gg_g,
        e.star(g, &g_gg) != e.star(&g_gg, g),
    ]
}

fn require_safe<R: Residue>(e: &EntropoidParams<R>) -> Result<&BigUint> {
    e.modulus()
        .q()
        .ok_or_else(|| Error::NotSafePrime(e.p().to_string()))
}

/// Random unit passing all five checks; its span is conjectured to be the
/// whole multiplicative subgroupoid.
pub fn gen<R: Residue, G: RngCore + ?Sized>(e: &EntropoidParams<R>, rng: &mut G) -> Result<GeneratorCertificate<R>> {
    require_safe(e)?;
    let pm1 = e.p() - 1u32;
    for _ in 0..GEN_ATTEMPTS {
        let g = e.random_unit(rng);
        let checks = five_checks(e, &g);
        if checks.iter().all(|&c| c) {
            return Ok(GeneratorCertificate {
                g,
                checks_passed: checks,
                claimed_order: &pm1 * &pm1,
            });
        }
    }
    Err(Error::ExhaustedAttempts(GEN_ATTEMPTS))
}

/// `g * (g * (g * ((g * g) * g)))`.
pub fn sylow_shape<R: Residue>(e: &EntropoidParams<R>, g: &Element<R>) -> Element<R> {
    let inner = e.star(&e.star(g, g), g);
    e.star(g, &e.star(g, &e.star(g, &inner)))
}

/// Generator of the order-`q^2` Sylow subquasigroup.
pub fn gen_q<R: Residue, G: RngCore + ?Sized>(e: &EntropoidParams<R>, rng: &mut G) -> Result<GeneratorCertificate<R>> {
    let q = require_safe(e)?.clone();
    if e.p() < &BigUint::from(11u32) {
        return Err(Error::Unsupported(format!("Sylow generator needs p >= 11, got {}", e.p())));
    }
    let cert = gen(e, rng)?;
    Ok(GeneratorCertificate {
        g: sylow_shape(e, &cert.g),
        checks_passed: cert.checks_passed,
        claimed_order: &q * &q,
    })
}

fn guarded(n: &BigUint, guard: u64) -> Result<u64> {
    match n.to_u64() {
        Some(v) if v <= guard => Ok(v),
        _ => Err(Error::TooLarge(format!("{n} elements > guard {guard}"))),
    }
}

/// `{x^{(a,[0],2)} : a >= 1}`. The sequence is periodic with period dividing
/// `2(p-1)`, so two periods cover it.
pub fn span2<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, guard: u64) -> Result<HashSet<Element<R>>> {
    let period = guarded(&((e.p() - 1u32) * 2u32), guard)?;
    Ok((1..=2 * period)
        .map(|a| binary_power(e, x, &BigUint::from(a)))
        .collect())
}

/// Closure of `{x}` under `*`.
pub fn span<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>, guard: u64) -> Result<HashSet<Element<R>>> {
    let pm1 = e.p() - 1u32;
    guarded(&(&pm1 * &pm1), guard)?;
    let mut seen: HashSet<Element<R>> = HashSet::from([x.clone()]);
    let mut all = vec![x.clone()];
    let mut next = 0;
    while next < all.len() {
        let u = all[next].clone();
        next += 1;
        let mut i = 0;
        while i < next {
            let v = all[i].clone();
            for w in [e.star(&u, &v), e.star(&v, &u)] {
                if seen.insert(w.clone()) {
                    all.push(w);
                }
            }
            i += 1;
        }
    }
    Ok(seen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of the integer part of a power of a full-order generator, read off
/// `y^{(p-1,[0],2)}`.
pub fn parity_test<R: Residue>(e: &EntropoidParams<R>, _g: &Element<R>, y: &Element<R>) -> Result<Parity> {
    let t = binary_power(e, y, &(e.p() - 1u32));
    if t == *e.one_star() {
        Ok(Parity::Even)
    } else if t == e.box_neg(e.one_star()) {
        Ok(Parity::Odd)
    } else {
        Err(Error::Inconclusive)
    }
}
