use std::collections::HashSet;

use num_bigint::BigUint;
use rand::RngCore;

use crate::entropoid::{Element, EntropoidParams};
use crate::error::Result;
use crate::field::{gen_safe_prime, uniform_below, Residue};
use crate::generators::gen;
use crate::powindex::{pow_fast, radix_digits, random_pattern, PowerIndex};

/// Estimator used by [`collision_entropy_experiment`], recorded in reports.
pub const COLLISION_ESTIMATOR: &str = "2*log2(T)-1, T = draws until the first repeated value";

/// Stop drawing after this many samples and treat the cap as `T`.
pub const COLLISION_SAMPLE_CAP: u64 = 1 << 22;

/// For each trial: a random integer part in `[1, p)`, then uniformly random
/// patterns of full length until a value repeats. Returns the draw counts.
pub fn collision_samples<R: Residue, G: RngCore + ?Sized>(
    e: &EntropoidParams<R>,
    g: &Element<R>,
    base: u32,
    rng: &mut G,
    trials: usize,
) -> Vec<u64> {
    let bound = e.p() - 1u32;
    (0..trials)
        .map(|_| {
            let a: BigUint = uniform_below(&bound, rng) + 1u32;
            let digits = radix_digits(&a, base);
            let mut seen = HashSet::new();
            let mut t = 0u64;
            loop {
                t += 1;
                let pattern = random_pattern(base, digits.len(), rng);
                let idx = PowerIndex::from_digits(base, digits.clone(), pattern).expect("digits come from radix_digits");
                if !seen.insert(pow_fast(e, g, &idx)) || t >= COLLISION_SAMPLE_CAP {
                    break t;
                }
            }
        })
        .collect()
}

/// Mean of `2 log2 T - 1` over `trials` birthday experiments.
pub fn collision_entropy_experiment<R: Residue, G: RngCore + ?Sized>(
    e: &EntropoidParams<R>,
    g: &Element<R>,
    base: u32,
    rng: &mut G,
    trials: usize,
) -> f64 {
    let ts = collision_samples(e, g, base, rng, trials.max(1));
    ts.iter().map(|&t| 2.0 * (t as f64).log2() - 1.0).sum::<f64>() / ts.len() as f64
}

/// Random entropoid over a fresh `lambda`-bit safe prime with a certified
/// generator, for experiments that sweep the prime size.
pub fn random_instance<G: RngCore + ?Sized>(lambda: u32, rng: &mut G) -> Result<(EntropoidParams<u64>, Element<u64>)> {
    let m = gen_safe_prime(lambda, rng)?;
    let e = EntropoidParams::<u64>::random(m, rng)?;
    let g = gen(&e, rng)?.g;
    Ok((e, g))
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
