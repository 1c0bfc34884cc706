//! Table-building forgery attempt against the root-based signature scheme at
//! toy sizes.
//!
//! `T1` holds `(z, z^B)` for random units `z`. `T2` holds `(I, M, H, (y*I)^H)`
//! with `H` hashed from `I || M`. A value shared by both tables gives `s = z`
//! with `s^B = (y*I)^H`, i.e. a valid signature `(I, s)` on `M`.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::RngCore;

use crate::entropoid::Element;
use crate::error::{Error, Result};
use crate::field::Residue;
use crate::powindex::pow_fast;
use crate::sig::{SigParams, Signature};

/// Largest prime the toy attack accepts.
pub const MITM_LIMIT: u64 = 1 << 14;
/// Success probability the table sizes are meant to give.
pub const MITM_TARGET_RATE: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct Forgery<R> {
    pub message: Vec<u8>,
    pub signature: Signature<R>,
    pub verifies: bool,
}

#[derive(Clone, Debug)]
pub struct MitmReport<R> {
    pub public_y: Element<R>,
    pub t1_len: usize,
    pub t2_len: usize,
    /// Some `z` in `T1` already satisfied `z^B = y`.
    pub found_root: bool,
    pub collisions: usize,
    pub forgery: Option<Forgery<R>>,
}

impl<R> MitmReport<R> {
    pub fn success(&self) -> bool {
        self.forgery.as_ref().is_some_and(|f| f.verifies)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MitmStats {
    pub trials: usize,
    pub successes: usize,
    pub roots_found: usize,
    pub rate: f64,
    pub target: f64,
}

fn check_size<R: Residue>(sp: &SigParams<R>) -> Result<usize> {
    sp.params()
        .p()
        .to_u64()
        .filter(|&p| p <= MITM_LIMIT)
        .map(|p| p as usize - 1)
        .ok_or_else(|| Error::TooLarge(format!("p = {} > {MITM_LIMIT}", sp.params().p())))
}

/// One attack against a fresh key pair drawn from `rng`.
pub fn mitm_toy_attack<R: Residue, G: RngCore + ?Sized>(sp: &SigParams<R>, rng: &mut G) -> Result<MitmReport<R>> {
    let rows = check_size(sp)?;
    let e = sp.params();
    let y = sp.keygen(rng).public_y;

    let mut t1: HashMap<Element<R>, Element<R>> = HashMap::with_capacity(rows);
    let mut found_root = false;
    for _ in 0..rows {
        let z = e.random_unit(rng);
        let zb = pow_fast(e, &z, sp.root());
        found_root |= zb == y;
        t1.entry(zb).or_insert(z);
    }

    let mut collisions = 0;
    let mut forgery = None;
    for _ in 0..rows {
        let i = e.random_unit(rng);
        let mut message = vec![0u8; 16];
        rng.fill_bytes(&mut message);
        let h = sp.challenge_for(&i, &message)?;
        let v = pow_fast(e, &e.star(&y, &i), &h);
        if let Some(z) = t1.get(&v) {
            collisions += 1;
            if forgery.is_none() {
                let signature = Signature { i, s: z.clone() };
                let verifies = sp.verify(&y, &message, &signature);
                forgery = Some(Forgery {
                    message,
                    signature,
                    verifies,
                });
            }
        }
    }
    Ok(MitmReport {
        public_y: y,
        t1_len: rows,
        t2_len: rows,
        found_root,
        collisions,
        forgery,
    })
}

/// Repeats the attack `trials` times and reports the empirical success rate.
pub fn mitm_success_rate<R: Residue, G: RngCore + ?Sized>(sp: &SigParams<R>, trials: usize, rng: &mut G) -> Result<MitmStats> {
    let mut successes = 0;
    let mut roots_found = 0;
    for _ in 0..trials {
        let r = mitm_toy_attack(sp, rng)?;
        successes += r.success() as usize;
        roots_found += r.found_root as usize;
    }
    Ok(MitmStats {
        trials,
        successes,
        roots_found,
        rate: successes as f64 / trials.max(1) as f64,
        target: MITM_TARGET_RATE,
    })
}
