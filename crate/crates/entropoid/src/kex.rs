//! Diffie-Hellman over the Sylow subquasigroup of an entropoid.

use num_bigint::BigUint;
use rand::RngCore;

use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::{gen_safe_prime, Residue};
use crate::generators::{gen_q, GeneratorCertificate};
use crate::powindex::{b_max, op_count, pow_fast, random_index, PowerIndex};

pub const DEFAULT_BASE: u32 = 3;

#[derive(Clone, Debug)]
pub struct KexSuite<R: Residue> {
    params: EntropoidParams<R>,
    certificate: GeneratorCertificate<R>,
    base: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KexKeypair<R> {
    pub secret: PowerIndex,
    pub public: Element<R>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostMetrics {
    pub star_ops: u64,
    pub field_mults: u64,
    pub field_adds: u64,
}

fn check_base(base: u32, p: &BigUint) -> Result<()> {
    if base < 3 || base.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("key exchange base must be odd and >= 3, got {base}")));
    }
    if u64::from(base) >= b_max(p) {
        return Err(Error::Unsupported(format!("base {base} is not below b_max = {}", b_max(p))));
    }
    Ok(())
}

impl<R: Residue> KexSuite<R> {
    /// Fresh `lambda`-bit safe prime, random constants and a Sylow generator.
    pub fn generate<G: RngCore + ?Sized>(lambda: u32, base: u32, rng: &mut G) -> Result<Self> {
        let modulus = gen_safe_prime(lambda, rng)?;
        let params = EntropoidParams::random(modulus, rng)?;
        Self::with_params(params, base, rng)
    }

    /// Uses existing parameters; only the generator is drawn.
    pub fn with_params<G: RngCore + ?Sized>(params: EntropoidParams<R>, base: u32, rng: &mut G) -> Result<Self> {
        check_base(base, params.p())?;
        let certificate = gen_q(&params, rng)?;
        Ok(KexSuite {
            params,
            certificate,
            base,
        })
    }

    pub fn params(&self) -> &EntropoidParams<R> {
        &self.params
    }

    pub fn generator(&self) -> &Element<R> {
        &self.certificate.g
    }

    pub fn certificate(&self) -> &GeneratorCertificate<R> {
        &self.certificate
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn keygen<G: RngCore + ?Sized>(&self, rng: &mut G) -> KexKeypair<R> {
        self.keygen_with_base(self.base, rng)
            .expect("suite base was validated")
    }

    /// Keygen with a per-party base; any odd base below `b_max` agrees.
    pub fn keygen_with_base<G: RngCore + ?Sized>(&self, base: u32, rng: &mut G) -> Result<KexKeypair<R>> {
        check_base(base, self.params.p())?;
        let secret = random_index(base, self.params.p(), rng)?;
        let public = pow_fast(&self.params, &self.certificate.g, &secret);
        Ok(KexKeypair { secret, public })
    }

    pub fn public_from_secret(&self, secret: &PowerIndex) -> Element<R> {
        pow_fast(&self.params, &self.certificate.g, secret)
    }

    pub fn derive(&self, mine: &KexKeypair<R>, theirs: &Element<R>) -> Result<Element<R>> {
        if !self.params.is_unit(theirs) {
            return Err(Error::InvalidPeer);
        }
        Ok(pow_fast(&self.params, theirs, &mine.secret))
    }

    pub fn message_len(&self) -> usize {
        self.params.encoded_len()
    }

    pub fn encode(&self, x: &Element<R>) -> Vec<u8> {
        self.params.encode(x)
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<Element<R>> {
        self.params.decode(bytes)
    }

    /// Canonical serialization: width, p, constants, generator, base.
    pub fn to_bytes(&self) -> Vec<u8> {
        let w = self.params.modulus().byte_len();
        let mut out = Vec::new();
        out.extend_from_slice(&(w as u32).to_le_bytes());
        let fixed = |v: &BigUint| {
            let mut b = v.to_bytes_le();
            b.resize(w, 0);
            b
        };
        out.extend(fixed(self.params.p()));
        for c in self.params.constants() {
            out.extend(fixed(&c));
        }
        out.extend(self.params.encode(&self.certificate.g));
        out.extend_from_slice(&self.base.to_le_bytes());
        out
    }

    pub fn cost_metrics(&self, idx: &PowerIndex) -> CostMetrics {
        cost_metrics(idx)
    }
}

/// Six field multiplications and six additions per product.
pub fn cost_metrics(idx: &PowerIndex) -> CostMetrics {
    let star_ops = op_count(idx);
    CostMetrics {
        star_ops,
        field_mults: 6 * star_ops,
        field_adds: 6 * star_ops,
    }
}
