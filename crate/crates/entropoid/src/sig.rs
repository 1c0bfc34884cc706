//! Fiat-Shamir signatures whose hardness rests on taking roots in the
//! entropoid, plus the underlying three-move identification scheme.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use sha2::{Digest, Sha256, Sha384, Sha512};

use crate::entropoid::{Element, EntropoidParams};
use crate::error::{Error, Result};
use crate::field::{uniform_below, Residue};
use crate::powindex::{digit_len, pow_fast, random_pattern, PowerIndex};

/// Seed hashed into the public root index `B`.
pub const ROOT_SEED: &[u8] = b"abc";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Integer part of every index comes from the digest.
    Cderp,
    /// Integer part fixed to `q`; only the bracketing comes from the digest.
    CderpToDelp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HashAlg {
    Sha256,
    Sha384,
    Sha512,
}

impl HashAlg {
    pub fn digest(self, data: &[u8]) -> Vec<u8> {
        match self {
            HashAlg::Sha256 => Sha256::digest(data).to_vec(),
            HashAlg::Sha384 => Sha384::digest(data).to_vec(),
            HashAlg::Sha512 => Sha512::digest(data).to_vec(),
        }
    }

    pub fn output_len(self) -> usize {
        match self {
            HashAlg::Sha256 => 32,
            HashAlg::Sha384 => 48,
            HashAlg::Sha512 => 64,
        }
    }

    fn from_bits(bits: u32) -> Option<Self> {
        match bits {
            256 => Some(HashAlg::Sha256),
            384 => Some(HashAlg::Sha384),
            512 => Some(HashAlg::Sha512),
            _ => None,
        }
    }
}

impl Scheme {
    /// Hash for a security level; `Cderp` uses a digest twice as wide as
    /// `lambda`, `CderpToDelp` one exactly as wide.
    pub fn hash_for(self, lambda: u32) -> Result<HashAlg> {
        let bits = match self {
            Scheme::Cderp => 2 * lambda,
            Scheme::CderpToDelp => lambda,
        };
        HashAlg::from_bits(bits).ok_or_else(|| Error::Unsupported(format!("{self:?} at lambda = {lambda}")))
    }

    fn id(self) -> u8 {
        match self {
            Scheme::Cderp => 1,
            Scheme::CderpToDelp => 2,
        }
    }
}

/// Scheme, base and bit length of p recorded in a key file header.
pub fn key_file_info(bytes: &[u8]) -> Result<(Scheme, u32, u32)> {
    let bad = || Error::Unsupported("unrecognized key file header".into());
    let [id, lo, hi] = *bytes.first_chunk::<3>().ok_or_else(bad)?;
    let scheme = match id & 0x0f {
        1 => Scheme::Cderp,
        2 => Scheme::CderpToDelp,
        _ => return Err(bad()),
    };
    let base = if id & 0x10 != 0 { 17 } else { 257 };
    Ok((scheme, base, u32::from(u16::from_le_bytes([lo, hi]))))
}

#[derive(Clone, Debug)]
pub struct SigParams<R: Residue> {
    params: EntropoidParams<R>,
    scheme: Scheme,
    hash: HashAlg,
    base: u32,
    root: PowerIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigKeyPair<R> {
    pub private_x: Element<R>,
    pub public_y: Element<R>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature<R> {
    pub i: Element<R>,
    pub s: Element<R>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript<R> {
    pub commitment: Element<R>,
    pub challenge: PowerIndex,
    pub response: Element<R>,
    pub accepted: bool,
}

/// Pattern digits carried by a digest: whole bytes for base 257, nibbles
/// (low first) for base 17.
fn symbols(bytes: &[u8], base: u32) -> Vec<u32> {
    match base {
        257 => bytes.iter().map(|&b| u32::from(b)).collect(),
        17 => bytes
            .iter()
            .flat_map(|&b| [u32::from(b & 0x0f), u32::from(b >> 4)])
            .collect(),
        _ => unreachable!("base validated at construction"),
    }
}

impl<R: Residue> SigParams<R> {
    /// Standard instance: hash chosen from the bit length of p, base 257.
    pub fn new(params: EntropoidParams<R>, scheme: Scheme) -> Result<Self> {
        let hash = scheme.hash_for(params.modulus().bits())?;
        Self::with_options(params, scheme, hash, 257)
    }

    /// Any hash and base 257 or 17; used for toy sizes and the nibble variant.
    pub fn with_options(params: EntropoidParams<R>, scheme: Scheme, hash: HashAlg, base: u32) -> Result<Self> {
        if base != 257 && base != 17 {
            return Err(Error::Unsupported(format!("signature base {base}")));
        }
        if scheme == Scheme::CderpToDelp {
            let q = params
                .modulus()
                .q()
                .ok_or_else(|| Error::NotSafePrime(params.p().to_string()))?;
            if digit_len(q, base) > symbols(&vec![0; hash.output_len()], base).len() {
                return Err(Error::Unsupported(format!("{hash:?} too short for q at base {base}")));
            }
        }
        let mut sp = SigParams {
            params,
            scheme,
            hash,
            base,
            root: PowerIndex::binary(1)?,
        };
        sp.root = sp.challenge(ROOT_SEED)?;
        Ok(sp)
    }

    pub fn params(&self) -> &EntropoidParams<R> {
        &self.params
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn hash(&self) -> HashAlg {
        self.hash
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// The public root index `B`.
    pub fn root(&self) -> &PowerIndex {
        &self.root
    }

    /// Maximum pattern length for the digest-derived scheme.
    pub fn k_max(&self) -> usize {
        symbols(&vec![0; self.hash.output_len() / 2], self.base).len()
    }

    /// Digest split into halves: the first gives the integer part, the
    /// second the bracketing digits.
    pub fn hash_to_index(&self, msg: &[u8]) -> Result<PowerIndex> {
        for counter in 0u8..=255 {
            let mut data = msg.to_vec();
            if counter > 0 {
                data.push(counter);
            }
            let d = self.hash.digest(&data);
            let (h1, h2) = d.split_at(d.len() / 2);
            let a = BigUint::from_bytes_le(h1);
            if a.is_zero() {
                continue;
            }
            let n = digit_len(&a, self.base).min(self.k_max());
            let pattern = symbols(h2, self.base)[..n].to_vec();
            return PowerIndex::new(self.base, &a, pattern);
        }
        Err(Error::ZeroDigest)
    }

    /// `(q, digest symbols, base)`.
    pub fn hash_to_index_q(&self, msg: &[u8]) -> Result<PowerIndex> {
        let q = self
            .params
            .modulus()
            .q()
            .ok_or_else(|| Error::NotSafePrime(self.params.p().to_string()))?;
        let d = self.hash.digest(msg);
        let n = digit_len(q, self.base);
        PowerIndex::new(self.base, q, symbols(&d, self.base)[..n].to_vec())
    }

    fn challenge(&self, data: &[u8]) -> Result<PowerIndex> {
        match self.scheme {
            Scheme::Cderp => self.hash_to_index(data),
            Scheme::CderpToDelp => self.hash_to_index_q(data),
        }
    }

    /// Index the verifier derives for commitment `i` and message `msg`.
    pub fn challenge_for(&self, i: &Element<R>, msg: &[u8]) -> Result<PowerIndex> {
        self.challenge(&self.bind(i, msg))
    }

    /// `len(encode(I)) || encode(I) || msg`, as fed to the hash.
    pub fn bind(&self, i: &Element<R>, msg: &[u8]) -> Vec<u8> {
        let enc = self.params.encode(i);
        let mut data = Vec::with_capacity(4 + enc.len() + msg.len());
        data.extend_from_slice(&(enc.len() as u32).to_le_bytes());
        data.extend_from_slice(&enc);
        data.extend_from_slice(msg);
        data
    }

    pub fn keygen<G: RngCore + ?Sized>(&self, rng: &mut G) -> SigKeyPair<R> {
        let x = self.params.random_unit(rng);
        self.keypair_from_private(x)
    }

    pub fn keypair_from_private(&self, x: Element<R>) -> SigKeyPair<R> {
        let y = pow_fast(&self.params, &x, &self.root);
        SigKeyPair {
            private_x: x,
            public_y: y,
        }
    }

    pub fn sign<G: RngCore + ?Sized>(&self, kp: &SigKeyPair<R>, msg: &[u8], rng: &mut G) -> Result<Signature<R>> {
        let r = self.params.random_unit(rng);
        let i = pow_fast(&self.params, &r, &self.root);
        let h = self.challenge(&self.bind(&i, msg))?;
        let s = pow_fast(&self.params, &self.params.star(&kp.private_x, &r), &h);
        Ok(Signature { i, s })
    }

    /// `s^B == (y * I)^H`.
    pub fn verify(&self, y: &Element<R>, msg: &[u8], sig: &Signature<R>) -> bool {
        let e = &self.params;
        if !(e.is_unit(&sig.i) && e.is_unit(&sig.s) && e.is_unit(y)) {
            return false;
        }
        let Ok(h) = self.challenge(&self.bind(&sig.i, msg)) else {
            return false;
        };
        pow_fast(e, &sig.s, &self.root) == pow_fast(e, &e.star(y, &sig.i), &h)
    }

    pub fn verify_bytes(&self, y: &Element<R>, msg: &[u8], sig: &[u8]) -> bool {
        self.decode_signature(sig)
            .map(|s| self.verify(y, msg, &s))
            .unwrap_or(false)
    }

    /// Commit, random challenge, response, check.
    pub fn id_round<G1, G2>(&self, kp: &SigKeyPair<R>, prover: &mut G1, verifier: &mut G2) -> Result<Transcript<R>>
    where
        G1: RngCore + ?Sized,
        G2: RngCore + ?Sized,
    {
        let e = &self.params;
        let r = e.random_unit(prover);
        let commitment = pow_fast(e, &r, &self.root);
        let challenge = self.random_challenge(verifier)?;
        let response = pow_fast(e, &e.star(&kp.private_x, &r), &challenge);
        let accepted = self.check_response(&kp.public_y, &commitment, &challenge, &response);
        Ok(Transcript {
            commitment,
            challenge,
            response,
            accepted,
        })
    }

    pub fn check_response(&self, y: &Element<R>, commitment: &Element<R>, challenge: &PowerIndex, response: &Element<R>) -> bool {
        let e = &self.params;
        pow_fast(e, response, &self.root) == pow_fast(e, &e.star(y, commitment), challenge)
    }

    /// Uniform challenge from the same index space the hash maps into.
    pub fn random_challenge<G: RngCore + ?Sized>(&self, rng: &mut G) -> Result<PowerIndex> {
        let a = match self.scheme {
            Scheme::Cderp => {
                let bound = BigUint::from(1u32) << (4 * self.hash.output_len());
                uniform_below(&(bound - 1u32), rng) + 1u32
            }
            Scheme::CderpToDelp => self.params.modulus().q().expect("checked at construction").clone(),
        };
        let n = digit_len(&a, self.base);
        PowerIndex::new(self.base, &a, random_pattern(self.base, n, rng))
    }

    pub fn signature_len(&self) -> usize {
        2 * self.params.encoded_len()
    }

    pub fn encode_signature(&self, sig: &Signature<R>) -> Vec<u8> {
        let mut out = self.params.encode(&sig.i);
        out.extend(self.params.encode(&sig.s));
        out
    }

    pub fn decode_signature(&self, bytes: &[u8]) -> Result<Signature<R>> {
        let w = self.params.encoded_len();
        if bytes.len() != 2 * w {
            return Err(Error::MalformedSignature);
        }
        let i = self.params.decode(&bytes[..w]).map_err(|_| Error::MalformedSignature)?;
        let s = self.params.decode(&bytes[w..]).map_err(|_| Error::MalformedSignature)?;
        Ok(Signature { i, s })
    }

    fn key_header(&self) -> [u8; 3] {
        let id = self.scheme.id() | if self.base == 17 { 0x10 } else { 0 };
        let bits = self.params.modulus().bits() as u16;
        let [lo, hi] = bits.to_le_bytes();
        [id, lo, hi]
    }

    /// Key file: scheme byte, bit length of p (u16 LE), element bytes.
    pub fn encode_key(&self, x: &Element<R>) -> Vec<u8> {
        let mut out = self.key_header().to_vec();
        out.extend(self.params.encode(x));
        out
    }

    pub fn decode_key(&self, bytes: &[u8]) -> Result<Element<R>> {
        if bytes.len() < 3 || bytes[..3] != self.key_header() {
            return Err(Error::Unsupported("key file does not match these parameters".into()));
        }
        self.params.decode(&bytes[3..])
    }
}
