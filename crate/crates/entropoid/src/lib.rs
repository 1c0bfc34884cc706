//! Entropoid based cryptography.
//!
//! The algebra, exponentiation ladder, protocols and analysis tools are all
//! generic over a [`field::Residue`] scalar. The aliases below pick the
//! representations used in practice: machine words for toy primes and
//! fixed-width Montgomery limbs for the cryptographic sizes.

pub mod analysis;
pub mod entropoid;
pub mod error;
pub mod field;
pub mod generators;
pub mod kex;
pub mod powindex;
pub mod sig;

pub use entropoid::{Element, EntropoidParams};
pub use error::{Error, Result};
pub use field::{Mont, PrimeModulus, Residue};
pub use powindex::{pow_fast, PowerIndex};

/// Primes below 2^64.
pub type Entropoid64 = EntropoidParams<u64>;
/// Primes up to 128 bits.
pub type Entropoid128 = EntropoidParams<Mont<2>>;
/// Primes up to 192 bits.
pub type Entropoid192 = EntropoidParams<Mont<3>>;
/// Primes up to 256 bits.
pub type Entropoid256 = EntropoidParams<Mont<4>>;
/// Primes up to 384 bits.
pub type Entropoid384 = EntropoidParams<Mont<6>>;
/// Primes up to 512 bits.
pub type Entropoid512 = EntropoidParams<Mont<8>>;
/// Any size, plain big-integer reduction.
pub type EntropoidBig = EntropoidParams<num_bigint::BigUint>;

pub type Element64 = Element<u64>;
pub type Element128 = Element<Mont<2>>;
pub type Element256 = Element<Mont<4>>;
