//! Number-based secret sharing: Shamir threshold sharing over a prime field
//! and KGH-style additive sharing digit by digit in each position's radix.
//!
//! Both schemes take their dealer randomness from an explicit
//! [`RandomSource`]. Each also exposes a `*_with_*` variant taking the random
//! choices directly, which is what the exhaustive secrecy checks enumerate.

mod field;
mod kgh;
mod rng;
mod shamir;

pub use field::FieldPrime;
pub use kgh::{kgh_reconstruct, kgh_split, kgh_split_with_masks, KghParams};
pub use rng::RandomSource;
pub use shamir::{
    block_count, pack_digits_to_blocks, pack_radix_digits, radix_block_count, shamir_reconstruct,
    shamir_split, shamir_split_with_coefficients, unpack_blocks_to_digits, unpack_radix_digits,
    ShamirParams,
};

/// Scheme parameters carried by every share.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scheme {
    Shamir(ShamirParams),
    Kgh(KghParams),
}

impl Scheme {
    pub fn participants(&self) -> usize {
        match self {
            Scheme::Shamir(p) => p.participants(),
            Scheme::Kgh(p) => p.participants(),
        }
    }

    /// Smallest number of shares that reconstructs.
    pub fn threshold(&self) -> usize {
        match self {
            Scheme::Shamir(p) => p.threshold(),
            Scheme::Kgh(p) => p.participants(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Shamir(_) => "shamir",
            Scheme::Kgh(_) => "kgh",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SharePayload {
    /// One field element per secret block.
    Blocks(Vec<u64>),
    /// One digit per secret digit, each below its position's radix.
    Digits(Vec<u32>),
}

impl SharePayload {
    pub fn len(&self) -> usize {
        match self {
            SharePayload::Blocks(b) => b.len(),
            SharePayload::Digits(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One participant's piece of a dealing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Share {
    pub scheme: Scheme,
    /// 1-based; also the Shamir evaluation point.
    pub index: u32,
    pub payload: SharePayload,
}
