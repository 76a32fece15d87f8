use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{FieldPrime, RandomSource, Scheme, Share, SharePayload};
use crate::codec::{
    digit_space_size, digits_to_integer, integer_to_digits, radix_digits, radix_space, radix_value,
    DigitString,
};
use crate::error::{Error, Result};

/// `t`-of-`n` threshold parameters over a [`FieldPrime`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShamirParams {
    threshold: usize,
    participants: usize,
    prime: FieldPrime,
}

impl ShamirParams {
    pub fn new(threshold: usize, participants: usize, prime: FieldPrime) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::InvalidParams("threshold must be at least 1".into()));
        }
        if threshold > participants {
            return Err(Error::InvalidParams(format!(
                "threshold {threshold} exceeds {participants} participants"
            )));
        }
        if participants as u64 >= prime.value() {
            return Err(Error::InvalidParams(format!(
                "{} participants need distinct nonzero points in a field of size {}",
                participants, prime
            )));
        }
        Ok(ShamirParams {
            threshold,
            participants,
            prime,
        })
    }

    pub fn production(threshold: usize, participants: usize) -> Result<Self> {
        Self::new(threshold, participants, FieldPrime::PRODUCTION)
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn participants(&self) -> usize {
        self.participants
    }

    pub fn prime(&self) -> FieldPrime {
        self.prime
    }
}

/// Shares each block with a fresh random polynomial of degree `t - 1`.
pub fn shamir_split(
    blocks: &[u64],
    params: &ShamirParams,
    rng: &mut RandomSource,
) -> Result<Vec<Share>> {
    check_blocks(blocks, params.prime)?;
    let p = params.prime.value();
    let coefficients: Vec<Vec<u64>> = blocks
        .iter()
        .map(|_| (1..params.threshold).map(|_| rng.below(p)).collect())
        .collect();
    shamir_split_with_coefficients(blocks, params, &coefficients)
}

/// Deterministic split: `coefficients[b]` holds the `t - 1` non-constant
/// coefficients (lowest degree first) of block `b`'s polynomial.
pub fn shamir_split_with_coefficients(
    blocks: &[u64],
    params: &ShamirParams,
    coefficients: &[Vec<u64>],
) -> Result<Vec<Share>> {
    check_blocks(blocks, params.prime)?;
    if coefficients.len() != blocks.len()
        || coefficients.iter().any(|c| c.len() + 1 != params.threshold)
    {
        return Err(Error::InvalidParams(format!(
            "need {} coefficients for each of {} blocks",
            params.threshold - 1,
            blocks.len()
        )));
    }
    let f = params.prime;
    Ok((1..=params.participants as u32)
        .map(|x| {
            let payload = blocks
                .iter()
                .zip(coefficients)
                .map(|(&secret, coeffs)| {
                    let x = u64::from(x);
                    let mut acc = 0;
                    for &c in coeffs.iter().rev() {
                        acc = f.add(f.mul(acc, x), c % f.value());
                    }
                    f.add(f.mul(acc, x), secret)
                })
                .collect();
            Share {
                scheme: Scheme::Shamir(*params),
                index: x,
                payload: SharePayload::Blocks(payload),
            }
        })
        .collect())
}

fn check_blocks(blocks: &[u64], prime: FieldPrime) -> Result<()> {
    match blocks.iter().find(|&&b| b >= prime.value()) {
        Some(&value) => Err(Error::BlockOutOfField {
            value,
            prime: prime.value(),
        }),
        None => Ok(()),
    }
}

/// Lagrange interpolation at zero over the first `t` shares.
pub fn shamir_reconstruct(shares: &[Share], params: &ShamirParams) -> Result<Vec<u64>> {
    if shares.len() < params.threshold {
        return Err(Error::InsufficientShares {
            needed: params.threshold,
            got: shares.len(),
        });
    }
    let mut seen = HashSet::new();
    let mut payloads = Vec::with_capacity(shares.len());
    for share in shares {
        if share.scheme != Scheme::Shamir(*params) {
            return Err(Error::MetadataMismatch(format!(
                "share {} was not dealt with these Shamir parameters",
                share.index
            )));
        }
        if share.index == 0 || share.index as usize > params.participants {
            return Err(Error::MetadataMismatch(format!(
                "participant index {} outside 1..={}",
                share.index, params.participants
            )));
        }
        if !seen.insert(share.index) {
            return Err(Error::DuplicateIndex(share.index));
        }
        match &share.payload {
            SharePayload::Blocks(b) => payloads.push((share.index, b)),
            SharePayload::Digits(_) => {
                return Err(Error::MetadataMismatch(
                    "Shamir share carries digits".into(),
                ))
            }
        }
    }
    let len = payloads[0].1.len();
    if payloads.iter().any(|(_, b)| b.len() != len) {
        return Err(Error::MetadataMismatch(
            "shares have different block counts".into(),
        ));
    }
    let f = params.prime;
    if let Some(&value) = payloads
        .iter()
        .flat_map(|(_, b)| b.iter())
        .find(|&&v| v >= f.value())
    {
        return Err(Error::BlockOutOfField {
            value,
            prime: f.value(),
        });
    }

    let used = &payloads[..params.threshold];
    let xs: Vec<u64> = used.iter().map(|(x, _)| u64::from(*x)).collect();
    let weights: Vec<u64> = xs
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let (num, den) = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold((1, 1), |(num, den), (_, &xj)| {
                    (f.mul(num, xj), f.mul(den, f.sub(xj, xi)))
                });
            f.mul(num, f.inv(den))
        })
        .collect();
    Ok((0..len)
        .map(|b| {
            used.iter()
                .zip(&weights)
                .fold(0, |acc, ((_, ys), &w)| f.add(acc, f.mul(w, ys[b])))
        })
        .collect())
}

/// Number of blocks needed for any secret of the `(n, k)` digit space.
pub fn block_count(n: usize, k: u32, prime: FieldPrime) -> usize {
    blocks_for_space(&digit_space_size(n, k), prime)
}

/// Number of blocks [`pack_radix_digits`] produces for these radices.
pub fn radix_block_count(radices: &[u32], prime: FieldPrime) -> usize {
    blocks_for_space(&radix_space(radices), prime)
}

fn blocks_for_space(space: &BigUint, prime: FieldPrime) -> usize {
    let bits = (space - 1u8).bits() as usize;
    bits.div_ceil(prime.block_bits() as usize).max(1)
}

/// The digit string's integer value cut into `block_bits`-wide blocks, most
/// significant first. The block count depends only on `(n, k)`.
pub fn pack_digits_to_blocks(d: &DigitString, prime: FieldPrime) -> Vec<u64> {
    let count = block_count(d.vertex_count(), d.palette(), prime);
    split_value(&digits_to_integer(d), count, prime)
}

/// Inverse of [`pack_digits_to_blocks`]. Fails with [`Error::OutOfRange`]
/// when the blocks encode a value outside the `(n, k)` digit space.
pub fn unpack_blocks_to_digits(
    blocks: &[u64],
    n: usize,
    k: u32,
    prime: FieldPrime,
) -> Result<DigitString> {
    let space = digit_space_size(n, k);
    let value = join_value(blocks, &space, prime)?;
    integer_to_digits(&value, n, k)
}

/// Packing for an arbitrary mixed-radix digit vector.
pub fn pack_radix_digits(digits: &[u32], radices: &[u32], prime: FieldPrime) -> Vec<u64> {
    let count = blocks_for_space(&radix_space(radices), prime);
    split_value(&radix_value(digits, radices), count, prime)
}

pub fn unpack_radix_digits(blocks: &[u64], radices: &[u32], prime: FieldPrime) -> Result<Vec<u32>> {
    let value = join_value(blocks, &radix_space(radices), prime)?;
    radix_digits(&value, radices)
}

fn split_value(value: &BigUint, count: usize, prime: FieldPrime) -> Vec<u64> {
    let per = prime.block_bits() as usize;
    let mask = (BigUint::from(1u8) << per) - 1u8;
    (0..count)
        .rev()
        .map(|i| {
            ((value >> (i * per)) & &mask)
                .to_u64()
                .expect("block fits in u64")
        })
        .collect()
}

fn join_value(blocks: &[u64], space: &BigUint, prime: FieldPrime) -> Result<BigUint> {
    let count = blocks_for_space(space, prime);
    if blocks.len() != count {
        return Err(Error::MetadataMismatch(format!(
            "expected {} blocks, got {}",
            count,
            blocks.len()
        )));
    }
    let per = prime.block_bits();
    let mut value = BigUint::zero();
    for &b in blocks {
        if b >> per != 0 {
            return Err(Error::OutOfRange {
                space: space.to_string(),
            });
        }
        value = (value << per) + b;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_graph;
    use crate::graph::{ColoredGraph, Coloring, Graph};

    fn p(v: u64) -> FieldPrime {
        FieldPrime::new(v).unwrap()
    }

    /// Direct Lagrange evaluation at zero with rational weights reduced mod p,
    /// written independently of `shamir_reconstruct`.
    fn oracle_interpolate(points: &[(u64, u64)], prime: u64) -> u64 {
        let modpow = |mut b: u64, mut e: u64| {
            let mut r = 1;
            b %= prime;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % prime;
                }
                b = b * b % prime;
                e >>= 1;
            }
            r
        };
        let mut acc = 0;
        for (i, &(xi, yi)) in points.iter().enumerate() {
            let mut num = 1;
            let mut den = 1;
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i != j {
                    num = num * (prime - xj % prime) % prime;
                    den = den * ((xi + prime - xj) % prime) % prime;
                }
            }
            acc = (acc + yi * num % prime * modpow(den, prime - 2)) % prime;
        }
        acc
    }

    #[test]
    fn threshold_one_copies_secret() {
        let params = ShamirParams::production(1, 4).unwrap();
        let secret = vec![42, 7, 0];
        let shares = shamir_split(&secret, &params, &mut RandomSource::from_u64(3)).unwrap();
        assert_eq!(shares.len(), 4);
        for s in &shares {
            assert_eq!(s.payload, SharePayload::Blocks(secret.clone()));
        }
    }

    #[test]
    fn small_prime_matches_oracle() {
        let params = ShamirParams::new(2, 3, p(7)).unwrap();
        let shares = shamir_split(&[3], &params, &mut RandomSource::from_u64(11)).unwrap();
        let points: Vec<(u64, u64)> = shares
            .iter()
            .map(|s| match &s.payload {
                SharePayload::Blocks(b) => (u64::from(s.index), b[0]),
                _ => unreachable!(),
            })
            .collect();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let pts = [points[pair[0]], points[pair[1]]];
            assert_eq!(oracle_interpolate(&pts, 7), 3);
        }
        assert_eq!(shamir_reconstruct(&shares[1..], &params).unwrap(), vec![3]);
    }

    #[test]
    fn block_must_be_below_prime() {
        let params = ShamirParams::production(2, 3).unwrap();
        let p = FieldPrime::PRODUCTION.value();
        assert!(matches!(
            shamir_split(&[p], &params, &mut RandomSource::from_u64(0)),
            Err(Error::BlockOutOfField { .. })
        ));
        assert!(shamir_split(&[p - 1], &params, &mut RandomSource::from_u64(0)).is_ok());
    }

    #[test]
    fn reconstruct_errors() {
        let params = ShamirParams::production(3, 5).unwrap();
        let shares = shamir_split(&[9, 10], &params, &mut RandomSource::from_u64(5)).unwrap();
        assert!(matches!(
            shamir_reconstruct(&shares[..2], &params),
            Err(Error::InsufficientShares { needed: 3, got: 2 })
        ));
        let dup = vec![shares[0].clone(), shares[1].clone(), shares[0].clone()];
        assert!(matches!(
            shamir_reconstruct(&dup, &params),
            Err(Error::DuplicateIndex(1))
        ));
        let other = ShamirParams::production(3, 6).unwrap();
        assert!(matches!(
            shamir_reconstruct(&shares, &other),
            Err(Error::MetadataMismatch(_))
        ));
        assert_eq!(
            shamir_reconstruct(&shares[2..], &params).unwrap(),
            vec![9, 10]
        );
    }

    #[test]
    fn every_subset_agrees() {
        let params = ShamirParams::production(3, 5).unwrap();
        let secret = vec![1 << 59, 12345, 0];
        let shares = shamir_split(&secret, &params, &mut RandomSource::from_u64(8)).unwrap();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    let subset = [shares[a].clone(), shares[b].clone(), shares[c].clone()];
                    assert_eq!(shamir_reconstruct(&subset, &params).unwrap(), secret);
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(ShamirParams::production(0, 3).is_err());
        assert!(ShamirParams::production(4, 3).is_err());
        assert!(ShamirParams::new(2, 5, p(5)).is_err());
        assert!(ShamirParams::new(2, 4, p(5)).is_ok());
    }

    #[test]
    fn packing() {
        let zero = DigitString::zero(2, 1).unwrap();
        assert_eq!(
            pack_digits_to_blocks(&zero, FieldPrime::PRODUCTION),
            vec![0]
        );

        let g = Graph::complete(12).unwrap();
        let cg = ColoredGraph::new(g, Coloring::new(12, (0..12).collect()).unwrap()).unwrap();
        let d = encode_graph(&cg);
        let blocks = pack_digits_to_blocks(&d, FieldPrime::PRODUCTION);
        // 66 structure bits + 12 base-12 digits < 66 + 43.03 bits -> 109 bits -> 2 blocks
        assert_eq!(blocks.len(), 2);
        assert_eq!(
            unpack_blocks_to_digits(&blocks, 12, 12, FieldPrime::PRODUCTION).unwrap(),
            d
        );
    }

    #[test]
    fn unpack_rejects_values_outside_space() {
        // n=3, k=1: space of 8 values fits one block.
        let prime = FieldPrime::PRODUCTION;
        assert!(unpack_blocks_to_digits(&[7], 3, 1, prime).is_ok());
        assert!(matches!(
            unpack_blocks_to_digits(&[8], 3, 1, prime),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            unpack_blocks_to_digits(&[1 << 60], 3, 1, prime),
            Err(Error::OutOfRange { .. })
        ));
        assert!(unpack_blocks_to_digits(&[0, 0], 3, 1, prime).is_err());
    }
}
