use std::collections::HashSet;

use super::{RandomSource, Scheme, Share, SharePayload};
use crate::error::{Error, Result};

/// `n`-of-`n` additive sharing with a radix per digit position.
///
/// A position with radix 1 can only hold digit 0 and all shares carry 0 there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KghParams {
    participants: usize,
    radices: Vec<u32>,
}

impl KghParams {
    pub fn new(participants: usize, radices: Vec<u32>) -> Result<Self> {
        if participants == 0 {
            return Err(Error::InvalidParams("need at least one participant".into()));
        }
        if radices.contains(&0) {
            return Err(Error::InvalidParams(
                "radix 0 is not a digit position".into(),
            ));
        }
        Ok(KghParams {
            participants,
            radices,
        })
    }

    pub fn participants(&self) -> usize {
        self.participants
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// Number of distinct digit vectors, saturating at `u64::MAX`.
    pub fn space_size(&self) -> u64 {
        self.radices
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(u64::from(r)))
            .unwrap_or(u64::MAX)
    }

    fn check_digits(&self, digits: &[u32]) -> Result<()> {
        if digits.len() != self.radices.len() {
            return Err(Error::MetadataMismatch(format!(
                "expected {} digits, got {}",
                self.radices.len(),
                digits.len()
            )));
        }
        match digits.iter().zip(&self.radices).position(|(&d, &r)| d >= r) {
            Some(position) => Err(Error::DigitOutOfRadix {
                position,
                digit: digits[position],
                radix: self.radices[position],
            }),
            None => Ok(()),
        }
    }
}

/// First `n - 1` shares uniformly random, the last one fixing the sum.
pub fn kgh_split(digits: &[u32], params: &KghParams, rng: &mut RandomSource) -> Result<Vec<Share>> {
    params.check_digits(digits)?;
    let masks: Vec<Vec<u32>> = (1..params.participants)
        .map(|_| {
            params
                .radices
                .iter()
                .map(|&r| rng.below(u64::from(r)) as u32)
                .collect()
        })
        .collect();
    kgh_split_with_masks(digits, params, &masks)
}

/// Deterministic split: `masks` are the payloads of participants
/// `1..n`, participant `n` gets `digits - sum(masks)`.
pub fn kgh_split_with_masks(
    digits: &[u32],
    params: &KghParams,
    masks: &[Vec<u32>],
) -> Result<Vec<Share>> {
    params.check_digits(digits)?;
    if masks.len() + 1 != params.participants {
        return Err(Error::InvalidParams(format!(
            "{} participants need {} masks, got {}",
            params.participants,
            params.participants - 1,
            masks.len()
        )));
    }
    for mask in masks {
        params.check_digits(mask)?;
    }
    let last: Vec<u32> = digits
        .iter()
        .zip(&params.radices)
        .enumerate()
        .map(|(pos, (&d, &r))| {
            let used = masks
                .iter()
                .fold(0u64, |acc, m| (acc + u64::from(m[pos])) % u64::from(r));
            ((u64::from(d) + u64::from(r) - used) % u64::from(r)) as u32
        })
        .collect();
    let scheme = Scheme::Kgh(params.clone());
    Ok(masks
        .iter()
        .cloned()
        .chain(std::iter::once(last))
        .enumerate()
        .map(|(i, payload)| Share {
            scheme: scheme.clone(),
            index: i as u32 + 1,
            payload: SharePayload::Digits(payload),
        })
        .collect())
}

/// Component-wise sum of all `n` shares modulo each radix.
pub fn kgh_reconstruct(shares: &[Share], params: &KghParams) -> Result<Vec<u32>> {
    let expected = Scheme::Kgh(params.clone());
    let mut seen = HashSet::new();
    let mut sum = vec![0u64; params.radices.len()];
    for share in shares {
        if share.scheme != expected {
            return Err(Error::MetadataMismatch(format!(
                "share {} was not dealt with these KGH parameters",
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
        let digits = match &share.payload {
            SharePayload::Digits(d) => d,
            SharePayload::Blocks(_) => {
                return Err(Error::MetadataMismatch(
                    "KGH share carries field blocks".into(),
                ))
            }
        };
        params.check_digits(digits)?;
        for ((acc, &d), &r) in sum.iter_mut().zip(digits).zip(&params.radices) {
            *acc = (*acc + u64::from(d)) % u64::from(r);
        }
    }
    if seen.len() < params.participants {
        return Err(Error::InsufficientShares {
            needed: params.participants,
            got: seen.len(),
        });
    }
    Ok(sum.into_iter().map(|d| d as u32).collect())
}
