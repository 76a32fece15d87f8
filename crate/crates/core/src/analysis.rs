//! Exhaustive, desk-scale analysis: how much of the digit space a restriction
//! leaves valid, chromatic numbers, and exact secrecy audits of the sharing
//! schemes over small secret spaces.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::codec::{encode_graph, gamma};
use crate::error::{Error, Result};
use crate::graph::{triangle_len, ColoredGraph, Coloring, Graph, Predicate};
use crate::schemes::{
    kgh_reconstruct, kgh_split_with_masks, shamir_reconstruct, shamir_split_with_coefficients,
    KghParams, ShamirParams, Share, SharePayload,
};

pub const MAX_CENSUS_VERTICES: usize = 6;
pub const MAX_CHROMATIC_VERTICES: usize = 10;
pub const MAX_AUDIT_STATES: u64 = 10_000_000;

/// How many graphs on `n` vertices satisfy a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub vertices: usize,
    pub predicate: Predicate,
    pub total: u64,
    pub valid: u64,
    /// `valid / total`, reduced.
    pub fraction: Ratio<u64>,
}

impl CensusResult {
    /// Fraction of uniformly random digit strings that a verifier using this
    /// predicate rejects.
    pub fn rejection_rate(&self) -> Ratio<u64> {
        Ratio::one() - self.fraction
    }
}

impl fmt::Display for CensusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.valid, self.total)
    }
}

/// Every structure on `vertices` vertices, in digit-string order.
pub fn all_graphs(vertices: usize) -> impl Iterator<Item = Graph> {
    let t = triangle_len(vertices);
    (0..1u64 << t).map(move |v| {
        let bits = (0..t).map(|pos| (v >> (t - 1 - pos)) & 1 == 1).collect();
        Graph::new(vertices, bits).expect("bit count matches vertex count")
    })
}

pub fn census(vertices: usize, predicate: &Predicate) -> Result<CensusResult> {
    if vertices == 0 {
        return Err(Error::InvalidParams(
            "census needs at least one vertex".into(),
        ));
    }
    if vertices > MAX_CENSUS_VERTICES {
        return Err(Error::TooLarge(format!(
            "census enumerates at most {MAX_CENSUS_VERTICES} vertices, got {vertices}"
        )));
    }
    let mut total = 0u64;
    let mut valid = 0u64;
    for g in all_graphs(vertices) {
        total += 1;
        if predicate.evaluate(&ColoredGraph::uncolored(g))? {
            valid += 1;
        }
    }
    Ok(CensusResult {
        vertices,
        predicate: predicate.clone(),
        total,
        valid,
        fraction: Ratio::new(valid, total),
    })
}

/// Labeled connected graphs on `n` vertices by the standard recurrence:
/// all graphs minus those whose vertex-1 component has `j < n` vertices.
pub fn connected_count_recurrence(n: usize) -> BigUint {
    let mut counts: Vec<BigUint> = vec![BigUint::zero(), BigUint::one()];
    for m in 2..=n {
        let disconnected = (1..m).fold(BigUint::zero(), |acc, j| {
            acc + &counts[j] * binomial(BigUint::from(m - 1), BigUint::from(j - 1)) * gamma(m - j)
        });
        counts.push(gamma(m) - disconnected);
    }
    counts.swap_remove(n.max(1))
}

/// A proper `k`-coloring of `g`, found by exhaustive backtracking.
pub fn find_coloring(g: &Graph, k: u32) -> Option<Vec<u32>> {
    fn assign(g: &Graph, k: u32, colors: &mut Vec<u32>) -> bool {
        let v = colors.len();
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if assign(g, k, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    let mut colors = Vec::with_capacity(g.vertex_count());
    assign(g, k, &mut colors).then_some(colors)
}

pub fn is_k_colorable(g: &Graph, k: u32) -> bool {
    find_coloring(g, k).is_some()
}

/// Smallest palette admitting a proper coloring.
pub fn chromatic_number(g: &Graph) -> Result<u32> {
    if g.vertex_count() > MAX_CHROMATIC_VERTICES {
        return Err(Error::TooLarge(format!(
            "chromatic search handles at most {MAX_CHROMATIC_VERTICES} vertices"
        )));
    }
    Ok((1..=g.vertex_count() as u32)
        .find(|&k| is_k_colorable(g, k))
        .unwrap_or(1))
}

/// A scheme whose dealer randomness the audit enumerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditScheme {
    /// Secrets are single blocks (field elements).
    Shamir(ShamirParams),
    /// Secrets are digit vectors under the parameters' radices.
    Kgh(KghParams),
}

/// The secrets a dealer might share, assumed equally likely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretSpace {
    secrets: Vec<Vec<u64>>,
    /// Size of the scheme's whole domain, which the space may only cover in part.
    domain: u64,
}

impl SecretSpace {
    pub fn new(secrets: Vec<Vec<u64>>, domain: u64) -> Result<Self> {
        if secrets.is_empty() {
            return Err(Error::InvalidParams("secret space is empty".into()));
        }
        Ok(SecretSpace { secrets, domain })
    }

    /// Every field element.
    pub fn field(params: &ShamirParams) -> Self {
        let p = params.prime().value();
        SecretSpace {
            secrets: (0..p).map(|s| vec![s]).collect(),
            domain: p,
        }
    }

    /// Every digit vector under `radices`.
    pub fn digits(radices: &[u32]) -> Self {
        let domain: u64 = radices.iter().map(|&r| u64::from(r)).product();
        SecretSpace {
            secrets: (0..domain)
                .map(|i| mixed_radix(i, radices).into_iter().map(u64::from).collect())
                .collect(),
            domain,
        }
    }

    /// Structure digit strings of the graphs on `vertices` vertices that
    /// satisfy `predicate`.
    pub fn graphs(vertices: usize, predicate: &Predicate) -> Result<Self> {
        if vertices > MAX_CENSUS_VERTICES {
            return Err(Error::TooLarge(format!("{vertices} vertices")));
        }
        let mut secrets = Vec::new();
        for g in all_graphs(vertices) {
            let cg = ColoredGraph::uncolored(g);
            if predicate.evaluate(&cg)? {
                secrets.push(
                    encode_graph(&cg)
                        .digits()
                        .into_iter()
                        .map(u64::from)
                        .collect(),
                );
            }
        }
        SecretSpace::new(secrets, 1 << triangle_len(vertices))
    }

    pub fn len(&self) -> usize {
        self.secrets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.secrets.is_empty()
    }
}

fn mixed_radix(mut i: u64, radices: &[u32]) -> Vec<u32> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = (i % u64::from(r)) as u32;
        i /= u64::from(r);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyReport {
    pub space_size: usize,
    pub domain_size: u64,
    /// Dealer random choices enumerated per secret.
    pub randomness_per_secret: u64,
    pub unauthorized_subsets: usize,
    /// Every threshold-sized subset reconstructed every secret under every
    /// random choice.
    pub correct: bool,
    /// Every unauthorized view leaves the posterior equal to the prior.
    pub perfect: bool,
    /// Largest total-variation distance between posterior and prior.
    pub max_distance: Ratio<u64>,
    /// Smallest number of secrets still possible after any unauthorized view.
    pub min_posterior_support: usize,
    /// Largest posterior probability of any secret after any view.
    pub max_posterior: Ratio<u64>,
    /// The secret space is a strict subset of the scheme's domain.
    pub reduced_entropy: bool,
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Enumerates all dealer randomness for every secret in `space` and computes
/// the exact posterior each unauthorized share subset induces.
pub fn secrecy_audit(scheme: &AuditScheme, space: &SecretSpace) -> Result<SecrecyReport> {
    let (participants, threshold, randomness) = match scheme {
        AuditScheme::Shamir(p) => {
            let width = space.secrets[0].len();
            let per = p
                .prime()
                .value()
                .checked_pow(((p.threshold() - 1) * width) as u32);
            (p.participants(), p.threshold(), per)
        }
        AuditScheme::Kgh(p) => {
            if space.secrets.iter().any(|s| s.len() != p.radices().len()) {
                return Err(Error::InvalidParams(
                    "secret length does not match the radices".into(),
                ));
            }
            let per = p.space_size().checked_pow((p.participants() - 1) as u32);
            (p.participants(), p.participants(), per)
        }
    };
    let randomness = randomness
        .filter(|r| r.saturating_mul(space.len() as u64) <= MAX_AUDIT_STATES)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "more than {MAX_AUDIT_STATES} (secret, randomness) states"
            ))
        })?;

    let unauthorized: Vec<Vec<usize>> = subsets(participants)
        .filter(|s| s.len() < threshold)
        .collect();
    let authorized: Vec<Vec<usize>> = subsets(participants)
        .filter(|s| s.len() == threshold)
        .collect();
    // views[subset] : view -> per-secret counts
    let mut views: Vec<HashMap<Vec<SharePayload>, Vec<u64>>> =
        vec![HashMap::new(); unauthorized.len()];
    let mut correct = true;

    for (si, secret) in space.secrets.iter().enumerate() {
        for r in 0..randomness {
            let shares = deal_with(scheme, secret, r)?;
            for subset in &authorized {
                let picked: Vec<Share> = subset.iter().map(|&i| shares[i].clone()).collect();
                let recovered: Vec<u64> = match scheme {
                    AuditScheme::Shamir(p) => shamir_reconstruct(&picked, p)?,
                    AuditScheme::Kgh(p) => kgh_reconstruct(&picked, p)?
                        .into_iter()
                        .map(u64::from)
                        .collect(),
                };
                correct &= &recovered == secret;
            }
            for (subset, table) in unauthorized.iter().zip(views.iter_mut()) {
                let view: Vec<SharePayload> =
                    subset.iter().map(|&i| shares[i].payload.clone()).collect();
                table.entry(view).or_insert_with(|| vec![0; space.len()])[si] += 1;
            }
        }
    }

    let m = space.len() as u64;
    let prior = Ratio::new(1, m);
    let mut perfect = true;
    let mut max_distance = Ratio::zero();
    let mut min_support = space.len();
    let mut max_posterior = if unauthorized.is_empty() {
        prior
    } else {
        Ratio::zero()
    };
    for table in &views {
        for counts in table.values() {
            let total: u64 = counts.iter().sum();
            let mut distance = Ratio::zero();
            let mut support = 0;
            for &c in counts {
                let post = Ratio::new(c, total);
                if c > 0 {
                    support += 1;
                }
                distance += if post > prior {
                    post - prior
                } else {
                    prior - post
                };
                if post > max_posterior {
                    max_posterior = post;
                }
            }
            let distance = distance / 2;
            perfect &= distance.is_zero();
            if distance > max_distance {
                max_distance = distance;
            }
            min_support = min_support.min(support);
        }
    }

    Ok(SecrecyReport {
        space_size: space.len(),
        domain_size: space.domain,
        randomness_per_secret: randomness,
        unauthorized_subsets: unauthorized.len(),
        correct,
        perfect,
        max_distance,
        min_posterior_support: min_support,
        max_posterior,
        reduced_entropy: (space.len() as u64) < space.domain,
    })
}

/// The dealing produced by random choice number `r`.
fn deal_with(scheme: &AuditScheme, secret: &[u64], r: u64) -> Result<Vec<Share>> {
    match scheme {
        AuditScheme::Shamir(p) => {
            let per_block = p.threshold() - 1;
            let radices = vec![p.prime().value() as u32; per_block * secret.len()];
            let flat = mixed_radix(r, &radices);
            let coefficients: Vec<Vec<u64>> = (0..secret.len())
                .map(|b| {
                    flat[b * per_block..(b + 1) * per_block]
                        .iter()
                        .map(|&c| u64::from(c))
                        .collect()
                })
                .collect();
            shamir_split_with_coefficients(secret, p, &coefficients)
        }
        AuditScheme::Kgh(p) => {
            let space = p.space_size();
            let masks: Vec<Vec<u32>> = (0..p.participants() - 1)
                .map(|i| mixed_radix((r / space.pow(i as u32)) % space, p.radices()))
                .collect();
            let digits: Vec<u32> = secret.iter().map(|&d| d as u32).collect();
            kgh_split_with_masks(&digits, p, &masks)
        }
    }
}

/// A proper coloring with exactly `chromatic_number(g)` colors.
pub fn minimal_coloring(g: &Graph) -> Result<Coloring> {
    let k = chromatic_number(g)?;
    let colors = find_coloring(g, k).expect("chromatic number admits a coloring");
    Coloring::new(k, colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::FieldPrime;

    #[test]
    fn census_small() {
        let c = census(4, &Predicate::Connected).unwrap();
        assert_eq!((c.valid, c.total), (38, 64));
        assert_eq!(c.to_string(), "38/64");
        assert_eq!(c.rejection_rate(), Ratio::new(13, 32));
        let c = census(3, &Predicate::Connected).unwrap();
        assert_eq!((c.valid, c.total), (4, 8));
        let c = census(2, &Predicate::Any).unwrap();
        assert_eq!(c.to_string(), "2/2");
        assert!(matches!(
            census(7, &Predicate::Any),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn recurrence_values() {
        let got: Vec<BigUint> = (1..=6).map(connected_count_recurrence).collect();
        let want: Vec<BigUint> = [1u32, 1, 4, 38, 728, 26704]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(3).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(5).unwrap()).unwrap(), 1);
        let ex1 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(chromatic_number(&ex1).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::cycle(6).unwrap()).unwrap(), 2);
        assert!(chromatic_number(&Graph::empty(11).unwrap()).is_err());
        let c = minimal_coloring(&ex1).unwrap();
        assert_eq!(c.palette(), 3);
        assert!(ColoredGraph::new(ex1, c).unwrap().is_proper());
    }

    #[test]
    fn kgh_full_space_is_perfect() {
        let params = KghParams::new(2, vec![3, 3]).unwrap();
        let report =
            secrecy_audit(&AuditScheme::Kgh(params), &SecretSpace::digits(&[3, 3])).unwrap();
        assert!(report.correct && report.perfect && !report.reduced_entropy);
        assert_eq!(report.max_distance, Ratio::zero());
        assert_eq!(report.min_posterior_support, 9);
        assert_eq!(report.max_posterior, Ratio::new(1, 9));
    }

    #[test]
    fn shamir_small_field_is_perfect() {
        let params = ShamirParams::new(2, 3, FieldPrime::new(5).unwrap()).unwrap();
        let report =
            secrecy_audit(&AuditScheme::Shamir(params), &SecretSpace::field(&params)).unwrap();
        assert!(report.correct && report.perfect);
        assert_eq!(report.unauthorized_subsets, 3);
        assert_eq!(report.randomness_per_secret, 5);
        assert_eq!(report.max_posterior, Ratio::new(1, 5));
    }

    #[test]
    fn restricted_space_reports_reduced_entropy() {
        let params = KghParams::new(2, vec![2, 2, 2]).unwrap();
        let space = SecretSpace::graphs(3, &Predicate::Connected).unwrap();
        assert_eq!(space.len(), 4);
        let report = secrecy_audit(&AuditScheme::Kgh(params), &space).unwrap();
        assert!(report.perfect && report.reduced_entropy);
        assert_eq!(report.min_posterior_support, 4);
        assert_eq!(report.max_posterior, Ratio::new(1, 4));
        assert_eq!(report.domain_size, 8);
    }

    #[test]
    fn threshold_one_leaks_everything() {
        // t = 1: every single share is authorized, no unauthorized subset exists.
        let params = ShamirParams::new(1, 2, FieldPrime::new(5).unwrap()).unwrap();
        let report =
            secrecy_audit(&AuditScheme::Shamir(params), &SecretSpace::field(&params)).unwrap();
        assert_eq!(report.unauthorized_subsets, 0);
        assert!(report.correct);
    }

    #[test]
    fn audit_size_limit() {
        let params = KghParams::new(3, vec![256; 3]).unwrap();
        let space = SecretSpace::new(vec![vec![0, 0, 0]], 1 << 24).unwrap();
        assert!(secrecy_audit(&AuditScheme::Kgh(params), &space).is_err());
    }
}
