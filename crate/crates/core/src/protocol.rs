//! Dealer and combiner flows over graph secrets.
//!
//! A dealer encodes the secret (a colored graph, its structure, its coloring
//! alone, or a bit string laid out as a graph), shares the digits with one of
//! the [`schemes`](crate::schemes), and stamps every share with a
//! [`SecretDescriptor`]. The combiner pools shares, maps the reconstructed
//! number back to a graph and accepts it only if it lands inside the agreed
//! restriction. Verification failures are verdicts, not errors.

use std::fmt;
use std::str::FromStr;

use crate::codec::{
    decode_graph, encode_graph, graph_to_number, number_to_graph, radices, vertices_for_length,
    BitPayload, DigitString,
};
use crate::error::{Error, Result};
use crate::graph::{is_proper_coloring, ColoredGraph, Coloring, Graph, Predicate};
use crate::schemes::{
    kgh_reconstruct, kgh_split, pack_radix_digits, shamir_reconstruct, shamir_split,
    unpack_radix_digits, FieldPrime, KghParams, RandomSource, Scheme, ShamirParams, Share,
    SharePayload,
};

/// What a dealing's digits mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecretKind {
    /// Uncolored graph: triangle digits only.
    Structure,
    /// The color vector alone; no structure is dealt.
    Coloring,
    ColoredGraph,
    /// A bit string padded onto a graph's triangle.
    NumberAsGraph,
}

impl SecretKind {
    pub fn name(self) -> &'static str {
        match self {
            SecretKind::Structure => "structure",
            SecretKind::Coloring => "coloring",
            SecretKind::ColoredGraph => "colored_graph",
            SecretKind::NumberAsGraph => "number_as_graph",
        }
    }
}

impl fmt::Display for SecretKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SecretKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structure" => Ok(SecretKind::Structure),
            "coloring" => Ok(SecretKind::Coloring),
            "colored_graph" => Ok(SecretKind::ColoredGraph),
            "number_as_graph" => Ok(SecretKind::NumberAsGraph),
            _ => Err(Error::InvalidParams(format!("unknown secret kind `{s}`"))),
        }
    }
}

/// Everything a combiner needs besides the payloads: the secret's shape and
/// the restriction it must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SecretDescriptor {
    pub kind: SecretKind,
    pub vertices: usize,
    pub palette: u32,
    /// Bit length of a [`SecretKind::NumberAsGraph`] payload.
    pub declared_length: Option<usize>,
    pub predicate: Predicate,
}

impl SecretDescriptor {
    pub fn new(
        kind: SecretKind,
        vertices: usize,
        palette: u32,
        declared_length: Option<usize>,
        predicate: Predicate,
    ) -> Result<Self> {
        if vertices == 0 || palette == 0 {
            return Err(Error::InvalidParams(
                "vertex count and palette must be positive".into(),
            ));
        }
        match kind {
            SecretKind::Structure | SecretKind::NumberAsGraph if palette != 1 => {
                return Err(Error::InvalidParams(format!(
                    "{kind} secrets carry no colors (k must be 1)"
                )))
            }
            SecretKind::Coloring | SecretKind::ColoredGraph if palette < 2 => {
                return Err(Error::InvalidParams(format!(
                    "{kind} secrets need a palette of at least 2 colors"
                )))
            }
            _ => {}
        }
        match (kind, declared_length) {
            (SecretKind::NumberAsGraph, Some(l)) => {
                if vertices_for_length(l) != vertices {
                    return Err(Error::InvalidParams(format!(
                        "{l} bits are laid out on {} vertices, not {vertices}",
                        vertices_for_length(l)
                    )));
                }
            }
            (SecretKind::NumberAsGraph, None) => {
                return Err(Error::InvalidParams(
                    "number_as_graph secrets need a declared length".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(Error::InvalidParams(format!(
                    "{kind} secrets have no declared length"
                )))
            }
            _ => {}
        }
        let applicable = match (&kind, &predicate) {
            (SecretKind::ColoredGraph, _) => true,
            (SecretKind::Coloring, Predicate::Any) => true,
            (SecretKind::Coloring, Predicate::ProperColoring { reference: Some(_) }) => true,
            (SecretKind::Coloring, _) => false,
            (_, p) => p.is_structural(),
        };
        if !applicable {
            return Err(Error::InvalidParams(format!(
                "predicate `{}` does not apply to {kind} secrets",
                predicate.name()
            )));
        }
        if let Predicate::ProperColoring { reference: Some(g) } = &predicate {
            if g.vertex_count() != vertices {
                return Err(Error::ParameterMismatch(format!(
                    "reference graph has {} vertices, secret has {}",
                    g.vertex_count(),
                    vertices
                )));
            }
        }
        Ok(SecretDescriptor {
            kind,
            vertices,
            palette,
            declared_length,
            predicate,
        })
    }

    /// Radix of every dealt digit position.
    pub fn radices(&self) -> Vec<u32> {
        match self.kind {
            SecretKind::Coloring => vec![self.palette; self.vertices],
            _ => radices(self.vertices, self.palette),
        }
    }
}

/// How the dealer should share the digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeSpec {
    Shamir {
        threshold: usize,
        participants: usize,
        prime: FieldPrime,
    },
    Kgh {
        participants: usize,
    },
}

impl SchemeSpec {
    pub fn shamir(threshold: usize, participants: usize) -> Self {
        SchemeSpec::Shamir {
            threshold,
            participants,
            prime: FieldPrime::PRODUCTION,
        }
    }

    pub fn kgh(participants: usize) -> Self {
        SchemeSpec::Kgh { participants }
    }
}

/// A share together with the descriptor of the secret it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphShare {
    pub share: Share,
    pub descriptor: SecretDescriptor,
}

/// The output of one dealer run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dealing {
    pub descriptor: SecretDescriptor,
    pub shares: Vec<GraphShare>,
}

impl Dealing {
    pub fn share(&self, index: u32) -> Option<&GraphShare> {
        self.shares.iter().find(|s| s.share.index == index)
    }

    /// Shares of the listed participants, in the given order.
    pub fn subset(&self, indices: &[u32]) -> Vec<GraphShare> {
        indices
            .iter()
            .filter_map(|&i| self.share(i).cloned())
            .collect()
    }
}

fn deal(
    digits: &[u32],
    descriptor: SecretDescriptor,
    spec: SchemeSpec,
    rng: &mut RandomSource,
) -> Result<Dealing> {
    let radices = descriptor.radices();
    let shares = match spec {
        SchemeSpec::Shamir {
            threshold,
            participants,
            prime,
        } => {
            let params = ShamirParams::new(threshold, participants, prime)?;
            let blocks = pack_radix_digits(digits, &radices, prime);
            shamir_split(&blocks, &params, rng)?
        }
        SchemeSpec::Kgh { participants } => {
            let params = KghParams::new(participants, radices)?;
            kgh_split(digits, &params, rng)?
        }
    };
    Ok(Dealing {
        shares: shares
            .into_iter()
            .map(|share| GraphShare {
                share,
                descriptor: descriptor.clone(),
            })
            .collect(),
        descriptor,
    })
}

fn check_secret(predicate: &Predicate, cg: &ColoredGraph) -> Result<()> {
    if predicate.evaluate(cg)? {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "the secret itself does not satisfy `{}`",
            predicate.name()
        )))
    }
}

/// Encodes `cg` and shares its digits. A palette of 1 deals the structure only.
pub fn share_colored_graph(
    cg: &ColoredGraph,
    spec: SchemeSpec,
    predicate: Predicate,
    rng: &mut RandomSource,
) -> Result<Dealing> {
    let kind = if cg.palette() > 1 {
        SecretKind::ColoredGraph
    } else {
        SecretKind::Structure
    };
    let descriptor = SecretDescriptor::new(kind, cg.vertex_count(), cg.palette(), None, predicate)?;
    check_secret(&descriptor.predicate, cg)?;
    deal(&encode_graph(cg).digits(), descriptor, spec, rng)
}

/// Shares only the diagonal (color) digits. Nothing about the structure
/// enters the shares unless the predicate names a publicly known reference
/// graph.
pub fn share_coloring(
    coloring: &Coloring,
    spec: SchemeSpec,
    predicate: Predicate,
    rng: &mut RandomSource,
) -> Result<Dealing> {
    if coloring.palette() < 2 {
        return Err(Error::InvalidParams(
            "a single-color palette leaves nothing to share".into(),
        ));
    }
    let descriptor = SecretDescriptor::new(
        SecretKind::Coloring,
        coloring.len(),
        coloring.palette(),
        None,
        predicate,
    )?;
    let view = ColoredGraph::new(Graph::empty(coloring.len())?, coloring.clone())?;
    check_secret(&descriptor.predicate, &view)?;
    deal(coloring.colors(), descriptor, spec, rng)
}

/// Lays the bits on a graph and shares that graph's structure.
pub fn share_number_as_graph(
    payload: &BitPayload,
    spec: SchemeSpec,
    predicate: Predicate,
    rng: &mut RandomSource,
) -> Result<Dealing> {
    let g = number_to_graph(payload);
    let descriptor = SecretDescriptor::new(
        SecretKind::NumberAsGraph,
        g.vertex_count(),
        1,
        Some(payload.declared_length()),
        predicate,
    )?;
    let cg = ColoredGraph::uncolored(g);
    check_secret(&descriptor.predicate, &cg)?;
    deal(&encode_graph(&cg).digits(), descriptor, spec, rng)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoveredSecret {
    /// Structure or colored-graph dealings.
    Graph(ColoredGraph),
    Coloring(Coloring),
    Number(BitPayload),
}

impl RecoveredSecret {
    pub fn colored_graph(&self) -> Option<&ColoredGraph> {
        match self {
            RecoveredSecret::Graph(cg) => Some(cg),
            _ => None,
        }
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            RecoveredSecret::Coloring(c) => Some(c),
            RecoveredSecret::Graph(cg) => Some(cg.coloring()),
            _ => None,
        }
    }

    pub fn number(&self) -> Option<&BitPayload> {
        match self {
            RecoveredSecret::Number(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

/// Why a reconstruction was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    /// Not enough shares for the scheme's threshold.
    InsufficientShares {
        needed: usize,
        got: usize,
    },
    /// Shares from different dealings, duplicates, or malformed payloads.
    InconsistentShares(String),
    /// The reconstructed number lies outside the digit space.
    OutOfSecretSpace,
    /// A number-as-graph secret has a nonzero bit past its declared length.
    PaddingViolated {
        position: usize,
    },
    PredicateFailed(Predicate),
}

impl RejectReason {
    /// Rejections caused by the share set itself rather than the content of
    /// the reconstructed value.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            RejectReason::InsufficientShares { .. } | RejectReason::InconsistentShares(_)
        )
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::InsufficientShares { needed, got } => {
                write!(f, "insufficient shares: need {needed}, got {got}")
            }
            RejectReason::InconsistentShares(msg) => write!(f, "inconsistent shares: {msg}"),
            RejectReason::OutOfSecretSpace => f.write_str("out of secret space"),
            RejectReason::PaddingViolated { position } => {
                write!(f, "padding violated at triangle position {position}")
            }
            RejectReason::PredicateFailed(p) => write!(f, "predicate `{}` failed", p.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub reconstructed: bool,
    pub predicate_passed: bool,
    pub verdict: Verdict,
    pub reason: Option<RejectReason>,
}

impl VerificationReport {
    fn accepted() -> Self {
        VerificationReport {
            reconstructed: true,
            predicate_passed: true,
            verdict: Verdict::Accepted,
            reason: None,
        }
    }

    fn rejected(reconstructed: bool, reason: RejectReason) -> Self {
        VerificationReport {
            reconstructed,
            predicate_passed: false,
            verdict: Verdict::Rejected,
            reason: Some(reason),
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            None => write!(
                f,
                "verdict: accepted (reconstructed: yes, predicate: passed)"
            ),
            Some(reason) => write!(
                f,
                "verdict: rejected (reconstructed: {}, predicate: {}) reason: {}",
                if self.reconstructed { "yes" } else { "no" },
                if self.predicate_passed {
                    "passed"
                } else {
                    "not passed"
                },
                reason
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    /// Present only when the verdict is accepted.
    pub secret: Option<RecoveredSecret>,
    pub report: VerificationReport,
}

impl Reconstruction {
    fn rejected(reconstructed: bool, reason: RejectReason) -> Self {
        Reconstruction {
            secret: None,
            report: VerificationReport::rejected(reconstructed, reason),
        }
    }
}

/// Pools the shares, maps the number back through the codec and checks the
/// agreed restriction.
pub fn reconstruct_and_verify(shares: &[GraphShare]) -> Reconstruction {
    let Some(first) = shares.first() else {
        return Reconstruction::rejected(
            false,
            RejectReason::InsufficientShares { needed: 1, got: 0 },
        );
    };
    let descriptor = &first.descriptor;
    let scheme = &first.share.scheme;
    if shares
        .iter()
        .any(|s| &s.descriptor != descriptor || &s.share.scheme != scheme)
    {
        return Reconstruction::rejected(
            false,
            RejectReason::InconsistentShares("shares come from different dealings".into()),
        );
    }
    let radices = descriptor.radices();
    let raw: Vec<Share> = shares.iter().map(|s| s.share.clone()).collect();
    let digits = match scheme {
        Scheme::Shamir(params) => shamir_reconstruct(&raw, params)
            .and_then(|blocks| unpack_radix_digits(&blocks, &radices, params.prime())),
        Scheme::Kgh(params) => {
            if params.radices() != radices.as_slice() {
                return Reconstruction::rejected(
                    false,
                    RejectReason::InconsistentShares(
                        "share radices do not match the secret descriptor".into(),
                    ),
                );
            }
            kgh_reconstruct(&raw, params)
        }
    };
    let digits = match digits {
        Ok(d) => d,
        Err(Error::OutOfRange { .. }) => {
            return Reconstruction::rejected(true, RejectReason::OutOfSecretSpace)
        }
        Err(Error::InsufficientShares { needed, got }) => {
            return Reconstruction::rejected(
                false,
                RejectReason::InsufficientShares { needed, got },
            )
        }
        Err(e) => {
            return Reconstruction::rejected(false, RejectReason::InconsistentShares(e.to_string()))
        }
    };

    let n = descriptor.vertices;
    let k = descriptor.palette;
    let (view, secret) = match descriptor.kind {
        SecretKind::Coloring => {
            let coloring = match Coloring::new(k, digits) {
                Ok(c) => c,
                Err(e) => {
                    return Reconstruction::rejected(
                        false,
                        RejectReason::InconsistentShares(e.to_string()),
                    )
                }
            };
            let view = Graph::empty(n)
                .and_then(|g| ColoredGraph::new(g, coloring.clone()))
                .expect("descriptor has positive vertex count");
            (view, RecoveredSecret::Coloring(coloring))
        }
        SecretKind::Structure | SecretKind::ColoredGraph | SecretKind::NumberAsGraph => {
            let cg = match DigitString::from_digits(n, k, &digits).and_then(|d| decode_graph(&d)) {
                Ok(cg) => cg,
                Err(e) => {
                    return Reconstruction::rejected(
                        false,
                        RejectReason::InconsistentShares(e.to_string()),
                    )
                }
            };
            if descriptor.kind == SecretKind::NumberAsGraph {
                let l = descriptor.declared_length.unwrap_or(0);
                match graph_to_number(cg.graph(), l) {
                    Ok(p) => (cg, RecoveredSecret::Number(p)),
                    Err(Error::PaddingViolated { position, .. }) => {
                        return Reconstruction::rejected(
                            true,
                            RejectReason::PaddingViolated { position },
                        )
                    }
                    Err(e) => {
                        return Reconstruction::rejected(
                            false,
                            RejectReason::InconsistentShares(e.to_string()),
                        )
                    }
                }
            } else {
                (cg.clone(), RecoveredSecret::Graph(cg))
            }
        }
    };

    match descriptor.predicate.evaluate(&view) {
        Ok(true) => Reconstruction {
            secret: Some(secret),
            report: VerificationReport::accepted(),
        },
        Ok(false) => Reconstruction::rejected(
            true,
            RejectReason::PredicateFailed(descriptor.predicate.clone()),
        ),
        Err(e) => Reconstruction::rejected(true, RejectReason::InconsistentShares(e.to_string())),
    }
}

/// A participant adding `c` to every digit of a KGH coloring share. The
/// reconstructed coloring is rotated by `c` modulo `k`.
pub fn shift_attack(share: &GraphShare, c: u32) -> Result<GraphShare> {
    if share.descriptor.kind != SecretKind::Coloring {
        return Err(Error::Unsupported(format!(
            "shift attack needs a coloring share, got {}",
            share.descriptor.kind
        )));
    }
    let digits = match (&share.share.scheme, &share.share.payload) {
        (Scheme::Kgh(_), SharePayload::Digits(d)) => d,
        _ => return Err(Error::Unsupported("shift attack needs a KGH share".into())),
    };
    let k = u64::from(share.descriptor.palette);
    let shifted = digits
        .iter()
        .map(|&d| ((u64::from(d) + u64::from(c)) % k) as u32)
        .collect();
    let mut out = share.clone();
    out.share.payload = SharePayload::Digits(shifted);
    Ok(out)
}

/// Adds an independent uniform offset to every payload position. For KGH
/// (and per block for Shamir) this sends the reconstructed value to a
/// uniformly random point, independent of the true secret.
pub fn tamper_uniform(share: &GraphShare, rng: &mut RandomSource) -> GraphShare {
    let mut out = share.clone();
    out.share.payload = match (&share.share.scheme, &share.share.payload) {
        (Scheme::Kgh(params), SharePayload::Digits(d)) => SharePayload::Digits(
            d.iter()
                .zip(params.radices())
                .map(|(&x, &r)| ((u64::from(x) + rng.below(u64::from(r))) % u64::from(r)) as u32)
                .collect(),
        ),
        (Scheme::Shamir(params), SharePayload::Blocks(b)) => {
            let f = params.prime();
            SharePayload::Blocks(b.iter().map(|&x| f.add(x, rng.below(f.value()))).collect())
        }
        (_, payload) => payload.clone(),
    };
    out
}

/// Deals the structure to group A and the coloring to group B with
/// independent randomness.
pub fn multi_secret_share(
    cg: &ColoredGraph,
    group_a: SchemeSpec,
    group_b: SchemeSpec,
    rng: &mut RandomSource,
) -> Result<(Dealing, Dealing)> {
    if cg.palette() < 2 {
        return Err(Error::InvalidParams(
            "multi-secret sharing needs a coloring with k >= 2".into(),
        ));
    }
    let mut rng_a = rng.fork();
    let mut rng_b = rng.fork();
    let structure = ColoredGraph::uncolored(cg.graph().clone());
    let a = share_colored_graph(&structure, group_a, Predicate::Any, &mut rng_a)?;
    let b = share_coloring(cg.coloring(), group_b, Predicate::Any, &mut rng_b)?;
    Ok((a, b))
}

/// Joins a structure recovered by one group with a coloring recovered by the
/// other and reports whether the coloring is proper.
pub fn multi_secret_combine(
    structure: &Graph,
    coloring: &Coloring,
) -> Result<(ColoredGraph, bool)> {
    let cg = ColoredGraph::new(structure.clone(), coloring.clone())?;
    let proper = is_proper_coloring(&cg);
    Ok((cg, proper))
}

/// Several secrets over one participant set, level `i` recoverable by any
/// `thresholds[i]` participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledDealing {
    pub thresholds: Vec<usize>,
    pub levels: Vec<Dealing>,
}

impl LeveledDealing {
    /// The composite share of one participant: one component per level.
    pub fn bundle(&self, index: u32) -> Vec<GraphShare> {
        self.levels
            .iter()
            .filter_map(|d| d.share(index).cloned())
            .collect()
    }

    /// What the listed participants can recover, level by level.
    pub fn recover(&self, indices: &[u32]) -> Vec<Option<ColoredGraph>> {
        self.levels
            .iter()
            .map(|d| {
                reconstruct_and_verify(&d.subset(indices))
                    .secret
                    .and_then(|s| s.colored_graph().cloned())
            })
            .collect()
    }
}

/// Shamir-shares `payloads[i]` with threshold `thresholds[i]`; thresholds must
/// be strictly increasing.
pub fn leveled_share(
    payloads: &[DigitString],
    thresholds: &[usize],
    participants: usize,
    rng: &mut RandomSource,
) -> Result<LeveledDealing> {
    if payloads.len() != thresholds.len() || payloads.is_empty() {
        return Err(Error::InvalidParams(format!(
            "{} payloads for {} thresholds",
            payloads.len(),
            thresholds.len()
        )));
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(format!(
            "thresholds {thresholds:?} are not strictly increasing"
        )));
    }
    if *thresholds.last().unwrap() > participants {
        return Err(Error::InvalidParams(format!(
            "top threshold exceeds {participants} participants"
        )));
    }
    let levels = payloads
        .iter()
        .zip(thresholds)
        .map(|(d, &t)| {
            let cg = decode_graph(d)?;
            share_colored_graph(
                &cg,
                SchemeSpec::shamir(t, participants),
                Predicate::Any,
                rng,
            )
        })
        .collect::<Result<_>>()?;
    Ok(LeveledDealing {
        thresholds: thresholds.to_vec(),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::partition_of;

    fn example1() -> ColoredGraph {
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        ColoredGraph::new(g, Coloring::new(3, vec![0, 0, 2, 1]).unwrap()).unwrap()
    }

    fn rng() -> RandomSource {
        RandomSource::from_u64(0x5eed)
    }

    #[test]
    fn example1_kgh_roundtrip() {
        let d = share_colored_graph(&example1(), SchemeSpec::kgh(3), Predicate::Any, &mut rng())
            .unwrap();
        assert_eq!(d.shares.len(), 3);
        let r = reconstruct_and_verify(&d.shares);
        assert!(r.report.is_accepted());
        let cg = r.secret.unwrap().colored_graph().cloned().unwrap();
        assert_eq!(encode_graph(&cg).to_string(), "0111010021");
    }

    #[test]
    fn single_shamir_share_is_the_secret_block() {
        let cg = ColoredGraph::uncolored(Graph::empty(2).unwrap());
        let d =
            share_colored_graph(&cg, SchemeSpec::shamir(1, 1), Predicate::Any, &mut rng()).unwrap();
        assert_eq!(d.shares.len(), 1);
        assert_eq!(d.shares[0].share.payload, SharePayload::Blocks(vec![0]));
        assert_eq!(d.descriptor.kind, SecretKind::Structure);
    }

    #[test]
    fn shamir_pairs_agree() {
        let d = share_colored_graph(
            &example1(),
            SchemeSpec::shamir(2, 3),
            Predicate::proper_coloring(),
            &mut rng(),
        )
        .unwrap();
        for pair in [[1, 2], [1, 3], [2, 3]] {
            let r = reconstruct_and_verify(&d.subset(&pair));
            assert_eq!(r.secret, Some(RecoveredSecret::Graph(example1())));
        }
        let r = reconstruct_and_verify(&d.subset(&[3]));
        assert_eq!(
            r.report.reason,
            Some(RejectReason::InsufficientShares { needed: 2, got: 1 })
        );
        assert!(r.report.reason.unwrap().is_input_error());
    }

    #[test]
    fn dealer_refuses_secret_violating_predicate() {
        let cg = ColoredGraph::uncolored(Graph::empty(3).unwrap());
        assert!(
            share_colored_graph(&cg, SchemeSpec::kgh(2), Predicate::Connected, &mut rng()).is_err()
        );
    }

    #[test]
    fn predicate_must_fit_kind() {
        let c = Coloring::new(3, vec![0, 1, 2]).unwrap();
        assert!(share_coloring(&c, SchemeSpec::kgh(2), Predicate::Connected, &mut rng()).is_err());
        let cg = ColoredGraph::uncolored(Graph::path(3).unwrap());
        assert!(share_colored_graph(
            &cg,
            SchemeSpec::kgh(2),
            Predicate::proper_coloring(),
            &mut rng()
        )
        .is_err());
    }

    #[test]
    fn shamir_out_of_space_is_rejected() {
        // 3-vertex structure: 8 secrets inside a 60-bit block.
        let cg = ColoredGraph::uncolored(Graph::path(3).unwrap());
        let d =
            share_colored_graph(&cg, SchemeSpec::shamir(2, 3), Predicate::Any, &mut rng()).unwrap();
        let mut shares = d.subset(&[1, 2]);
        if let SharePayload::Blocks(b) = &mut shares[0].share.payload {
            b[0] = (b[0] + 1_000_003) % FieldPrime::PRODUCTION.value();
        }
        let r = reconstruct_and_verify(&shares);
        assert_eq!(r.report.reason, Some(RejectReason::OutOfSecretSpace));
        assert!(r.report.reconstructed);
        assert_eq!(r.report.reason.unwrap().to_string(), "out of secret space");
    }

    #[test]
    fn mixed_dealings_are_inconsistent() {
        let a = share_colored_graph(&example1(), SchemeSpec::kgh(2), Predicate::Any, &mut rng())
            .unwrap();
        let b = share_colored_graph(
            &ColoredGraph::uncolored(Graph::path(4).unwrap()),
            SchemeSpec::kgh(2),
            Predicate::Any,
            &mut rng(),
        )
        .unwrap();
        let r = reconstruct_and_verify(&[a.shares[0].clone(), b.shares[1].clone()]);
        assert!(matches!(
            r.report.reason,
            Some(RejectReason::InconsistentShares(_))
        ));
        assert!(!reconstruct_and_verify(&[]).report.is_accepted());
    }

    #[test]
    fn coloring_dealing() {
        let c = Coloring::new(3, vec![0, 0, 2, 1]).unwrap();
        let d = share_coloring(&c, SchemeSpec::kgh(2), Predicate::Any, &mut rng()).unwrap();
        for s in &d.shares {
            assert_eq!(s.share.payload.len(), 4);
        }
        let r = reconstruct_and_verify(&d.shares);
        assert_eq!(r.secret, Some(RecoveredSecret::Coloring(c)));

        let flat = Coloring::new(1, vec![0, 0]).unwrap();
        assert!(share_coloring(&flat, SchemeSpec::kgh(2), Predicate::Any, &mut rng()).is_err());

        let single = Coloring::new(4, vec![3]).unwrap();
        let d = share_coloring(
            &single,
            SchemeSpec::shamir(2, 2),
            Predicate::Any,
            &mut rng(),
        )
        .unwrap();
        assert_eq!(
            reconstruct_and_verify(&d.shares).secret,
            Some(RecoveredSecret::Coloring(single))
        );
    }

    #[test]
    fn shift_attack_rotates_colors() {
        let c = Coloring::new(3, vec![0, 0, 2, 1]).unwrap();
        let d = share_coloring(&c, SchemeSpec::kgh(2), Predicate::Any, &mut rng()).unwrap();

        let same = shift_attack(&d.shares[0], 0).unwrap();
        assert_eq!(same, d.shares[0]);

        let attacked = vec![shift_attack(&d.shares[0], 1).unwrap(), d.shares[1].clone()];
        let r = reconstruct_and_verify(&attacked);
        let got = r.secret.unwrap().coloring().cloned().unwrap();
        assert_eq!(got.colors(), &[1, 1, 0, 2]);
        assert_eq!(partition_of(&got), partition_of(&c));
        let structure = example1().graph().clone();
        assert!(multi_secret_combine(&structure, &got).unwrap().1);
    }

    #[test]
    fn shift_attack_rejects_other_shares() {
        let d = share_colored_graph(&example1(), SchemeSpec::kgh(2), Predicate::Any, &mut rng())
            .unwrap();
        assert!(shift_attack(&d.shares[0], 1).is_err());
        let c = Coloring::new(3, vec![0, 1]).unwrap();
        let d = share_coloring(&c, SchemeSpec::shamir(2, 2), Predicate::Any, &mut rng()).unwrap();
        assert!(shift_attack(&d.shares[0], 1).is_err());
    }

    #[test]
    fn reference_predicate_on_coloring_dealing() {
        let structure = example1().graph().clone();
        let p = Predicate::ProperColoring {
            reference: Some(structure),
        };
        let good = Coloring::new(3, vec![0, 0, 2, 1]).unwrap();
        let d = share_coloring(&good, SchemeSpec::kgh(2), p.clone(), &mut rng()).unwrap();
        assert!(reconstruct_and_verify(&d.shares).report.is_accepted());
        let bad = Coloring::new(3, vec![0, 0, 0, 1]).unwrap();
        assert!(share_coloring(&bad, SchemeSpec::kgh(2), p, &mut rng()).is_err());
    }

    #[test]
    fn multi_secret_groups() {
        let (a, b) = multi_secret_share(
            &example1(),
            SchemeSpec::kgh(2),
            SchemeSpec::kgh(2),
            &mut rng(),
        )
        .unwrap();
        for s in &a.shares {
            assert_eq!(s.share.payload.len(), 6);
            assert_eq!(s.descriptor.palette, 1);
        }
        let structure = reconstruct_and_verify(&a.shares).secret.unwrap();
        let structure = structure.colored_graph().unwrap().graph().clone();
        let coloring = reconstruct_and_verify(&b.shares).secret.unwrap();
        let coloring = coloring.coloring().unwrap().clone();
        assert_eq!(coloring.colors(), &[0, 0, 2, 1]);
        let (cg, proper) = multi_secret_combine(&structure, &coloring).unwrap();
        assert_eq!(cg, example1());
        assert!(proper);

        let short = Coloring::new(3, vec![0, 1, 2]).unwrap();
        assert!(multi_secret_combine(&structure, &short).is_err());
    }

    #[test]
    fn combine_properness() {
        let tri = Graph::complete(3).unwrap();
        let zeros = Coloring::new(2, vec![0, 0, 0]).unwrap();
        assert!(!multi_secret_combine(&tri, &zeros).unwrap().1);
        let empty = Graph::empty(3).unwrap();
        assert!(multi_secret_combine(&empty, &zeros).unwrap().1);
    }

    #[test]
    fn leveled_two_levels() {
        let l1 = encode_graph(&ColoredGraph::uncolored(Graph::path(3).unwrap()));
        let l2 = encode_graph(&example1());
        let d = leveled_share(&[l1, l2], &[1, 2], 3, &mut rng()).unwrap();
        assert_eq!(d.bundle(2).len(), 2);
        for i in 1..=3 {
            let got = d.recover(&[i]);
            assert!(got[0].is_some() && got[1].is_none());
        }
        let got = d.recover(&[1, 3]);
        assert_eq!(got[1], Some(example1()));
        assert_eq!(d.recover(&[]), vec![None, None]);
    }

    #[test]
    fn leveled_rejects_bad_thresholds() {
        let l = DigitString::zero(2, 1).unwrap();
        let ls = [l.clone(), l.clone()];
        assert!(leveled_share(&ls, &[2, 2], 3, &mut rng()).is_err());
        assert!(leveled_share(&ls, &[2, 1], 3, &mut rng()).is_err());
        assert!(leveled_share(&ls, &[1, 4], 3, &mut rng()).is_err());
        assert!(leveled_share(&ls[..1], &[1, 2], 3, &mut rng()).is_err());
    }

    #[test]
    fn number_as_graph_roundtrip() {
        let p = BitPayload::new(crate::graph::parse_bit_string("0111").unwrap());
        let d = share_number_as_graph(&p, SchemeSpec::kgh(3), Predicate::Any, &mut rng()).unwrap();
        assert_eq!(d.descriptor.vertices, 4);
        let r = reconstruct_and_verify(&d.shares);
        assert_eq!(r.secret, Some(RecoveredSecret::Number(p)));

        // Flip the last triangle position (padding) in one share.
        let mut tampered = d.shares.clone();
        if let SharePayload::Digits(digits) = &mut tampered[0].share.payload {
            digits[5] ^= 1;
        }
        let r = reconstruct_and_verify(&tampered);
        assert_eq!(
            r.report.reason,
            Some(RejectReason::PaddingViolated { position: 5 })
        );
    }

    #[test]
    fn empty_number_payload() {
        let p = BitPayload::new(Vec::new());
        for spec in [SchemeSpec::kgh(2), SchemeSpec::shamir(2, 3)] {
            let d = share_number_as_graph(&p, spec, Predicate::Any, &mut rng()).unwrap();
            assert_eq!(d.descriptor.vertices, 1);
            let r = reconstruct_and_verify(&d.shares);
            assert_eq!(r.secret, Some(RecoveredSecret::Number(p.clone())));
        }
    }

    #[test]
    fn descriptor_validation() {
        use SecretKind::*;
        assert!(SecretDescriptor::new(Structure, 3, 2, None, Predicate::Any).is_err());
        assert!(SecretDescriptor::new(ColoredGraph, 3, 1, None, Predicate::Any).is_err());
        assert!(SecretDescriptor::new(NumberAsGraph, 3, 1, None, Predicate::Any).is_err());
        assert!(SecretDescriptor::new(NumberAsGraph, 3, 1, Some(4), Predicate::Any).is_err());
        assert!(SecretDescriptor::new(NumberAsGraph, 4, 1, Some(4), Predicate::Any).is_ok());
        assert!(SecretDescriptor::new(Coloring, 3, 3, Some(1), Predicate::Any).is_err());
        assert_eq!("colored_graph".parse::<SecretKind>().unwrap(), ColoredGraph);
    }
}
