//! Secret sharing for secrets that are graphs.
//!
//! A graph (its structure plus an optional vertex coloring) is turned into a
//! fixed-length mixed-radix digit string, and from there into an integer that
//! ordinary number-based schemes can share. After reconstruction the number is
//! mapped back to a graph and checked against an agreed restriction, which is
//! what turns the graph encoding into a cheap integrity check.
//!
//! Modules:
//!
//! * [`graph`]: graphs, colorings and the predicates evaluated on them.
//! * [`codec`]: graph to digit string to integer, and bit strings to graphs.
//! * [`schemes`]: Shamir threshold sharing and per-digit additive (KGH) sharing.
//! * [`protocol`]: dealer/combiner flows, verification, multi-secret dealings.
//! * [`analysis`]: exhaustive census, chromatic number and secrecy audits.
//! * [`format`]: the `GSF/1` graph file and `GSH/1` share file formats.

pub mod analysis;
pub mod codec;
mod error;
pub mod format;
pub mod graph;
pub mod protocol;
pub mod schemes;

pub use codec::{BitPayload, DigitString};
pub use error::{Error, Result};
pub use graph::{ColoredGraph, Coloring, Graph, Partition, Predicate};
pub use schemes::{FieldPrime, KghParams, RandomSource, Scheme, ShamirParams, Share, SharePayload};
