//! Core algorithms for rainbow threshold graphs.
//!
//! A *k-rainbow sequence* assigns every vertex of `[n] = {0, .., n-1}` a
//! color in `[k]` together with a subset of `[k]`. The associated graph
//! joins `i < j` exactly when the color of `i` lies in the color set of
//! `j`. For `k = 1` this construction produces precisely the threshold
//! graphs; larger palettes stratify all finite graphs.
//!
//! This crate contains the pure, allocation-only kernels:
//!
//! * [`seq`] — sequences, similarity, canonical forms, structural
//!   predicates;
//! * [`graph`] — bit-matrix graphs, induced subgraphs, the
//!   sequence-to-graph map and the universal embedding;
//! * [`equivalence`] — neighborhood partitions, the class-count upper
//!   bound and the non-membership certificate it yields;
//! * [`goodness`] — window-goodness of sequences and the exact counting
//!   bounds built on it;
//! * [`recognition`] — enumeration, ordered and order-free recognition,
//!   small-graph isomorphism and the separating witness construction.
//!
//! Everything is deterministic and side-effect free; all types are
//! immutable after construction and safe to share across threads. IO,
//! file formats and experiment drivers live in the companion `rtg` crate.

#![no_std]
#![forbid(unsafe_code)]
// index loops over bit matrices read better than iterator chains here
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod budget;
pub mod equivalence;
pub mod goodness;
pub mod graph;
pub mod recognition;
pub mod seq;
mod util;

pub use budget::{Budget, Meter};
pub use equivalence::{
    certify_not_k_rainbow, class_bound, neighborhood_partition, order_partition, Partition,
};
pub use goodness::{
    aas_bound, aas_hypotheses_ok, delta, good_graph_lower, is_ell_good_graph, is_ell_good_seq,
    non_good_fraction_upper, non_good_sequence_upper, AasBound, AasHypotheses, BoundReport,
};
pub use graph::Graph;
pub use recognition::{
    are_isomorphic, build_witness_set, canonical_form, conflict_graph, enumerate_graphs,
    enumerate_sequences, is_k_rainbow_up_to_iso, is_ordered_k_rainbow, min_ordered_rainbow_index,
    ConflictGraph, WitnessSet,
};
pub use seq::{ColorSet, ColorSymbol, RainbowSequence};
pub use util::decimal_approx;

use core::fmt;

/// Errors shared across the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Palette size 0 with a nonempty vertex set.
    EmptyPalette,
    /// Palette sizes above 64 are not representable as bit masks.
    PaletteTooLarge(u32),
    /// A color or color set refers to a color outside the palette.
    ColorOutOfPalette { color: u32, k: u32 },
    /// Two sequences were expected to share a palette size.
    PaletteMismatch(u32, u32),
    /// Two sequences were expected to share a length.
    LengthMismatch(usize, usize),
    /// A vertex index does not lie in `[n]`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// A vertex subset was not strictly increasing.
    SubsetNotSorted,
    /// Widening target below the current palette size.
    PaletteShrink { from: u32, to: u32 },
    /// The non-good fraction bound requires delta < 1.
    DeltaNotBelowOne,
    /// A search exceeded its configured budget.
    BudgetExceeded(budget::Resource),
    /// Witness-set construction failed; carries the violated condition.
    Witness(recognition::WitnessError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPalette => write!(f, "palette must be nonempty when n > 0"),
            Error::PaletteTooLarge(k) => write!(f, "palette size {k} exceeds the mask limit 64"),
            Error::ColorOutOfPalette { color, k } => {
                write!(f, "color {color} outside palette [{k}]")
            }
            Error::PaletteMismatch(a, b) => write!(f, "palette sizes differ: {a} vs {b}"),
            Error::LengthMismatch(a, b) => write!(f, "sequence lengths differ: {a} vs {b}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} outside [{n}]")
            }
            Error::SubsetNotSorted => write!(f, "vertex subset must be strictly increasing"),
            Error::PaletteShrink { from, to } => {
                write!(f, "cannot widen palette from {from} to smaller {to}")
            }
            Error::DeltaNotBelowOne => write!(f, "bound undefined: delta >= 1"),
            Error::BudgetExceeded(r) => write!(f, "search budget exceeded: {r}"),
            Error::Witness(w) => write!(f, "witness construction failed: {w}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
