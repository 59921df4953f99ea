//! Enumeration of rainbow threshold graphs, exact recognition (ordered
//! and up to isomorphism), small-graph canonical forms, and the witness
//! construction that separates palette sizes.
//!
//! Ordered recognition reduces to graph coloring: two vertices *conflict*
//! when some later vertex is adjacent to exactly one of them, and a graph
//! is generated by some sequence over `[k]` exactly when its conflict
//! graph is `k`-colorable (the coloring is the color function; color sets
//! are then forced on used colors and zero elsewhere). The brute-force
//! sequence-space oracles this reduction is validated against live in the
//! test suites, independent of this module.

mod conflict;
mod enumerate;
mod iso;
mod witness;

pub use conflict::{conflict_graph, ConflictGraph};
pub use enumerate::{
    enumerate_graph_codes, enumerate_graphs, enumerate_sequences, sequence_count, SequenceIter,
};
pub use iso::{are_isomorphic, canonical_form, is_k_rainbow_up_to_iso};
pub use witness::{build_witness_set, WitnessError, WitnessSet};

use crate::budget::{Budget, Meter};
use crate::graph::Graph;
use crate::seq::{ColorSet, ColorSymbol, RainbowSequence, MAX_PALETTE};
use crate::Result;
use alloc::vec::Vec;

/// A sequence over `[k]` generating `g` under the natural order, if one
/// exists. Decided via `k`-colorability of the conflict graph; the
/// returned witness sets unused-color bits to zero.
///
/// Requires `k <= 64` (the mask limit); palettes that large always
/// suffice for graphs on at most 64 vertices.
pub fn is_ordered_k_rainbow(g: &Graph, k: u32) -> Option<RainbowSequence> {
    assert!(k <= MAX_PALETTE, "palette size {k} exceeds mask limit");
    if g.n() == 0 {
        return RainbowSequence::new(k, Vec::new()).ok();
    }
    if k == 0 {
        return None;
    }
    let cg = conflict_graph(g);
    let mut meter = Meter::new(Budget::unlimited());
    let coloring = conflict::k_colorable(cg.graph(), k, &mut meter)
        .expect("unlimited budget")?;
    Some(sequence_from_coloring(g, k, &coloring))
}

/// Rebuilds the witness sequence from a proper conflict coloring:
/// `e(j)` contains color `c` exactly when some earlier vertex of color
/// `c` is adjacent to `j` (properness makes this well defined).
fn sequence_from_coloring(g: &Graph, k: u32, coloring: &[u32]) -> RainbowSequence {
    let n = g.n();
    let mut entries = Vec::with_capacity(n);
    for j in 0..n {
        let mut set = ColorSet::EMPTY;
        for i in 0..j {
            if g.has_edge(i, j) {
                set.insert(coloring[i]);
            }
        }
        entries.push(ColorSymbol::new(coloring[j], set));
    }
    RainbowSequence::new(k, entries).expect("coloring within palette")
}

/// The least `k` for which [`is_ordered_k_rainbow`] succeeds: the
/// chromatic number of the conflict graph. Never exceeds `n` (the
/// universal embedding). Charges search nodes to the meter.
pub fn min_ordered_rainbow_index(g: &Graph, meter: &mut Meter) -> Result<u32> {
    if g.n() == 0 {
        return Ok(0);
    }
    let cg = conflict_graph(g);
    conflict::chromatic_number(cg.graph(), meter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn ordered_recognition_examples() {
        // the natural-order path on 4 vertices has a conflict triangle
        let p4 = Graph::path(4);
        assert!(is_ordered_k_rainbow(&p4, 2).is_none());
        let witness = is_ordered_k_rainbow(&p4, 3).unwrap();
        assert_eq!(witness.to_graph(), p4);

        // two disjoint edges are 2-rainbow in the natural order
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let witness = is_ordered_k_rainbow(&two_edges, 2).unwrap();
        assert_eq!(witness.to_graph(), two_edges);

        // threshold graphs are exactly the conflict-edgeless case
        let mut meter = Meter::new(Budget::default());
        assert_eq!(min_ordered_rainbow_index(&Graph::empty(5), &mut meter).unwrap(), 1);
        assert_eq!(min_ordered_rainbow_index(&Graph::complete(5), &mut meter).unwrap(), 1);
        assert_eq!(min_ordered_rainbow_index(&p4, &mut meter).unwrap(), 3);
        assert_eq!(min_ordered_rainbow_index(&Graph::cycle(5), &mut meter).unwrap(), 3);
    }

    #[test]
    fn min_index_bounded_by_n_and_monotone_in_k() {
        let mut meter = Meter::new(Budget::unlimited());
        for code in 0..1u128 << 10 {
            let g = Graph::from_upper_code(5, code);
            let min = min_ordered_rainbow_index(&g, &mut meter).unwrap();
            assert!(min <= 5, "universality bound");
            assert!(is_ordered_k_rainbow(&g, min).is_some());
            if min > 1 {
                assert!(is_ordered_k_rainbow(&g, min - 1).is_none());
            }
            // membership is monotone in the palette
            for k in min..=6 {
                assert!(is_ordered_k_rainbow(&g, k).is_some());
            }
        }
    }

    #[test]
    fn every_witness_roundtrips() {
        // recognition on all graphs with n <= 4 returns only valid
        // witnesses, and agrees with raw sequence enumeration
        for n in 0..=4usize {
            let pairs = n * (n - n.min(1)) / 2;
            for code in 0u128..1 << pairs {
                let g = Graph::from_upper_code(n, code);
                for k in 1..=3u32 {
                    let mut meter = Meter::new(Budget::unlimited());
                    let member_oracle = enumerate_sequences(k, n, &mut meter)
                        .unwrap()
                        .any(|s| s.to_graph() == g);
                    match is_ordered_k_rainbow(&g, k) {
                        Some(witness) => {
                            assert!(member_oracle, "false positive at n={n} k={k} code={code}");
                            assert_eq!(witness.to_graph(), g);
                            assert_eq!(witness.k(), k);
                        }
                        None => {
                            assert!(!member_oracle, "false negative at n={n} k={k} code={code}");
                        }
                    }
                }
            }
        }
    }
}
