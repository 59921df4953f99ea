//! Finite simple undirected graphs on `[n]`, stored as a symmetric bit
//! matrix with zero diagonal.
//!
//! Rows are packed into `u64` words, so adjacency tests, row XORs (for
//! conflict detection) and sub-row masks are word operations. Graphs on
//! up to 16 vertices additionally admit a compact upper-triangle code
//! used by the enumeration kernels for deduplication.

use crate::seq::{validate_subset, ColorSet, ColorSymbol, RainbowSequence, MAX_PALETTE};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, bits: vec![0u64; words * n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                g.set_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Path 0 - 1 - ... - (n-1); handy in tests.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    /// Cycle on `[n]` in the natural order (requires `n >= 3` to be a
    /// proper cycle; smaller `n` degenerates to a path/edge).
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        if j >= self.n {
            return Err(Error::VertexOutOfRange { vertex: j, n: self.n });
        }
        if i != j {
            self.set_edge(i, j);
        }
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.bits[i * self.words + j / 64] |= 1u64 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1u64 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of `i` as packed words.
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.degree(i) == 0
    }

    pub fn is_dominating(&self, i: usize) -> bool {
        self.degree(i) == self.n - 1
    }

    /// Induced subgraph on `subset` (strictly increasing), vertices
    /// relabeled by rank.
    pub fn induced(&self, subset: &[usize]) -> Result<Graph> {
        validate_subset(subset, self.n)?;
        let mut g = Graph::empty(subset.len());
        for (q, &vj) in subset.iter().enumerate() {
            for (p, &vi) in subset.iter().enumerate().take(q) {
                if self.has_edge(vi, vj) {
                    g.set_edge(p, q);
                }
            }
        }
        Ok(g)
    }

    /// The universal embedding: a sequence over palette `[n]` with the
    /// identity coloring and `e(i) = {j < i : (i, j) is an edge}`, whose
    /// generated graph is exactly `self`. Limited to `n <= 64` by the
    /// mask representation.
    pub fn full_rainbow_sequence(&self) -> Result<RainbowSequence> {
        if self.n as u32 > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(self.n as u32));
        }
        if self.n == 0 {
            return RainbowSequence::new(0, vec![]);
        }
        let entries = (0..self.n)
            .map(|i| {
                let mut set = ColorSet::EMPTY;
                for j in 0..i {
                    if self.has_edge(i, j) {
                        set.insert(j as u32);
                    }
                }
                ColorSymbol::new(i as u32, set)
            })
            .collect();
        RainbowSequence::new(self.n as u32, entries)
    }

    /// Relabels vertices: vertex `perm[i]` of the result plays the role
    /// of vertex `i` here (`perm` must be a permutation of `[n]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (i, j) in self.edges() {
            g.set_edge(perm[i], perm[j]);
        }
        g
    }

    /// Upper-triangle bit code, column-major (bit for `(i, j)`, `i < j`,
    /// at position `j*(j-1)/2 + i`). Available for `n <= 16`.
    pub fn upper_code(&self) -> Option<u128> {
        if self.n > 16 {
            return None;
        }
        let mut code = 0u128;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1u128 << bit;
                }
                bit += 1;
            }
        }
        Some(code)
    }

    /// Inverse of [`Graph::upper_code`].
    pub fn from_upper_code(n: usize, code: u128) -> Graph {
        debug_assert!(n <= 16);
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> bit & 1 == 1 {
                    g.set_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (idx, (i, j)) in self.edges().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}-{j}")?;
        }
        write!(f, "])")
    }
}

impl RainbowSequence {
    /// The graph generated by this sequence under the natural order:
    /// `i < j` are joined exactly when `a(i)` lies in `e(j)`.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for j in 1..n {
            let set = self.set(j);
            for i in 0..j {
                if set.contains(self.color(i)) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }
}
