//! Neighborhood equivalence relative to a cut set, the order relation it
//! refines, and the class-count upper bound for rainbow threshold graphs.
//!
//! For a graph on `[n]`, a set `A` of observed vertices and a cut set
//! `X`, two vertices of `A` outside `X` are equivalent when they attach
//! identically to every vertex of `X`; members of `A ∩ X` stand alone.
//! Any graph generated by a sequence over `[k]` admits at most
//! `k * 2^k * (1 + |X|/2)` classes, which turns a large class count into
//! a certificate that no isomorphic copy of the graph is generated by
//! any sequence over `[k]`.

use crate::graph::Graph;
use crate::seq::validate_subset;
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;

/// An equivalence relation on a vertex subset, stored as sorted blocks
/// (each block ascending, blocks ordered by first element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    domain: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Partition {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut domain: Vec<usize> = blocks.iter().flatten().copied().collect();
        domain.sort_unstable();
        Partition { domain, blocks }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of equivalence classes.
    pub fn class_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.blocks.iter().any(|b| b.binary_search(&i).is_ok() && b.binary_search(&j).is_ok())
    }
}

/// Partition of `a`: vertices of `a ∩ x` are singletons; vertices of
/// `a \ x` share a block exactly when their adjacency agrees on every
/// vertex of `x`. Both subsets must be strictly increasing within `[n]`.
pub fn neighborhood_partition(g: &Graph, a: &[usize], x: &[usize]) -> Result<Partition> {
    validate_subset(a, g.n())?;
    validate_subset(x, g.n())?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut by_pattern: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for &v in a {
        if x.binary_search(&v).is_ok() {
            blocks.push(vec![v]);
            continue;
        }
        let mut pattern = vec![0u64; x.len().div_ceil(64).max(1)];
        for (t, &c) in x.iter().enumerate() {
            if g.has_edge(v, c) {
                pattern[t / 64] |= 1u64 << (t % 64);
            }
        }
        by_pattern.entry(pattern).or_default().push(v);
    }
    blocks.extend(by_pattern.into_values());
    Ok(Partition::from_blocks(blocks))
}

/// Partition of `[n]` by position relative to the cut set `x`: members
/// of `x` are singletons; other vertices share a block exactly when no
/// element of `x` lies strictly between them.
pub fn order_partition(n: usize, x: &[usize]) -> Result<Partition> {
    validate_subset(x, n)?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for v in 0..n {
        if x.binary_search(&v).is_ok() {
            if !current.is_empty() {
                blocks.push(core::mem::take(&mut current));
            }
            blocks.push(vec![v]);
        } else {
            current.push(v);
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    Ok(Partition::from_blocks(blocks))
}

/// The exact class-count ceiling `k * 2^k * (1 + t/2)` for graphs
/// generated over palette `[k]` and a cut set of size `t`. Half-integral,
/// hence returned as a rational.
pub fn class_bound(k: u32, t: usize) -> BigRational {
    let symbols = BigInt::from(k) << k;
    BigRational::new(symbols * BigInt::from(2 + t), BigInt::from(2))
}

/// True when the neighborhood partition of `[n] \ x` relative to `x` has
/// strictly more classes than [`class_bound`] allows, certifying that no
/// graph isomorphic to `g` is generated by any sequence over `[k]` under
/// any vertex order (the maximal class count per cut size is an
/// isomorphism invariant).
pub fn certify_not_k_rainbow(g: &Graph, x: &[usize], k: u32) -> Result<bool> {
    validate_subset(x, g.n())?;
    let complement: Vec<usize> = (0..g.n()).filter(|v| x.binary_search(v).is_err()).collect();
    let partition = neighborhood_partition(g, &complement, x)?;
    let classes = BigRational::from_integer(BigInt::from(partition.class_count()));
    Ok(classes > class_bound(k, x.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn path_examples() {
        let g = Graph::path(3);
        // both endpoints attach to the middle vertex
        let p = neighborhood_partition(&g, &[0, 2], &[1]).unwrap();
        assert_eq!(p.blocks(), [vec![0, 2]]);
        assert_eq!(p.class_count(), 1);
        // 0 and 1 disagree about vertex 2
        let p = neighborhood_partition(&g, &[0, 1], &[2]).unwrap();
        assert_eq!(p.blocks(), [vec![0], vec![1]]);
    }

    #[test]
    fn empty_cut_set_collapses() {
        let g = Graph::path(4);
        let p = neighborhood_partition(&g, &[0, 1, 3], &[]).unwrap();
        assert_eq!(p.class_count(), 1);
        let p = neighborhood_partition(&g, &[], &[]).unwrap();
        assert_eq!(p.class_count(), 0);
    }

    #[test]
    fn cut_members_are_singletons() {
        let g = Graph::complete(4);
        let p = neighborhood_partition(&g, &[0, 1, 2, 3], &[1, 2]).unwrap();
        assert_eq!(p.blocks(), [vec![0, 3], vec![1], vec![2]]);
    }

    #[test]
    fn order_partition_examples() {
        let p = order_partition(4, &[2]).unwrap();
        assert_eq!(p.blocks(), [vec![0, 1], vec![2], vec![3]]);
        let p = order_partition(3, &[]).unwrap();
        assert_eq!(p.blocks(), [vec![0, 1, 2]]);
        let p = order_partition(3, &[0, 1, 2]).unwrap();
        assert_eq!(p.class_count(), 3);
    }

    #[test]
    fn class_bound_values() {
        assert_eq!(class_bound(1, 4).to_f64().unwrap(), 6.0);
        assert_eq!(class_bound(2, 0).to_f64().unwrap(), 8.0);
        assert_eq!(class_bound(2, 3).to_f64().unwrap(), 20.0);
        assert_eq!(class_bound(1, 3).to_f64().unwrap(), 5.0);
    }

    #[test]
    fn certificate_on_six_distinct_neighborhoods() {
        // vertices 3..8 get the six distinct {0,1,2}-neighborhoods
        // {}, {0}, {1}, {2}, {0,1}, {0,1,2}: 6 classes > bound(1,3) = 5
        let masks: [&[usize]; 6] = [&[], &[0], &[1], &[2], &[0, 1], &[0, 1, 2]];
        let mut g = Graph::empty(9);
        for (v, mask) in (3..9).zip(masks) {
            for &c in mask {
                g.set_edge(v, c);
            }
        }
        assert!(certify_not_k_rainbow(&g, &[0, 1, 2], 1).unwrap());
        assert!(!certify_not_k_rainbow(&g, &[0, 1, 2], 2).unwrap());
        assert!(!certify_not_k_rainbow(&g, &[0, 1], 1).unwrap());
    }

    #[test]
    fn same_symbol_same_order_block_implies_same_class() {
        // exhaustive at k=1, n=5 over all sequences and cut sets
        use crate::seq::RainbowSequence;
        let n = 5usize;
        for code in 0u64..1 << n {
            let sets: alloc::vec::Vec<u64> = (0..n).map(|i| code >> i & 1).collect();
            let colors = alloc::vec![0u32; n];
            let s = RainbowSequence::from_parts(1, &colors, &sets).unwrap();
            let g = s.to_graph();
            for xmask in 0u32..1 << n {
                let x: alloc::vec::Vec<usize> =
                    (0..n).filter(|&v| xmask >> v & 1 == 1).collect();
                let complement: alloc::vec::Vec<usize> =
                    (0..n).filter(|&v| xmask >> v & 1 == 0).collect();
                let np = neighborhood_partition(&g, &complement, &x).unwrap();
                let op = order_partition(n, &x).unwrap();
                for &i in &complement {
                    for &j in &complement {
                        if i < j
                            && s.symbol(i) == s.symbol(j)
                            && op.same_block(i, j)
                            && !np.same_block(i, j)
                        {
                            panic!("refinement violated at {i},{j} code={code} x={x:?}");
                        }
                    }
                }
            }
        }
    }
}
