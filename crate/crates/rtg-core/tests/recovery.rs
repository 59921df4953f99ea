//! Exhaustive checks of the two recovery facts: with enough structure in
//! a cut set, color sets (looking right) and colors (looking left) of the
//! remaining vertices can be read off the generated graph.

use rtg_core::{neighborhood_partition, ColorSymbol, RainbowSequence};

fn all_sequences(k: u32, n: usize) -> impl Iterator<Item = RainbowSequence> {
    let symbols = ColorSymbol::count(k).unwrap() as u64;
    let total = symbols.pow(n as u32);
    (0..total).map(move |mut code| {
        let entries = (0..n)
            .map(|_| {
                let s = ColorSymbol::from_index(k, (code % symbols) as u128);
                code /= symbols;
                s
            })
            .collect();
        RainbowSequence::new(k, entries).unwrap()
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

/// Looking right: when the cut set carries every color and precedes
/// `i, j`, equal neighborhoods mean equal color sets.
#[test]
fn color_sets_recoverable_after_an_all_colors_prefix() {
    for (k, n) in [(1u32, 6usize), (2, 5)] {
        for seq in all_sequences(k, n) {
            let g = seq.to_graph();
            for x in subsets(n) {
                if !seq.has_all_colors(&x).unwrap() {
                    continue;
                }
                let first_free = x.last().map_or(0, |&m| m + 1);
                let rest: Vec<usize> = (first_free..n).collect();
                if rest.len() < 2 {
                    continue;
                }
                let p = neighborhood_partition(&g, &rest, &x).unwrap();
                for &i in &rest {
                    for &j in &rest {
                        if i < j {
                            assert_eq!(
                                p.same_block(i, j),
                                seq.set(i) == seq.set(j),
                                "k={k} n={n} x={x:?} i={i} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Looking left: when the cut set separates every *pair* of colors and
/// follows `i, j`, equal neighborhoods mean equal colors.
#[test]
fn colors_recoverable_before_a_pair_separating_suffix() {
    for (k, n) in [(1u32, 6usize), (2, 5)] {
        for seq in all_sequences(k, n) {
            let g = seq.to_graph();
            for x in subsets(n) {
                if !seq.separates_all_color_pairs(&x).unwrap() {
                    continue;
                }
                let first_cut = x.first().copied().unwrap_or(n);
                let before: Vec<usize> = (0..first_cut).collect();
                if before.len() < 2 {
                    continue;
                }
                let p = neighborhood_partition(&g, &before, &x).unwrap();
                for &i in &before {
                    for &j in &before {
                        if i < j {
                            assert_eq!(
                                p.same_block(i, j),
                                seq.color(i) == seq.color(j),
                                "k={k} n={n} x={x:?} i={i} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Per-color separation alone is too weak to recover colors: a suffix
/// whose sets are only the empty set and the full palette separates
/// every color yet cannot tell any two colors apart.
#[test]
fn per_color_separation_does_not_recover_colors() {
    let seq = RainbowSequence::from_parts(2, &[0, 1, 0, 0], &[0b00, 0b00, 0b00, 0b11]).unwrap();
    let x = vec![2usize, 3];
    assert!(seq.separates_all_colors(&x).unwrap());
    assert!(!seq.separates_all_color_pairs(&x).unwrap());
    let g = seq.to_graph();
    let p = neighborhood_partition(&g, &[0, 1], &x).unwrap();
    // vertices 0 and 1 land in the same block despite different colors
    assert!(p.same_block(0, 1));
    assert_ne!(seq.color(0), seq.color(1));
}

/// The one direction that needs no separation at all: equal colors give
/// equal neighborhoods within any following cut set.
#[test]
fn equal_colors_always_collapse() {
    for seq in all_sequences(2, 5) {
        let g = seq.to_graph();
        let x: Vec<usize> = vec![3, 4];
        let p = neighborhood_partition(&g, &[0, 1, 2], &x).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                if seq.color(i) == seq.color(j) && seq.set(i) == seq.set(j) {
                    assert!(p.same_block(i, j));
                }
            }
        }
    }
}
