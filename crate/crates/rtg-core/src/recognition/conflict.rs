//! The conflict reduction for ordered recognition, plus an exact graph
//! coloring kernel (DSATUR-ordered backtracking with a greedy clique
//! lower bound).

use crate::budget::Meter;
use crate::graph::Graph;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Derived graph joining `i` and `i'` exactly when some later vertex
/// `j > max(i, i')` is adjacent to exactly one of them. Its chromatic
/// number is the least palette size generating the underlying graph in
/// the natural order; the last vertex is always isolated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    graph: Graph,
}

impl ConflictGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

pub fn conflict_graph(g: &Graph) -> ConflictGraph {
    let n = g.n();
    let mut cg = Graph::empty(n);
    for hi in 1..n {
        for lo in 0..hi {
            if rows_differ_above(g, lo, hi) {
                cg.set_edge(lo, hi);
            }
        }
    }
    ConflictGraph { graph: cg }
}

/// True when the adjacency rows of `lo` and `hi` differ at some column
/// strictly greater than `hi`.
fn rows_differ_above(g: &Graph, lo: usize, hi: usize) -> bool {
    let n = g.n();
    for j in hi + 1..n {
        if g.has_edge(lo, j) != g.has_edge(hi, j) {
            return true;
        }
    }
    false
}

/// A proper coloring of `g` with at most `k` colors, or `None`. Exact:
/// DSATUR vertex selection with backtracking; new colors are introduced
/// in first-occurrence order to kill palette symmetry. Charges one
/// search node per assignment to the meter.
pub fn k_colorable(g: &Graph, k: u32, meter: &mut Meter) -> Result<Option<Vec<u32>>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut colors: Vec<Option<u32>> = vec![None; n];
    if assign(g, k, &mut colors, 0, meter)? {
        Ok(Some(colors.into_iter().map(|c| c.expect("complete")).collect()))
    } else {
        Ok(None)
    }
}

fn assign(
    g: &Graph,
    k: u32,
    colors: &mut Vec<Option<u32>>,
    max_used: u32,
    meter: &mut Meter,
) -> Result<bool> {
    let n = g.n();
    // DSATUR: most saturated uncolored vertex, ties by degree.
    let mut pick: Option<(usize, usize, usize)> = None;
    let mut seen = ColorMarks::new(n);
    for v in 0..n {
        if colors[v].is_some() {
            continue;
        }
        seen.clear();
        for u in 0..n {
            if u != v && g.has_edge(u, v) {
                if let Some(c) = colors[u] {
                    seen.mark(c);
                }
            }
        }
        let key = (seen.count(), g.degree(v));
        if pick.is_none_or(|(s, d, _)| key > (s, d)) {
            pick = Some((key.0, key.1, v));
        }
    }
    let Some((_, _, v)) = pick else {
        return Ok(true); // everything colored
    };
    meter.charge_orderings(1)?;
    let limit = k.min(max_used + 1); // at most one brand-new color
    'colors: for c in 0..limit {
        for u in 0..n {
            if g.has_edge(u, v) && colors[u] == Some(c) {
                continue 'colors;
            }
        }
        colors[v] = Some(c);
        if assign(g, k, colors, max_used.max(c + 1), meter)? {
            return Ok(true);
        }
        colors[v] = None;
    }
    Ok(false)
}

/// Greedy clique: a lower bound for the chromatic number.
fn greedy_clique(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::from(n > 0);
    for seed in 0..n {
        let mut clique = vec![seed];
        for v in 0..n {
            if v != seed && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Marker set over color values up to `n` (chromatic numbers never
/// exceed the order).
struct ColorMarks {
    words: Vec<u64>,
}

impl ColorMarks {
    fn new(n: usize) -> ColorMarks {
        ColorMarks { words: vec![0; (n + 1).div_ceil(64)] }
    }

    fn clear(&mut self) {
        self.words.fill(0);
    }

    fn mark(&mut self, color: u32) {
        self.words[color as usize / 64] |= 1u64 << (color % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn lowest_clear(&self) -> u32 {
        for (i, w) in self.words.iter().enumerate() {
            if *w != u64::MAX {
                return i as u32 * 64 + w.trailing_ones();
            }
        }
        self.words.len() as u32 * 64
    }
}

/// Greedy coloring in degree order: an upper bound plus a starting point.
fn greedy_color_count(g: &Graph) -> u32 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| core::cmp::Reverse(g.degree(v)));
    let mut colors: Vec<Option<u32>> = vec![None; n];
    let mut used = 0u32;
    let mut taken = ColorMarks::new(n);
    for &v in &order {
        taken.clear();
        for u in 0..n {
            if g.has_edge(u, v) {
                if let Some(c) = colors[u] {
                    taken.mark(c);
                }
            }
        }
        let c = taken.lowest_clear();
        colors[v] = Some(c);
        used = used.max(c + 1);
    }
    used
}

/// Exact chromatic number by scanning `k` from the clique bound up to
/// the greedy bound.
pub fn chromatic_number(g: &Graph, meter: &mut Meter) -> Result<u32> {
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = greedy_clique(g) as u32;
    let upper = greedy_color_count(g);
    for k in lower..upper {
        if k_colorable(g, k, meter)?.is_some() {
            return Ok(k);
        }
    }
    Ok(upper)
}
