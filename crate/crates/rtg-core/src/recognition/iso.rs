//! Small-graph canonical forms and recognition up to isomorphism.

use crate::budget::Meter;
use crate::equivalence::certify_not_k_rainbow;
use crate::graph::Graph;
use crate::seq::MAX_PALETTE;
use crate::Result;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

/// Canonical form of `g`: the lexicographically least upper-triangle bit
/// string over all vertex relabelings, packed into bytes (MSB first).
/// A complete isomorphism invariant: graphs of equal order are
/// isomorphic exactly when their forms agree. Branch-and-bound over
/// orderings; charges one search node per placement.
pub fn canonical_form(g: &Graph, meter: &mut Meter) -> Result<Vec<u8>> {
    let n = g.n();
    if n <= 1 {
        return Ok(Vec::new());
    }
    let mut best: Option<Vec<u8>> = None;
    let mut bits: Vec<u8> = Vec::with_capacity(n * (n - 1) / 2);
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    canon_dfs(g, &mut placed, &mut remaining, &mut bits, &mut best, meter)?;
    Ok(pack_bits(&best.expect("at least one ordering")))
}

fn canon_dfs(
    g: &Graph,
    placed: &mut Vec<usize>,
    remaining: &mut Vec<usize>,
    bits: &mut Vec<u8>,
    best: &mut Option<Vec<u8>>,
    meter: &mut Meter,
) -> Result<()> {
    if remaining.is_empty() {
        if best.as_ref().is_none_or(|b| bits[..] < b[..]) {
            *best = Some(bits.clone());
        }
        return Ok(());
    }
    meter.charge_orderings(1)?;
    // next column of the triangle: adjacency of the candidate to the
    // placed prefix, ascending segments first so the incumbent improves
    // as early as possible
    let mut candidates: Vec<(Vec<u8>, usize)> = remaining
        .iter()
        .map(|&v| (placed.iter().map(|&u| u8::from(g.has_edge(u, v))).collect(), v))
        .collect();
    candidates.sort_unstable();
    let base = bits.len();
    for (segment, v) in candidates {
        bits.extend_from_slice(&segment);
        let viable = match best.as_ref() {
            None => true,
            Some(b) => bits[..] <= b[..bits.len()],
        };
        if viable {
            let at = remaining.iter().position(|&u| u == v).expect("candidate");
            remaining.swap_remove(at);
            placed.push(v);
            canon_dfs(g, placed, remaining, bits, best, meter)?;
            placed.pop();
            remaining.push(v);
        }
        bits.truncate(base);
        if !viable {
            break; // segments ascend; everything later is worse
        }
    }
    Ok(())
}

fn pack_bits(bits: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        out[i / 8] |= b << (7 - i % 8);
    }
    out
}

/// Canonical-form equality, with cheap invariant rejections first.
/// Graphs of different order are never isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph, meter: &mut Meter) -> Result<bool> {
    if g.n() != h.n() {
        return Ok(false);
    }
    if g == h {
        return Ok(true);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g, meter)? == canonical_form(h, meter)?)
}

/// True when some vertex ordering turns `g` into an ordered `k`-rainbow
/// graph. Searches orderings back to front, propagating which colors
/// each unplaced vertex can still take; prunes on the class-count
/// certificate, on pattern classes exceeding the palette, and on
/// memoized dead states. Charges one node per placement.
pub fn is_k_rainbow_up_to_iso(g: &Graph, k: u32, meter: &mut Meter) -> Result<bool> {
    assert!(k <= MAX_PALETTE, "palette size {k} exceeds mask limit");
    let n = g.n();
    if n == 0 {
        return Ok(true);
    }
    if k as usize >= n {
        return Ok(true); // universal embedding
    }
    if n > 64 {
        // beyond the ordering-search scale
        return Err(crate::Error::BudgetExceeded(crate::budget::Resource::Orderings));
    }
    if k == 0 {
        return Ok(false);
    }
    // cheap positive: the natural order may already work
    if super::is_ordered_k_rainbow(g, k).is_some() {
        return Ok(true);
    }
    // cheap negative: the class-count certificate is order-free
    if n <= 12 {
        for mask in 0u64..1 << n {
            let x: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if certify_not_k_rainbow(g, &x, k)? {
                return Ok(false);
            }
        }
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut search = OrderSearch { g, k, memo: BTreeSet::new() };
    let rem = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(rem, &vec![full; n], &vec![0u64; n], 0, meter)
}

struct OrderSearch<'g> {
    g: &'g Graph,
    k: u32,
    memo: BTreeSet<Vec<u64>>,
}

const MEMO_CAP: usize = 1 << 20;

impl OrderSearch<'_> {
    /// `rem`: unplaced vertices. `feas[v]`: colors `v` can still take
    /// given every constraint from placed vertices. `patterns[v]`: bits
    /// of `v`'s adjacency to the placed suffix, one bit per placement
    /// step; vertices with different patterns can never share a color.
    fn run(
        &mut self,
        rem: u64,
        feas: &[u64],
        patterns: &[u64],
        depth: usize,
        meter: &mut Meter,
    ) -> Result<bool> {
        if rem == 0 {
            return Ok(true);
        }
        meter.charge_orderings(1)?;
        let verts: Vec<usize> = (0..self.g.n()).filter(|&v| rem >> v & 1 == 1).collect();
        // distinct adjacency patterns pairwise-conflict
        let mut classes: Vec<u64> = verts.iter().map(|&v| patterns[v]).collect();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() > self.k as usize {
            return Ok(false);
        }
        let key = self.state_key(rem, &verts, feas, patterns, &classes);
        if self.memo.contains(&key) {
            return Ok(false);
        }
        // colors still allowed for everyone are interchangeable: try one
        let pool: u64 = verts.iter().fold(u64::MAX, |acc, &v| acc & feas[v]);
        let mut tried: Vec<(u64, u64, u64, usize)> = Vec::new();
        for &v in &verts {
            let row = self.row_mask(v, rem);
            // skip twins of an already-tried candidate: same pattern and
            // feasibility, and the same neighbors outside the pair
            let is_twin = tried.iter().any(|&(p, f, r, u)| {
                p == patterns[v]
                    && f == feas[v]
                    && (r ^ row) & !(1u64 << u | 1u64 << v) == 0
            });
            tried.push((patterns[v], feas[v], row, v));
            if is_twin {
                continue;
            }
            let distinguished = feas[v] & !pool;
            let pooled = feas[v] & pool;
            let choices = distinguished | (pooled & pooled.wrapping_neg());
            let mut c = choices;
            while c != 0 {
                let color = c.trailing_zeros();
                c &= c - 1;
                if self.place(v, color, rem, feas, patterns, depth, meter)? {
                    return Ok(true);
                }
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
        Ok(false)
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &mut self,
        v: usize,
        color: u32,
        rem: u64,
        feas: &[u64],
        patterns: &[u64],
        depth: usize,
        meter: &mut Meter,
    ) -> Result<bool> {
        let new_rem = rem & !(1u64 << v);
        let mut new_feas = feas.to_vec();
        let mut new_patterns = patterns.to_vec();
        let mut u_mask = new_rem;
        while u_mask != 0 {
            let u = u_mask.trailing_zeros() as usize;
            u_mask &= u_mask - 1;
            if patterns[u] != patterns[v] {
                new_feas[u] &= !(1u64 << color);
                if new_feas[u] == 0 {
                    return Ok(false);
                }
            }
            if self.g.has_edge(u, v) {
                new_patterns[u] |= 1u64 << depth;
            }
        }
        self.run(new_rem, &new_feas, &new_patterns, depth + 1, meter)
    }

    fn row_mask(&self, v: usize, rem: u64) -> u64 {
        let mut mask = 0u64;
        let mut u_mask = rem & !(1u64 << v);
        while u_mask != 0 {
            let u = u_mask.trailing_zeros() as usize;
            u_mask &= u_mask - 1;
            if self.g.has_edge(u, v) {
                mask |= 1u64 << u;
            }
        }
        mask
    }

    /// States reached along different placement orders coincide when the
    /// remaining set, feasibility sets and the *partition* induced by
    /// the patterns coincide (absolute pattern bits do not matter).
    fn state_key(
        &self,
        rem: u64,
        verts: &[usize],
        feas: &[u64],
        patterns: &[u64],
        classes: &[u64],
    ) -> Vec<u64> {
        let mut key = Vec::with_capacity(1 + 2 * verts.len());
        key.push(rem);
        for &v in verts {
            let class = classes.binary_search(&patterns[v]).expect("member") as u64;
            key.push(feas[v]);
            key.push(class);
        }
        key
    }
}
