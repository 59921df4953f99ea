//! Rainbow sequences: the generators of rainbow threshold graphs.
//!
//! A sequence over palette `[k]` assigns every position `i` in `[n]` a
//! pair `(color, color set)`. Color sets are stored as `k`-bit masks,
//! which caps palettes at 64 colors; that is far beyond the desk scales
//! the enumerative machinery supports. An entry `(a, e)` is totally
//! ordered by the integer encoding `a * 2^k + e`, which fixes the
//! lexicographic orders used for enumeration and canonical forms.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Maximum representable palette size.
pub const MAX_PALETTE: u32 = 64;

/// A subset of the palette `[k]`, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// The full palette `[k]`.
    pub fn full(k: u32) -> ColorSet {
        debug_assert!(k <= MAX_PALETTE);
        if k == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn from_colors(colors: &[u32]) -> ColorSet {
        let mut mask = 0u64;
        for &c in colors {
            debug_assert!(c < MAX_PALETTE);
            mask |= 1u64 << c;
        }
        ColorSet(mask)
    }

    pub fn contains(&self, color: u32) -> bool {
        color < MAX_PALETTE && self.0 >> color & 1 == 1
    }

    pub fn insert(&mut self, color: u32) {
        debug_assert!(color < MAX_PALETTE);
        self.0 |= 1u64 << color;
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_within(&self, k: u32) -> bool {
        k >= MAX_PALETTE || self.0 >> k == 0
    }

    /// Ascending iterator over member colors.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let mask = self.0;
        (0..MAX_PALETTE).filter(move |c| mask >> c & 1 == 1)
    }

    /// Image of this set under a color permutation given as `map[old] = new`.
    pub fn map(&self, map: &[u32]) -> ColorSet {
        let mut out = 0u64;
        for c in self.iter() {
            out |= 1u64 << map[c as usize];
        }
        ColorSet(out)
    }
}

/// One of the `k * 2^k` possible per-vertex values: a color paired with
/// a color set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSymbol {
    pub color: u32,
    pub set: ColorSet,
}

impl ColorSymbol {
    pub fn new(color: u32, set: ColorSet) -> ColorSymbol {
        ColorSymbol { color, set }
    }

    /// Position of this symbol in the entry encoding `color * 2^k + set`.
    pub fn index(&self, k: u32) -> u128 {
        (self.color as u128) << k | self.set.0 as u128
    }

    /// Inverse of [`ColorSymbol::index`].
    pub fn from_index(k: u32, index: u128) -> ColorSymbol {
        let mask = if k == 64 { u64::MAX as u128 } else { (1u128 << k) - 1 };
        ColorSymbol { color: (index >> k) as u32, set: ColorSet((index & mask) as u64) }
    }

    /// Number of distinct symbols over palette `[k]`, i.e. `k * 2^k`,
    /// when it fits in `u128`.
    pub fn count(k: u32) -> Option<u128> {
        if k > MAX_PALETTE {
            return None;
        }
        Some((k as u128) << k)
    }

    /// All symbols over `[k]` in encoding order.
    pub fn all(k: u32) -> impl Iterator<Item = ColorSymbol> {
        let total = ColorSymbol::count(k).expect("palette within mask limit") as u64;
        (0..total).map(move |i| ColorSymbol::from_index(k, i as u128))
    }
}

/// A rainbow sequence over palette `[k]`: an ordered list of
/// [`ColorSymbol`] entries, one per vertex of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RainbowSequence {
    k: u32,
    entries: Vec<ColorSymbol>,
}

impl RainbowSequence {
    /// Validates palette bounds and entry membership. An empty palette
    /// is accepted only for the empty sequence.
    pub fn new(k: u32, entries: Vec<ColorSymbol>) -> Result<RainbowSequence> {
        if k > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(k));
        }
        if k == 0 && !entries.is_empty() {
            return Err(Error::EmptyPalette);
        }
        for entry in &entries {
            if entry.color >= k {
                return Err(Error::ColorOutOfPalette { color: entry.color, k });
            }
            if !entry.set.is_within(k) {
                return Err(Error::ColorOutOfPalette {
                    color: 63 - entry.set.0.leading_zeros(),
                    k,
                });
            }
        }
        Ok(RainbowSequence { k, entries })
    }

    /// Convenience constructor from parallel color / color-set slices.
    pub fn from_parts(k: u32, colors: &[u32], sets: &[u64]) -> Result<RainbowSequence> {
        if colors.len() != sets.len() {
            return Err(Error::LengthMismatch(colors.len(), sets.len()));
        }
        let entries = colors
            .iter()
            .zip(sets)
            .map(|(&color, &mask)| ColorSymbol::new(color, ColorSet(mask)))
            .collect();
        RainbowSequence::new(k, entries)
    }

    /// The deterministic sequence that cycles through all `k * 2^k`
    /// symbols in encoding order. Every aligned window of `k * 2^k`
    /// positions carries every symbol, so the sequence is `ell`-good for
    /// any `ell` that is a positive multiple of `k * 2^k`.
    pub fn cycling(k: u32, n: usize) -> Result<RainbowSequence> {
        if n == 0 {
            return RainbowSequence::new(k, vec![]);
        }
        if k == 0 {
            return Err(Error::EmptyPalette);
        }
        if k > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(k));
        }
        let total = ColorSymbol::count(k).expect("checked");
        let entries = (0..n).map(|i| ColorSymbol::from_index(k, i as u128 % total)).collect();
        RainbowSequence::new(k, entries)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn symbol(&self, i: usize) -> ColorSymbol {
        self.entries[i]
    }

    pub fn color(&self, i: usize) -> u32 {
        self.entries[i].color
    }

    pub fn set(&self, i: usize) -> ColorSet {
        self.entries[i].set
    }

    pub fn entries(&self) -> &[ColorSymbol] {
        &self.entries
    }

    /// Entry encoding at position `i`, the value `a(i) * 2^k + e(i)`.
    pub fn encode(&self, i: usize) -> u128 {
        self.entries[i].index(self.k)
    }

    /// The subsequence at the positions of `subset` (strictly
    /// increasing), over the same palette.
    pub fn restrict(&self, subset: &[usize]) -> Result<RainbowSequence> {
        validate_subset(subset, self.n())?;
        let entries = subset.iter().map(|&i| self.entries[i]).collect();
        Ok(RainbowSequence { k: self.k, entries })
    }

    /// Same entries over a larger palette `[new_k]`. The generated graph
    /// is unchanged: the edge rule never consults unused colors.
    pub fn widen(&self, new_k: u32) -> Result<RainbowSequence> {
        if new_k < self.k {
            return Err(Error::PaletteShrink { from: self.k, to: new_k });
        }
        if new_k > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(new_k));
        }
        Ok(RainbowSequence { k: new_k, entries: self.entries.clone() })
    }

    /// True when every color of `[k]` occurs as `a(x)` for some `x` in
    /// `subset`.
    pub fn has_all_colors(&self, subset: &[usize]) -> Result<bool> {
        validate_subset(subset, self.n())?;
        let mut seen = ColorSet::EMPTY;
        for &x in subset {
            seen.insert(self.entries[x].color);
        }
        Ok(seen == ColorSet::full(self.k))
    }

    /// True when for every color `i` some member's set contains `i` and
    /// some member's set omits it.
    pub fn separates_all_colors(&self, subset: &[usize]) -> Result<bool> {
        validate_subset(subset, self.n())?;
        if self.k == 0 {
            return Ok(true);
        }
        let mut union = 0u64;
        let mut intersection = u64::MAX;
        for &x in subset {
            union |= self.entries[x].set.0;
            intersection &= self.entries[x].set.0;
        }
        if subset.is_empty() {
            return Ok(false);
        }
        Ok(union == ColorSet::full(self.k).0 && intersection == 0)
    }

    /// True when every *pair* of distinct colors is told apart by some
    /// member's set (the set contains exactly one of the two). This is
    /// the strength needed to read colors back off the graph; it is
    /// strictly stronger than [`RainbowSequence::separates_all_colors`]
    /// for `k >= 2`.
    pub fn separates_all_color_pairs(&self, subset: &[usize]) -> Result<bool> {
        validate_subset(subset, self.n())?;
        // Membership pattern of each color across `subset`; two colors
        // with equal patterns are inseparable.
        let words = subset.len().div_ceil(64).max(1);
        let mut patterns: Vec<Vec<u64>> = vec![vec![0u64; words]; self.k as usize];
        for (t, &x) in subset.iter().enumerate() {
            for c in self.entries[x].set.iter() {
                if c < self.k {
                    patterns[c as usize][t / 64] |= 1u64 << (t % 64);
                }
            }
        }
        let mut sorted = patterns.clone();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(sorted.len() == self.k as usize)
    }

    /// True when some palette permutation carries `other` onto `self`
    /// pointwise (colors and color sets). Errors when palettes or
    /// lengths differ.
    pub fn is_similar_to(&self, other: &RainbowSequence) -> Result<bool> {
        if self.k != other.k {
            return Err(Error::PaletteMismatch(self.k, other.k));
        }
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        let k = self.k as usize;
        // tau maps colors of `other` onto colors of `self`; the color
        // functions force it wherever a color occurs.
        let mut tau: Vec<Option<u32>> = vec![None; k];
        let mut hit: Vec<bool> = vec![false; k];
        for (a0, a1) in self.entries.iter().zip(&other.entries) {
            match tau[a1.color as usize] {
                None => {
                    if hit[a0.color as usize] {
                        return Ok(false); // not injective
                    }
                    tau[a1.color as usize] = Some(a0.color);
                    hit[a0.color as usize] = true;
                }
                Some(t) if t == a0.color => {}
                Some(_) => return Ok(false),
            }
        }
        // Color sets constrain tau only through per-color membership
        // patterns: e0 = tau[e1] pointwise iff pattern1[c] equals
        // pattern0[tau(c)] for every color c.
        let pattern = |seq: &RainbowSequence| -> Vec<Vec<u64>> {
            let words = seq.n().div_ceil(64).max(1);
            let mut out = vec![vec![0u64; words]; k];
            for (x, entry) in seq.entries.iter().enumerate() {
                for c in entry.set.iter() {
                    out[c as usize][x / 64] |= 1u64 << (x % 64);
                }
            }
            out
        };
        let p0 = pattern(self);
        let p1 = pattern(other);
        for c in 0..k {
            if let Some(t) = tau[c] {
                if p1[c] != p0[t as usize] {
                    return Ok(false);
                }
            }
        }
        // Unforced colors need a bijection matching patterns; since the
        // compatibility relation is pattern equality, one exists iff the
        // unmatched pattern multisets agree.
        let mut left: Vec<&Vec<u64>> =
            (0..k).filter(|&c| tau[c].is_none()).map(|c| &p1[c]).collect();
        let mut right: Vec<&Vec<u64>> =
            (0..k).filter(|&c| !hit[c]).map(|c| &p0[c]).collect();
        left.sort_unstable();
        right.sort_unstable();
        Ok(left == right)
    }

    /// Lexicographically least sequence similar to `self`, comparing the
    /// entry-encoding streams position by position. Idempotent; two
    /// sequences are similar exactly when their canonical forms are equal.
    pub fn canonicalize(&self) -> RainbowSequence {
        let k = self.k as usize;
        if k == 0 || self.n() == 0 {
            return self.clone();
        }
        // Partial relabelings `map[old] = Some(new)` that all realize the
        // minimal encoding stream over the processed prefix. New codes
        // are handed out first-come; ties (which unmapped color receives
        // which of the forced smallest codes) fork the frontier.
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
        struct State {
            map: Vec<Option<u32>>,
            used: u64,
        }
        let mut frontier = vec![State { map: vec![None; k], used: 0 }];
        let mut stream: Vec<ColorSymbol> = Vec::with_capacity(self.n());
        for entry in &self.entries {
            let mut best: Option<u128> = None;
            let mut next: Vec<State> = Vec::new();
            for state in &frontier {
                // The color code is forced: either already mapped or the
                // smallest unused code (the `a * 2^k` term dominates).
                let mut map = state.map.clone();
                let mut used = state.used;
                let new_color = match map[entry.color as usize] {
                    Some(c) => c,
                    None => {
                        let c = used.trailing_ones();
                        map[entry.color as usize] = Some(c);
                        used |= 1u64 << c;
                        c
                    }
                };
                // Mapped set members contribute fixed bits; unmapped ones
                // must take the smallest unused codes to minimize the
                // mask, in any order.
                let mut mask = 0u64;
                let mut free: Vec<u32> = Vec::new();
                for c in entry.set.iter() {
                    match map[c as usize] {
                        Some(m) => mask |= 1u64 << m,
                        None => free.push(c),
                    }
                }
                let mut codes: Vec<u32> = Vec::with_capacity(free.len());
                {
                    let mut probe = used;
                    for _ in 0..free.len() {
                        let c = probe.trailing_ones();
                        probe |= 1u64 << c;
                        mask |= 1u64 << c;
                        codes.push(c);
                    }
                }
                let value = (new_color as u128) << self.k | mask as u128;
                if best.is_none_or(|b| value < b) {
                    best = Some(value);
                    next.clear();
                }
                if best == Some(value) {
                    let used = used | mask;
                    if free.is_empty() {
                        next.push(State { map, used });
                    } else {
                        // Fork over bijections free colors -> codes.
                        let mut perm = codes.clone();
                        permutations(&mut perm, 0, &mut |assignment| {
                            let mut forked = map.clone();
                            for (&color, &code) in free.iter().zip(assignment) {
                                forked[color as usize] = Some(code);
                            }
                            next.push(State { map: forked, used });
                        });
                    }
                }
            }
            let value = best.expect("nonempty frontier");
            stream.push(ColorSymbol::from_index(self.k, value));
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        RainbowSequence { k: self.k, entries: stream }
    }
}

/// Visits every permutation of `items[at..]` in place.
fn permutations(items: &mut Vec<u32>, at: usize, visit: &mut impl FnMut(&[u32])) {
    if at + 1 >= items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permutations(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// Requires `subset` to be strictly increasing within `[n]`.
pub(crate) fn validate_subset(subset: &[usize], n: usize) -> Result<()> {
    for (pos, &v) in subset.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if pos > 0 && subset[pos - 1] >= v {
            return Err(Error::SubsetNotSorted);
        }
    }
    Ok(())
}
