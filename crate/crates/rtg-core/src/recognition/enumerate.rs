//! Exhaustive enumeration of sequences and of the graphs they generate.

use crate::budget::Meter;
use crate::graph::Graph;
use crate::seq::{ColorSymbol, RainbowSequence, MAX_PALETTE};
use crate::{Error, Result};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

/// `(k * 2^k)^n`, the number of sequences over `[k]` of length `n`, when
/// it fits in `u128`.
pub fn sequence_count(k: u32, n: usize) -> Option<u128> {
    if k == 0 {
        return Some(u128::from(n == 0));
    }
    let symbols = ColorSymbol::count(k)?;
    symbols.checked_pow(u32::try_from(n).ok()?)
}

/// Iterator over every sequence in `RainSeq_k(n)` exactly once, in
/// lexicographic entry-encoding order (position 0 most significant).
pub struct SequenceIter {
    k: u32,
    symbols: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for SequenceIter {
    type Item = RainbowSequence;

    fn next(&mut self) -> Option<RainbowSequence> {
        if self.done {
            return None;
        }
        let entries: Vec<ColorSymbol> = self
            .digits
            .iter()
            .map(|&d| ColorSymbol::from_index(self.k, d as u128))
            .collect();
        let out = RainbowSequence::new(self.k, entries).expect("digits within palette");
        // odometer increment, last position fastest
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.symbols {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(out)
    }
}

/// Streams all `(k * 2^k)^n` sequences. The full enumeration size is
/// charged against the meter up front; oversize requests fail without
/// yielding anything.
pub fn enumerate_sequences(k: u32, n: usize, meter: &mut Meter) -> Result<SequenceIter> {
    if k > MAX_PALETTE {
        return Err(Error::PaletteTooLarge(k));
    }
    if k == 0 && n > 0 {
        return Err(Error::EmptyPalette);
    }
    let total = sequence_count(k, n)
        .ok_or(Error::BudgetExceeded(crate::budget::Resource::Sequences))?;
    let charge = u64::try_from(total)
        .map_err(|_| Error::BudgetExceeded(crate::budget::Resource::Sequences))?;
    meter.charge_sequences(charge)?;
    Ok(SequenceIter {
        k,
        symbols: if k == 0 { 1 } else { ColorSymbol::count(k).unwrap() as u64 },
        digits: vec![0u64; n],
        done: false,
    })
}

/// Upper-triangle codes of the distinct graphs generated over `[k]`,
/// sorted ascending. Fast path for `n <= 16`; avoids materializing
/// sequences.
pub fn enumerate_graph_codes(k: u32, n: usize, meter: &mut Meter) -> Result<Vec<u128>> {
    assert!(n <= 16, "codes only exist for n <= 16");
    if k > MAX_PALETTE {
        return Err(Error::PaletteTooLarge(k));
    }
    if k == 0 && n > 0 {
        return Err(Error::EmptyPalette);
    }
    let total = sequence_count(k, n)
        .ok_or(Error::BudgetExceeded(crate::budget::Resource::Sequences))?;
    let charge = u64::try_from(total)
        .map_err(|_| Error::BudgetExceeded(crate::budget::Resource::Sequences))?;
    meter.charge_sequences(charge)?;
    if n == 0 {
        return Ok(vec![0]);
    }
    let symbols = if k == 0 { 1u64 } else { ColorSymbol::count(k).unwrap() as u64 };
    let mut colors = vec![0u32; n];
    let mut sets = vec![0u64; n];
    let mut digits = vec![0u64; n];
    let mut seen: Vec<u128> = Vec::new();
    loop {
        // code bit for (i, j), i < j, at position j*(j-1)/2 + i
        let mut code = 0u128;
        let mut bit = 0u32;
        for j in 1..n {
            for i in 0..j {
                code |= u128::from(sets[j] >> colors[i] & 1) << bit;
                bit += 1;
            }
        }
        seen.push(code);
        let mut pos = n;
        loop {
            if pos == 0 {
                seen.sort_unstable();
                seen.dedup();
                return Ok(seen);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < symbols {
                let s = ColorSymbol::from_index(k, digits[pos] as u128);
                colors[pos] = s.color;
                sets[pos] = s.set.0;
                break;
            }
            digits[pos] = 0;
            colors[pos] = 0;
            sets[pos] = 0;
        }
    }
}

/// The distinct graphs generated over `[k]` (dedup by graph equality,
/// not isomorphism), sorted.
pub fn enumerate_graphs(k: u32, n: usize, meter: &mut Meter) -> Result<Vec<Graph>> {
    if n <= 16 {
        let codes = enumerate_graph_codes(k, n, meter)?;
        return Ok(codes.into_iter().map(|c| Graph::from_upper_code(n, c)).collect());
    }
    let mut seen: BTreeSet<Graph> = BTreeSet::new();
    for seq in enumerate_sequences(k, n, meter)? {
        seen.insert(seq.to_graph());
    }
    Ok(seen.into_iter().collect())
}
