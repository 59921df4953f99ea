//! Construction of the cut set witnessing that a good sequence over
//! `[k+1]` generates a graph no sequence over `[k]` can match, under any
//! vertex order.
//!
//! Given an `ell`-good sequence over palette `kp = k+1`, the cut set
//! collects: one vertex per color inside the first window (so color sets
//! of later vertices can be read off the graph), one vertex per color
//! *set* inside the last window realizing every subset (so colors of
//! earlier vertices can be read off), and one vertex in every other
//! window in between, leaving a full untouched window between
//! consecutive picks. Each middle pick splits half of the symbol
//! classes while raising the `[k]`-ceiling by only `k * 2^k / 2`, so the
//! class count outruns the ceiling. The constructor verifies the final
//! inequality outright rather than trusting intermediate constants.

use crate::equivalence::{class_bound, neighborhood_partition};
use crate::goodness::{is_ell_good_seq, separation_threshold};
use crate::graph::Graph;
use crate::seq::RainbowSequence;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Why a witness set could not be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessError {
    /// The sequence palette must have at least two colors (it plays the
    /// `k+1` role).
    PaletteTooSmall,
    /// The sequence is not `ell`-good for its palette.
    NotEllGood,
    /// `floor(n/ell)` is below `(k+1) * 2^(k+1) * (k+1 + 2^(k+1))`.
    WindowRatioBelowThreshold { required: u128, actual: u128 },
    /// The first window misses some color.
    PrefixColorsUnavailable,
    /// The last window misses some color set.
    SuffixSetsUnavailable,
    /// The constructed set breaks the size ceiling.
    SizeBoundViolated { t: usize, upper: usize },
    /// The end-to-end inequality failed: the class count did not exceed
    /// the `[k]`-ceiling.
    ClassCountNotExceeded { classes: usize },
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::PaletteTooSmall => write!(f, "sequence palette must be at least 2"),
            WitnessError::NotEllGood => write!(f, "sequence is not ell-good"),
            WitnessError::WindowRatioBelowThreshold { required, actual } => {
                write!(f, "floor(n/ell) = {actual} below required {required}")
            }
            WitnessError::PrefixColorsUnavailable => {
                write!(f, "first window does not realize every color")
            }
            WitnessError::SuffixSetsUnavailable => {
                write!(f, "last window does not realize every color set")
            }
            WitnessError::SizeBoundViolated { t, upper } => {
                write!(f, "cut set size {t} exceeds ceiling {upper}")
            }
            WitnessError::ClassCountNotExceeded { classes } => {
                write!(f, "class count {classes} does not exceed the ceiling")
            }
        }
    }
}

/// A cut set certifying non-membership: the neighborhood partition of
/// its complement has more classes than any `[k]`-generated graph
/// allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    x: Vec<usize>,
}

impl WitnessSet {
    /// The cut vertices, strictly increasing.
    pub fn vertices(&self) -> &[usize] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Builds the witness cut set for `seq` (over palette `k+1`) and `ell`,
/// verifying on the way out that the generated graph's class count
/// exceeds [`class_bound`] for palette `[k]` — which certifies, via
/// [`crate::certify_not_k_rainbow`], that no graph isomorphic to it is
/// generated over `[k]`.
pub fn build_witness_set(seq: &RainbowSequence, ell: usize) -> Result<WitnessSet> {
    assert!(ell >= 1, "window length must be positive");
    let kp = seq.k();
    if kp < 2 {
        return Err(Error::Witness(WitnessError::PaletteTooSmall));
    }
    let k = kp - 1;
    let n = seq.n();
    let m = (n / ell) as u128;
    let required = separation_threshold(k)
        .ok_or(Error::Witness(WitnessError::WindowRatioBelowThreshold {
            required: u128::MAX,
            actual: m,
        }))?;
    if m < required {
        return Err(Error::Witness(WitnessError::WindowRatioBelowThreshold {
            required,
            actual: m,
        }));
    }
    if !is_ell_good_seq(seq, ell) {
        return Err(Error::Witness(WitnessError::NotEllGood));
    }
    let m = m as usize;
    let last = m - 3; // index of the last goodness window
    let window = |r: usize| (r + 1) * ell..(r + 2) * ell;

    // One vertex per color, leftmost in the first window.
    let mut prefix: Vec<usize> = Vec::with_capacity(kp as usize);
    for color in 0..kp {
        match window(0).find(|&i| seq.color(i) == color) {
            Some(i) => prefix.push(i),
            None => return Err(Error::Witness(WitnessError::PrefixColorsUnavailable)),
        }
    }
    // One vertex per color set, leftmost in the last window; realizing
    // every subset separates every pair of colors.
    let sets = 1u64 << kp;
    let mut suffix: Vec<usize> = Vec::with_capacity(sets as usize);
    for mask in 0..sets {
        match window(last).find(|&i| seq.set(i).0 == mask) {
            Some(i) => suffix.push(i),
            None => return Err(Error::Witness(WitnessError::SuffixSetsUnavailable)),
        }
    }
    // One vertex in every other window strictly between, keeping a full
    // untouched window before the next pick.
    let mut middle: Vec<usize> = Vec::new();
    let mut r = 2;
    while r + 2 <= last {
        middle.push(window(r).start);
        r += 2;
    }

    let mut x = prefix;
    x.extend(middle);
    x.extend(suffix);
    x.sort_unstable();
    x.dedup();
    let t = x.len();
    let upper = m + k as usize + (1usize << kp) - 4;
    if t > upper {
        return Err(Error::Witness(WitnessError::SizeBoundViolated { t, upper }));
    }

    let graph = seq.to_graph();
    if !exceeds_bound(&graph, &x, k)? {
        let complement: Vec<usize> =
            (0..n).filter(|v| x.binary_search(v).is_err()).collect();
        let classes = neighborhood_partition(&graph, &complement, &x)?.class_count();
        return Err(Error::Witness(WitnessError::ClassCountNotExceeded { classes }));
    }
    Ok(WitnessSet { x })
}

fn exceeds_bound(graph: &Graph, x: &[usize], k: u32) -> Result<bool> {
    let complement: Vec<usize> =
        (0..graph.n()).filter(|v| x.binary_search(v).is_err()).collect();
    let partition = neighborhood_partition(graph, &complement, x)?;
    let classes = BigRational::from_integer(BigInt::from(partition.class_count()));
    Ok(classes > class_bound(k, x.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::certify_not_k_rainbow;
    use alloc::vec;

    #[test]
    fn witness_certifies_the_cycling_sequence() {
        // palette 2, ell = 8, n = 384: cycles all 8 symbols per window
        let seq = RainbowSequence::cycling(2, 384).unwrap();
        let witness = build_witness_set(&seq, 8).unwrap();
        let x = witness.vertices();
        assert!(x.windows(2).all(|w| w[0] < w[1]));
        let g = seq.to_graph();
        assert!(certify_not_k_rainbow(&g, x, 1).unwrap());
    }

    #[test]
    fn hypothesis_violations_are_reported() {
        let seq = RainbowSequence::cycling(2, 384).unwrap();
        // not good for a window length that is not a multiple of 8
        assert_eq!(
            build_witness_set(&seq, 9).unwrap_err(),
            Error::Witness(WitnessError::WindowRatioBelowThreshold {
                required: 48,
                actual: 42
            })
        );
        // too short: the window ratio drops below the threshold
        let short = RainbowSequence::cycling(2, 100).unwrap();
        assert!(matches!(
            build_witness_set(&short, 8).unwrap_err(),
            Error::Witness(WitnessError::WindowRatioBelowThreshold { .. })
        ));
        // non-good sequence of the right shape
        let flat = RainbowSequence::from_parts(2, &vec![0; 384], &vec![0; 384]).unwrap();
        assert_eq!(
            build_witness_set(&flat, 8).unwrap_err(),
            Error::Witness(WitnessError::NotEllGood)
        );
        // palette 1 cannot play the k+1 role
        let tiny = RainbowSequence::cycling(1, 384).unwrap();
        assert_eq!(
            build_witness_set(&tiny, 2).unwrap_err(),
            Error::Witness(WitnessError::PaletteTooSmall)
        );
    }
}
