//! Search budgets for the enumeration and recognition kernels.
//!
//! Exhaustive operations charge their work against a [`Meter`] and bail
//! out with [`crate::Error::BudgetExceeded`] once a limit is hit, so
//! desk-scale misuse fails fast instead of spinning. Callers that embed
//! the crate can additionally install a stop callback (the CLI uses one
//! for wall-clock deadlines).

use crate::{Error, Result};
use core::fmt;

/// Which limit was exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resource {
    Sequences,
    Orderings,
    Cancelled,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Sequences => write!(f, "sequence evaluations"),
            Resource::Orderings => write!(f, "ordering/search nodes"),
            Resource::Cancelled => write!(f, "cancelled by caller"),
        }
    }
}

/// Limits on the two kinds of exhaustive work the crate performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of sequence evaluations (enumeration, pruned
    /// sequence searches).
    pub max_sequences: u64,
    /// Maximum number of search nodes in ordering/coloring/canonical
    /// searches.
    pub max_orderings: u64,
}

impl Budget {
    pub const fn new(max_sequences: u64, max_orderings: u64) -> Self {
        Budget { max_sequences, max_orderings }
    }

    /// Effectively no limit; still guards against runaway `u64` wrap.
    pub const fn unlimited() -> Self {
        Budget { max_sequences: u64::MAX, max_orderings: u64::MAX }
    }
}

impl Default for Budget {
    /// Desk-scale defaults: 10^8 sequence evaluations, 10^6 search nodes.
    fn default() -> Self {
        Budget { max_sequences: 100_000_000, max_orderings: 1_000_000 }
    }
}

/// Running consumption against a [`Budget`].
pub struct Meter<'a> {
    budget: Budget,
    sequences: u64,
    orderings: u64,
    stop: Option<&'a dyn Fn() -> bool>,
    stop_countdown: u32,
}

// How many charges pass between stop-callback polls.
const STOP_POLL_INTERVAL: u32 = 1024;

impl<'a> Meter<'a> {
    pub fn new(budget: Budget) -> Self {
        Meter { budget, sequences: 0, orderings: 0, stop: None, stop_countdown: STOP_POLL_INTERVAL }
    }

    /// A meter that also honors an external stop signal, polled
    /// periodically from the charge paths.
    pub fn with_stop(budget: Budget, stop: &'a dyn Fn() -> bool) -> Self {
        Meter { stop: Some(stop), ..Meter::new(budget) }
    }

    pub fn sequences_used(&self) -> u64 {
        self.sequences
    }

    pub fn orderings_used(&self) -> u64 {
        self.orderings
    }

    fn poll_stop(&mut self) -> Result<()> {
        if let Some(stop) = self.stop {
            self.stop_countdown = self.stop_countdown.saturating_sub(1);
            if self.stop_countdown == 0 {
                self.stop_countdown = STOP_POLL_INTERVAL;
                if stop() {
                    return Err(Error::BudgetExceeded(Resource::Cancelled));
                }
            }
        }
        Ok(())
    }

    pub fn charge_sequences(&mut self, amount: u64) -> Result<()> {
        self.sequences = self.sequences.saturating_add(amount);
        if self.sequences > self.budget.max_sequences {
            return Err(Error::BudgetExceeded(Resource::Sequences));
        }
        self.poll_stop()
    }

    pub fn charge_orderings(&mut self, amount: u64) -> Result<()> {
        self.orderings = self.orderings.saturating_add(amount);
        if self.orderings > self.budget.max_orderings {
            return Err(Error::BudgetExceeded(Resource::Orderings));
        }
        self.poll_stop()
    }
}
