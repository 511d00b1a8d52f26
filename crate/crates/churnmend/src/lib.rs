//! Maintenance-cost analysis for erasure-coded storage systems that
//! repair lost fragments lazily, once the number of live nodes falls to
//! a threshold.
//!
//! A file is spread over `n` nodes with a regenerating code `(n, k, d)`:
//! any `k` fragments reconstruct the file, and a newcomer can regenerate
//! one fragment from `d` helpers. Nodes depart at rate `lambda` each and
//! repairs complete at rate `mu`; the policy question is where to set
//! the repair threshold `tau` between `k` (maximally lazy) and `n - 1`
//! (eager).
//!
//! The crate answers it along several axes:
//!
//! - [`codes`]: storage/bandwidth operating points for plain,
//!   cooperative, and leader-based multi-node regenerating codes.
//! - [`analytic`]: per-cycle repair cost, expected cycle time, and the
//!   average cost rate for each scheme and repair-clock model.
//! - [`thresholds`]: closed-form optimal thresholds, the churn regimes
//!   where lazy or eager repair provably wins, and scheme dominance.
//! - [`reliability`]: closed-form mean time to data loss.
//! - [`chain`]: an exact solver for the repair phase when departures
//!   keep interrupting running repairs.
//! - [`montecarlo`]: seeded, thread-count-invariant simulation that
//!   cross-checks every closed form above.
//! - [`cli`]: scenario files in, deterministic CSV sweeps out.
//!
//! Start with [`CodeParams`] and [`ChurnParams`], pick an operating
//! point such as [`codes::msr_point`], and evaluate rates with
//! [`analytic::rate_distributed`] or the other `rate_*` functions. The
//! `examples/` directory walks through each capability.

#![deny(missing_docs)]

pub mod analytic;
pub mod chain;
pub mod cli;
pub mod codes;
pub mod error;
pub mod harmonic;
pub mod montecarlo;
pub mod reliability;
pub mod thresholds;

pub use codes::{ChurnParams, ClockModel, CodeParams, Family, OperatingPoint, RepairScheme, Strategy};
pub use error::{Error, Result};
