//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants are
//! grouped by the kind of contract they report: domain violations in the
//! math layer, configuration problems in the CLI layer, and the verification
//! failure the `verify` subcommand maps to its own exit code.

use crate::codes::{ClockModel, Family, Strategy};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An index pair was constructed with `upper < lower`.
    #[error("index pair requires upper >= lower, got upper={upper}, lower={lower}")]
    IndexOrder {
        /// Offending upper index.
        upper: u32,
        /// Offending lower index.
        lower: u32,
    },

    /// A harmonic ratio function was called outside its integer domain.
    #[error("harmonic ratio undefined for x={x}, delta={delta}")]
    RatioDomain {
        /// Base index.
        x: u32,
        /// Window width.
        delta: u32,
    },

    /// Code parameters violate `1 <= k <= d <= n-1`.
    #[error("invalid code parameters n={n}, k={k}, d={d}: need 1 <= k <= d <= n-1")]
    CodeBounds {
        /// Deployment size.
        n: u32,
        /// Reconstruction degree.
        k: u32,
        /// Repair degree.
        d: u32,
    },

    /// File size must be a positive finite number of symbols.
    #[error("file size must be positive and finite, got {0}")]
    FileSize(f64),

    /// Departure and repair rates must be positive finite numbers.
    #[error("rates must be positive and finite, got lambda={lambda}, mu={mu}")]
    RatePositive {
        /// Departure rate.
        lambda: f64,
        /// Repair rate.
        mu: f64,
    },

    /// A repair threshold lies outside the feasible window for the call.
    #[error("repair threshold tau={tau} outside feasible window [{lo}, {hi}]")]
    TauRange {
        /// Requested threshold.
        tau: u32,
        /// Smallest feasible threshold.
        lo: u32,
        /// Largest feasible threshold.
        hi: u32,
    },

    /// A cooperation group size is zero or leaves fewer than `d` helpers.
    #[error("cooperation group size t={t} outside [1, {max}]")]
    GroupSize {
        /// Requested group size.
        t: u32,
        /// Largest feasible group size (`n - d`).
        max: u32,
    },

    /// A cooperation group size does not evenly batch the departed nodes.
    #[error("cooperation group size t={t} does not divide the {missing} departed nodes")]
    GroupDivisor {
        /// Requested group size.
        t: u32,
        /// Number of departed nodes to repair (`n - tau`).
        missing: u32,
    },

    /// A code family was paired with a repair strategy it does not support.
    #[error("family {family} does not support {strategy} repair")]
    SchemePairing {
        /// Offending family.
        family: Family,
        /// Offending strategy.
        strategy: Strategy,
    },

    /// An operation received a code family outside its domain.
    #[error("family {family} not supported by {context}")]
    FamilyContext {
        /// Offending family.
        family: Family,
        /// Operation that rejected it.
        context: &'static str,
    },

    /// An operation received a clock model outside its domain.
    #[error("clock model {model} not supported by {context}")]
    ModelContext {
        /// Offending model.
        model: ClockModel,
        /// Operation that rejected it.
        context: &'static str,
    },

    /// An operation received a repair strategy outside its domain.
    #[error("strategy {strategy} not supported by {context}")]
    StrategyContext {
        /// Offending strategy.
        strategy: Strategy,
        /// Operation that rejected it.
        context: &'static str,
    },

    /// The parameter combination leaves no decision to make.
    #[error("degenerate parameter range: {0}")]
    Degenerate(&'static str),

    /// An argmin scan received no points.
    #[error("cannot minimize over an empty curve")]
    EmptyCurve,

    /// A simulation was configured with zero trials.
    #[error("simulation requires at least one trial")]
    Trials,

    /// A scenario file failed strict parsing.
    #[error("scenario line {line}: {message}")]
    Scenario {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        message: String,
    },

    /// A command was invoked with an incomplete or inconsistent scenario.
    #[error("configuration error: {0}")]
    Config(String),

    /// Every requested output row was infeasible.
    #[error("no feasible rows to emit")]
    EmptyOutput,

    /// I/O failure reading a scenario or writing a report.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// One or more verification comparisons exceeded the agreement gate.
    #[error("{failed} verification comparison(s) failed")]
    VerificationFailed {
        /// Number of failed comparisons.
        failed: usize,
    },
}
