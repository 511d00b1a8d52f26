//! Code-parameter validation and operating points for the six
//! regenerating-code families the crate models.
//!
//! A deployment stores a file of `M` symbols across `n` nodes so that any
//! `k` fragments reconstruct it and any `d` live nodes can regenerate a
//! lost fragment. Each family fixes one corner of the storage/bandwidth
//! tradeoff: per-node storage `alpha`, per-helper download `beta`, a
//! newcomer-exchange share `beta_prime` for cooperative repair, and the
//! total bandwidth `gamma` needed to repair one node.
//!
//! Symbols are represented as reals throughout: the analysis works in
//! continuous bandwidth units, and divisibility constraints of concrete
//! code constructions are out of scope.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The `(n, k, d, M)` tuple defining a regenerating-code deployment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeParams {
    n: u32,
    k: u32,
    d: u32,
    file_size: f64,
}

impl CodeParams {
    /// Validates `1 <= k <= d <= n-1` and a positive finite file size.
    pub fn new(n: u32, k: u32, d: u32, file_size: f64) -> Result<Self> {
        if k < 1 || k > d || d + 1 > n {
            return Err(Error::CodeBounds { n, k, d });
        }
        if !(file_size.is_finite() && file_size > 0.0) {
            return Err(Error::FileSize(file_size));
        }
        Ok(Self { n, k, d, file_size })
    }

    /// Number of storage nodes.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Fragments needed to reconstruct the file.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Live helpers contacted to regenerate one fragment.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// File size `M` in symbols.
    pub fn file_size(&self) -> f64 {
        self.file_size
    }
}

/// Node churn: exponential departure rate per node and repair rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChurnParams {
    lambda: f64,
    mu: f64,
}

impl ChurnParams {
    /// Validates both rates positive and finite.
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0 && mu.is_finite() && mu > 0.0) {
            return Err(Error::RatePositive { lambda, mu });
        }
        Ok(Self { lambda, mu })
    }

    /// Churn expressed as the dimensionless ratio `rho = lambda/mu`,
    /// normalizing `mu = 1`.
    pub fn from_rho(rho: f64) -> Result<Self> {
        Self::new(rho, 1.0)
    }

    /// Per-node departure rate.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Repair rate.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Departure-to-repair ratio `lambda/mu`.
    pub fn rho(&self) -> f64 {
        self.lambda / self.mu
    }
}

/// Storage and bandwidth of one family at one group size, in symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Per-node storage.
    pub alpha: f64,
    /// Download from each live helper, per repaired node.
    pub beta: f64,
    /// Exchange with each fellow newcomer (cooperative families only,
    /// 0 otherwise).
    pub beta_prime: f64,
    /// Total repair bandwidth per repaired node.
    pub gamma: f64,
}

/// The six supported code families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Minimum-storage regenerating.
    Msr,
    /// Minimum-bandwidth regenerating.
    Mbr,
    /// Minimum-storage cooperative regenerating.
    Mscr,
    /// Minimum-bandwidth cooperative regenerating.
    Mbcr,
    /// Minimum-storage multi-node regenerating (leader-based).
    Msmr,
    /// Minimum-bandwidth multi-node regenerating (leader-based).
    Mbmr,
}

impl Family {
    /// Families whose newcomers exchange data among themselves.
    pub fn is_cooperative(self) -> bool {
        matches!(self, Family::Mscr | Family::Mbcr)
    }

    /// Families where one leader repairs the whole group.
    pub fn is_multi_node(self) -> bool {
        matches!(self, Family::Msmr | Family::Mbmr)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Msr => "MSR",
            Family::Mbr => "MBR",
            Family::Mscr => "MSCR",
            Family::Mbcr => "MBCR",
            Family::Msmr => "MSMR",
            Family::Mbmr => "MBMR",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "msr" => Ok(Family::Msr),
            "mbr" => Ok(Family::Mbr),
            "mscr" => Ok(Family::Mscr),
            "mbcr" => Ok(Family::Mbcr),
            "msmr" => Ok(Family::Msmr),
            "mbmr" => Ok(Family::Mbmr),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

/// Who performs repairs: every newcomer for itself, or one leader.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Each newcomer downloads from `d` helpers itself.
    Distributed,
    /// A leader reconstructs once and redistributes fragments.
    Centralized,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Distributed => "distributed",
            Strategy::Centralized => "centralized",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "distributed" => Ok(Strategy::Distributed),
            "centralized" => Ok(Strategy::Centralized),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

/// How repair duration is modeled once the threshold triggers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClockModel {
    /// One exponential clock covers the whole batch.
    Fixed,
    /// Each missing node needs its own exponential clock; the batch
    /// finishes at the slowest one.
    NodeDependent,
    /// Nodes keep departing while per-node repairs run.
    FailuresDuringRepair,
}

impl fmt::Display for ClockModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClockModel::Fixed => "fixed",
            ClockModel::NodeDependent => "node-dependent",
            ClockModel::FailuresDuringRepair => "failures-during-repair",
        })
    }
}

impl FromStr for ClockModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(ClockModel::Fixed),
            "node-dependent" => Ok(ClockModel::NodeDependent),
            "failures" | "failures-during-repair" => Ok(ClockModel::FailuresDuringRepair),
            other => Err(format!("unknown clock model '{other}'")),
        }
    }
}

/// A family/strategy/clock-model combination to evaluate.
///
/// Cooperative families repair peer-to-peer only, so they pair exclusively
/// with distributed repair; multi-node families need a leader, so they pair
/// exclusively with centralized repair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepairScheme {
    family: Family,
    strategy: Strategy,
    model: ClockModel,
}

impl RepairScheme {
    /// Validates the family/strategy pairing.
    pub fn new(family: Family, strategy: Strategy, model: ClockModel) -> Result<Self> {
        let ok = match family {
            Family::Mscr | Family::Mbcr => strategy == Strategy::Distributed,
            Family::Msmr | Family::Mbmr => strategy == Strategy::Centralized,
            Family::Msr | Family::Mbr => true,
        };
        if !ok {
            return Err(Error::SchemePairing { family, strategy });
        }
        Ok(Self { family, strategy, model })
    }

    /// Code family.
    pub fn family(&self) -> Family {
        self.family
    }

    /// Repair strategy.
    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Repair-duration model.
    pub fn model(&self) -> ClockModel {
        self.model
    }

    /// Short display label, e.g. `D-MBR` or `C-MSR`.
    pub fn label(&self) -> String {
        let s = match self.strategy {
            Strategy::Distributed => 'D',
            Strategy::Centralized => 'C',
        };
        format!("{s}-{}", self.family)
    }
}

/// Caveat attached to the minimum-bandwidth multi-node point: the point
/// exists only under an entropy condition on the stored fragments that
/// cannot be evaluated without a concrete code construction. The CLI
/// surfaces this note on stderr whenever that family is requested.
pub const MBMR_ASSUMPTION_NOTE: &str = "note: the MBMR operating point assumes an \
entropy condition on stored fragments that this crate records but cannot check";

/// Minimum-storage point: `alpha = M/k`, `gamma = M d / (k (d-k+1))`.
pub fn msr_point(p: &CodeParams) -> OperatingPoint {
    let (_, k, d, m) = unpack(p);
    let alpha = m / k;
    let gamma = m * d / (k * (d - k + 1.0));
    OperatingPoint { alpha, beta: gamma / d, beta_prime: 0.0, gamma }
}

/// Minimum-bandwidth point: `alpha = gamma = 2 M d / (2kd - k^2 + k)`.
pub fn mbr_point(p: &CodeParams) -> OperatingPoint {
    let (_, k, d, m) = unpack(p);
    let gamma = 2.0 * m * d / (2.0 * k * d - k * k + k);
    OperatingPoint { alpha: gamma, beta: gamma / d, beta_prime: 0.0, gamma }
}

/// Minimum-storage cooperative point for a group of `t` newcomers:
/// `alpha = M/k`, `beta = beta' = M / (k (d-k+t))`,
/// `gamma = M (d+t-1) / (k (d-k+t))`.
pub fn mscr_point(p: &CodeParams, t: u32) -> Result<OperatingPoint> {
    let t = validate_group(p, t)?;
    let (_, k, d, m) = unpack(p);
    let beta = m / (k * (d - k + t));
    Ok(OperatingPoint {
        alpha: m / k,
        beta,
        beta_prime: beta,
        gamma: m * (d + t - 1.0) / (k * (d - k + t)),
    })
}

/// Minimum-bandwidth cooperative point for a group of `t` newcomers:
/// `beta = 2M / (k (2d-k+t))`, `beta' = beta/2`, and
/// `alpha = gamma = (2d+t-1) M / (k (2d-k+t))`.
pub fn mbcr_point(p: &CodeParams, t: u32) -> Result<OperatingPoint> {
    let t = validate_group(p, t)?;
    let (_, k, d, m) = unpack(p);
    let denom = k * (2.0 * d - k + t);
    let alpha = (2.0 * d + t - 1.0) * m / denom;
    Ok(OperatingPoint {
        alpha,
        beta: 2.0 * m / denom,
        beta_prime: m / denom,
        gamma: alpha,
    })
}

/// Minimum-storage multi-node point for a leader repairing `t` nodes:
/// `alpha = M/k`, `gamma = M d t / (k (d-k+t))`.
///
/// `beta` is bookkeeping (`gamma / (d t)`); `gamma` is the authoritative
/// bandwidth figure for this family.
pub fn msmr_point(p: &CodeParams, t: u32) -> Result<OperatingPoint> {
    let t = validate_group(p, t)?;
    let (_, k, d, m) = unpack(p);
    let gamma = m * d * t / (k * (d - k + t));
    Ok(OperatingPoint { alpha: m / k, beta: gamma / (d * t), beta_prime: 0.0, gamma })
}

/// Minimum-bandwidth multi-node point for a leader repairing `t` nodes:
/// `alpha = 2 M d / (k (2d-k+t))`, `gamma = t * alpha`.
///
/// Existence of this point assumes an entropy condition on stored
/// fragments that cannot be checked without a concrete construction; see
/// [`MBMR_ASSUMPTION_NOTE`].
pub fn mbmr_point(p: &CodeParams, t: u32) -> Result<OperatingPoint> {
    let t = validate_group(p, t)?;
    let (_, k, d, m) = unpack(p);
    let alpha = 2.0 * m * d / (k * (2.0 * d - k + t));
    Ok(OperatingPoint { alpha, beta: alpha / d, beta_prime: 0.0, gamma: t * alpha })
}

/// Group sizes must leave `d` live helpers: `1 <= t <= n - d`.
fn validate_group(p: &CodeParams, t: u32) -> Result<f64> {
    let max = p.n() - p.d();
    if t < 1 || t > max {
        return Err(Error::GroupSize { t, max });
    }
    Ok(f64::from(t))
}

fn unpack(p: &CodeParams) -> (f64, f64, f64, f64) {
    (
        f64::from(p.n()),
        f64::from(p.k()),
        f64::from(p.d()),
        p.file_size(),
    )
}
