//! Strict parser for scenario files.
//!
//! A scenario is flat `key = value` text grouped into sections:
//!
//! ```text
//! [code]
//! n = 30          # total nodes
//! k = 20
//! d = 25
//! file_size = 1.0
//!
//! [churn]
//! rho = 1e-4, 1e-3   # or: lambda = 0.1, 0.2 with mu = 10
//!
//! [schemes]
//! families = msr, mbr
//! strategies = distributed, centralized
//! models = fixed
//! tau = 20..29       # inclusive range, or a comma list
//!
//! [sim]
//! trials = 100000
//! seed = 7
//!
//! [output]
//! path = out.csv
//! ```
//!
//! `#` starts a comment. Unknown sections, unknown keys, duplicate keys,
//! and malformed values are rejected with the offending line number;
//! silent misconfiguration is worse than a strict parser.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::codes::{ChurnParams, ClockModel, CodeParams, Family, Strategy};
use crate::error::{Error, Result};

/// Group-size policy for cooperative families in threshold sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cooperation {
    /// One row per threshold, repairing the whole deficit at once.
    #[default]
    Full,
    /// One row per divisor of the deficit, smallest group first.
    AllDivisors,
}

impl FromStr for Cooperation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Cooperation::Full),
            "all-divisors" => Ok(Cooperation::AllDivisors),
            other => Err(format!("unknown cooperation '{other}' (full or all-divisors)")),
        }
    }
}

/// A parsed scenario: the code, a churn grid, the schemes to evaluate,
/// and optional simulation and output settings.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// Erasure-code parameters.
    pub code: CodeParams,
    /// Churn points in file order, one per `lambda` (or `rho`) entry.
    pub churn: Vec<ChurnParams>,
    /// Code families in file order.
    pub families: Vec<Family>,
    /// Repair strategies in file order; defaults to distributed.
    pub strategies: Vec<Strategy>,
    /// Repair-clock models in file order; defaults to the fixed clock.
    pub models: Vec<ClockModel>,
    /// Cooperative group-size policy; defaults to full cooperation.
    pub cooperation: Cooperation,
    /// Repair thresholds in file order; ranges expand ascending.
    pub taus: Vec<u32>,
    /// Monte Carlo trials from the `[sim]` section.
    pub trials: Option<u64>,
    /// Base seed from the `[sim]` section; runs default to 0 without it.
    pub seed: Option<u64>,
    /// Output path from the `[output]` section.
    pub output_path: Option<PathBuf>,
}

impl Scenario {
    /// Reads and parses a scenario file.
    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)?;
        Scenario::parse(&text)
    }

    /// Parses scenario text. Errors name the offending line.
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut raw = Raw::default();
        let mut section: Option<Section> = None;
        for (index, full_line) in text.lines().enumerate() {
            let line = index + 1;
            let content = full_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| Error::Scenario {
                    line,
                    message: "expected '[section]'".to_string(),
                })?;
                section = Some(Section::parse(line, name.trim())?);
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Scenario {
                line,
                message: "expected 'key = value'".to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let section = section.ok_or_else(|| Error::Scenario {
                line,
                message: format!("key '{key}' appears before any [section]"),
            })?;
            raw.set(section, line, key, value)?;
        }
        raw.finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Code,
    Churn,
    Schemes,
    Sim,
    Output,
}

impl Section {
    fn parse(line: usize, name: &str) -> Result<Section> {
        match name {
            "code" => Ok(Section::Code),
            "churn" => Ok(Section::Churn),
            "schemes" => Ok(Section::Schemes),
            "sim" => Ok(Section::Sim),
            "output" => Ok(Section::Output),
            other => Err(Error::Scenario {
                line,
                message: format!(
                    "unknown section '[{other}]' (code, churn, schemes, sim, output)"
                ),
            }),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::Code => "code",
            Section::Churn => "churn",
            Section::Schemes => "schemes",
            Section::Sim => "sim",
            Section::Output => "output",
        }
    }
}

/// Raw keys as encountered; validation happens in `finish`.
#[derive(Default)]
struct Raw {
    n: Option<u32>,
    k: Option<u32>,
    d: Option<u32>,
    file_size: Option<f64>,
    lambda: Option<Vec<f64>>,
    mu: Option<f64>,
    rho: Option<Vec<f64>>,
    families: Option<Vec<Family>>,
    strategies: Option<Vec<Strategy>>,
    models: Option<Vec<ClockModel>>,
    cooperation: Option<Cooperation>,
    taus: Option<Vec<u32>>,
    trials: Option<u64>,
    seed: Option<u64>,
    path: Option<PathBuf>,
}

fn duplicate(line: usize, key: &str) -> Error {
    Error::Scenario { line, message: format!("duplicate key '{key}'") }
}

fn scalar<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| Error::Scenario {
        line,
        message: format!("invalid value for '{key}': {e}"),
    })
}

/// Comma-separated list; items must be nonempty and distinct.
fn list<T: FromStr + PartialEq>(line: usize, key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let mut items = Vec::new();
    for piece in value.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::Scenario {
                line,
                message: format!("empty item in list '{key}'"),
            });
        }
        let item: T = scalar(line, key, piece)?;
        if items.contains(&item) {
            return Err(Error::Scenario {
                line,
                message: format!("repeated item '{piece}' in list '{key}'"),
            });
        }
        items.push(item);
    }
    Ok(items)
}

/// `a..b` (inclusive) or a comma list of thresholds.
fn tau_values(line: usize, value: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = value.split_once("..") {
        let lo: u32 = scalar(line, "tau", a.trim())?;
        let hi: u32 = scalar(line, "tau", b.trim())?;
        if lo > hi {
            return Err(Error::Scenario {
                line,
                message: format!("empty tau range '{lo}..{hi}'"),
            });
        }
        Ok((lo..=hi).collect())
    } else {
        list(line, "tau", value)
    }
}

impl Raw {
    fn set(&mut self, section: Section, line: usize, key: &str, value: &str) -> Result<()> {
        macro_rules! store {
            ($field:ident, $parsed:expr) => {{
                if self.$field.is_some() {
                    return Err(duplicate(line, key));
                }
                self.$field = Some($parsed);
            }};
        }
        match (section, key) {
            (Section::Code, "n") => store!(n, scalar(line, key, value)?),
            (Section::Code, "k") => store!(k, scalar(line, key, value)?),
            (Section::Code, "d") => store!(d, scalar(line, key, value)?),
            (Section::Code, "file_size") => store!(file_size, scalar(line, key, value)?),
            (Section::Churn, "lambda") => store!(lambda, list(line, key, value)?),
            (Section::Churn, "mu") => store!(mu, scalar(line, key, value)?),
            (Section::Churn, "rho") => store!(rho, list(line, key, value)?),
            (Section::Schemes, "families") => store!(families, list(line, key, value)?),
            (Section::Schemes, "strategies") => store!(strategies, list(line, key, value)?),
            (Section::Schemes, "models") => store!(models, list(line, key, value)?),
            (Section::Schemes, "cooperation") => store!(cooperation, scalar(line, key, value)?),
            (Section::Schemes, "tau") => store!(taus, tau_values(line, value)?),
            (Section::Sim, "trials") => store!(trials, scalar(line, key, value)?),
            (Section::Sim, "seed") => store!(seed, scalar(line, key, value)?),
            (Section::Output, "path") => store!(path, PathBuf::from(value)),
            (section, key) => {
                return Err(Error::Scenario {
                    line,
                    message: format!("unknown key '{key}' in [{}]", section.name()),
                })
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<Scenario> {
        fn require<T>(value: Option<T>, key: &str, section: &str) -> Result<T> {
            value.ok_or_else(|| Error::Config(format!("missing key '{key}' in [{section}]")))
        }
        let n = require(self.n, "n", "code")?;
        let k = require(self.k, "k", "code")?;
        let d = require(self.d, "d", "code")?;
        let code = CodeParams::new(n, k, d, self.file_size.unwrap_or(1.0))?;
        let churn = match (self.lambda, self.rho) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "[churn] takes lambda or rho, not both".to_string(),
                ))
            }
            (None, None) => {
                return Err(Error::Config(
                    "missing churn: set lambda (with mu) or rho in [churn]".to_string(),
                ))
            }
            (Some(lambdas), None) => {
                let mu = self.mu.unwrap_or(1.0);
                lambdas
                    .into_iter()
                    .map(|lambda| ChurnParams::new(lambda, mu))
                    .collect::<Result<Vec<_>>>()?
            }
            (None, Some(rhos)) => {
                if self.mu.is_some() {
                    return Err(Error::Config(
                        "rho normalizes mu to 1; use lambda with mu for absolute rates"
                            .to_string(),
                    ));
                }
                rhos.into_iter()
                    .map(ChurnParams::from_rho)
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let families = require(self.families, "families", "schemes")?;
        let taus = require(self.taus, "tau", "schemes")?;
        Ok(Scenario {
            code,
            churn,
            families,
            strategies: self.strategies.unwrap_or_else(|| vec![Strategy::Distributed]),
            models: self.models.unwrap_or_else(|| vec![ClockModel::Fixed]),
            cooperation: self.cooperation.unwrap_or_default(),
            taus,
            trials: self.trials,
            seed: self.seed,
            output_path: self.path,
        })
    }
}
