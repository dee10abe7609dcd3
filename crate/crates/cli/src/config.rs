use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use coulomb_zeros::{Kind, Params};

/// Largest `--terms` accepted on the command line.
pub const MAX_TERMS: usize = 12;

/// Sweeps of the Abramowitz fixed-point iteration used by `--method abramowitz`.
pub const ABRAMOWITZ_SWEEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Mcmahon,
    Abramowitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Inclusive integer range written `A..B`, or a single index `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: u32,
    pub end: u32,
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(IndexRange {
                start: parse(a)?,
                end: parse(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => {
                let n = parse(s)?;
                Ok(IndexRange { start: n, end: n })
            }
        }
    }
}

/// Inclusive real range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRange {
    pub start: f64,
    pub end: f64,
}

impl FromStr for RealRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{t}' is not a number"))
        };
        // Skip a leading sign so "-2..2" splits at the right place.
        let split = s
            .get(1..)
            .and_then(|rest| rest.find(".."))
            .map(|i| i + 1)
            .ok_or_else(|| format!("expected A..B, got '{s}'"))?;
        Ok(RealRange {
            start: parse(&s[..split])?,
            end: parse(&s[split + 2..])?,
        })
    }
}

impl RealRange {
    /// `start, start + step, …` up to `end`, with the count rounded so the
    /// last point lands on `end` despite floating-point drift.
    pub fn grid(&self, step: f64) -> Result<Vec<f64>, CliError> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(CliError::Validation(format!(
                "step must be positive (got {step})"
            )));
        }
        if !(self.end >= self.start) {
            return Err(CliError::Validation(format!(
                "range end {} is below its start {}",
                self.end, self.start
            )));
        }
        let count = ((self.end - self.start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| self.start + i as f64 * step).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: Kind,
    pub lambda: f64,
    pub eta: f64,
    pub n_start: u32,
    pub n_end: u32,
    pub terms: usize,
    pub refine: bool,
    pub method: Method,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Config for `n = n_start..=n_end` with the usual defaults.
    pub fn new(kind: Kind, lambda: f64, eta: f64, n_start: u32, n_end: u32) -> Self {
        RunConfig {
            kind,
            lambda,
            eta,
            n_start,
            n_end,
            terms: coulomb_zeros::DEFAULT_TERMS,
            refine: false,
            method: Method::Mcmahon,
            format: Format::Table,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<Params, CliError> {
        if self.n_start < 1 {
            return Err(CliError::Validation("n must start at 1 or above".into()));
        }
        if self.n_end < self.n_start {
            return Err(CliError::Validation(format!(
                "empty index range {}..{}",
                self.n_start, self.n_end
            )));
        }
        if !(1..=MAX_TERMS).contains(&self.terms) {
            return Err(CliError::Validation(format!(
                "terms must lie in 1..={MAX_TERMS} (got {})",
                self.terms
            )));
        }
        if self.method == Method::Abramowitz && self.kind != Kind::F {
            return Err(CliError::Validation(
                "the abramowitz method only applies to kind F".into(),
            ));
        }
        validate_params(self.lambda, self.eta)
    }
}

pub fn validate_params(lambda: f64, eta: f64) -> Result<Params, CliError> {
    Params::new(lambda, eta).map_err(|e| CliError::Validation(e.to_string()))
}
