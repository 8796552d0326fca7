//! Run configuration: moduli, sampling, tolerance overrides and suite selection.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ellidiff_core::elliptic::{EllipticModulus, HalfPeriods};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Smallest Im τ accepted; below it the theta series need too many terms.
pub const MIN_IM_TAU: f64 = 0.3;

pub const DEFAULT_TAU: Complex64 = Complex64::new(0.0, 1.1);
pub const DEFAULT_HBAR: Complex64 = Complex64::new(0.1, 0.0);
pub const DEFAULT_OMEGA1: Complex64 = Complex64::new(0.5, 0.0);
pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("Im tau must be at least {MIN_IM_TAU}, got tau = {0}")]
    ModulusTooSmall(Complex64),
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("{0} must be finite and non-zero, got {1}")]
    Degenerate(&'static str, Complex64),
    #[error("half periods omega1 = {0}, omega1*tau are invalid")]
    HalfPeriods(Complex64),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("tolerance override {0:?} is not SUITE=EPS with EPS > 0")]
    BadTolerance(String),
    #[error("cannot parse complex number {0:?}")]
    BadComplex(String),
}

/// The eleven verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Suite {
    Theta,
    Ybe,
    Commute,
    LemmaK,
    Factorization,
    Lame,
    VanDiejen,
    Eigen,
    Basis,
    Preserve,
    DiffLimit,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Theta,
        Suite::Ybe,
        Suite::Commute,
        Suite::LemmaK,
        Suite::Factorization,
        Suite::Lame,
        Suite::VanDiejen,
        Suite::Eigen,
        Suite::Basis,
        Suite::Preserve,
        Suite::DiffLimit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theta => "verify-theta",
            Suite::Ybe => "verify-ybe",
            Suite::Commute => "verify-commute",
            Suite::LemmaK => "verify-lemma-k",
            Suite::Factorization => "verify-factorization",
            Suite::Lame => "verify-lame",
            Suite::VanDiejen => "verify-vandiejen",
            Suite::Eigen => "verify-eigen",
            Suite::Basis => "verify-basis",
            Suite::Preserve => "verify-preserve",
            Suite::DiffLimit => "verify-difflimit",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

impl From<Suite> for String {
    fn from(s: Suite) -> String {
        s.name().to_string()
    }
}

impl TryFrom<String> for Suite {
    type Error = ConfigError;

    fn try_from(s: String) -> Result<Self, ConfigError> {
        s.parse()
    }
}

/// Parses "re+imi" forms such as "1.1i", "0.3+1.1i", "-0.2-0.5i" or "0.1".
pub fn parse_complex(s: &str) -> Result<Complex64, ConfigError> {
    let z: Complex64 = s.trim().parse().map_err(|_| ConfigError::BadComplex(s.to_string()))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(ConfigError::BadComplex(s.to_string()))
    }
}

/// Parses "SUITE=EPS".
pub fn parse_tolerance(s: &str) -> Result<(Suite, f64), ConfigError> {
    let bad = || ConfigError::BadTolerance(s.to_string());
    let (name, eps) = s.split_once('=').ok_or_else(bad)?;
    let suite: Suite = name.trim().parse()?;
    let eps: f64 = eps.trim().parse().map_err(|_| bad())?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(bad());
    }
    Ok((suite, eps))
}

/// Complex numbers are echoed as [re, im].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct C(pub Complex64);

impl From<[f64; 2]> for C {
    fn from(v: [f64; 2]) -> Self {
        C(Complex64::new(v[0], v[1]))
    }
}

impl From<C> for [f64; 2] {
    fn from(c: C) -> Self {
        [c.0.re, c.0.im]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub tau: C,
    pub hbar: C,
    pub omega1: C,
    pub samples: usize,
    pub seed: u64,
    /// Replaces the tolerance of every upper-bound check in the suite.
    pub tol_overrides: BTreeMap<Suite, f64>,
    /// Suites in run order; empty means all.
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tau: C(DEFAULT_TAU),
            hbar: C(DEFAULT_HBAR),
            omega1: C(DEFAULT_OMEGA1),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tol_overrides: BTreeMap::new(),
            suites: Vec::new(),
        }
    }
}

impl SuiteConfig {
    /// Rejects configurations outside the supported range.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let tau = self.tau.0;
        if !(tau.im >= MIN_IM_TAU) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(ConfigError::ModulusTooSmall(tau));
        }
        if self.samples < 1 {
            return Err(ConfigError::NoSamples);
        }
        for (what, z) in [("hbar", self.hbar.0), ("omega1", self.omega1.0)] {
            if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
                return Err(ConfigError::Degenerate(what, z));
            }
        }
        EllipticModulus::new(tau).map_err(|_| ConfigError::ModulusTooSmall(tau))?;
        HalfPeriods::from_modulus(self.omega1.0, tau).map_err(|_| ConfigError::HalfPeriods(self.omega1.0))?;
        for eps in self.tol_overrides.values() {
            if !(*eps > 0.0 && eps.is_finite()) {
                return Err(ConfigError::BadTolerance(eps.to_string()));
            }
        }
        Ok(())
    }

    /// The selected suites in canonical order without duplicates.
    pub fn selected(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            return Suite::ALL.to_vec();
        }
        Suite::ALL.into_iter().filter(|s| self.suites.contains(s)).collect()
    }

    /// Seed of a suite's sampling stream: the run seed mixed with FNV-1a of its name.
    pub fn suite_seed(&self, suite: Suite) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in suite.name().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        self.seed ^ h
    }
}
