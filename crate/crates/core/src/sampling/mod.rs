//! Exact samplers for the spiked Wishart β-ensemble and its edge scalings.
//!
//! Every sampler draws from a [`rand::Rng`] handed in by the caller; use
//! [`rng::stream_rng`] to get a reproducible stream per (seed, sample index).

pub mod bidiagonal;
pub mod hermite;
pub mod multispike;
pub mod pencil;
pub mod rng;
pub mod sao;
pub mod secular;

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Spectrum;

/// Parameters of the spiked ensemble: `N` eigenvalues from an `n x N` data
/// matrix whose covariance is `diag(b_1, .., b_r, 1, .., 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpikeConfig {
    pub beta: f64,
    /// Number of rows `n`; may be non-integer for general β.
    pub n: f64,
    /// Number of eigenvalues `N`.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Spike values `b_1, .., b_r`, all positive.
    pub spikes: Vec<f64>,
}

impl SpikeConfig {
    pub fn new(beta: f64, n: f64, big_n: usize, spikes: Vec<f64>) -> Result<Self> {
        let cfg = SpikeConfig { beta, n, big_n, spikes };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Single-spike configuration.
    pub fn single(beta: f64, n: f64, big_n: usize, b: f64) -> Result<Self> {
        Self::new(beta, n, big_n, vec![b])
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::input(format!("beta must be positive, got {}", self.beta)));
        }
        if self.big_n == 0 {
            return Err(Error::input("N must be at least 1"));
        }
        if !self.n.is_finite() || self.n <= self.big_n as f64 - 1.0 {
            return Err(Error::input(format!("need n > N - 1, got n = {} and N = {}", self.n, self.big_n)));
        }
        if self.spikes.is_empty() {
            return Err(Error::input("at least one spike value is required"));
        }
        if self.spikes.len() > self.big_n {
            return Err(Error::input("more spikes than eigenvalues"));
        }
        if let Some(b) = self.spikes.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::input(format!("spike values must be positive, got {b}")));
        }
        Ok(())
    }

    /// The single spike `b`; errors for multi-spike configurations.
    pub fn b(&self) -> Result<f64> {
        match self.spikes.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::input("construction needs exactly one spike")),
        }
    }

    pub fn rank(&self) -> usize {
        self.spikes.len()
    }
}

/// Which sampler produced a draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Bidiagonal,
    Secular,
    Pencil,
    Multispike,
    Sao,
    Hermite,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Bidiagonal => "bidiagonal",
            Construction::Secular => "secular",
            Construction::Pencil => "pencil",
            Construction::Multispike => "multispike",
            Construction::Sao => "sao",
            Construction::Hermite => "hermite",
        }
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bidiagonal" => Construction::Bidiagonal,
            "secular" => Construction::Secular,
            "pencil" => Construction::Pencil,
            "multispike" => Construction::Multispike,
            "sao" => Construction::Sao,
            "hermite" => Construction::Hermite,
            other => return Err(Error::input(format!("unknown construction '{other}'"))),
        })
    }
}

/// Provenance attached to each sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub seed: u64,
    pub index: u64,
    pub construction: Construction,
}

/// A nonnegative, strictly decreasing spectrum together with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub values: Spectrum,
    pub meta: SampleMeta,
}

impl SpectrumSample {
    pub fn new(values: Spectrum, meta: SampleMeta) -> Result<Self> {
        match values.smallest() {
            Some(v) if v < 0.0 => Err(Error::numerical(format!("negative eigenvalue {v} in a Wishart spectrum"))),
            _ => Ok(SpectrumSample { values, meta }),
        }
    }
}

/// Eigenvalues `λ` together with interlacing intermediate values `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacedPair {
    pub lambda: Spectrum,
    pub y: Spectrum,
}

impl InterlacedPair {
    /// Checks `λ_1 > y_1 > λ_2 > ... > y_{N-1} > λ_N > 0`, optionally
    /// followed by `y_N` below `λ_N`.
    pub fn new(lambda: Spectrum, y: Spectrum) -> Result<Self> {
        if !lambda.interlaces(&y) {
            return Err(Error::numerical("intermediate values do not interlace"));
        }
        if lambda.smallest().is_some_and(|v| v < 0.0) {
            return Err(Error::numerical("negative eigenvalue"));
        }
        Ok(InterlacedPair { lambda, y })
    }
}

/// Draw from Γ[shape, scale] (density ∝ x^{shape-1} e^{-x/scale}).
pub fn gamma<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> Result<f64> {
    let d = Gamma::new(shape, scale)
        .map_err(|e| Error::input(format!("gamma(shape = {shape}, scale = {scale}): {e}")))?;
    Ok(d.sample(rng))
}

/// Draw from χ_k, the square root of Γ[k/2, 2].
pub fn chi<R: Rng + ?Sized>(k: f64, rng: &mut R) -> Result<f64> {
    Ok(gamma(0.5 * k, 2.0, rng)?.sqrt())
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}
