//! Rank-one updates through the secular equation
//!
//! `0 = 1 + b ( -q_0/λ + Σ_j q_j/(y_j - λ) )`
//!
//! where the `-q_0/λ` term is present when the unperturbed matrix carries a
//! block of zero eigenvalues.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bidiagonal::null_spectrum;
use super::{gamma, InterlacedPair, SpikeConfig};
use crate::error::{Error, Result};
use crate::linalg::{check_ties, Spectrum};

/// Scale of the gamma law for the zero-block weight `q_0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroWeightScale {
    /// Scale 2, as for every other χ²-type weight.
    #[default]
    Two,
    /// Scale 1/2 as printed in the source derivation; kept for falsification.
    Half,
}

impl ZeroWeightScale {
    pub fn value(self) -> f64 {
        match self {
            ZeroWeightScale::Two => 2.0,
            ZeroWeightScale::Half => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct UpdateOptions {
    pub zero_scale: ZeroWeightScale,
    /// Only compute this many of the largest roots.
    pub top_roots: Option<usize>,
}

/// Roots plus the weights that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularDraw {
    /// Decreasing roots (all of them unless `top_roots` was set).
    pub roots: Vec<f64>,
    pub q0: f64,
    pub q: Vec<f64>,
}

/// The rational function `1 + b Σ_k w_k/(p_k - λ)` with poles in decreasing order.
#[derive(Debug, Clone)]
pub struct SecularEquation<'a> {
    poles: &'a [f64],
    weights: &'a [f64],
    b: f64,
}

impl<'a> SecularEquation<'a> {
    pub fn new(poles: &'a [f64], weights: &'a [f64], b: f64) -> Result<Self> {
        if poles.len() != weights.len() || poles.is_empty() {
            return Err(Error::input("secular equation needs one weight per pole"));
        }
        if poles.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::input("secular poles must be strictly decreasing"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) || !(b > 0.0 && b.is_finite()) {
            return Err(Error::input("secular weights and b must be positive"));
        }
        Ok(SecularEquation { poles, weights, b })
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        1.0 + self.b * self.poles.iter().zip(self.weights).map(|(p, w)| w / (p - lambda)).sum::<f64>()
    }

    /// Value and derivative at `origin + delta`, with pole differences taken
    /// against `origin` first so roots hugging a pole keep relative accuracy.
    fn eval_shifted(&self, origin: f64, delta: f64) -> (f64, f64) {
        let mut f = 0.0;
        let mut df = 0.0;
        for (p, w) in self.poles.iter().zip(self.weights) {
            let r = 1.0 / ((p - origin) - delta);
            f += w * r;
            df += w * r * r;
        }
        (1.0 + self.b * f, self.b * df)
    }

    /// The root in `(lo, hi)`, where `lo` is a pole (or the bracket bottom)
    /// and the function increases from negative to positive.
    fn root_in(&self, lo: f64, hi: f64, hi_is_pole: bool) -> Result<f64> {
        // work relative to whichever end the root is nearer
        let (origin, mut a, mut c) = if hi_is_pole {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) > 0.0 {
                (lo, 0.0, mid - lo)
            } else {
                (hi, mid - hi, 0.0)
            }
        } else {
            (lo, 0.0, hi - lo)
        };
        for _ in 0..400 {
            let m = 0.5 * (a + c);
            if m <= a || m >= c {
                break;
            }
            // relative to the distance from the origin pole, so roots
            // hugging a pole are resolved to full relative accuracy
            if c - a <= 1e-13 * m.abs() {
                break;
            }
            let (f, _) = self.eval_shifted(origin, m);
            if f > 0.0 {
                c = m;
            } else {
                a = m;
            }
        }
        // two safeguarded Newton steps
        let mut d = 0.5 * (a + c);
        for _ in 0..2 {
            let (f, df) = self.eval_shifted(origin, d);
            if !(df > 0.0) {
                break;
            }
            let next = d - f / df;
            if next > a && next < c {
                d = next;
            } else {
                break;
            }
        }
        let root = origin + d;
        if !root.is_finite() {
            return Err(Error::numerical("secular root is not finite"));
        }
        Ok(root)
    }

    /// The `k` largest roots in decreasing order (all roots when `k >= len`).
    /// There is exactly one root above the top pole and one between each
    /// pair of consecutive poles.
    pub fn roots(&self, k: usize) -> Result<Vec<f64>> {
        let m = self.poles.len();
        let k = k.min(m);
        let mass: f64 = self.weights.iter().sum();
        let top = self.poles[0];
        let upper = top + self.b * mass + 1.0;
        if self.eval(upper) <= 0.0 {
            return Err(Error::Bracket { lo: top, hi: upper });
        }
        let mut out = Vec::with_capacity(k);
        if k >= 1 {
            out.push(self.root_in(top, upper, false)?);
        }
        for j in 1..k {
            let (lo, hi) = (self.poles[j], self.poles[j - 1]);
            out.push(self.root_in(lo, hi, true)?);
        }
        for (j, r) in out.iter().enumerate() {
            let above = if j == 0 { f64::INFINITY } else { self.poles[j - 1] };
            if !(*r > self.poles[j] && *r < above) {
                return Err(Error::numerical(format!(
                    "secular root {j} = {r} escaped its interlacing interval"
                )));
            }
        }
        Ok(out)
    }
}

/// Add a random rank-one perturbation of strength `b` to the spectrum `y`.
///
/// `zero_shape > 0` adds a pole at 0 with weight `q_0 ~ Γ[zero_shape, 2]`
/// (an unperturbed zero-eigenvalue block); `zero_shape = 0` uses only the
/// poles at `y`. Returns all roots, interlacing `y`.
pub fn rank_one_update<R: Rng + ?Sized>(
    y: &Spectrum,
    b: f64,
    zero_shape: f64,
    beta: f64,
    rng: &mut R,
) -> Result<Spectrum> {
    let draw = rank_one_update_with(y, b, zero_shape, beta, &UpdateOptions::default(), rng)?;
    check_ties(&draw.roots)?;
    Spectrum::new(draw.roots)
}

pub fn rank_one_update_with<R: Rng + ?Sized>(
    y: &Spectrum,
    b: f64,
    zero_shape: f64,
    beta: f64,
    opts: &UpdateOptions,
    rng: &mut R,
) -> Result<SecularDraw> {
    if !(beta > 0.0) || !(zero_shape >= 0.0) {
        return Err(Error::input("need beta > 0 and zero_shape >= 0"));
    }
    if y.smallest().is_some_and(|v| v <= 0.0) {
        return Err(Error::input("unperturbed spectrum must be positive"));
    }
    if y.is_empty() && zero_shape == 0.0 {
        return Err(Error::input("rank-one update of an empty spectrum needs a zero block"));
    }
    let q: Vec<f64> = (0..y.len()).map(|_| gamma(0.5 * beta, 2.0, rng)).collect::<Result<_>>()?;
    let q0 = if zero_shape > 0.0 { gamma(zero_shape, opts.zero_scale.value(), rng)? } else { 0.0 };
    let mut poles = y.values().to_vec();
    let mut weights = q.clone();
    if zero_shape > 0.0 {
        poles.push(0.0);
        weights.push(q0);
    }
    let eq = SecularEquation::new(&poles, &weights, b)?;
    let roots = eq.roots(opts.top_roots.unwrap_or(poles.len()))?;
    Ok(SecularDraw { roots, q0, q })
}

/// How the unperturbed spectrum of an interlaced pair is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// `n >= N`: `N - 1` nonzero eigenvalues plus a zero block.
    ZeroBlock,
    /// `N - 1 < n < N`: `N` nonzero eigenvalues, no zero block.
    FullRank,
}

impl PairMode {
    pub fn for_config(cfg: &SpikeConfig) -> PairMode {
        if cfg.n >= cfg.big_n as f64 {
            PairMode::ZeroBlock
        } else {
            PairMode::FullRank
        }
    }
}

/// Draw `(x, y)`: `y` from the null ensemble, `x` its rank-one update.
pub fn sample_secular_pair<R: Rng + ?Sized>(cfg: &SpikeConfig, rng: &mut R) -> Result<InterlacedPair> {
    let (pair, _) = sample_secular_pair_with(cfg, &UpdateOptions::default(), rng)?;
    Ok(pair)
}

pub fn sample_secular_pair_with<R: Rng + ?Sized>(
    cfg: &SpikeConfig,
    opts: &UpdateOptions,
    rng: &mut R,
) -> Result<(InterlacedPair, SecularDraw)> {
    cfg.validate()?;
    let b = cfg.b()?;
    let big_n = cfg.big_n;
    let (y, zero_shape) = match PairMode::for_config(cfg) {
        PairMode::ZeroBlock => (
            null_spectrum(cfg.beta, cfg.n, big_n - 1, rng)?,
            0.5 * cfg.beta * (cfg.n - big_n as f64 + 1.0),
        ),
        PairMode::FullRank => (null_spectrum(cfg.beta, cfg.n, big_n, rng)?, 0.0),
    };
    let draw = rank_one_update_with(&y, b, zero_shape, cfg.beta, opts, rng)?;
    check_ties(&draw.roots)?;
    let x = Spectrum::new(draw.roots.clone())?;
    let pair = if opts.top_roots.is_some_and(|k| k < y.len()) {
        InterlacedPair { lambda: x, y }
    } else {
        InterlacedPair::new(x, y)?
    };
    Ok((pair, draw))
}

/// Only the largest eigenvalue of the secular construction, skipping the
/// lower roots.
pub fn sample_secular_top<R: Rng + ?Sized>(cfg: &SpikeConfig, opts: &UpdateOptions, rng: &mut R) -> Result<f64> {
    let opts = UpdateOptions { top_roots: Some(1), ..*opts };
    let (pair, _) = sample_secular_pair_with(cfg, &opts, rng)?;
    pair.lambda.largest().ok_or_else(|| Error::numerical("no roots"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pole_closed_form() {
        let eq = SecularEquation::new(&[2.0], &[0.7], 1.5).unwrap();
        let r = eq.roots(1).unwrap();
        assert!((r[0] - (2.0 + 1.5 * 0.7)).abs() < 1e-14);
    }

    #[test]
    fn zero_pole_only_gives_b_times_weight() {
        let eq = SecularEquation::new(&[0.0], &[3.0], 0.25).unwrap();
        let r = eq.roots(1).unwrap();
        assert!((r[0] - 0.75).abs() < 1e-14);
    }

    #[test]
    fn roots_near_poles_keep_relative_accuracy() {
        let poles = [5.0, 1.0, 1e-8];
        let weights = [1.0, 1e-12, 2.0];
        let eq = SecularEquation::new(&poles, &weights, 1.0).unwrap();
        let r = eq.roots(3).unwrap();
        assert!(r[0] > 5.0 && r[1] > 1.0 && r[1] < 5.0);
        // 1 + 1/(5-λ) - 2/λ ≈ -0.75 at λ = 1, so 1 - λ ≈ 1e-12 / 0.75
        let gap = 1.0 - r[2];
        assert!((gap - 1e-12 / 0.75).abs() < 1e-3 * gap, "{gap}");
    }
}
