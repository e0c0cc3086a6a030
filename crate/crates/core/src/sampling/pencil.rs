//! Random bidiagonal pencils whose zero sets `(B_N, B_{N-1})` realize the
//! joint law of a spiked spectrum and its unperturbed counterpart.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{gamma, InterlacedPair, SpikeConfig};
use crate::error::{Error, Result};
use crate::linalg::BidiagonalPencil;

/// How the spike enters the two spiked pencil entries `a_N` and `b_{N-1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilSpikeScaling {
    /// Multiply by `b`. At N = 1 this gives the eigenvalue `b Γ[βn/2, 2]`,
    /// matching the bidiagonal model.
    #[default]
    Linear,
    /// Multiply by `√b`, as printed in the source; kept for falsification.
    SquareRoot,
}

/// Draw `a_j ~ Γ[(N-j)β/2 + α_0 + 1, 2]`, `b_j ~ Γ[jβ/2, 2]` with
/// `α_0 = β(n-N+1)/2 - 1`, spiking `a_N` and `b_{N-1}`.
pub fn sample_pencil<R: Rng + ?Sized>(cfg: &SpikeConfig, rng: &mut R) -> Result<BidiagonalPencil> {
    sample_pencil_with(cfg, PencilSpikeScaling::default(), rng)
}

pub fn sample_pencil_with<R: Rng + ?Sized>(
    cfg: &SpikeConfig,
    scaling: PencilSpikeScaling,
    rng: &mut R,
) -> Result<BidiagonalPencil> {
    cfg.validate()?;
    let spike = cfg.b()?;
    let factor = match scaling {
        PencilSpikeScaling::Linear => spike,
        PencilSpikeScaling::SquareRoot => spike.sqrt(),
    };
    let (beta, big_n) = (cfg.beta, cfg.big_n);
    let alpha0_plus_one = 0.5 * beta * (cfg.n - big_n as f64 + 1.0);
    if alpha0_plus_one <= 0.0 {
        return Err(Error::input("need beta (n - N + 1)/2 > 0"));
    }
    let mut a = Vec::with_capacity(big_n);
    for j in 1..=big_n {
        let shape = 0.5 * beta * (big_n - j) as f64 + alpha0_plus_one;
        a.push(gamma(shape, 2.0, rng)?);
    }
    let mut b = Vec::with_capacity(big_n.saturating_sub(1));
    for j in 1..big_n {
        b.push(gamma(0.5 * beta * j as f64, 2.0, rng)?);
    }
    a[big_n - 1] *= factor;
    if let Some(last) = b.last_mut() {
        *last *= factor;
    }
    BidiagonalPencil::new(a, b)
}

/// Zeros of `(B_N, B_{N-1})` for a freshly sampled pencil.
pub fn sample_pencil_pair<R: Rng + ?Sized>(
    cfg: &SpikeConfig,
    scaling: PencilSpikeScaling,
    rng: &mut R,
) -> Result<InterlacedPair> {
    let (x, y) = sample_pencil_with(cfg, scaling, rng)?.eigenvalues()?;
    InterlacedPair::new(x, y)
}
