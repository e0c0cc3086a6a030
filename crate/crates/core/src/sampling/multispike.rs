//! Several spikes by iterated rank-one updates: step `j` perturbs the
//! current `j - 1` eigenvalues (plus a zero block) with strength `b_j`.

use rand::Rng;

use super::secular::rank_one_update;
use super::SpikeConfig;
use crate::error::{Error, Result};
use crate::linalg::Spectrum;

/// One spike per eigenvalue (`spikes.len() == N`).
pub fn sample_multi_spike<R: Rng + ?Sized>(cfg: &SpikeConfig, rng: &mut R) -> Result<Spectrum> {
    cfg.validate()?;
    if cfg.spikes.len() != cfg.big_n {
        return Err(Error::input(format!(
            "multi-spike construction needs N = {} spike values, got {}",
            cfg.big_n,
            cfg.spikes.len()
        )));
    }
    let mut spectrum = Spectrum::new(Vec::new())?;
    for (j, &b) in cfg.spikes.iter().enumerate() {
        let zero_shape = 0.5 * cfg.beta * (cfg.n - j as f64);
        if zero_shape <= 0.0 {
            return Err(Error::input(format!("step {} has nonpositive zero-block shape", j + 1)));
        }
        spectrum = rank_one_update(&spectrum, b, zero_shape, cfg.beta, rng)?;
    }
    Ok(spectrum)
}
