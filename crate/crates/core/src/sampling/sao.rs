//! Finite-difference discretization of the stochastic Airy operator
//! `-d²/dx² + x + (2/√β) B'(x)` on `[0, L]`, with either a Robin condition
//! `ψ'(0) = wψ(0)` or Dirichlet at the origin and Dirichlet at `L`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::normal;
use crate::error::{Error, Result};
use crate::linalg::SymTridiag;

/// Coarsest grid step accepted.
pub const MAX_STEP: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobinSaoConfig {
    /// Dyson index; `f64::INFINITY` switches the noise off.
    pub beta: f64,
    /// Robin parameter; `f64::INFINITY` means a Dirichlet condition at 0.
    pub w: f64,
    pub length: f64,
    pub step: f64,
    pub k: usize,
}

impl RobinSaoConfig {
    /// Defaults `L = 20 + 5 max(0, -w)`, `h = 0.02`, `k = 1`.
    pub fn new(beta: f64, w: f64) -> Self {
        let length = if w.is_finite() { 20.0 + 5.0 * (-w).max(0.0) } else { 20.0 };
        RobinSaoConfig { beta, w, length, step: 0.02, k: 1 }
    }

    pub fn dirichlet(beta: f64) -> Self {
        Self::new(beta, f64::INFINITY)
    }

    /// Number of grid cells `L / h`.
    pub fn cells(&self) -> Result<usize> {
        if !(self.beta > 0.0) || self.w.is_nan() {
            return Err(Error::input("SAO needs beta > 0 and a Robin parameter (or +inf)"));
        }
        if !(self.length > 0.0 && self.length.is_finite() && self.step > 0.0) || self.k == 0 {
            return Err(Error::input("SAO needs L > 0, h > 0 and k >= 1"));
        }
        if self.w == f64::NEG_INFINITY {
            return Err(Error::input("Robin parameter -inf is not a boundary condition"));
        }
        if self.step > MAX_STEP {
            return Err(Error::CoarseGrid { step: self.step, limit: MAX_STEP });
        }
        let m = self.length / self.step;
        let cells = m.round();
        if (m - cells).abs() > 1e-9 * m.max(1.0) {
            return Err(Error::input(format!("L / h = {m} is not an integer")));
        }
        let cells = cells as usize;
        if cells < self.k + 2 {
            return Err(Error::input("grid has fewer nodes than requested eigenvalues"));
        }
        Ok(cells)
    }

    pub fn is_dirichlet(&self) -> bool {
        self.w == f64::INFINITY
    }
}

/// Assemble the symmetric tridiagonal discretization for one noise draw.
///
/// Robin: the ghost value `ψ_{-1} = ψ_1 - 2hwψ_0` folds into row 0, which
/// becomes `((2 + 2hw)ψ_0 - 2ψ_1)/h²`; scaling `ψ_0` by `√2` symmetrizes it.
pub fn sao_matrix<R: Rng + ?Sized>(cfg: &RobinSaoConfig, rng: &mut R) -> Result<SymTridiag> {
    let cells = cfg.cells()?;
    let h = cfg.step;
    let h2 = h * h;
    let noise = if cfg.beta.is_infinite() { 0.0 } else { 2.0 / cfg.beta.sqrt() / h.sqrt() };
    let first = if cfg.is_dirichlet() { 1 } else { 0 };
    let mut diag = Vec::with_capacity(cells);
    let mut off = Vec::with_capacity(cells);
    for i in first..cells {
        let x = i as f64 * h;
        let g = if noise != 0.0 { noise * normal(rng) } else { 0.0 };
        let stencil = if i == 0 { (2.0 + 2.0 * h * cfg.w) / h2 } else { 2.0 / h2 };
        diag.push(stencil + x + g);
        if i + 1 < cells {
            off.push(if i == 0 { -std::f64::consts::SQRT_2 / h2 } else { -1.0 / h2 });
        }
    }
    SymTridiag::new(diag, off)
}

/// The `k` smallest eigenvalues, increasing.
pub fn sample_stochastic_airy<R: Rng + ?Sized>(cfg: &RobinSaoConfig, rng: &mut R) -> Result<Vec<f64>> {
    let t = sao_matrix(cfg, rng)?;
    Ok(t.smallest_eigenvalues(cfg.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng::stream_rng;

    #[test]
    fn coarse_grid_rejected() {
        let cfg = RobinSaoConfig { step: 1.0, ..RobinSaoConfig::new(2.0, 0.0) };
        assert!(matches!(cfg.cells(), Err(Error::CoarseGrid { .. })));
    }

    #[test]
    fn noiseless_robin_zero_matches_neumann_airy_zero() {
        // ψ'(0) = 0 ground state is -a'_1 = 1.018793
        let cfg = RobinSaoConfig { beta: f64::INFINITY, step: 0.01, ..RobinSaoConfig::new(1.0, 0.0) };
        let v = sample_stochastic_airy(&cfg, &mut stream_rng(0, 0)).unwrap();
        assert!((v[0] - 1.018_792_971_647_471).abs() < 1e-3, "{}", v[0]);
    }
}
