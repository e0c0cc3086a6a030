//! The bidiagonal model: `B^T` is lower bidiagonal with independent chi
//! entries, the spike multiplying the top-left entry.

use rand::Rng;

use super::{chi, SpikeConfig};
use crate::error::{Error, Result};
use crate::linalg::{Spectrum, SymTridiag};

/// Entries of the lower bidiagonal `B^T`: `x` on the diagonal (top-left
/// first), `y` on the subdiagonal (`y[j]` couples rows `j` and `j + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalModel {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl BidiagonalModel {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.is_empty() || y.len() + 1 != x.len() {
            return Err(Error::input("bidiagonal model needs len(y) = len(x) - 1"));
        }
        if x.iter().chain(&y).any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::input("bidiagonal entries must be positive and finite"));
        }
        Ok(BidiagonalModel { x, y })
    }

    /// The tridiagonal `B^T B`.
    pub fn to_tridiag(&self) -> SymTridiag {
        let n = self.x.len();
        let mut diag = Vec::with_capacity(n);
        diag.push(self.x[0] * self.x[0]);
        for j in 1..n {
            diag.push(self.y[j - 1] * self.y[j - 1] + self.x[j] * self.x[j]);
        }
        let off = (0..n - 1).map(|j| self.y[j] * self.x[j]).collect();
        SymTridiag::new(diag, off).expect("entries are finite")
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        self.to_tridiag().eigenvalues()
    }
}

/// `x_1 = √b χ_{βn}`, `x_j = χ_{β(n-j+1)}`, `y_j = χ_{β(N-j)}`.
pub fn sample_bidiagonal<R: Rng + ?Sized>(cfg: &SpikeConfig, rng: &mut R) -> Result<BidiagonalModel> {
    cfg.validate()?;
    let b = cfg.b()?;
    bidiagonal_with_spike(cfg.beta, cfg.n, cfg.big_n, b, rng)
}

pub(crate) fn bidiagonal_with_spike<R: Rng + ?Sized>(
    beta: f64,
    n: f64,
    big_n: usize,
    b: f64,
    rng: &mut R,
) -> Result<BidiagonalModel> {
    if beta * (n - big_n as f64 + 1.0) <= 0.0 {
        return Err(Error::input("need beta (n - N + 1) > 0"));
    }
    let mut x = Vec::with_capacity(big_n);
    let mut y = Vec::with_capacity(big_n.saturating_sub(1));
    for j in 0..big_n {
        x.push(chi(beta * (n - j as f64), rng)?);
        if j + 1 < big_n {
            y.push(chi(beta * (big_n - 1 - j) as f64, rng)?);
        }
    }
    x[0] *= b.sqrt();
    BidiagonalModel::new(x, y)
}

/// Spectrum of a freshly drawn bidiagonal model.
pub fn sample_bidiagonal_spectrum<R: Rng + ?Sized>(cfg: &SpikeConfig, rng: &mut R) -> Result<Spectrum> {
    sample_bidiagonal(cfg, rng)?.spectrum()
}

/// Null (b = 1) spectrum for `(β, n, N)`; the building block of the
/// interlaced-pair samplers.
pub(crate) fn null_spectrum<R: Rng + ?Sized>(beta: f64, n: f64, big_n: usize, rng: &mut R) -> Result<Spectrum> {
    if big_n == 0 {
        return Spectrum::new(Vec::new());
    }
    bidiagonal_with_spike(beta, n, big_n, 1.0, rng)?.spectrum()
}
