//! Structured eigenvalue problems: symmetric tridiagonal matrices (Sturm
//! bisection, first eigenvector components) and the bidiagonal pencil
//! `xM - L` solved through its determinant recurrence.

mod pencil;
mod tridiag;

pub use pencil::BidiagonalPencil;
pub use tridiag::{first_components, tridiag_eigenvalues, SymTridiag};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative gap under which two eigenvalues count as a tie.
pub const TIE_TOL: f64 = 1e-13;

/// A strictly decreasing list of finite eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        crate::error::ensure_finite("eigenvalue", &values)?;
        for (i, w) in values.windows(2).enumerate() {
            if w[0] <= w[1] {
                return Err(Error::input(format!(
                    "spectrum not strictly decreasing at index {i}: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Spectrum(values))
    }

    /// Sorts into decreasing order and rejects near-coincident values.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        crate::error::ensure_finite("eigenvalue", &values)?;
        values.sort_by(|a, b| b.total_cmp(a));
        check_ties(&values)?;
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<f64> {
        self.0.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.0.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Weak interlacing `self[0] >= inner[0] >= self[1] >= ...`, where
    /// `inner` has one point fewer than `self` or (ending below `self`'s
    /// last point) the same number.
    pub fn interlaces(&self, inner: &Spectrum) -> bool {
        if inner.len() + 1 != self.len() && inner.len() != self.len() {
            return false;
        }
        inner.0.iter().enumerate().all(|(j, &y)| self.0[j] >= y && self.0.get(j + 1).is_none_or(|&x| y >= x))
    }
}

pub(crate) fn check_ties(desc: &[f64]) -> Result<()> {
    for (i, w) in desc.windows(2).enumerate() {
        if w[0] - w[1] <= TIE_TOL * w[0].abs().max(1.0) {
            return Err(Error::Tie { index: i, value: w[0] });
        }
    }
    Ok(())
}
