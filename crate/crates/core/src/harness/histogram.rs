use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// One histogram bin against the density's average over the bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinCheck {
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
    pub expected: f64,
    /// Standard error of `empirical`, from the spread of per-draw counts.
    pub sigma: f64,
    /// `rel_tol * expected + sigmas * sigma`.
    pub allowance: f64,
    pub pass: bool,
}

/// Point density estimate from `draws` (each a set of points of one
/// realization) on `bins` equal bins of `[lo, hi]`, compared bin by bin with
/// `density`. Densities count points per unit length per realization.
pub fn histogram_vs_density<F: Fn(f64) -> Result<f64>>(
    draws: &[Vec<f64>],
    (lo, hi): (f64, f64),
    bins: usize,
    density: F,
    rel_tol: f64,
    sigmas: f64,
) -> Result<Vec<BinCheck>> {
    if !(hi > lo) || bins == 0 || draws.len() < 2 {
        return Err(Error::input("histogram needs hi > lo, at least one bin and two draws"));
    }
    let width = (hi - lo) / bins as f64;
    let n = draws.len() as f64;
    let mut sum = vec![0.0; bins];
    let mut sum_sq = vec![0.0; bins];
    let mut counts = vec![0.0; bins];
    for d in draws {
        counts.iter_mut().for_each(|c| *c = 0.0);
        for &x in d {
            if x >= lo && x < hi {
                let k = (((x - lo) / width) as usize).min(bins - 1);
                counts[k] += 1.0;
            }
        }
        for k in 0..bins {
            sum[k] += counts[k];
            sum_sq[k] += counts[k] * counts[k];
        }
    }
    let g = GaussLegendre::g16();
    (0..bins)
        .map(|k| {
            let (a, b) = (lo + k as f64 * width, lo + (k + 1) as f64 * width);
            let mut err = None;
            let integral = g.integrate(a, b, |x| {
                density(x).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    f64::NAN
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            let expected = integral / width;
            let mean = sum[k] / n;
            let var = (sum_sq[k] / n - mean * mean).max(0.0) * n / (n - 1.0);
            let empirical = mean / width;
            let sigma = (var / n).sqrt() / width;
            let allowance = rel_tol * expected.abs() + sigmas * sigma;
            Ok(BinCheck { lo: a, hi: b, empirical, expected, sigma, allowance, pass: (empirical - expected).abs() <= allowance })
        })
        .collect()
}
