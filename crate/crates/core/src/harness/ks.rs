use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a Kolmogorov-Smirnov test. `m` is `None` for the one-sample
/// test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub m: Option<usize>,
    pub p_value: f64,
}

/// Smallest sample accepted by either test.
pub const MIN_SAMPLE: usize = 10;

fn check_sample(name: &str, a: &[f64]) -> Result<()> {
    if a.len() < MIN_SAMPLE {
        return Err(Error::input(format!("{name} has {} points, need at least {MIN_SAMPLE}", a.len())));
    }
    crate::error::ensure_finite(name, a)?;
    if let Some(i) = a.windows(2).position(|p| p[1] < p[0]) {
        return Err(Error::input(format!("{name} is not sorted ascending at index {}", i + 1)));
    }
    Ok(())
}

/// `Q(λ) = 2 Σ (-1)^{k-1} e^{-2k²λ²}`, the Kolmogorov survival function.
/// Small `λ` uses the Jacobi-transformed series, which converges there.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if !(lambda > 0.0) {
        return 1.0;
    }
    let p = if lambda < 1.18 {
        let y = -std::f64::consts::PI * std::f64::consts::PI / (8.0 * lambda * lambda);
        let s: f64 = (1..=20).map(|k| ((2 * k - 1) as f64).powi(2) * y).map(f64::exp).sum();
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * s
    } else {
        let s: f64 = (1..=100)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp()
            })
            .sum();
        2.0 * s
    };
    p.clamp(0.0, 1.0)
}

/// Asymptotic p-value with Stephens' finite-size correction of `√n_e`.
fn p_value(d: f64, n_eff: f64) -> f64 {
    let r = n_eff.sqrt();
    kolmogorov_q((r + 0.12 + 0.11 / r) * d)
}

/// Two-sample test on ascending samples. Ties within and across samples are
/// stepped over together, so `D` is the exact sup-distance of the two
/// empirical distribution functions.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    check_sample("first sample", a)?;
    check_sample("second sample", b)?;
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] == x {
            i += 1;
        }
        while j < m && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let n_eff = (n * m) as f64 / (n + m) as f64;
    Ok(KsResult { statistic: d, n, m: Some(m), p_value: p_value(d, n_eff) })
}

/// One-sample test of an ascending sample against a distribution function.
/// The curve is checked for range and monotonicity at the sample points.
pub fn ks_one_sample<F: FnMut(f64) -> Result<f64>>(a: &[f64], mut cdf: F) -> Result<KsResult> {
    check_sample("sample", a)?;
    let n = a.len();
    let mut d = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    for (i, &x) in a.iter().enumerate() {
        let f = cdf(x)?;
        if !(-1e-9..=1.0 + 1e-9).contains(&f) {
            return Err(Error::input(format!("cdf({x}) = {f} is outside [0, 1]")));
        }
        if f < prev - 1e-12 {
            return Err(Error::input(format!("cdf is not monotone: drops to {f} at {x}")));
        }
        prev = prev.max(f);
        let f = f.clamp(0.0, 1.0);
        d = d.max((i + 1) as f64 / n as f64 - f).max(f - i as f64 / n as f64);
    }
    Ok(KsResult { statistic: d, n, m: None, p_value: p_value(d, n as f64) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_branches_meet() {
        let lo = kolmogorov_q(1.18 - 1e-12);
        let hi = kolmogorov_q(1.18);
        assert!((lo - hi).abs() < 1e-12);
        // tabulated critical values
        assert!((kolmogorov_q(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_q(1.9495) - 0.001).abs() < 1e-5);
        assert_eq!(kolmogorov_q(0.0), 1.0);
    }

    #[test]
    fn identical_and_disjoint_samples() {
        let a: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        let r = ks_two_sample(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        let b: Vec<f64> = a.iter().map(|x| x + 10.0).collect();
        assert_eq!(ks_two_sample(&a, &b).unwrap().statistic, 1.0);
    }

    #[test]
    fn ties_are_stepped_together() {
        let a = vec![1.0; 10];
        let b: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { 2.0 }).collect();
        assert!((ks_two_sample(&a, &b).unwrap().statistic - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let short = vec![0.0; 9];
        let ok: Vec<f64> = (0..20).map(f64::from).collect();
        assert!(ks_two_sample(&short, &ok).unwrap_err().is_input_error());
        let mut unsorted = ok.clone();
        unsorted.swap(3, 4);
        assert!(ks_two_sample(&unsorted, &ok).unwrap_err().is_input_error());
        let down = ks_one_sample(&ok, |x| Ok(1.0 / (1.0 + x)));
        assert!(down.unwrap_err().is_input_error());
    }

    #[test]
    fn one_sample_exact_quantiles() {
        // points at the midpoints of n equal-probability cells: D = 1/(2n)
        let n = 50;
        let a: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let r = ks_one_sample(&a, |x| Ok(x)).unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-15);
        assert!(r.p_value > 0.99);
    }
}
