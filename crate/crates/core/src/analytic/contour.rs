//! Contour integrals behind the spiked density and the one-variable-spike
//! hypergeometric function
//!
//! `₁F₁^{(2/β)}(β/2; βN/2; c x) = Γ(Na) c^{1-Na} (1/2πi) ∫ e^{cw} Π (w - x_j)^{-a} dw`,
//! `a = β/2`, over an upward contour to the right of every `x_j` (c > 0).
//!
//! Two independent quadratures are provided. [`hyp1f1_spiked`] runs the
//! trapezoid rule along a parabola through the saddle point, and
//! [`spiked_pdf`] integrates the density's `t`-integral along a shifted
//! straight line with Gauss-Legendre panels and an asymptotic tail.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::sampling::SpikeConfig;

/// Controls for the straight-line quadrature of [`spiked_pdf`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourQuadrature {
    /// Truncation point of the line integral; `None` picks it from the data.
    pub t_max: Option<f64>,
    /// Initial node count (at least 64); doubled until converged.
    pub n_nodes: usize,
    /// Relative agreement required between successive doublings.
    pub rel_tol: f64,
    /// Estimated relative error above which the evaluation fails.
    pub fail_tol: f64,
}

impl Default for ContourQuadrature {
    fn default() -> Self {
        ContourQuadrature { t_max: None, n_nodes: 1024, rel_tol: 1e-8, fail_tol: 1e-6 }
    }
}

/// A quadrature value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub t_max: f64,
    pub n_nodes: usize,
}

/// Root of `a Σ 1/(σ - x_j) = c` above `max x`, for `c > 0`.
fn saddle(x: &[f64], a: f64, c: f64) -> f64 {
    let xmax = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let big_na = a * x.len() as f64;
    let g = |s: f64| a * x.iter().map(|xj| 1.0 / (s - xj)).sum::<f64>() - c;
    // work in the offset d = σ - xmax so tiny offsets stay accurate
    let (mut lo, mut hi) = (0.0f64, big_na / c);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(xmax + mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    xmax + 0.5 * (lo + hi)
}

fn check_points(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::input("need at least one point"));
    }
    crate::error::ensure_finite("x", x)
}

/// `ln ₁F₁^{(2/β)}(β/2; βN/2; c x)` with `N = x.len()`.
pub fn ln_hyp1f1_spiked(beta: f64, c: f64, x: &[f64]) -> Result<f64> {
    check_points(x)?;
    if !(beta > 0.0 && beta.is_finite()) || !c.is_finite() {
        return Err(Error::input("need beta > 0 and finite c"));
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    // F(c; x) = F(|c|; -x)
    let pts: Vec<f64> = if c > 0.0 { x.to_vec() } else { x.iter().map(|v| -v).collect() };
    let c = c.abs();
    let a = 0.5 * beta;
    let na = a * pts.len() as f64;
    let xmax = pts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sigma = saddle(&pts, a, c);
    let mu = sigma - xmax;
    let base: Vec<f64> = pts.iter().map(|xj| (sigma - xj).ln()).collect();
    let l0 = c * sigma - a * base.iter().sum::<f64>();

    // w(u) = xmax + μ (1 + iu)²; integrand normalized to 1 at u = 0
    let integrand = |u: f64| -> f64 {
        let z = Complex64::new(1.0, u);
        let w = Complex64::new(xmax, 0.0) + z * z * mu;
        let mut lg = (w - sigma) * c;
        for (xj, bj) in pts.iter().zip(&base) {
            lg -= ((w - xj).ln() - bj) * a;
        }
        (lg.exp() * z).re
    };
    let mut u_max = (46.0 / (c * mu)).sqrt() + 1.0;
    while integrand(u_max).abs() * (1.0 + u_max) > 1e-18 && u_max < 1e6 {
        u_max *= 1.5;
    }
    let mut nodes = 64usize;
    let mut prev = trapezoid_half_line(&integrand, u_max, nodes);
    let mut converged = false;
    for _ in 0..14 {
        nodes *= 2;
        let next = trapezoid_half_line(&integrand, u_max, nodes);
        let diff = (next - prev).abs();
        prev = next;
        if diff <= 1e-13 * next.abs() {
            converged = true;
            break;
        }
    }
    if !converged || !(prev > 0.0) {
        return Err(Error::Quadrature { what: "parabolic contour for 1F1", estimate: prev });
    }
    let ln_i = l0 + (2.0 * mu / std::f64::consts::PI).ln() + prev.ln();
    Ok(libm::lgamma(na) + (1.0 - na) * c.ln() + ln_i)
}

fn trapezoid_half_line<F: Fn(f64) -> f64>(f: &F, u_max: f64, nodes: usize) -> f64 {
    let h = u_max / nodes as f64;
    let mut s = 0.5 * f(0.0);
    for k in 1..=nodes {
        s += f(k as f64 * h);
    }
    s * h
}

/// `₁F₁^{(2/β)}(β/2; βN/2; c x)`, normalized to 1 at `c = 0`.
pub fn hyp1f1_spiked(beta: f64, c: f64, x: &[f64]) -> Result<f64> {
    ln_hyp1f1_spiked(beta, c, x).map(f64::exp)
}

/// The same function at β = 2 by the residue sum
/// `(N-1)! c^{1-N} Σ_j e^{c x_j} / Π_{k≠j} (x_j - x_k)`.
pub fn hyp1f1_residue_beta2(c: f64, x: &[f64]) -> Result<f64> {
    check_points(x)?;
    let n = x.len();
    if c == 0.0 {
        return Ok(1.0);
    }
    let scale = x.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        for j in i + 1..n {
            if (x[i] - x[j]).abs() < 1e-10 * scale {
                return Err(Error::numerical("residue sum is ill-conditioned for near-coincident points"));
            }
        }
    }
    let denom = |j: usize| -> f64 { (0..n).filter(|&k| k != j).map(|k| x[j] - x[k]).product() };
    let fact: f64 = (1..n).map(|k| k as f64).product();
    // The sum is the divided difference of e^{ct}. Relative to the centre m,
    // the Taylor terms of degree < N-1 sum to zero; dropping them avoids the
    // cancellation that otherwise costs digits when |c| is small.
    let m = x.iter().sum::<f64>() / n as f64;
    let t: Vec<f64> = x.iter().map(|v| c * (v - m)).collect();
    if t.iter().all(|v| v.abs() <= 30.0) {
        let sum: f64 = (0..n).map(|j| exp_remainder(t[j], n - 1) / denom(j)).sum();
        return Ok(fact * c.powi(1 - n as i32) * sum * (c * m).exp());
    }
    let shift = x.iter().map(|v| c * v).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = (0..n).map(|j| (c * x[j] - shift).exp() / denom(j)).sum();
    Ok(fact * c.powi(1 - n as i32) * sum * shift.exp())
}

/// `e^t - Σ_{k<d} t^k/k!`.
fn exp_remainder(t: f64, d: usize) -> f64 {
    if t.abs() < 1.0 {
        let mut term = (1..=d).fold(1.0f64, |p, k| p * t / k as f64);
        let mut s = 0.0f64;
        let mut k = d;
        while term != 0.0 && term.abs() > 1e-18 * s.abs() {
            s += term;
            k += 1;
            term *= t / k as f64;
        }
        s
    } else {
        let mut term = 1.0;
        let mut poly = 0.0;
        for k in 0..d {
            poly += term;
            term *= t / (k + 1) as f64;
        }
        t.exp() - poly
    }
}

/// `ln` of the eigenvalue-dependent prefactor
/// `Π λ_j^{β(n-N+1)/2-1} e^{-λ_j/2} Π_{j<k} (λ_j - λ_k)^β`.
pub fn ln_prefactor(cfg: &SpikeConfig, lambda: &[f64]) -> Result<f64> {
    if lambda.len() != cfg.big_n {
        return Err(Error::input("spectrum length differs from N"));
    }
    if lambda.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(Error::input("eigenvalues must be positive"));
    }
    let expo = 0.5 * cfg.beta * (cfg.n - cfg.big_n as f64 + 1.0) - 1.0;
    let mut s: f64 = lambda.iter().map(|l| expo * l.ln() - 0.5 * l).sum();
    for j in 0..lambda.len() {
        for k in j + 1..lambda.len() {
            let d = (lambda[j] - lambda[k]).abs();
            if d == 0.0 {
                return Err(Error::input("eigenvalues must be distinct"));
            }
            s += cfg.beta * d.ln();
        }
    }
    Ok(s)
}

/// `∫ e^{it} Π (it - μλ_j)^{-a} dt` with `μ = (b-1)/(2b)`, taken along
/// `Im t = -σ`, `σ > μ max λ`, so no factor meets its branch cut. Returns
/// the value as `(ln|J|, estimate)`; `J` is positive for valid input.
pub fn density_line_integral(
    beta: f64,
    b: f64,
    lambda: &[f64],
    quad: &ContourQuadrature,
) -> Result<(f64, ContourEstimate)> {
    check_points(lambda)?;
    if quad.n_nodes < 64 {
        return Err(Error::input("contour quadrature needs at least 64 nodes"));
    }
    let a = 0.5 * beta;
    let na = a * lambda.len() as f64;
    if na <= 1.0 {
        return Err(Error::Unsupported(format!(
            "N beta / 2 = {na} <= 1: the line integral decays too slowly"
        )));
    }
    let mu = (b - 1.0) / (2.0 * b);
    let pts: Vec<f64> = lambda.iter().map(|l| mu * l).collect();
    let sigma = saddle(&pts, a, 1.0);
    let s: Vec<f64> = pts.iter().map(|p| sigma - p).collect();
    if s.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::numerical("shifted line does not clear the branch points"));
    }
    let s_min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let s_max = s.iter().cloned().fold(0.0, f64::max);

    let log_h = |tau: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for sj in &s {
            let z = Complex64::new(1.0, tau / sj);
            debug_assert!(z.re > 0.0);
            acc -= z.ln() * a;
        }
        acc
    };
    let integrand = |tau: f64| -> f64 { (log_h(tau) + Complex64::new(0.0, tau)).exp().re };

    let t_max = quad.t_max.unwrap_or_else(|| 200.0f64.max(8.0 * na).max(4.0 * s_max));
    let panel = 1.0f64.min(s_min);
    let base_panels = ((t_max / panel).ceil() as usize).max(quad.n_nodes / 16).max(4);
    let tail = asymptotic_tail(&s, a, t_max);
    let g = GaussLegendre::g16();
    let mut panels = base_panels;
    let mut prev = g.composite(0.0, t_max, panels, integrand) + tail.value;
    let mut estimate = f64::INFINITY;
    let mut value = prev;
    for _ in 0..6 {
        panels *= 2;
        let next = g.composite(0.0, t_max, panels, integrand) + tail.value;
        let diff = (next - prev).abs();
        value = next;
        estimate = diff + tail.last_term;
        prev = next;
        if diff <= quad.rel_tol * next.abs() {
            break;
        }
    }
    let rel = estimate / value.abs();
    let diag = ContourEstimate { value, error_estimate: rel, t_max, n_nodes: panels * 16 };
    if !(rel <= quad.fail_tol) || !value.is_finite() {
        return Err(Error::Quadrature { what: "density line integral", estimate: rel });
    }
    if value <= 0.0 {
        return Err(Error::numerical(format!("density line integral came out nonpositive ({value})")));
    }
    let ln_j = std::f64::consts::LN_2 + sigma - a * s.iter().map(|v| v.ln()).sum::<f64>() + value.ln();
    Ok((ln_j, diag))
}

struct Tail {
    value: f64,
    last_term: f64,
}

/// `Re ∫_T^∞ e^{iτ} h(τ) dτ` by repeated integration by parts,
/// `-e^{iT} Σ_k (-1)^k h^{(k)}(T) / i^{k+1}`, with `h = Π (1 + iτ/s_j)^{-a}`.
fn asymptotic_tail(s: &[f64], a: f64, t: f64) -> Tail {
    const TERMS: usize = 8;
    // derivatives of ln h: φ^{(m)} = -a Σ (-1)^{m-1} (m-1)! i^m / (s_j + iT)^m
    let i = Complex64::new(0.0, 1.0);
    let mut phi = [Complex64::new(0.0, 0.0); TERMS + 1];
    let mut fact = 1.0;
    for m in 1..=TERMS {
        if m > 1 {
            fact *= (m - 1) as f64;
        }
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let mut acc = Complex64::new(0.0, 0.0);
        for sj in s {
            acc += (Complex64::new(*sj, t)).powi(-(m as i32));
        }
        phi[m] = acc * i.powi(m as i32) * (-a * sign * fact);
    }
    let h0 = {
        let mut acc = Complex64::new(0.0, 0.0);
        for sj in s {
            acc -= Complex64::new(1.0, t / sj).ln() * a;
        }
        acc.exp()
    };
    let mut h = vec![h0];
    for n in 1..TERMS {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for k in 0..n {
            acc += phi[n - k] * h[k] * binom;
            binom = binom * (n - 1 - k) as f64 / (k + 1) as f64;
        }
        h.push(acc);
    }
    let eit = Complex64::new(t.cos(), t.sin());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    for (k, hk) in h.iter().enumerate() {
        let term = -eit * hk * (if k % 2 == 0 { 1.0 } else { -1.0 }) / i.powi(k as i32 + 1);
        sum += term;
        last = term.norm();
    }
    Tail { value: sum.re, last_term: last }
}

/// `ln` of the unnormalized spiked eigenvalue density (prefactor times the
/// line integral).
pub fn ln_spiked_pdf(cfg: &SpikeConfig, lambda: &[f64], quad: &ContourQuadrature) -> Result<f64> {
    cfg.validate()?;
    let b = cfg.b()?;
    let pre = ln_prefactor(cfg, lambda)?;
    let a = 0.5 * cfg.beta;
    if a * cfg.big_n as f64 <= 1.0 {
        if cfg.beta == 2.0 {
            // N = 1 at β = 2: J = 2π F(1; μλ) / Γ(1)
            let mu = (b - 1.0) / (2.0 * b);
            let f = hyp1f1_residue_beta2(mu, lambda)?;
            return Ok(pre + (2.0 * std::f64::consts::PI * f).ln());
        }
        return Err(Error::Unsupported(format!(
            "N beta / 2 = {} <= 1 is only supported at beta = 2",
            a * cfg.big_n as f64
        )));
    }
    let (ln_j, _) = density_line_integral(cfg.beta, b, lambda, quad)?;
    Ok(pre + ln_j)
}

/// Unnormalized spiked eigenvalue density at `lambda` (any order).
pub fn spiked_pdf(cfg: &SpikeConfig, lambda: &[f64], quad: &ContourQuadrature) -> Result<f64> {
    ln_spiked_pdf(cfg, lambda, quad).map(f64::exp)
}
