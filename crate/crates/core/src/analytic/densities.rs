//! Joint and conditional densities of interlaced spectra, and the hard-edge
//! gap law. All are unnormalized unless stated, and all have `ln_` forms.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sampling::SpikeConfig;

fn strictly_interlaced(x: &[f64], y: &[f64]) -> bool {
    let ok_order = x.windows(2).all(|w| w[0] > w[1]) && y.windows(2).all(|w| w[0] > w[1]);
    let ok_gaps = y.iter().enumerate().all(|(j, &yj)| x[j] > yj && x.get(j + 1).is_none_or(|&xn| yj > xn));
    let ok_floor = match (x.len() == y.len(), x.last(), y.last()) {
        (true, _, Some(&ylast)) => ylast > 0.0,
        (false, Some(&xlast), _) => xlast > 0.0,
        _ => false,
    };
    ok_order && ok_gaps && ok_floor
}

/// `ln` of the unnormalized joint density of `(x, y)`; `-inf` off support.
///
/// With `len(y) = N - 1` (zero-block mode):
/// `Π x^{β(n-N+1)/2-1} e^{-x/2b} Π e^{-(1-1/b)y/2} Δ(y) Δ(x) Π |x_i - y_j|^{β/2-1}`.
///
/// With `len(y) = N` (full-rank mode, null `y` drawn at `(n, N)`):
/// `e^{-Σ(x-y)/2b} Π y^{β(n-N+1)/2-1} e^{-y/2} Δ(x) Δ(y) Π |x_i - y_j|^{β/2-1}`;
/// the power of `y` vanishes at `n = N - 1 + 2/β`.
pub fn ln_joint_pdf(cfg: &SpikeConfig, x: &[f64], y: &[f64]) -> Result<f64> {
    cfg.validate()?;
    let b = cfg.b()?;
    let big_n = cfg.big_n;
    if x.len() != big_n || !(y.len() == big_n || y.len() + 1 == big_n) {
        return Err(Error::input("pair lengths do not match N"));
    }
    if !strictly_interlaced(x, y) {
        return Ok(f64::NEG_INFINITY);
    }
    let beta = cfg.beta;
    let expo = 0.5 * beta * (cfg.n - big_n as f64 + 1.0) - 1.0;
    let mut s = 0.0;
    if y.len() + 1 == big_n {
        s += x.iter().map(|v| expo * v.ln() - v / (2.0 * b)).sum::<f64>();
        s -= (1.0 - 1.0 / b) * 0.5 * y.iter().sum::<f64>();
    } else {
        s -= (x.iter().sum::<f64>() - y.iter().sum::<f64>()) / (2.0 * b);
        s += y.iter().map(|v| expo * v.ln() - 0.5 * v).sum::<f64>();
    }
    s += ln_vandermonde(x) + ln_vandermonde(y);
    s += (0.5 * beta - 1.0) * ln_cross(x, y);
    Ok(s)
}

pub fn joint_pdf(cfg: &SpikeConfig, x: &[f64], y: &[f64]) -> Result<f64> {
    ln_joint_pdf(cfg, x, y).map(f64::exp)
}

fn ln_vandermonde(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for j in 0..v.len() {
        for k in j + 1..v.len() {
            s += (v[j] - v[k]).abs().ln();
        }
    }
    s
}

fn ln_cross(x: &[f64], y: &[f64]) -> f64 {
    x.iter().flat_map(|xi| y.iter().map(move |yj| (xi - yj).abs().ln())).sum()
}

/// `ln` of the normalized Dixon-Anderson density of `y` (length N-1) given
/// `x` (length N):
/// `Γ(Nβ/2)/Γ(β/2)^N Δ(y) / Δ(x)^{β-1} Π |y_i - x_j|^{β/2-1}`.
pub fn ln_da_conditional_pdf(beta: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(beta > 0.0) || x.is_empty() || y.len() + 1 != x.len() {
        return Err(Error::input("Dixon-Anderson density needs beta > 0 and len(y) = len(x) - 1"));
    }
    if !strictly_interlaced(x, y) {
        return Ok(f64::NEG_INFINITY);
    }
    let n = x.len() as f64;
    let a = 0.5 * beta;
    Ok(libm::lgamma(n * a) - n * libm::lgamma(a) + ln_vandermonde(y) - (beta - 1.0) * ln_vandermonde(x)
        + (a - 1.0) * ln_cross(x, y))
}

/// Product-domain evaluation of the same density, kept separate from the
/// log-domain path so the two can check each other.
pub fn da_conditional_pdf(beta: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(beta > 0.0) || x.is_empty() || y.len() + 1 != x.len() {
        return Err(Error::input("Dixon-Anderson density needs beta > 0 and len(y) = len(x) - 1"));
    }
    if !strictly_interlaced(x, y) {
        return Ok(0.0);
    }
    let n = x.len() as f64;
    let a = 0.5 * beta;
    let mut v = libm::tgamma(n * a) / libm::tgamma(a).powf(n);
    for j in 0..y.len() {
        for k in j + 1..y.len() {
            v *= y[j] - y[k];
        }
    }
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            v /= (x[j] - x[k]).powf(beta - 1.0);
        }
    }
    for xi in x {
        for yj in y {
            v *= (xi - yj).abs().powf(a - 1.0);
        }
    }
    Ok(v)
}

/// Probability of no eigenvalue in `(0, s)`: `exp(-s Σ 1/(2 b_j))`.
pub fn hard_edge_gap(s: f64, spikes: &[f64]) -> Result<f64> {
    if !(s >= 0.0) || spikes.iter().any(|b| !(*b > 0.0)) {
        return Err(Error::input("need s >= 0 and positive spikes"));
    }
    Ok((-s * spikes.iter().map(|b| 0.5 / b).sum::<f64>()).exp())
}

/// Write `(coordinates..., log_density)` rows with a header.
pub fn write_density_grid<P: AsRef<Path>>(path: P, coord_names: &[&str], rows: &[(Vec<f64>, f64)]) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "{},log_density", coord_names.join(","))?;
    for (coords, ld) in rows {
        let mut line: Vec<String> = coords.iter().map(|v| format!("{v:.16e}")).collect();
        line.push(format!("{ld:.16e}"));
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn off_support_is_zero() {
        let cfg = SpikeConfig::single(2.0, 4.0, 2, 1.5).unwrap();
        assert_eq!(joint_pdf(&cfg, &[3.0, 1.0], &[0.5]).unwrap(), 0.0);
        assert_eq!(da_conditional_pdf(2.0, &[3.0, 1.0], &[3.5]).unwrap(), 0.0);
    }

    #[test]
    fn beta2_two_point_da_is_uniform() {
        let v = da_conditional_pdf(2.0, &[5.0, 1.0], &[2.2]).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gap_law_limits() {
        assert_eq!(hard_edge_gap(0.0, &[1.0, 2.0]).unwrap(), 1.0);
        let v = hard_edge_gap(0.3, &[1.0; 4]).unwrap();
        assert!((v - (-0.6f64).exp()).abs() < 1e-15);
    }
}
