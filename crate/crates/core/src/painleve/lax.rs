use serde::Serialize;

use super::table::{tw_goe_cdf, PainleveTable};
use crate::error::{Error, Result};

/// Largest step in `w` of the Magnus integrator.
pub const W_STEP: f64 = 0.005;

type Mat = [[f64; 2]; 2];

fn lax_matrix(q: f64, qp: f64, s: f64, w: f64) -> Mat {
    [[q * q, -w * q - qp], [-w * q + qp, w * w - s - q * q]]
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// `exp(m)` for a real 2x2 matrix via its traceless part `N`, `N^2 = δ I`.
fn expm2(m: &Mat) -> Mat {
    let t = 0.5 * (m[0][0] + m[1][1]);
    let a = 0.5 * (m[0][0] - m[1][1]);
    let (b, c) = (m[0][1], m[1][0]);
    let delta = a * a + b * c;
    let (ch, sh) = if delta.abs() < 1e-8 {
        (1.0 + delta / 2.0 + delta * delta / 24.0, 1.0 + delta / 6.0 + delta * delta / 120.0)
    } else if delta > 0.0 {
        let r = delta.sqrt();
        (r.cosh(), r.sinh() / r)
    } else {
        let r = (-delta).sqrt();
        (r.cos(), r.sin() / r)
    };
    let e = t.exp();
    [[e * (ch + sh * a), e * sh * b], [e * sh * c, e * (ch - sh * a)]]
}

/// Solution of the Lax system with `v(0) = v0` at `w`, returned as a vector
/// of unit max-norm and the log of the factor removed along the way.
pub fn lax_propagate_scaled(table: &PainleveTable, s: f64, w: f64, v0: [f64; 2]) -> Result<([f64; 2], f64)> {
    lax_between(table, s, 0.0, w, v0)
}

/// Same as [`lax_propagate_scaled`] over `[from, to]` with `v(from) = v0`.
pub fn lax_between(table: &PainleveTable, s: f64, from: f64, to: f64, v0: [f64; 2]) -> Result<([f64; 2], f64)> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(Error::input("w must be finite"));
    }
    let (q, qp) = table.q_at(s)?;
    let mut v = v0;
    let mut ln_scale = 0.0;
    let steps = ((to - from).abs() / W_STEP).ceil().max(1.0) as usize;
    let h = (to - from) / steps as f64;
    let r3 = 3f64.sqrt();
    let (c1, c2) = (0.5 - r3 / 6.0, 0.5 + r3 / 6.0);
    for k in 0..steps {
        let w0 = from + k as f64 * h;
        let a1 = lax_matrix(q, qp, s, w0 + c1 * h);
        let a2 = lax_matrix(q, qp, s, w0 + c2 * h);
        let p = mul(&a2, &a1);
        let r = mul(&a1, &a2);
        // fourth-order Magnus: Ω = h/2 (A1 + A2) + √3/12 h^2 [A2, A1]
        let omega: Mat = std::array::from_fn(|i| {
            std::array::from_fn(|j| 0.5 * h * (a1[i][j] + a2[i][j]) + r3 / 12.0 * h * h * (p[i][j] - r[i][j]))
        });
        let u = expm2(&omega);
        v = [u[0][0] * v[0] + u[0][1] * v[1], u[1][0] * v[0] + u[1][1] * v[1]];
        let m = v[0].abs().max(v[1].abs());
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::numerical(format!("Lax propagation lost the solution at s = {s}, w = {to}")));
        }
        v = [v[0] / m, v[1] / m];
        ln_scale += m.ln();
    }
    Ok((v, ln_scale))
}

/// Propagate an arbitrary initial vector.
pub fn lax_propagate_from(table: &PainleveTable, s: f64, w: f64, v0: [f64; 2]) -> Result<(f64, f64)> {
    let (v, ln_scale) = lax_propagate_scaled(table, s, w, v0)?;
    let k = ln_scale.exp();
    if !k.is_finite() {
        return Err(Error::numerical(format!(
            "Lax solution overflows at s = {s}, w = {w}; use lax_propagate_scaled"
        )));
    }
    Ok((v[0] * k, v[1] * k))
}

/// `(f(s, w), g(s, w))` with `f(s, 0) = g(s, 0) = E(s)`.
pub fn lax_propagate(table: &PainleveTable, s: f64, w: f64) -> Result<(f64, f64)> {
    let e = table.ln_e_at(s)?.exp();
    lax_propagate_from(table, s, w, [e, e])
}

/// `F(x; w) = ½((f + g) E^{-1/2} + (f - g) E^{1/2}) F^{1/2}` at `s = x`.
pub fn spiked_edge_cdf(table: &PainleveTable, s: f64, w: f64) -> Result<f64> {
    let ln_e = table.ln_e_at(s)?;
    let ln_f = table.ln_f_at(s)?;
    // start from (1, 1) and carry E in the log scale
    let (v, ln_scale) = lax_propagate_scaled(table, s, w, [1.0, 1.0])?;
    let (he, hi) = ((-0.5 * ln_e).exp(), (0.5 * ln_e).exp());
    let combo = 0.5 * ((v[0] + v[1]) * he + (v[0] - v[1]) * hi);
    let value = combo * (ln_scale + ln_e + 0.5 * ln_f).exp();
    clamp_cdf(value, s, w)
}

fn clamp_cdf(value: f64, s: f64, w: f64) -> Result<f64> {
    if !value.is_finite() || value < -1e-9 || value > 1.0 + 1e-9 {
        return Err(Error::numerical(format!("edge distribution {value} out of [0, 1] at s = {s}, w = {w}")));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Values of an edge distribution on an abscissa grid at fixed `w`.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeDistribution {
    pub w: f64,
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl EdgeDistribution {
    pub fn spiked(table: &PainleveTable, x_grid: Vec<f64>, w: f64) -> Result<Self> {
        let values = x_grid.iter().map(|&x| spiked_edge_cdf(table, x, w)).collect::<Result<_>>()?;
        Ok(EdgeDistribution { w, x_grid, values })
    }

    pub fn tw_goe(table: &PainleveTable, x_grid: Vec<f64>) -> Result<Self> {
        let values = x_grid.iter().map(|&x| tw_goe_cdf(table, x)).collect::<Result<_>>()?;
        Ok(EdgeDistribution { w: 0.0, x_grid, values })
    }

    /// Largest decrease between neighbouring grid values (0 when monotone).
    pub fn max_decrease(&self) -> f64 {
        self.values.windows(2).map(|p| (p[0] - p[1]).max(0.0)).fold(0.0, f64::max)
    }
}
