//! Airy kernel and the soft-edge one-point densities of the interlaced
//! β = 4 spiked system.

use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::airy::{ai, airy_pair, airy_tail};
use crate::error::{Error, Result};
use crate::interp::QuinticTable;
use crate::quad::{adaptive, GaussLegendre};

const KERNEL_FLOOR: f64 = -15.0;

/// `K(X, Y) = ∫_0^∞ Ai(u + X) Ai(u + Y) du` by adaptive quadrature.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    if !(x >= KERNEL_FLOOR && y >= KERNEL_FLOOR) {
        return Err(Error::input(format!("airy kernel needs X, Y >= {KERNEL_FLOOR}, got ({x}, {y})")));
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    // past u + lo = 20 the integrand is below 1e-50
    let upper = (20.0 - lo).max(6.0);
    let scale = (airy_kernel_diagonal(lo) * airy_kernel_diagonal(hi)).sqrt().max(1e-300);
    adaptive(0.0, upper, 1e-13 * scale, |u| ai(u + lo) * ai(u + hi))
}

/// Closed form of the diagonal, `Ai'(X)^2 - X Ai(X)^2`.
pub fn airy_kernel_diagonal(x: f64) -> f64 {
    let (a, d) = airy_pair(x);
    d * d - x * a * a
}

/// Scaled density of the `y` species: `K(X,X)/2 - Ai(X) ∫_X^∞ Ai / 4`.
pub fn density_species_y(x: f64) -> Result<f64> {
    if !(x >= -10.0) {
        return Err(Error::input(format!("density_species_y needs X >= -10, got {x}")));
    }
    Ok(0.5 * airy_kernel_diagonal(x) - 0.25 * ai(x) * airy_tail(x))
}

/// GOE soft-edge density `K(X,X) + Ai(X) ∫_{-∞}^X Ai / 2`.
pub fn goe_soft_density(x: f64) -> f64 {
    airy_kernel_diagonal(x) + 0.5 * ai(x) * (1.0 - airy_tail(x))
}

/// Truncation constants behind a [`BlindDensity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlindTruncation {
    pub y_lo: f64,
    pub y_hi: f64,
    pub step: f64,
    /// Depth of the damped integral giving the table's starting value.
    pub tau_max: f64,
}

/// Parity-blind soft-edge density for a Robin parameter `w <= 0`.
///
/// With `H(y) = ∫_0^∞ e^{wτ/2} Ai(y - τ) dτ` and `B(y) = ∫_y^∞ Ai` the
/// double integrals reduce to
///
/// `ρ(X) = K(X,X)/2 - ½ ∫_X^∞ Ai'(y) H(y) dy - (w/4) ∫_X^∞ B(y) (Ai(y) + w H(y)/2) dy`.
///
/// `H' = Ai + wH/2` is stepped cell by cell from `y_lo`; the two outer
/// integrals are accumulated from the top of the grid.
#[derive(Debug, Clone)]
pub struct BlindDensity {
    w: f64,
    h_table: QuinticTable,
    cum_i1: Vec<f64>,
    cum_i2: Vec<f64>,
    trunc: BlindTruncation,
}

const BLIND_LO: f64 = -8.0;
const BLIND_HI: f64 = 16.0;
const BLIND_STEP: f64 = 0.02;

impl BlindDensity {
    pub fn new(w: f64) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::input("w must be finite"));
        }
        if w > 0.0 {
            return Err(Error::Unsupported(format!(
                "blind density for w = {w} > 0: the defining integral is not known to converge; \
                 use the Monte Carlo histogram instead"
            )));
        }
        let g = GaussLegendre::g16();
        let n = ((BLIND_HI - BLIND_LO) / BLIND_STEP).round() as usize;
        let ys: Vec<f64> = (0..=n).map(|k| BLIND_LO + k as f64 * BLIND_STEP).collect();
        let (h0, tau_max) = start_value(w, BLIND_LO);
        let decay = (0.5 * w * BLIND_STEP).exp();
        let mut hv = vec![h0; n + 1];
        for k in 0..n {
            let cell = g.integrate(0.0, BLIND_STEP, |t| (0.5 * w * (BLIND_STEP - t)).exp() * ai(ys[k] + t));
            hv[k + 1] = decay * hv[k] + cell;
        }
        let pairs: Vec<(f64, f64)> = ys.iter().map(|&y| airy_pair(y)).collect();
        let d1: Vec<f64> = pairs.iter().zip(&hv).map(|(p, h)| p.0 + 0.5 * w * h).collect();
        let d2: Vec<f64> = pairs.iter().zip(&d1).map(|(p, d)| p.1 + 0.5 * w * d).collect();
        let h_table = QuinticTable::new(BLIND_LO, BLIND_STEP, hv, d1, d2);
        let mut cum_i1 = vec![0.0; n + 1];
        let mut cum_i2 = vec![0.0; n + 1];
        let mut out = BlindDensity {
            w,
            h_table,
            cum_i1: Vec::new(),
            cum_i2: Vec::new(),
            trunc: BlindTruncation { y_lo: BLIND_LO, y_hi: BLIND_HI, step: BLIND_STEP, tau_max },
        };
        for k in (0..n).rev() {
            let (c1, c2) = out.cell_integrals(ys[k], ys[k + 1]);
            cum_i1[k] = cum_i1[k + 1] + c1;
            cum_i2[k] = cum_i2[k + 1] + c2;
        }
        out.cum_i1 = cum_i1;
        out.cum_i2 = cum_i2;
        Ok(out)
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn truncation(&self) -> BlindTruncation {
        self.trunc
    }

    /// `H(y)` on the table range.
    pub fn damped_integral(&self, y: f64) -> f64 {
        self.h_table.eval(y)
    }

    fn cell_integrals(&self, a: f64, b: f64) -> (f64, f64) {
        let g = GaussLegendre::g16();
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let (mut i1, mut i2) = (0.0, 0.0);
        for (x, wt) in g.nodes.iter().zip(&g.weights) {
            let y = mid + half * x;
            let (a_y, ap_y) = airy_pair(y);
            let h = self.h_table.eval(y);
            i1 += wt * ap_y * h;
            i2 += wt * airy_tail(y) * (a_y + 0.5 * self.w * h);
        }
        (i1 * half, i2 * half)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= BLIND_LO) {
            return Err(Error::input(format!("blind density needs X >= {BLIND_LO}, got {x}")));
        }
        let diag = 0.5 * airy_kernel_diagonal(x);
        if x >= BLIND_HI {
            return Ok(diag);
        }
        let u = (x - BLIND_LO) / BLIND_STEP;
        let k = (u.floor() as usize).min(self.cum_i1.len() - 2);
        let top = BLIND_LO + (k + 1) as f64 * BLIND_STEP;
        let (c1, c2) = self.cell_integrals(x, top);
        let i1 = self.cum_i1[k + 1] + c1;
        let i2 = self.cum_i2[k + 1] + c2;
        Ok(diag - 0.5 * i1 - 0.25 * self.w * i2)
    }
}

/// `H(y0)` and the truncation depth used to get it.
fn start_value(w: f64, y0: f64) -> (f64, f64) {
    let g = GaussLegendre::g16();
    if w == 0.0 {
        return (1.0 - airy_tail(y0), f64::INFINITY);
    }
    let tau_max = (74.0 / w.abs()).min(600.0);
    let panels = (tau_max / 0.25).ceil() as usize;
    if w.abs() >= 0.05 {
        let v = g.composite(0.0, tau_max, panels, |t| (0.5 * w * t).exp() * ai(y0 - t));
        (v, tau_max)
    } else {
        // one integration by parts: the integrand then decays like τ^{-3/4}
        // times the slowly damped exponential, well enough for tiny |w|
        let v = g.composite(0.0, tau_max, panels, |t| (0.5 * w * t).exp() * (1.0 - airy_tail(y0 - t)));
        (1.0 - airy_tail(y0) + 0.5 * w * v, tau_max)
    }
}

fn cache() -> &'static Mutex<Option<Arc<BlindDensity>>> {
    static LAST: Mutex<Option<Arc<BlindDensity>>> = Mutex::new(None);
    &LAST
}

/// Blind density at a single point; reuses the table of the last `w` seen.
pub fn density_blind(x: f64, w: f64) -> Result<f64> {
    let table = {
        let mut slot = cache().lock().unwrap_or_else(|e| e.into_inner());
        match slot.as_ref() {
            Some(t) if t.w.to_bits() == w.to_bits() => Arc::clone(t),
            _ => {
                let t = Arc::new(BlindDensity::new(w)?);
                *slot = Some(Arc::clone(&t));
                t
            }
        }
    };
    table.eval(x)
}
