use rayon::prelude::*;
use serde::Serialize;

use super::lax::lax_between;
use super::table::PainleveTable;
use crate::error::{Error, Result};

/// How a point `(x, w)` of the boundary-value problem maps to the arguments
/// of the Lax-pair distribution: `F(x, w) = F_lax(x_scale x; w_sign w_scale w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeConvention {
    pub w_sign: f64,
    pub x_scale: f64,
    pub w_scale: f64,
}

impl EdgeConvention {
    pub const fn literal(w_sign: f64) -> Self {
        EdgeConvention { w_sign, x_scale: 1.0, w_scale: 1.0 }
    }

    /// Stochastic-operator coordinates, whose `x` and `w` units are
    /// `2^{-2/3}` and `2^{-1/3}` of the Lax-pair ones.
    pub fn operator_units(w_sign: f64) -> Self {
        EdgeConvention { w_sign, x_scale: 2f64.powf(2.0 / 3.0), w_scale: 2f64.powf(1.0 / 3.0) }
    }
}

/// Values on a uniform `(x, w)` grid, row-major in `x`.
#[derive(Debug, Clone, Serialize)]
pub struct FieldGrid {
    pub x0: f64,
    pub dx: f64,
    pub nx: usize,
    pub w0: f64,
    pub dw: f64,
    pub nw: usize,
    pub values: Vec<f64>,
}

impl FieldGrid {
    /// Tabulate `f` on `[x_lo, x_hi] x [w_lo, w_hi]`.
    pub fn from_fn<F: Fn(f64, f64) -> f64>(x: (f64, f64), w: (f64, f64), step: f64, f: F) -> Result<Self> {
        let (nx, nw) = grid_counts(x, w, step)?;
        let mut values = Vec::with_capacity(nx * nw);
        for i in 0..nx {
            for j in 0..nw {
                values.push(f(x.0 + i as f64 * step, w.0 + j as f64 * step));
            }
        }
        Ok(FieldGrid { x0: x.0, dx: step, nx, w0: w.0, dw: step, nw, values })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.nw + j]
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn w(&self, j: usize) -> f64 {
        self.w0 + j as f64 * self.dw
    }
}

fn grid_counts(x: (f64, f64), w: (f64, f64), step: f64) -> Result<(usize, usize)> {
    if !(step > 0.0 && x.1 > x.0 && w.1 > w.0) {
        return Err(Error::input("field grid needs increasing ranges and a positive step"));
    }
    let nx = ((x.1 - x.0) / step).round() as usize + 1;
    let nw = ((w.1 - w.0) / step).round() as usize + 1;
    if nx < 3 || nw < 3 {
        return Err(Error::input("field grid needs at least 3 points per axis"));
    }
    Ok((nx, nw))
}

/// Spiked edge distribution tabulated on a grid under a convention. Each
/// `x` row is propagated once through all `w` nodes, outward from `w = 0`.
pub fn edge_field(
    table: &PainleveTable,
    x: (f64, f64),
    w: (f64, f64),
    step: f64,
    conv: EdgeConvention,
) -> Result<FieldGrid> {
    let (nx, nw) = grid_counts(x, w, step)?;
    let rows: Vec<Vec<f64>> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let xs = conv.x_scale * (x.0 + i as f64 * step);
            let targets: Vec<f64> = (0..nw).map(|j| conv.w_sign * conv.w_scale * (w.0 + j as f64 * step)).collect();
            edge_row(table, xs, &targets)
        })
        .collect::<Result<_>>()?;
    Ok(FieldGrid { x0: x.0, dx: step, nx, w0: w.0, dw: step, nw, values: rows.concat() })
}

/// `F(x; w_j)` for all targets, each obtained by continuing the previous
/// propagation rather than restarting at `w = 0`.
fn edge_row(table: &PainleveTable, s: f64, targets: &[f64]) -> Result<Vec<f64>> {
    let ln_e = table.ln_e_at(s)?;
    let ln_f = table.ln_f_at(s)?;
    let (he, hi) = ((-0.5 * ln_e).exp(), (0.5 * ln_e).exp());
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by(|&a, &b| targets[a].total_cmp(&targets[b]));
    let mut out = vec![0.0; targets.len()];
    // positive targets ascending, negative ones descending from 0
    let (neg, pos): (Vec<usize>, Vec<usize>) = order.into_iter().partition(|&k| targets[k] < 0.0);
    for branch in [pos, neg.into_iter().rev().collect()] {
        let (mut v, mut ln_scale, mut at) = ([1.0, 1.0], 0.0, 0.0);
        for k in branch {
            let (nv, dl) = lax_between(table, s, at, targets[k], v)?;
            v = nv;
            ln_scale += dl;
            at = targets[k];
            let combo = 0.5 * ((v[0] + v[1]) * he + (v[0] - v[1]) * hi);
            out[k] = combo * (ln_scale + ln_e + 0.5 * ln_f).exp();
        }
    }
    Ok(out)
}

/// Central-difference residual of `F_x + (2/β) F_ww + (x - w^2) F_w` at the
/// interior nodes.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualGrid {
    pub grid: FieldGrid,
    pub max_abs: f64,
    pub warnings: Vec<String>,
}

pub fn pde_residual(field: &FieldGrid, beta: f64) -> Result<ResidualGrid> {
    if !(beta > 0.0) {
        return Err(Error::input("beta must be positive"));
    }
    if field.nx < 3 || field.nw < 3 || field.values.len() != field.nx * field.nw {
        return Err(Error::input("field grid needs at least 3 points per axis"));
    }
    let mut warnings = Vec::new();
    if field.dx > 0.05 || field.dw > 0.05 {
        warnings.push(format!(
            "grid steps ({}, {}) exceed 0.05; central differences are coarse",
            field.dx, field.dw
        ));
    }
    let (nx, nw) = (field.nx - 2, field.nw - 2);
    let mut values = Vec::with_capacity(nx * nw);
    let mut max_abs = 0.0f64;
    for i in 1..=nx {
        let x = field.x(i);
        for j in 1..=nw {
            let w = field.w(j);
            let fx = (field.at(i + 1, j) - field.at(i - 1, j)) / (2.0 * field.dx);
            let fw = (field.at(i, j + 1) - field.at(i, j - 1)) / (2.0 * field.dw);
            let fww = (field.at(i, j + 1) - 2.0 * field.at(i, j) + field.at(i, j - 1)) / (field.dw * field.dw);
            let r = fx + 2.0 / beta * fww + (x - w * w) * fw;
            max_abs = max_abs.max(r.abs());
            values.push(r);
        }
    }
    let grid = FieldGrid { x0: field.x(1), dx: field.dx, nx, w0: field.w(1), dw: field.dw, nw, values };
    Ok(ResidualGrid { grid, max_abs, warnings })
}
