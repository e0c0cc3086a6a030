//! Airy function Ai, its derivative and its tail integral.
//!
//! Ai and Ai' come from Taylor steps off a table of anchors every 0.5 on
//! [-8, 12] and from the asymptotic expansions outside. The anchors are
//! produced by stepping the ODE `y'' = x y` with the same Taylor series:
//! backward from the large-x asymptotics at 12 (the stable direction for
//! the recessive solution) and forward from the exact values at 0 into the
//! oscillatory region.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interp::QuinticTable;
use crate::quad::GaussLegendre;

pub const AI0: f64 = 0.355_028_053_887_817_24;
pub const AIP0: f64 = -0.258_819_403_792_806_8;

const ANCHOR_LO: f64 = -8.0;
const ANCHOR_HI: f64 = 12.0;
const ANCHOR_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryEval {
    pub x: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

/// Ai and Ai' for `|x| <= 40`.
pub fn airy(x: f64) -> Result<AiryEval> {
    if !(x.abs() <= 40.0) {
        return Err(Error::input(format!("airy argument {x} outside [-40, 40]")));
    }
    let (ai, ai_prime) = airy_pair(x);
    Ok(AiryEval { x, ai, ai_prime })
}

/// Ai(x) without the domain check (asymptotic beyond the tables).
pub fn ai(x: f64) -> f64 {
    airy_pair(x).0
}

pub(crate) fn airy_pair(x: f64) -> (f64, f64) {
    if x >= ANCHOR_HI {
        return asymptotic_positive(x);
    }
    if x < ANCHOR_LO {
        return asymptotic_negative(-x);
    }
    let table = anchors();
    let k = ((x - ANCHOR_LO) / ANCHOR_STEP).round() as usize;
    let x0 = ANCHOR_LO + k as f64 * ANCHOR_STEP;
    let (a, d) = table[k];
    taylor_step(x0, a, d, x - x0)
}

fn anchors() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = ((ANCHOR_HI - ANCHOR_LO) / ANCHOR_STEP).round() as usize;
        let zero = (-ANCHOR_LO / ANCHOR_STEP).round() as usize;
        let mut t = vec![(0.0, 0.0); n + 1];
        t[n] = asymptotic_positive(ANCHOR_HI);
        for k in (zero + 1..n).rev() {
            let x1 = ANCHOR_LO + (k + 1) as f64 * ANCHOR_STEP;
            t[k] = taylor_step(x1, t[k + 1].0, t[k + 1].1, -ANCHOR_STEP);
        }
        t[zero] = (AI0, AIP0);
        for k in (0..zero).rev() {
            let x1 = ANCHOR_LO + (k + 1) as f64 * ANCHOR_STEP;
            t[k] = taylor_step(x1, t[k + 1].0, t[k + 1].1, -ANCHOR_STEP);
        }
        t
    })
}

/// Solution of `y'' = x y` with `y(x0) = a`, `y'(x0) = d`, at `x0 + t`.
fn taylor_step(x0: f64, a: f64, d: f64, t: f64) -> (f64, f64) {
    // c_{k+2} (k+2)(k+1) = x0 c_k + c_{k-1}
    let (mut cm1, mut c0, mut c1) = (0.0, a, d);
    let mut y = a + d * t;
    let mut yp = d;
    let mut tk = t;
    let mut small = 0;
    for k in 0..120 {
        let c2 = (x0 * c0 + cm1) / ((k + 2) as f64 * (k + 1) as f64);
        let pk1 = tk; // t^(k+1)
        tk *= t; // t^(k+2)
        let term = c2 * tk;
        let dterm = (k + 2) as f64 * c2 * pk1;
        y += term;
        yp += dterm;
        let scale = y.abs() + yp.abs() * t.abs() + f64::MIN_POSITIVE;
        if term.abs() <= 1e-18 * scale && dterm.abs() * t.abs() <= 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        cm1 = c0;
        c0 = c1;
        c1 = c2;
    }
    (y, yp)
}

fn u_coeffs() -> &'static [f64] {
    static U: OnceLock<Vec<f64>> = OnceLock::new();
    U.get_or_init(|| {
        let mut u = vec![1.0];
        for k in 1..60 {
            let kf = k as f64;
            let r = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
            u.push(u[k - 1] * r);
        }
        u
    })
}

fn v_coeff(k: usize) -> f64 {
    let kf = k as f64;
    if k == 0 {
        1.0
    } else {
        -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u_coeffs()[k]
    }
}

/// Terms of `Σ s_k c_k ζ^{-k}` until they stop decreasing.
fn optimal_sum<F: Fn(usize) -> f64>(coeff: F, zeta: f64, alternate: bool) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for k in 0..u_coeffs().len() {
        let term = coeff(k) * zk;
        if term.abs() > prev {
            break;
        }
        sum += if alternate && k % 2 == 1 { -term } else { term };
        prev = term.abs();
        if prev < 1e-17 * sum.abs() {
            break;
        }
        zk /= zeta;
    }
    sum
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.sqrt().sqrt();
    let su = optimal_sum(|k| u_coeffs()[k], zeta, true);
    let sv = optimal_sum(v_coeff, zeta, true);
    (e / q * su, -e * q * sv)
}

/// Ai(-z), Ai'(-z) for large z > 0.
fn asymptotic_negative(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let z2 = zeta * zeta;
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let q = z.sqrt().sqrt();
    let n = u_coeffs().len() / 2;
    let u_even = optimal_sum(|k| if k < n { u_coeffs()[2 * k] } else { 0.0 }, z2, true);
    let u_odd = optimal_sum(|k| if k < n { u_coeffs()[2 * k + 1] } else { 0.0 }, z2, true) / zeta;
    let v_even = optimal_sum(|k| if k < n { v_coeff(2 * k) } else { 0.0 }, z2, true);
    let v_odd = optimal_sum(|k| if k + 1 < n { v_coeff(2 * k + 1) } else { 0.0 }, z2, true) / zeta;
    let rp = PI.sqrt();
    ((c * u_even + s * u_odd) / (rp * q), q / rp * (s * v_even - c * v_odd))
}

const TAIL_LO: f64 = -40.0;
const TAIL_HI: f64 = 40.0;
const TAIL_STEP: f64 = 0.02;

fn tail_table() -> &'static QuinticTable {
    static TABLE: OnceLock<QuinticTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = ((TAIL_HI - TAIL_LO) / TAIL_STEP).round() as usize;
        let g = GaussLegendre::g16();
        let xs: Vec<f64> = (0..=n).map(|k| TAIL_LO + k as f64 * TAIL_STEP).collect();
        let mut f = vec![0.0; n + 1];
        // leading-order tail beyond the table, ~1e-78 in absolute terms
        let (a_hi, _) = airy_pair(TAIL_HI);
        f[n] = a_hi / TAIL_HI.sqrt();
        for k in (0..n).rev() {
            f[k] = f[k + 1] + g.integrate(xs[k], xs[k + 1], ai);
        }
        let pairs: Vec<(f64, f64)> = xs.iter().map(|&x| airy_pair(x)).collect();
        let d1 = pairs.iter().map(|p| -p.0).collect();
        let d2 = pairs.iter().map(|p| -p.1).collect();
        QuinticTable::new(TAIL_LO, TAIL_STEP, f, d1, d2)
    })
}

/// `∫_y^∞ Ai(t) dt`.
pub fn airy_tail(y: f64) -> f64 {
    if y > TAIL_HI {
        let (a, _) = airy_pair(y);
        return a / y.sqrt();
    }
    if y < TAIL_LO {
        let z = -y;
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        return 1.0 + (zeta - FRAC_PI_4).sin() / (PI.sqrt() * z.powf(0.75));
    }
    tail_table().eval(y)
}
