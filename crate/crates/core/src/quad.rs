//! Small quadrature toolkit: Gauss-Legendre panels, adaptive bisection and
//! tanh-sinh for integrands with endpoint singularities.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared 16-point rule.
    pub fn g16() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    /// Shared 8-point rule.
    pub fn g8() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(8))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(mid + half * x);
        }
        s * half
    }

    /// Composite rule over `panels` equal panels.
    pub fn composite<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + k as f64 * h;
                self.integrate(lo, lo + h, &mut f)
            })
            .sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive bisection with the 16-point rule; `tol` is absolute.
pub fn adaptive<F: FnMut(f64) -> f64>(a: f64, b: f64, tol: f64, mut f: F) -> Result<f64> {
    let g = GaussLegendre::g16();
    let mut total = 0.0;
    let mut stack = vec![(a, b, g.integrate(a, b, &mut f), 0u32)];
    let mut worst = 0.0f64;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = g.integrate(lo, mid, &mut f);
        let right = g.integrate(mid, hi, &mut f);
        let err = (left + right - whole).abs();
        let width_tol = tol * (hi - lo) / (b - a);
        if err <= width_tol.max(1e-15 * (left + right).abs()) {
            total += left + right;
        } else if depth >= 40 {
            worst = worst.max(err);
            total += left + right;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    if !total.is_finite() {
        return Err(Error::Quadrature { what: "adaptive Gauss-Legendre", estimate: f64::INFINITY });
    }
    if worst > 1e3 * tol {
        return Err(Error::Quadrature { what: "adaptive Gauss-Legendre", estimate: worst });
    }
    Ok(total)
}

/// Tanh-sinh (double exponential) rule on [a, b]; tolerates integrable
/// endpoint singularities. The integrand is called as `f(x, x - a, b - x)`
/// with both distances computed without cancellation, so singular factors
/// can be formed from them directly. Halves the step until successive
/// estimates agree.
pub fn tanh_sinh<F: FnMut(f64, f64, f64) -> f64>(a: f64, b: f64, rel_tol: f64, mut f: F) -> Result<f64> {
    let half = 0.5 * (b - a);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let t_max = 4.5;
    let mut eval = |t: f64| -> f64 {
        let s = pi2 * t.sinh();
        let c = s.cosh();
        let x = s.tanh();
        let w = pi2 * t.cosh() / (c * c);
        // distance to the nearer endpoint without cancellation
        let e = 1.0 / (s.abs().exp() * c);
        let d = half * e;
        if d <= 0.0 {
            return 0.0;
        }
        let v = if x > 0.0 {
            f(b - d, 2.0 * half - d, d)
        } else {
            f(a + d, d, 2.0 * half - d)
        } * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h * half;
    for _ in 0..8 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let next = sum * h * half;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= rel_tol * next.abs() {
            return Ok(next);
        }
    }
    Err(Error::Quadrature { what: "tanh-sinh", estimate: estimate.abs() })
}
