//! Piecewise Hermite interpolation on uniform grids.

/// Quintic Hermite interpolant through values and first two derivatives
/// sampled on `x0 + k h`.
#[derive(Debug, Clone)]
pub struct QuinticTable {
    x0: f64,
    h: f64,
    f: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl QuinticTable {
    pub fn new(x0: f64, h: f64, f: Vec<f64>, d1: Vec<f64>, d2: Vec<f64>) -> Self {
        assert!(h > 0.0 && f.len() >= 2 && f.len() == d1.len() && f.len() == d2.len());
        QuinticTable { x0, h, f, d1, d2 }
    }

    pub fn lo(&self) -> f64 {
        self.x0
    }

    pub fn hi(&self) -> f64 {
        self.x0 + self.h * (self.f.len() - 1) as f64
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo() - 1e-12 * self.h && x <= self.hi() + 1e-12 * self.h
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let u = (x - self.x0) / self.h;
        let k = (u.floor().max(0.0) as usize).min(self.f.len() - 2);
        (k, (u - k as f64).clamp(0.0, 1.0))
    }

    /// Value and first derivative; `x` is clamped to the table.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let (k, t) = self.locate(x);
        let h = self.h;
        let (f0, f1) = (self.f[k], self.f[k + 1]);
        let (p0, p1) = (self.d1[k] * h, self.d1[k + 1] * h);
        let (a0, a1) = (self.d2[k] * h * h, self.d2[k + 1] * h * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let t5 = t4 * t;
        let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
        let h3 = 0.5 * (t3 - 2.0 * t4 + t5);
        let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        let v = h0 * f0 + h1 * p0 + h2 * a0 + h5 * f1 + h4 * p1 + h3 * a1;
        let g0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        let g1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        let g2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
        let g3 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
        let g4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        let d = (g0 * (f0 - f1) + g1 * p0 + g2 * a0 + g4 * p1 + g3 * a1) / h;
        (v, d)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_with_derivative(x).0
    }
}
