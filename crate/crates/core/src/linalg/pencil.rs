use crate::error::{ensure_finite, Error, Result};

use super::{check_ties, Spectrum};

/// The pencil `xM_N - L_N` from the bidiagonal model of the spiked ensemble,
/// represented by the coefficients of its determinant recurrence
///
/// `B_j(x) = (x - a_j) B_{j-1}(x) - b_{j-1} x B_{j-2}(x)`, `B_0 = 1`, `B_{-1} = 0`.
///
/// The zeros of `B_N` are the eigenvalues and those of `B_{N-1}` the
/// interlacing intermediate values.
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalPencil {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl BidiagonalPencil {
    /// `a` has length N, `b` length N-1; all entries must be positive.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || b.len() + 1 != a.len() {
            return Err(Error::input(format!(
                "pencil needs len(b) = len(a) - 1 >= 0, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        ensure_finite("a", &a)?;
        ensure_finite("b", &b)?;
        if a.iter().chain(&b).any(|&v| v <= 0.0) {
            return Err(Error::input("pencil coefficients must be positive"));
        }
        Ok(BidiagonalPencil { a, b })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `(B_N(x), B_{N-1}(x))` without rescaling; may overflow for large N.
    pub fn recurrence_eval(&self, x: f64) -> (f64, f64) {
        let (mut cur, mut prev) = (1.0, 0.0);
        for j in 0..self.len() {
            let next = (x - self.a[j]) * cur - if j > 0 { self.b[j - 1] * x * prev } else { 0.0 };
            prev = cur;
            cur = next;
        }
        (cur, prev)
    }

    /// Sign of `B_level(x)` via a rescaled recurrence.
    fn sign_at(&self, level: usize, x: f64) -> f64 {
        let (mut cur, mut prev) = (1.0f64, 0.0f64);
        for j in 0..level {
            let next = (x - self.a[j]) * cur - if j > 0 { self.b[j - 1] * x * prev } else { 0.0 };
            prev = cur;
            cur = next;
            let m = cur.abs().max(prev.abs());
            if m > 1e100 || (m < 1e-100 && m > 0.0) {
                cur /= m;
                prev /= m;
            }
        }
        cur.signum() * (cur != 0.0) as u8 as f64
    }

    fn upper_bound(&self) -> f64 {
        let s: f64 = self.a.iter().chain(&self.b).sum();
        s + 1.0
    }

    /// Zeros of `B_N` (eigenvalues) and `B_{N-1}` (intermediate values), both
    /// decreasing. Each level's zeros are bracketed by the previous level's.
    pub fn eigenvalues(&self) -> Result<(Spectrum, Spectrum)> {
        let n = self.len();
        let mut upper = self.upper_bound();
        while self.sign_at(n, upper) <= 0.0 || (n > 1 && self.sign_at(n - 1, upper) <= 0.0) {
            upper *= 2.0;
            if !upper.is_finite() {
                return Err(Error::numerical("pencil upper bound overflowed"));
            }
        }
        let mut prev: Vec<f64> = Vec::new(); // ascending zeros of B_{level-1}
        let mut below: Vec<f64> = Vec::new();
        for level in 1..=n {
            let mut edges = Vec::with_capacity(level + 1);
            edges.push(0.0);
            edges.extend_from_slice(&prev);
            edges.push(upper);
            let mut zeros = Vec::with_capacity(level);
            for w in edges.windows(2) {
                zeros.push(self.bisect(level, w[0], w[1])?);
            }
            below = std::mem::replace(&mut prev, zeros);
        }
        let mut top = prev;
        top.reverse();
        below.reverse();
        check_ties(&top)?;
        check_ties(&below)?;
        Ok((Spectrum::new(top)?, Spectrum::new(below)?))
    }

    fn bisect(&self, level: usize, lo: f64, hi: f64) -> Result<f64> {
        let (mut lo, mut hi) = (lo, hi);
        let slo = self.sign_at(level, lo);
        let shi = self.sign_at(level, hi);
        if slo == 0.0 {
            return Ok(lo);
        }
        if shi == 0.0 {
            return Ok(hi);
        }
        if slo == shi {
            return Err(Error::Bracket { lo, hi });
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let s = self.sign_at(level, mid);
            if s == 0.0 {
                return Ok(mid);
            }
            if s == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_level_zero_is_a1() {
        let p = BidiagonalPencil::new(vec![2.5], vec![]).unwrap();
        let (top, below) = p.eigenvalues().unwrap();
        assert_eq!(top.values(), &[2.5]);
        assert!(below.is_empty());
    }

    #[test]
    fn two_level_quadratic() {
        // B_2 = (x - a2)(x - a1) - b1 x
        let p = BidiagonalPencil::new(vec![1.0, 3.0], vec![0.5]).unwrap();
        let (top, below) = p.eigenvalues().unwrap();
        let (s, prod): (f64, f64) = (1.0 + 3.0 + 0.5, 3.0);
        let disc = (s * s - 4.0 * prod).sqrt();
        assert!((top.values()[0] - 0.5 * (s + disc)).abs() < 1e-14);
        assert!((top.values()[1] - 0.5 * (s - disc)).abs() < 1e-14);
        assert_eq!(below.values(), &[1.0]);
    }
}
