use crate::error::{ensure_finite, Error, Result};

use super::{check_ties, Spectrum};

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::input("empty tridiagonal matrix"));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::input(format!(
                "off-diagonal has length {} for a matrix of order {}",
                off.len(),
                diag.len()
            )));
        }
        ensure_finite("diag", &diag)?;
        ensure_finite("offdiag", &off)?;
        Ok(SymTridiag { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.off
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Trailing principal submatrix obtained by deleting the first row and column.
    pub fn trailing(&self) -> Option<SymTridiag> {
        (self.len() > 1).then(|| SymTridiag {
            diag: self.diag[1..].to_vec(),
            off: self.off[1..].to_vec(),
        })
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> f64 {
        let m = self.off.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * m
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDL^T factorization of `T - xI`).
    pub fn sturm_count(&self, x: f64) -> usize {
        self.count_with(x, self.pivmin())
    }

    fn count_with(&self, x: f64, pivmin: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let e = self.off[i - 1];
            d = (self.diag[i] - x) - e * e / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
    fn kth_ascending(&self, k: usize, mut lo: f64, mut hi: f64, pivmin: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + pivmin;
            if hi - lo <= tol {
                break;
            }
            if self.count_with(mid, pivmin) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.gershgorin();
        let pad = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + 1e-300;
        (lo - pad, hi + pad)
    }

    /// All eigenvalues in decreasing order; errors on numerical ties.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let vals = self.eigenvalues_desc_unchecked();
        check_ties(&vals)?;
        Ok(Spectrum::new(vals).expect("bisection output is finite and ordered"))
    }

    pub(crate) fn eigenvalues_desc_unchecked(&self) -> Vec<f64> {
        let n = self.len();
        let (glo, ghi) = self.bounds();
        let pivmin = self.pivmin();
        // ascending sweep: each eigenvalue bounds the next from below
        let mut asc: Vec<f64> = Vec::with_capacity(n);
        let mut lo = glo;
        for k in 0..n {
            let v = self.kth_ascending(k, lo, ghi, pivmin);
            asc.push(v);
            lo = v.max(glo);
            // back off so the next search still brackets a tied value
            lo -= 4.0 * f64::EPSILON * lo.abs() + pivmin;
        }
        for i in 1..n {
            if asc[i] < asc[i - 1] {
                asc[i] = asc[i - 1];
            }
        }
        asc.reverse();
        asc
    }

    /// The `k` largest eigenvalues, decreasing.
    pub fn largest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let n = self.len();
        let k = k.min(n);
        let (glo, ghi) = self.bounds();
        let pivmin = self.pivmin();
        let mut out = Vec::with_capacity(k);
        let mut hi = ghi;
        for j in 0..k {
            let v = self.kth_ascending(n - 1 - j, glo, hi, pivmin);
            out.push(v);
            hi = v + 4.0 * f64::EPSILON * v.abs() + pivmin;
        }
        out
    }

    /// The `k` smallest eigenvalues, increasing.
    pub fn smallest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let n = self.len();
        let k = k.min(n);
        let (glo, ghi) = self.bounds();
        let pivmin = self.pivmin();
        let mut out = Vec::with_capacity(k);
        let mut lo = glo;
        for j in 0..k {
            let v = self.kth_ascending(j, lo, ghi, pivmin);
            out.push(v);
            lo = v - 4.0 * f64::EPSILON * v.abs() - pivmin;
        }
        out
    }

    /// Dense matrix-vector product, handy for residual checks.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Eigenvalues of `T` in decreasing order.
pub fn tridiag_eigenvalues(t: &SymTridiag) -> Result<Spectrum> {
    t.eigenvalues()
}

/// Squared-magnitude-consistent first components `q_j = |v_j[0]|` of the
/// unit eigenvectors, ordered like the decreasing eigenvalues. Uses
/// `q_j^2 = p_trail(λ_j) / p'(λ_j)` with both characteristic polynomials
/// evaluated by the three-term recurrence.
pub fn first_components(t: &SymTridiag) -> Result<(Spectrum, Vec<f64>)> {
    if let Some(i) = t.off.iter().position(|&e| e == 0.0) {
        return Err(Error::Reducible { index: i });
    }
    let lambdas = t.eigenvalues()?;
    if t.len() == 1 {
        return Ok((lambdas, vec![1.0]));
    }
    let mut q2: Vec<f64> = lambdas
        .values()
        .iter()
        .map(|&l| trailing_ratio(t, l))
        .collect::<Result<_>>()?;
    let total: f64 = q2.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::numerical("first-component weights do not normalize"));
    }
    for v in &mut q2 {
        *v /= total;
    }
    Ok((lambdas, q2.into_iter().map(f64::sqrt).collect()))
}

/// `det(x - T[1:,1:]) / (d/dx) det(x - T)` by a bottom-up recurrence with
/// joint rescaling.
fn trailing_ratio(t: &SymTridiag, x: f64) -> Result<f64> {
    let n = t.len();
    let d = &t.diag;
    let e = &t.off;
    // D_k = det(x - T[k:, k:]); iterate k from n-1 down to 0
    let (mut d1, mut d2) = (x - d[n - 1], 1.0); // D_{k}, D_{k+1}
    let (mut p1, mut p2) = (1.0, 0.0); // derivatives
    let mut trail = if n == 2 { d1 } else { f64::NAN };
    for k in (0..n - 1).rev() {
        let e2 = e[k] * e[k];
        let dk = (x - d[k]) * d1 - e2 * d2;
        let pk = d1 + (x - d[k]) * p1 - e2 * p2;
        d2 = d1;
        d1 = dk;
        p2 = p1;
        p1 = pk;
        if k == 1 {
            trail = d1;
        }
        let m = d1.abs().max(d2.abs()).max(p1.abs()).max(p2.abs());
        if m > 1e150 || (m < 1e-150 && m > 0.0) {
            let s = m.recip();
            d1 *= s;
            d2 *= s;
            p1 *= s;
            p2 *= s;
            trail *= s;
        }
    }
    let r = trail / p1;
    if !r.is_finite() || r < 0.0 {
        // a tiny negative value is rounding noise in a near-zero weight
        if r.is_finite() && r > -1e-14 {
            return Ok(0.0);
        }
        return Err(Error::numerical(format!("first-component ratio {r} at eigenvalue {x}")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_example() {
        let t = SymTridiag::new(vec![3.0, 1.0], vec![0.0]).unwrap();
        let v = t.eigenvalues().unwrap();
        assert!((v.values()[0] - 3.0).abs() < 1e-14 && (v.values()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_by_two_closed_form() {
        let t = SymTridiag::new(vec![2.0, -1.0], vec![1.5]).unwrap();
        let (l, q) = first_components(&t).unwrap();
        let m = 0.5;
        let r = (1.5f64 * 1.5 + 2.25).sqrt();
        assert!((l.values()[0] - (m + r)).abs() < 1e-14);
        assert!((l.values()[1] - (m - r)).abs() < 1e-14);
        // eigenvector of top eigenvalue is (1.5, λ - 2) up to scale
        let v = [1.5, l.values()[0] - 2.0];
        let q0 = v[0].abs() / (v[0] * v[0] + v[1] * v[1]).sqrt();
        assert!((q[0] - q0).abs() < 1e-13);
    }

    #[test]
    fn reducible_rejected() {
        let t = SymTridiag::new(vec![1.0, 2.0, 3.0], vec![1.0, 0.0]).unwrap();
        assert!(matches!(first_components(&t), Err(Error::Reducible { index: 1 })));
    }

    #[test]
    fn partial_spectra_agree_with_full() {
        let t = SymTridiag::new(vec![4.0, -2.0, 0.5, 7.0, 1.0], vec![1.0, 0.3, -2.0, 0.7]).unwrap();
        let all = t.eigenvalues().unwrap();
        let top = t.largest_eigenvalues(2);
        let bottom = t.smallest_eigenvalues(2);
        let close = |a: f64, b: f64| (a - b).abs() < 1e-13 * (1.0 + a.abs());
        assert!(close(all.values()[0], top[0]) && close(all.values()[1], top[1]));
        assert!(close(all.values()[4], bottom[0]) && close(all.values()[3], bottom[1]));
    }
}
