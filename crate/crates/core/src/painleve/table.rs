use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::QuinticTable;
use crate::quad::GaussLegendre;
use crate::softedge::airy::{airy, airy_tail};

/// Hastings-McLeod solution `q'' = s q + 2 q^3`, `q ~ Ai`, on a uniform
/// ascending grid, together with
/// `E(s) = exp(-∫_s^∞ q)` and `F(s) = exp(-∫_s^∞ (t - s) q^2)`.
#[derive(Debug, Clone)]
pub struct PainleveTable {
    s: Vec<f64>,
    q: Vec<f64>,
    q_prime: Vec<f64>,
    e: Vec<f64>,
    f: Vec<f64>,
    q_interp: QuinticTable,
    ln_e: QuinticTable,
    ln_f: QuinticTable,
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    s: f64,
    q: f64,
    q_prime: f64,
    #[serde(rename = "E")]
    e: f64,
    #[serde(rename = "F")]
    f: f64,
}

pub const DEFAULT_S_MIN: f64 = -12.0;
pub const DEFAULT_S_MAX: f64 = 8.0;
pub const DEFAULT_STEP: f64 = 0.005;

/// State `(q, q', ∫q, ∫q^2, ∫t q^2)` with the integrals running from `s` to
/// the start of the sweep; derivatives in `s`.
type State = [f64; 5];

fn rhs(s: f64, y: &State) -> State {
    let (q, p) = (y[0], y[1]);
    let q2 = q * q;
    [p, s * q + 2.0 * q * q2, -q, -q2, -s * q2]
}

fn rk4(s: f64, y: &State, h: f64) -> State {
    let add = |y: &State, k: &State, c: f64| -> State { std::array::from_fn(|i| y[i] + c * k[i]) };
    let k1 = rhs(s, y);
    let k2 = rhs(s + 0.5 * h, &add(y, &k1, 0.5 * h));
    let k3 = rhs(s + 0.5 * h, &add(y, &k2, 0.5 * h));
    let k4 = rhs(s + h, &add(y, &k3, h));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// One grid step of length `h` (negative: backward), subdivided until
/// step doubling agrees; returns the Richardson-extrapolated state.
fn controlled_step(s: f64, y: &State, h: f64) -> State {
    let mut m = 1usize;
    loop {
        let sub = h / m as f64;
        let mut full = *y;
        let mut fine = *y;
        for j in 0..m {
            let sj = s + j as f64 * sub;
            full = rk4(sj, &full, sub);
            let mid = rk4(sj, &fine, 0.5 * sub);
            fine = rk4(sj + 0.5 * sub, &mid, 0.5 * sub);
        }
        // relative in q and q': an amplitude error of q ~ Ai selects a
        // different member of the k Ai family and is amplified downstream
        let err = (0..2).map(|i| (fine[i] - full[i]).abs() / fine[i].abs()).fold(0.0, f64::max) / 15.0;
        if err < 1e-15 || m >= 1 << 10 {
            return std::array::from_fn(|i| fine[i] + (fine[i] - full[i]) / 15.0);
        }
        m *= 2;
    }
}

/// Below this point the backward sweep has lost more accuracy (errors grow
/// like `exp(2^{3/2}|s|^{3/2}/3)`) than the left asymptotic series has.
pub const ASYMPTOTIC_JOIN: f64 = -6.5;

const LEFT_SERIES: [f64; 6] =
    [1.0, 1.0 / 8.0, -73.0 / 128.0, 10657.0 / 1024.0, -13912277.0 / 32768.0, 8045883943.0 / 262144.0];

/// `q ~ sqrt(-s/2) Σ a_k s^{-3k}` and its derivative, for `s < 0`.
pub fn left_asymptotic(s: f64) -> (f64, f64) {
    let r = (-0.5 * s).sqrt();
    let (mut p, mut dp) = (0.0, 0.0);
    for (k, a) in LEFT_SERIES.iter().enumerate() {
        let e = -3.0 * k as f64;
        p += a * s.powf(e);
        dp += a * e * s.powf(e - 1.0);
    }
    (r * p, -p / (4.0 * r) + r * dp)
}

/// Integrate backward from `s_max`, where `q = Ai`, down to `s_min`; below
/// [`ASYMPTOTIC_JOIN`] the left asymptotic series takes over.
pub fn solve_hastings_mcleod(s_min: f64, s_max: f64, h_s: f64) -> Result<PainleveTable> {
    if !(s_max >= 8.0 && s_min <= -10.0 && h_s > 0.0 && h_s <= 0.01) {
        return Err(Error::input(format!(
            "Painlevé table needs s_max >= 8, s_min <= -10, 0 < h_s <= 0.01; got ({s_min}, {s_max}, {h_s})"
        )));
    }
    let n = ((s_max - s_min) / h_s).round() as usize;
    let h = (s_max - s_min) / n as f64;
    let start = airy(s_max)?;
    let mut y: State = [start.ai, start.ai_prime, 0.0, 0.0, 0.0];
    let mut q = vec![0.0; n + 1];
    let mut qp = vec![0.0; n + 1];
    let mut a0 = vec![0.0; n + 1];
    let mut a1 = vec![0.0; n + 1];
    let mut a2 = vec![0.0; n + 1];
    let s_at = |k: usize| s_min + k as f64 * h;
    let g = GaussLegendre::g16();
    for k in (0..=n).rev() {
        if k < n && s_at(k) < ASYMPTOTIC_JOIN {
            let (lo, hi) = (s_at(k), s_at(k + 1));
            let q_of = |t: f64| left_asymptotic(t).0;
            let (q0, p0) = left_asymptotic(lo);
            y = [
                q0,
                p0,
                y[2] + g.integrate(lo, hi, q_of),
                y[3] + g.integrate(lo, hi, |t| q_of(t).powi(2)),
                y[4] + g.integrate(lo, hi, |t| t * q_of(t).powi(2)),
            ];
        } else if k < n {
            y = controlled_step(s_at(k + 1), &y, -h);
            if !(y[0].abs() <= 1e6) {
                return Err(Error::numerical(format!(
                    "Painlevé solution blew up near s = {}; reduce the step",
                    s_at(k)
                )));
            }
        }
        q[k] = y[0];
        qp[k] = y[1];
        a0[k] = y[2];
        a1[k] = y[3];
        a2[k] = y[4];
    }
    // tail beyond s_max with q = Ai
    let (ai, aip) = (start.ai, start.ai_prime);
    let t0 = airy_tail(s_max);
    let t1 = aip * aip - s_max * ai * ai;
    let t2 = -(s_max * s_max * ai * ai - s_max * aip * aip + ai * aip) / 3.0;
    let s: Vec<f64> = (0..=n).map(s_at).collect();
    let e: Vec<f64> = a0.iter().map(|v| (-(v + t0)).exp()).collect();
    let f: Vec<f64> = (0..=n).map(|k| (-((a2[k] + t2) - s[k] * (a1[k] + t1))).exp()).collect();
    PainleveTable::from_columns(s, q, qp, e, f)
}

/// The default table on `[-12, 8]` with step 0.005.
pub fn default_table() -> Result<PainleveTable> {
    solve_hastings_mcleod(DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_STEP)
}

impl PainleveTable {
    /// Rebuild a table from its columns (as written by [`Self::write_csv`]).
    pub fn from_columns(s: Vec<f64>, q: Vec<f64>, q_prime: Vec<f64>, e: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        let n = s.len();
        if n < 3 || [q.len(), q_prime.len(), e.len(), f.len()].iter().any(|&l| l != n) {
            return Err(Error::input("Painlevé table columns must share a length >= 3"));
        }
        let h = (s[n - 1] - s[0]) / (n - 1) as f64;
        if !(h > 0.0) || s.iter().enumerate().any(|(k, v)| (v - (s[0] + k as f64 * h)).abs() > 1e-9 * h.max(1.0)) {
            return Err(Error::input("Painlevé table grid must be uniform and increasing"));
        }
        if q.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::numerical("Hastings-McLeod solution must stay positive"));
        }
        if e.iter().chain(&f).any(|v| !(*v > 0.0 && *v <= 1.0)) {
            return Err(Error::numerical("E and F must lie in (0, 1]"));
        }
        let qpp: Vec<f64> = s.iter().zip(&q).map(|(s, q)| s * q + 2.0 * q * q * q).collect();
        let q_interp = QuinticTable::new(s[0], h, q.clone(), q_prime.clone(), qpp);
        let ln_e = QuinticTable::new(s[0], h, e.iter().map(|v| v.ln()).collect(), q.clone(), q_prime.clone());
        // (ln F)' = ∫_s^∞ q^2, accumulated over the q interpolant
        let g = GaussLegendre::g16();
        let mut a1 = vec![0.0; n];
        a1[n - 1] = q_prime[n - 1] * q_prime[n - 1] - s[n - 1] * q[n - 1] * q[n - 1];
        for k in (0..n - 1).rev() {
            a1[k] = a1[k + 1] + g.integrate(s[k], s[k + 1], |t| q_interp.eval(t).powi(2));
        }
        let ln_f = QuinticTable::new(
            s[0],
            h,
            f.iter().map(|v| v.ln()).collect(),
            a1,
            q.iter().map(|v| -v * v).collect(),
        );
        Ok(PainleveTable { s, q, q_prime, e, f, q_interp, ln_e, ln_f })
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn q_prime(&self) -> &[f64] {
        &self.q_prime
    }

    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn s_min(&self) -> f64 {
        self.s[0]
    }

    pub fn s_max(&self) -> f64 {
        self.s[self.s.len() - 1]
    }

    pub fn step(&self) -> f64 {
        (self.s_max() - self.s_min()) / (self.s.len() - 1) as f64
    }

    pub(crate) fn check_range(&self, s: f64) -> Result<()> {
        if self.q_interp.contains(s) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "s = {s} outside the Painlevé table [{}, {}]; extrapolation refused",
                self.s_min(),
                self.s_max()
            )))
        }
    }

    /// `(q(s), q'(s))` by quintic Hermite interpolation.
    pub fn q_at(&self, s: f64) -> Result<(f64, f64)> {
        self.check_range(s)?;
        Ok(self.q_interp.eval_with_derivative(s))
    }

    pub fn ln_e_at(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.ln_e.eval(s))
    }

    pub fn ln_f_at(&self, s: f64) -> Result<f64> {
        self.check_range(s)?;
        Ok(self.ln_f.eval(s))
    }

    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["s", "q", "q_prime", "E", "F"])?;
        for k in 0..self.s.len() {
            let rec = [self.s[k], self.q[k], self.q_prime[k], self.e[k], self.f[k]];
            w.write_record(rec.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let (mut s, mut q, mut qp, mut e, mut f) = (vec![], vec![], vec![], vec![], vec![]);
        for row in r.deserialize() {
            let row: Row = row?;
            s.push(row.s);
            q.push(row.q);
            qp.push(row.q_prime);
            e.push(row.e);
            f.push(row.f);
        }
        PainleveTable::from_columns(s, q, qp, e, f)
    }
}

/// Tracy-Widom GOE distribution `sqrt(F(s) E(s))`.
pub fn tw_goe_cdf(table: &PainleveTable, s: f64) -> Result<f64> {
    Ok((0.5 * (table.ln_e_at(s)? + table.ln_f_at(s)?)).exp())
}
