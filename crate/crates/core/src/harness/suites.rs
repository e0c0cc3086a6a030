//! The verification suites. Each returns a finished [`SuiteReport`] plus the
//! raw samples it was decided on.

use rand::Rng;
use serde::Serialize;

use super::draw::{draw_spectra, par_draw, Variants};
use super::histogram::histogram_vs_density;
use super::ks::{ks_one_sample, ks_two_sample};
use super::report::{CheckKind, Comparison, SampleDump, SuiteOutcome, SuiteReport};
use crate::analytic::{hard_edge_gap, hyp1f1_residue_beta2, ln_hyp1f1_spiked, ln_prefactor, ln_spiked_pdf, ContourQuadrature};
use crate::error::{Error, Result};
use crate::linalg::{first_components, Spectrum};
use crate::painleve::{edge_field, pde_residual, spiked_edge_cdf, tw_goe_cdf, EdgeConvention, PainleveTable};
use crate::sampling::bidiagonal::sample_bidiagonal;
use crate::sampling::hermite::sample_hermite_edge;
use crate::sampling::multispike::sample_multi_spike;
use crate::sampling::sao::{sample_stochastic_airy, RobinSaoConfig};
use crate::sampling::secular::{sample_secular_pair_with, UpdateOptions};
use crate::sampling::{Construction, SpikeConfig};
use crate::softedge::{density_blind, goe_soft_density};

/// Family-wise level of the KS checks in every suite.
pub const LEVEL: f64 = 0.001;

/// Suites runnable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Equivalence,
    Hardedge,
    SoftedgeW0,
    SoftedgeW,
    DensityBlind,
    PdeResidual,
    Sao,
    Consistency,
    Residue,
    Identity,
    Eigenvector,
}

impl SuiteName {
    pub const ALL: [SuiteName; 11] = [
        SuiteName::Equivalence,
        SuiteName::Hardedge,
        SuiteName::Consistency,
        SuiteName::Residue,
        SuiteName::SoftedgeW0,
        SuiteName::SoftedgeW,
        SuiteName::Identity,
        SuiteName::PdeResidual,
        SuiteName::DensityBlind,
        SuiteName::Sao,
        SuiteName::Eigenvector,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Equivalence => "equivalence",
            SuiteName::Hardedge => "hardedge",
            SuiteName::SoftedgeW0 => "softedge-w0",
            SuiteName::SoftedgeW => "softedge-w",
            SuiteName::DensityBlind => "density-blind",
            SuiteName::PdeResidual => "pde-residual",
            SuiteName::Sao => "sao",
            SuiteName::Consistency => "consistency",
            SuiteName::Residue => "residue",
            SuiteName::Identity => "identity",
            SuiteName::Eigenvector => "eigenvector",
        }
    }
}

impl std::str::FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown suite '{s}'")))
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn params<T: Serialize>(p: &T) -> serde_json::Value {
    serde_json::to_value(p).unwrap_or(serde_json::Value::Null)
}

fn column(name: &str, values: &[f64]) -> SampleDump {
    SampleDump { name: name.to_string(), columns: vec![name.to_string()], rows: values.iter().map(|v| vec![*v]).collect() }
}

/// `(λ - 16N) / (4 (4N)^{1/3})`, the soft-edge scaling of the β = 4 spiked
/// ensemble with `n = N - 1/2`.
pub fn quaternion_edge_scaled(lambda: f64, big_n: usize) -> f64 {
    let n = big_n as f64;
    (lambda - 16.0 * n) / (4.0 * (4.0 * n).cbrt())
}

/// Spike `b = 2 - 2^{1/3} w / N^{1/3}` in the critical window.
pub fn critical_spike(w: f64, big_n: usize) -> f64 {
    2.0 - 2f64.cbrt() * w / (big_n as f64).cbrt()
}

/// `F(x; w)` continued by 0 below and 1 above the tabulated range.
pub fn edge_cdf(table: &PainleveTable, x: f64, w: f64) -> Result<f64> {
    if x < table.s_min() {
        Ok(0.0)
    } else if x > table.s_max() {
        Ok(1.0)
    } else {
        spiked_edge_cdf(table, x, w)
    }
}

fn quaternion_config(big_n: usize, b: f64) -> Result<SpikeConfig> {
    SpikeConfig::single(4.0, big_n as f64 - 0.5, big_n, b)
}

/// Scaled largest eigenvalues of the β = 4, `n = N - 1/2` model.
fn quaternion_edge_sample(big_n: usize, b: f64, n_samples: usize, seed: u64, tag: &str) -> Result<Vec<f64>> {
    let cfg = quaternion_config(big_n, b)?;
    let v = par_draw(seed, tag, n_samples, |rng| {
        let t = sample_bidiagonal(&cfg, rng)?.to_tridiag();
        Ok(quaternion_edge_scaled(t.largest_eigenvalues(1)[0], big_n))
    })
    .map_err(|e| Error::Sampler { construction: "bidiagonal", source: Box::new(e) })?;
    Ok(sorted(v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceParams {
    pub config: SpikeConfig,
    pub n_samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub variants: Variants,
}

impl EquivalenceParams {
    pub fn new(config: SpikeConfig, n_samples: usize, seed: u64) -> Self {
        EquivalenceParams { config, n_samples, seed, variants: Variants::default() }
    }
}

/// Order statistics compared individually: the three largest and the three
/// smallest, without repeats for small `N`.
pub fn marginal_indices(big_n: usize) -> Vec<(String, usize)> {
    let k = big_n.min(3);
    let mut out: Vec<(String, usize)> = (0..k).map(|i| (format!("top-{}", i + 1), i)).collect();
    for i in 0..k {
        let idx = big_n - 1 - i;
        if !out.iter().any(|(_, j)| *j == idx) {
            out.push((format!("bottom-{}", i + 1), idx));
        }
    }
    out
}

/// Bidiagonal, secular and pencil samplers on disjoint streams; pairwise KS
/// on each order-statistic marginal and on the pooled spectrum.
pub fn equivalence_suite(p: &EquivalenceParams) -> Result<SuiteOutcome> {
    let cons = [Construction::Bidiagonal, Construction::Secular, Construction::Pencil];
    let draws: Vec<Vec<Spectrum>> = cons
        .iter()
        .map(|&c| draw_spectra(c, &p.config, p.variants, p.n_samples, p.seed))
        .collect::<Result<_>>()?;
    let mut report = SuiteReport::new("equivalence", Some(p.seed), params(p), LEVEL);
    if p.variants != Variants::default() {
        report.note(format!("sampler variants: {:?}", p.variants));
    }
    let big_n = p.config.big_n;
    let mut marginals: Vec<(String, Vec<Vec<f64>>)> = marginal_indices(big_n)
        .into_iter()
        .map(|(name, idx)| (name, draws.iter().map(|d| sorted(d.iter().map(|s| s.values()[idx]).collect())).collect()))
        .collect();
    marginals.push((
        "pooled".to_string(),
        draws.iter().map(|d| sorted(d.iter().flat_map(|s| s.values().iter().copied()).collect())).collect(),
    ));
    for (name, samples) in &marginals {
        for i in 0..cons.len() {
            for j in i + 1..cons.len() {
                let r = ks_two_sample(&samples[i], &samples[j])?;
                report.push_ks(format!("{name}: {} vs {}", cons[i].tag(), cons[j].tag()), &r, true);
            }
        }
    }
    let columns: Vec<String> = (1..=big_n).map(|k| format!("lambda_{k}")).collect();
    let dumps = cons
        .iter()
        .zip(&draws)
        .map(|(c, d)| SampleDump {
            name: c.tag().to_string(),
            columns: columns.clone(),
            rows: d.iter().map(|s| s.values().to_vec()).collect(),
        })
        .collect();
    Ok(SuiteOutcome { report: report.finish(), dumps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardEdgeParams {
    pub betas: Vec<f64>,
    pub spikes: Vec<f64>,
    pub s_values: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    /// Allowed deviation in binomial standard errors.
    pub sigmas: f64,
}

impl HardEdgeParams {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        HardEdgeParams {
            betas: vec![1.0, 2.0],
            spikes: vec![1.0, 2.0, 3.0, 4.0],
            s_values: vec![0.1, 0.3, 1.0],
            n_samples,
            seed,
            sigmas: 3.0,
        }
    }
}

/// Smallest eigenvalue of the multi-spike model at `n = N - 1 + 2/β`
/// against the exponential gap law.
pub fn hardedge_suite(p: &HardEdgeParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("hardedge", Some(p.seed), params(p), LEVEL);
    report.note("target law: P(no eigenvalue in (0, s)) = exp(-s sum 1/(2 b_j)) at n = N - 1 + 2/beta");
    let mut dumps = Vec::new();
    let big_n = p.spikes.len();
    for &beta in &p.betas {
        let cfg = SpikeConfig::new(beta, big_n as f64 - 1.0 + 2.0 / beta, big_n, p.spikes.clone())?;
        let tag = format!("multispike-beta{beta}");
        let mins = par_draw(p.seed, &tag, p.n_samples, |rng| {
            sample_multi_spike(&cfg, rng)?.smallest().ok_or_else(|| Error::numerical("empty spectrum"))
        })
        .map_err(|e| Error::Sampler { construction: "multispike", source: Box::new(e) })?;
        let mins = sorted(mins);
        let n = mins.len() as f64;
        for &s in &p.s_values {
            let expected = hard_edge_gap(s, &p.spikes)?;
            let observed = mins.iter().filter(|&&m| m > s).count() as f64 / n;
            let se = (expected * (1.0 - expected) / n).sqrt();
            let c = Comparison::within(
                format!("beta={beta} survival at s={s}"),
                CheckKind::Binomial,
                (observed - expected).abs() / se,
                p.sigmas,
            )
            .with_detail(format!("observed {observed:.6}, expected {expected:.6}, se {se:.2e}"));
            report.push(c);
        }
        let r = ks_one_sample(&mins, |s| Ok(1.0 - hard_edge_gap(s.max(0.0), &p.spikes)?))?;
        report.push_ks(format!("beta={beta} smallest eigenvalue vs 1 - gap(s)"), &r, true);
        dumps.push(column(&format!("min-beta{beta}"), &mins));
    }
    Ok(SuiteOutcome { report: report.finish(), dumps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SoftEdgeParams {
    pub n_samples: usize,
    pub seed: u64,
    /// Size of the GOE tridiagonal reference.
    pub goe_n: usize,
    /// Size of the β = 4 spiked model.
    pub spiked_n: usize,
    /// Spike parameters `w` (the `softedge-w` suite only).
    pub ws: Vec<f64>,
}

impl SoftEdgeParams {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        SoftEdgeParams { n_samples, seed, goe_n: 400, spiked_n: 200, ws: vec![-1.0, 1.0] }
    }
}

/// GOE and critically spiked (`b = 2`) β = 4 largest eigenvalues against
/// Tracy-Widom GOE.
pub fn softedge_w0_suite(table: &PainleveTable, p: &SoftEdgeParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("softedge-w0", Some(p.seed), params(p), LEVEL);
    let goe = par_draw(p.seed, "hermite", p.n_samples, |rng| sample_hermite_edge(1.0, p.goe_n, rng))
        .map_err(|e| Error::Sampler { construction: "hermite", source: Box::new(e) })?;
    let goe = sorted(goe);
    let cdf = |x: f64| edge_cdf(table, x, 0.0);
    report.push_ks(format!("GOE N={} scaled largest eigenvalue vs TW-GOE", p.goe_n), &ks_one_sample(&goe, cdf)?, true);
    let spiked = quaternion_edge_sample(p.spiked_n, 2.0, p.n_samples, p.seed, "bidiagonal-w0")?;
    report.push_ks(
        format!("beta=4 b=2 N={} scaled largest eigenvalue vs TW-GOE", p.spiked_n),
        &ks_one_sample(&spiked, cdf)?,
        true,
    );
    let dumps = vec![column("goe", &goe), column("beta4-b2", &spiked)];
    Ok(SuiteOutcome { report: report.finish(), dumps })
}

/// β = 4 largest eigenvalues at `b = 2 - 2^{1/3} w / N^{1/3}` against the
/// Lax-pair distribution `F(x; w)`.
pub fn softedge_w_suite(table: &PainleveTable, p: &SoftEdgeParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("softedge-w", Some(p.seed), params(p), LEVEL);
    let mut dumps = Vec::new();
    for &w in &p.ws {
        let b = critical_spike(w, p.spiked_n);
        let v = quaternion_edge_sample(p.spiked_n, b, p.n_samples, p.seed, &format!("bidiagonal-w{w}"))?;
        let r = ks_one_sample(&v, |x| edge_cdf(table, x, w))?;
        report.push_ks(format!("w={w} (b={b:.6}) scaled largest eigenvalue vs F(x; w)"), &r, true);
        dumps.push(column(&format!("w{w}"), &v));
    }
    Ok(SuiteOutcome { report: report.finish(), dumps })
}

/// `F(x; 0)` against Tracy-Widom GOE on every node of the table.
pub fn identity_suite(table: &PainleveTable, tol: f64) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("identity", None, serde_json::json!({ "tol": tol }), LEVEL);
    let mut worst = 0.0f64;
    for &s in table.s_grid() {
        worst = worst.max((spiked_edge_cdf(table, s, 0.0)? - tw_goe_cdf(table, s)?).abs());
    }
    report.push(
        Comparison::within("max |F(x; 0) - TW-GOE(x)| over the table grid", CheckKind::Tolerance, worst, tol)
            .with_detail(format!("{} nodes on [{}, {}]", table.s_grid().len(), table.s_min(), table.s_max())),
    );
    Ok(SuiteOutcome { report: report.finish(), dumps: Vec::new() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdeParams {
    pub x: (f64, f64),
    pub w: (f64, f64),
    pub step: f64,
    pub beta: f64,
    pub tol: f64,
}

impl Default for PdeParams {
    fn default() -> Self {
        PdeParams { x: (-4.0, 2.0), w: (-2.0, 2.0), step: 0.02, beta: 4.0, tol: 5e-3 }
    }
}

fn residual_at(table: &PainleveTable, p: &PdeParams, step: f64, conv: EdgeConvention) -> Result<f64> {
    let field = edge_field(table, p.x, p.w, step, conv)?;
    Ok(pde_residual(&field, p.beta)?.max_abs)
}

/// Finite-difference residual of the boundary-value PDE on the Lax-pair
/// distribution. The decision uses the two literal sign conventions; the
/// operator-unit rescaling is reported alongside.
pub fn pde_residual_suite(table: &PainleveTable, p: &PdeParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("pde-residual", None, params(p), LEVEL);
    let half = 0.5 * p.step;
    let mut literal = Vec::new();
    for sign in [1.0, -1.0] {
        let conv = EdgeConvention::literal(sign);
        let (r1, r2) = (residual_at(table, p, p.step, conv)?, residual_at(table, p, half, conv)?);
        report.push(
            Comparison::within(format!("literal w-sign {sign:+}: max residual"), CheckKind::Tolerance, r1, p.tol)
                .with_detail(format!("step {}: {r1:.3e}; step {half}: {r2:.3e}", p.step))
                .informational(),
        );
        literal.push((sign, r1, r2));
    }
    let &(sign, r1, r2) = literal.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("two conventions");
    report.push(
        Comparison::within("min over w-sign conventions of max residual", CheckKind::Tolerance, r1, p.tol)
            .with_detail(format!("attained by w-sign {sign:+}")),
    );
    report.push(
        Comparison::within("residual ratio under step halving (best convention)", CheckKind::Tolerance, r2 / r1, 1.0)
            .with_detail(format!("{r1:.3e} -> {r2:.3e}")),
    );
    for sign in [1.0, -1.0] {
        let conv = EdgeConvention::operator_units(sign);
        let (o1, o2) = (residual_at(table, p, p.step, conv)?, residual_at(table, p, half, conv)?);
        report.push(
            Comparison::within(
                format!("operator units (x 2^(2/3), w 2^(1/3)), w-sign {sign:+}: max residual"),
                CheckKind::Tolerance,
                o1,
                p.tol,
            )
            .with_detail(format!("step {}: {o1:.3e}; step {half}: {o2:.3e}", p.step))
            .informational(),
        );
    }
    Ok(SuiteOutcome { report: report.finish(), dumps: Vec::new() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityBlindParams {
    pub n_samples: usize,
    pub seed: u64,
    pub big_n: usize,
    pub w: f64,
    /// Closed-form comparison at `w = 0`: range, grid step and tolerance.
    pub closed_form_range: (f64, f64),
    pub closed_form_step: f64,
    pub closed_form_tol: f64,
    pub window: (f64, f64),
    pub bins: usize,
    pub rel_tol: f64,
    pub sigmas: f64,
    /// Largest roots computed per draw; the rest lie far below the window.
    pub top_roots: usize,
}

impl DensityBlindParams {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        DensityBlindParams {
            n_samples,
            seed,
            big_n: 200,
            w: -2.0,
            closed_form_range: (-6.0, 2.0),
            closed_form_step: 0.01,
            closed_form_tol: 1e-4,
            window: (-4.0, 0.0),
            bins: 16,
            rel_tol: 0.05,
            sigmas: 3.0,
            top_roots: 20,
        }
    }
}

/// Blind (both species pooled) soft-edge density: the `w = 0` closed form,
/// then a Monte Carlo histogram of the interlaced β = 4 pair at `w`.
pub fn density_blind_suite(p: &DensityBlindParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("density-blind", Some(p.seed), params(p), LEVEL);
    let (a, b) = p.closed_form_range;
    let steps = ((b - a) / p.closed_form_step).round() as usize;
    let mut worst = 0.0f64;
    for k in 0..=steps {
        let x = a + k as f64 * p.closed_form_step;
        worst = worst.max((density_blind(x, 0.0)? - goe_soft_density(x)).abs());
    }
    report.push(Comparison::within(
        "w=0 blind density vs GOE soft-edge closed form (max abs)",
        CheckKind::Tolerance,
        worst,
        p.closed_form_tol,
    ));

    let cfg = quaternion_config(p.big_n, critical_spike(p.w, p.big_n))?;
    let opts = UpdateOptions { top_roots: Some(p.top_roots), ..Default::default() };
    let floor = p.window.0;
    let draws = par_draw(p.seed, "secular-blind", p.n_samples, |rng| {
        let (pair, _) = sample_secular_pair_with(&cfg, &opts, rng)?;
        let x: Vec<f64> = pair.lambda.values().iter().map(|&l| quaternion_edge_scaled(l, p.big_n)).collect();
        if x.len() == p.top_roots && x[x.len() - 1] >= floor {
            return Err(Error::numerical(format!("{} roots do not reach below X = {floor}", p.top_roots)));
        }
        let y = pair.y.values().iter().map(|&l| quaternion_edge_scaled(l, p.big_n));
        Ok(x.into_iter().chain(y).filter(|&v| v >= floor).collect::<Vec<f64>>())
    })
    .map_err(|e| Error::Sampler { construction: "secular", source: Box::new(e) })?;
    let bins = histogram_vs_density(&draws, p.window, p.bins, |x| density_blind(x, p.w), p.rel_tol, p.sigmas)?;
    for bin in &bins {
        report.push(
            Comparison::within(
                format!("w={} bin [{:.2}, {:.2})", p.w, bin.lo, bin.hi),
                CheckKind::Bin,
                (bin.empirical - bin.expected).abs(),
                bin.allowance,
            )
            .with_detail(format!("empirical {:.5}, density {:.5}, sigma {:.1e}", bin.empirical, bin.expected, bin.sigma)),
        );
    }
    let pooled: Vec<Vec<f64>> = draws.iter().flatten().map(|v| vec![*v]).collect();
    let dumps = vec![SampleDump { name: "pooled".into(), columns: vec!["X".into()], rows: pooled }];
    Ok(SuiteOutcome { report: report.finish(), dumps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaoParams {
    pub n_samples: usize,
    pub seed: u64,
    pub beta: f64,
    pub w: f64,
    pub step: f64,
    pub fine_step: f64,
    pub airy_zero_tol: f64,
}

impl SaoParams {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        SaoParams { n_samples, seed, beta: 4.0, w: 0.0, step: 0.02, fine_step: 0.005, airy_zero_tol: 5e-3 }
    }
}

/// Magnitude of the first zero of Ai.
pub const AIRY_ZERO: f64 = 2.338_107_410_459_767;

/// Noiseless Dirichlet ground state, then the Robin operator's `-λ_min`
/// against `F(x; w)`.
pub fn sao_suite(table: &PainleveTable, p: &SaoParams) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("sao", Some(p.seed), params(p), LEVEL);
    let mut ground = Vec::new();
    for step in [p.step, p.fine_step] {
        let cfg = RobinSaoConfig { step, ..RobinSaoConfig::dirichlet(f64::INFINITY) };
        let v = sample_stochastic_airy(&cfg, &mut crate::sampling::rng::stream_rng(0, 0))?[0];
        report.push(
            Comparison::within(
                format!("noiseless Dirichlet ground state, step {step}"),
                CheckKind::Tolerance,
                (v - AIRY_ZERO).abs(),
                p.airy_zero_tol,
            )
            .with_detail(format!("{v:.8}")),
        );
        ground.push(v);
    }
    report.push(
        Comparison::within(
            "ground-state error shrinks on the fine grid",
            CheckKind::Tolerance,
            (ground[1] - AIRY_ZERO).abs() / (ground[0] - AIRY_ZERO).abs().max(f64::MIN_POSITIVE),
            1.0,
        )
        .with_detail(format!("{:.3e} -> {:.3e}", (ground[0] - AIRY_ZERO).abs(), (ground[1] - AIRY_ZERO).abs())),
    );
    let cfg = RobinSaoConfig { step: p.step, ..RobinSaoConfig::new(p.beta, p.w) };
    let v = par_draw(p.seed, "sao", p.n_samples, |rng| Ok(-sample_stochastic_airy(&cfg, rng)?[0]))
        .map_err(|e| Error::Sampler { construction: "sao", source: Box::new(e) })?;
    let v = sorted(v);
    let r = ks_one_sample(&v, |x| edge_cdf(table, x, p.w))?;
    report.push_ks(format!("beta={} w={} -lambda_min vs F(x; w)", p.beta, p.w), &r, true);
    let (xs, ws) = (2f64.powf(2.0 / 3.0), 2f64.cbrt());
    let r = ks_one_sample(&v, |x| edge_cdf(table, xs * x, ws * p.w))?;
    report.push_ks(format!("beta={} w={} -lambda_min vs F(2^(2/3) x; 2^(1/3) w)", p.beta, p.w), &r, false);
    Ok(SuiteOutcome { report: report.finish(), dumps: vec![column("minus-lambda-min", &v)] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraParams {
    pub seed: u64,
    pub n_configs: usize,
    pub tol: f64,
}

fn distinct_points<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        x.sort_by(|a, b| b.total_cmp(a));
        if x.windows(2).all(|p| p[0] - p[1] >= min_gap) {
            return x;
        }
    }
}

/// The contour-integral density divided by prefactor times `₁F₁` must be
/// one constant, `2π / Γ(Nβ/2)`, across configurations.
pub fn consistency_suite(p: &AlgebraParams, cases: &[(f64, usize)]) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("consistency", Some(p.seed), params(p), LEVEL);
    report.note(format!("(beta, N) cases: {cases:?}"));
    let quad = ContourQuadrature::default();
    for &(beta, big_n) in cases {
        let ratios = par_draw(p.seed, &format!("consistency-{beta}-{big_n}"), p.n_configs, |rng| {
            let b = rng.random_range(0.3..4.0);
            let n = big_n as f64 - 1.0 + rng.random_range(0.2..4.0);
            let cfg = SpikeConfig::single(beta, n, big_n, b)?;
            let lambda = distinct_points(rng, big_n, 0.1, 12.0, 0.05);
            let mu = (b - 1.0) / (2.0 * b);
            let ln_pdf = ln_spiked_pdf(&cfg, &lambda, &quad)?;
            Ok(ln_pdf - ln_prefactor(&cfg, &lambda)? - ln_hyp1f1_spiked(beta, mu, &lambda)?)
        })?;
        let r: Vec<f64> = ratios.iter().map(|v| v.exp()).collect();
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        let var = r.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (r.len() as f64 - 1.0);
        let cv = var.sqrt() / mean;
        let expected = 2.0 * std::f64::consts::PI / libm::tgamma(0.5 * beta * big_n as f64);
        report.push(
            Comparison::within(format!("beta={beta} N={big_n}: coefficient of variation"), CheckKind::Tolerance, cv, p.tol)
                .with_detail(format!("mean ratio {mean:.12}, 2 pi / Gamma(N beta / 2) = {expected:.12}")),
        );
    }
    Ok(SuiteOutcome { report: report.finish(), dumps: Vec::new() })
}

/// Contour `₁F₁` against the β = 2 residue sum.
pub fn residue_suite(p: &AlgebraParams, sizes: &[usize]) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("residue", Some(p.seed), params(p), LEVEL);
    for &n in sizes {
        let errs = par_draw(p.seed, &format!("residue-{n}"), p.n_configs, |rng| {
            let c = rng.random_range(-3.0..3.0);
            let x = distinct_points(rng, n, 0.0, 5.0, 0.1);
            let a = ln_hyp1f1_spiked(2.0, c, &x)?.exp();
            let b = hyp1f1_residue_beta2(c, &x)?;
            Ok((a - b).abs() / b.abs())
        })?;
        let worst = errs.into_iter().fold(0.0, f64::max);
        report.push(Comparison::within(format!("N={n}: max relative difference"), CheckKind::Tolerance, worst, p.tol));
    }
    Ok(SuiteOutcome { report: report.finish(), dumps: Vec::new() })
}

/// `T_11 = Σ q_j² λ_j` for the first eigenvector components of sampled
/// tridiagonals with `N <= max_n`.
pub fn eigenvector_suite(p: &AlgebraParams, max_n: usize) -> Result<SuiteOutcome> {
    let mut report = SuiteReport::new("eigenvector", Some(p.seed), params(p), LEVEL);
    report.note(format!("N drawn from 1..={max_n}"));
    let errs = par_draw(p.seed, "eigenvector", p.n_configs, |rng| {
        let beta = [1.0, 2.0, 4.0, rng.random_range(0.5..6.0)][rng.random_range(0..4)];
        let big_n = rng.random_range(1..=max_n);
        let n = big_n as f64 - 1.0 + rng.random_range(0.3..6.0);
        let cfg = SpikeConfig::single(beta, n, big_n, rng.random_range(0.2..5.0))?;
        let t = sample_bidiagonal(&cfg, rng)?.to_tridiag();
        let (lambda, q) = first_components(&t)?;
        let s: f64 = lambda.values().iter().zip(&q).map(|(l, q)| q * q * l).sum();
        Ok((s - t.diag()[0]).abs() / t.diag()[0].abs())
    })?;
    let worst = errs.into_iter().fold(0.0, f64::max);
    report.push(Comparison::within("max relative error of the corner entry", CheckKind::Tolerance, worst, p.tol));
    Ok(SuiteOutcome { report: report.finish(), dumps: Vec::new() })
}
