use proptest::prelude::*;
use spiked_wishart::harness::suites::{equivalence_suite, EquivalenceParams};
use spiked_wishart::harness::{draw_spectra, ks_one_sample, ks_two_sample, par_draw, Variants};
use spiked_wishart::linalg::Spectrum;
use spiked_wishart::painleve::{default_table, tw_goe_cdf};
use spiked_wishart::sampling::bidiagonal::sample_bidiagonal_spectrum;
use spiked_wishart::sampling::pencil::PencilSpikeScaling;
use spiked_wishart::sampling::rng::stream_rng;
use spiked_wishart::sampling::sao::{sample_stochastic_airy, RobinSaoConfig};
use spiked_wishart::sampling::secular::{rank_one_update_with, sample_secular_pair, UpdateOptions, ZeroWeightScale};
use spiked_wishart::sampling::{chi, Construction, SpikeConfig};

const LEVEL: f64 = 0.001;

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn top(spectra: &[Spectrum]) -> Vec<f64> {
    sorted(spectra.iter().map(|s| s.largest().unwrap()).collect())
}

#[test]
fn chi_squared_four_matches_closed_form() {
    let draws = par_draw(1, "chi", 10_000, |rng| Ok(chi(4.0, rng)?.powi(2))).unwrap();
    let r = ks_one_sample(&sorted(draws), |x| Ok(1.0 - (-x / 2.0).exp() * (1.0 + x / 2.0))).unwrap();
    assert!(r.p_value > LEVEL, "{r:?}");
}

#[test]
fn secular_pairs_always_interlace() {
    let cfg = SpikeConfig::single(1.0, 7.0, 4, 2.0).unwrap();
    let pairs = par_draw(2, "interlace", 100_000, |rng| sample_secular_pair(&cfg, rng)).unwrap();
    assert!(pairs.iter().all(|p| p.lambda.interlaces(&p.y)));
    let quaternion = SpikeConfig::single(4.0, 4.5, 5, 2.0).unwrap();
    let pairs = par_draw(2, "interlace4", 20_000, |rng| sample_secular_pair(&quaternion, rng)).unwrap();
    assert!(pairs.iter().all(|p| p.lambda.len() == 5 && p.y.len() == 5));
}

// With b = 2 and beta = 4 the pooled x and y of a pair form a Laguerre
// orthogonal ensemble of 2N points with weight e^{-λ/4}, i.e. twice the
// spectrum of a real Wishart matrix with 2N + 1 rows and 2N columns.
#[test]
fn quaternion_pair_at_b_two_pools_to_orthogonal_laguerre() {
    let big_n = 3;
    let cfg = SpikeConfig::single(4.0, big_n as f64 - 0.5, big_n, 2.0).unwrap();
    let pairs = par_draw(3, "pair", 10_000, |rng| sample_secular_pair(&cfg, rng)).unwrap();
    let loe_cfg = SpikeConfig::single(1.0, 2.0 * big_n as f64 + 1.0, 2 * big_n, 1.0).unwrap();
    let loe = par_draw(3, "loe", 10_000, |rng| {
        Ok(sample_bidiagonal_spectrum(&loe_cfg, rng)?.values().iter().map(|v| 2.0 * v).collect::<Vec<_>>())
    })
    .unwrap();
    let pooled: Vec<Vec<f64>> = pairs
        .iter()
        .map(|p| sorted(p.lambda.values().iter().chain(p.y.values()).copied().collect()))
        .collect();
    let loe: Vec<Vec<f64>> = loe.into_iter().map(sorted).collect();
    // top, second and bottom point, three checks
    for k in [2 * big_n - 1, 2 * big_n - 2, 0] {
        let a = sorted(pooled.iter().map(|v| v[k]).collect());
        let b = sorted(loe.iter().map(|v| v[k]).collect());
        let r = ks_two_sample(&a, &b).unwrap();
        assert!(r.p_value > LEVEL / 3.0, "order statistic {k}: {r:?}");
    }
}

#[test]
fn unit_spike_is_the_null_ensemble() {
    // at b = 1 the spike factor of the pencil drops out under either convention
    let cfg = SpikeConfig::single(2.0, 6.0, 4, 1.0).unwrap();
    let a = draw_spectra(Construction::Bidiagonal, &cfg, Variants::default(), 10_000, 4).unwrap();
    let v = Variants { pencil_scaling: PencilSpikeScaling::SquareRoot, ..Variants::default() };
    let b = draw_spectra(Construction::Pencil, &cfg, v, 10_000, 5).unwrap();
    let r = ks_two_sample(&top(&a), &top(&b)).unwrap();
    assert!(r.p_value > LEVEL, "{r:?}");
}

#[test]
fn largest_eigenvalue_sits_near_the_soft_edge() {
    let cfg = SpikeConfig::single(2.0, 20.0, 20, 1.0).unwrap();
    let s = draw_spectra(Construction::Bidiagonal, &cfg, Variants::default(), 2_000, 6).unwrap();
    let mean = top(&s).iter().sum::<f64>() / s.len() as f64;
    // weight e^{-λ/2}: edge at β(√n + √N)² = 160, width β(√n + √N)(1/√n + 1/√N)^{1/3},
    // shifted by the Tracy-Widom (β = 2) mean -1.7711
    let (n, big_n) = (20.0f64, 20.0f64);
    let edge = 2.0 * (n.sqrt() + big_n.sqrt()).powi(2);
    let width = 2.0 * (n.sqrt() + big_n.sqrt()) * (1.0 / n.sqrt() + 1.0 / big_n.sqrt()).cbrt();
    let predicted = edge - 1.7711 * width;
    assert!((mean - predicted).abs() < 0.1 * width, "{mean} vs {predicted}");
}

#[test]
fn printed_zero_weight_scale_is_rejected() {
    let cfg = SpikeConfig::single(2.0, 6.0, 4, 1.5).unwrap();
    let mut p = EquivalenceParams::new(cfg, 10_000, 7);
    p.variants = Variants { zero_scale: ZeroWeightScale::Half, ..Variants::default() };
    let out = equivalence_suite(&p).unwrap();
    assert!(!out.report.pass);
    assert!(out.report.failures().any(|c| c.name.starts_with("top-1")));
    p.variants = Variants::default();
    assert!(equivalence_suite(&p).unwrap().report.pass);
}

#[test]
fn square_root_pencil_spike_is_rejected() {
    let cfg = SpikeConfig::single(1.0, 7.0, 4, 3.0).unwrap();
    let mut p = EquivalenceParams::new(cfg, 10_000, 8);
    p.variants = Variants { pencil_scaling: PencilSpikeScaling::SquareRoot, ..Variants::default() };
    let out = equivalence_suite(&p).unwrap();
    assert!(out.report.failures().any(|c| c.name.contains("pencil")));
}

#[test]
fn top_marginal_detects_a_half_unit_spike_shift() {
    let a = SpikeConfig::single(2.0, 6.0, 6, 2.0).unwrap();
    let b = SpikeConfig::single(2.0, 6.0, 6, 2.5).unwrap();
    let sa = draw_spectra(Construction::Bidiagonal, &a, Variants::default(), 10_000, 9).unwrap();
    let sb = draw_spectra(Construction::Bidiagonal, &b, Variants::default(), 10_000, 10).unwrap();
    let r = ks_two_sample(&top(&sa), &top(&sb)).unwrap();
    assert!(r.p_value < LEVEL, "{r:?}");
}

#[test]
fn real_dirichlet_operator_follows_tw_goe() {
    let table = default_table().unwrap();
    let cfg = RobinSaoConfig::dirichlet(1.0);
    let draws = par_draw(11, "sao1", 10_000, |rng| Ok(-sample_stochastic_airy(&cfg, rng)?[0])).unwrap();
    let r = ks_one_sample(&sorted(draws), |x| {
        if x <= table.s_min() {
            Ok(0.0)
        } else if x >= table.s_max() {
            Ok(1.0)
        } else {
            tw_goe_cdf(&table, x)
        }
    })
    .unwrap();
    assert!(r.p_value > LEVEL, "{r:?}");
}

#[test]
fn same_seed_same_spectra() {
    let cfg = SpikeConfig::single(4.0, 6.5, 5, 2.0).unwrap();
    for c in [Construction::Bidiagonal, Construction::Secular, Construction::Pencil] {
        let a = draw_spectra(c, &cfg, Variants::default(), 200, 12).unwrap();
        let b = draw_spectra(c, &cfg, Variants::default(), 200, 12).unwrap();
        assert_eq!(a, b);
    }
}

proptest! {
    #[test]
    fn secular_roots_conserve_mass(
        beta in prop::sample::select(vec![1.0, 2.0, 4.0]),
        big_n in 2usize..=8,
        extra in 0.0..4.0f64,
        b in 0.1..6.0f64,
        seed in any::<u64>(),
    ) {
        let cfg = SpikeConfig::single(beta, big_n as f64 + extra, big_n, 1.0).unwrap();
        let mut rng = stream_rng(seed, 0);
        let y = sample_bidiagonal_spectrum(&SpikeConfig::single(beta, cfg.n, big_n - 1, 1.0).unwrap(), &mut rng).unwrap();
        let zero_shape = 0.5 * beta * (cfg.n - big_n as f64 + 1.0);
        let d = rank_one_update_with(&y, b, zero_shape, beta, &UpdateOptions::default(), &mut rng).unwrap();
        let x = Spectrum::new(d.roots.clone()).unwrap();
        prop_assert!(x.interlaces(&y));
        prop_assert!(x.smallest().unwrap() > 0.0);
        let added = b * (d.q0 + d.q.iter().sum::<f64>());
        let want = y.sum() + added;
        prop_assert!((x.sum() - want).abs() <= 1e-9 * want);
    }

    #[test]
    fn samplers_are_strictly_ordered_and_deterministic(
        c in prop::sample::select(vec![Construction::Bidiagonal, Construction::Secular, Construction::Pencil]),
        beta in prop::sample::select(vec![1.0, 2.0, 4.0]),
        big_n in 1usize..=8,
        extra in 0.0..4.0f64,
        b in 0.2..5.0f64,
        seed in any::<u64>(),
    ) {
        let cfg = SpikeConfig::single(beta, big_n as f64 + extra, big_n, b).unwrap();
        let a = draw_spectra(c, &cfg, Variants::default(), 3, seed).unwrap();
        prop_assert_eq!(&a, &draw_spectra(c, &cfg, Variants::default(), 3, seed).unwrap());
        for s in &a {
            prop_assert_eq!(s.len(), big_n);
            prop_assert!(s.values().windows(2).all(|w| w[0] > w[1]));
            prop_assert!(s.smallest().unwrap() > 0.0);
        }
    }
}
