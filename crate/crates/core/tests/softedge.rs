use spiked_wishart::harness::suites::{critical_spike, quaternion_edge_scaled};
use spiked_wishart::harness::{histogram_vs_density, par_draw};
use spiked_wishart::sampling::secular::{sample_secular_pair_with, UpdateOptions};
use spiked_wishart::sampling::SpikeConfig;
use spiked_wishart::softedge::{ai, airy_kernel_diagonal, density_blind, density_species_y, goe_soft_density};

/// `∫_0^∞ Ai(x + u)² du` by composite Simpson on [0, 30 - x].
fn kernel_diagonal_by_quadrature(x: f64) -> f64 {
    let top = 30.0 - x.min(0.0);
    let m = 60_000;
    let h = top / m as f64;
    let f = |u: f64| ai(x + u).powi(2);
    let mut s = f(0.0) + f(top);
    for k in 1..m {
        s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn kernel_diagonal_closed_form() {
    let mut x = -8.0;
    while x <= 4.0 {
        let (a, b) = (airy_kernel_diagonal(x), kernel_diagonal_by_quadrature(x));
        assert!((a - b).abs() < 1e-8, "{x}: {a} vs {b}");
        x += 0.25;
    }
}

#[test]
fn blind_density_is_nonnegative() {
    for w in [0.0, -0.5, -2.0, -5.0] {
        let mut x = -7.9;
        while x < 6.0 {
            assert!(density_blind(x, w).unwrap() >= -1e-6, "w {w} x {x}");
            x += 0.05;
        }
    }
}

#[test]
fn blind_density_at_zero_w_is_the_goe_density() {
    let mut x = -6.0;
    while x <= 2.0 {
        assert!((density_blind(x, 0.0).unwrap() - goe_soft_density(x)).abs() < 1e-4);
        x += 0.01;
    }
}

// Blind density = x-species + y-species. At w = 0 the Monte Carlo x-species
// histogram plus the analytic y-species density must give the blind density.
#[test]
fn species_split_at_zero_w() {
    let big_n = 200;
    let cfg = SpikeConfig::single(4.0, big_n as f64 - 0.5, big_n, critical_spike(0.0, big_n)).unwrap();
    let opts = UpdateOptions { top_roots: Some(20), ..Default::default() };
    let draws = par_draw(21, "species", 1_500, |rng| {
        let (pair, _) = sample_secular_pair_with(&cfg, &opts, rng)?;
        Ok(pair.lambda.values().iter().map(|&l| quaternion_edge_scaled(l, big_n)).collect::<Vec<f64>>())
    })
    .unwrap();
    let x_species = |x: f64| Ok(density_blind(x, 0.0)? - density_species_y(x)?);
    let bins = histogram_vs_density(&draws, (-4.0, 0.0), 8, x_species, 0.1, 3.0).unwrap();
    for b in &bins {
        assert!(b.pass, "{b:?}");
    }
}
