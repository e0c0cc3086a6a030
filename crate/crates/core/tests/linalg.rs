use proptest::prelude::*;
use rand::Rng;
use spiked_wishart::linalg::{first_components, tridiag_eigenvalues, BidiagonalPencil, SymTridiag};
use spiked_wishart::sampling::bidiagonal::sample_bidiagonal;
use spiked_wishart::sampling::pencil::sample_pencil;
use spiked_wishart::sampling::rng::stream_rng;
use spiked_wishart::sampling::SpikeConfig;

fn tridiag() -> impl Strategy<Value = SymTridiag> {
    (2usize..10)
        .prop_flat_map(|n| (prop::collection::vec(-5.0..5.0f64, n), prop::collection::vec(0.05..3.0f64, n - 1)))
        .prop_map(|(d, mut e)| {
            for (k, v) in e.iter_mut().enumerate() {
                if k % 2 == 1 {
                    *v = -*v;
                }
            }
            SymTridiag::new(d, e).unwrap()
        })
}

/// Characteristic polynomial by the three-term recurrence, roots by plain
/// bisection between sign changes on a fine scan.
fn charpoly_roots(t: &SymTridiag) -> Vec<f64> {
    let (d, e) = (t.diag(), t.offdiag());
    let p = |x: f64| {
        let (mut prev, mut cur) = (1.0, d[0] - x);
        for k in 1..d.len() {
            let next = (d[k] - x) * cur - e[k - 1] * e[k - 1] * prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    let r = d.iter().map(|v| v.abs()).fold(0.0, f64::max) + 2.0 * e.iter().map(|v| v.abs()).fold(0.0, f64::max) + 1.0;
    let steps = 200_000;
    let mut roots = Vec::new();
    let mut x0 = -r;
    let mut p0 = p(x0);
    for k in 1..=steps {
        let x1 = -r + 2.0 * r * k as f64 / steps as f64;
        let p1 = p(x1);
        if p0 == 0.0 {
            roots.push(x0);
        } else if p0 * p1 < 0.0 {
            let (mut lo, mut hi, plo) = (x0, x1, p0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if (p(mid) > 0.0) == (plo > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        p0 = p1;
    }
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

#[test]
fn random_five_by_five_matches_characteristic_polynomial() {
    let mut rng = stream_rng(11, 0);
    for _ in 0..20 {
        let d: Vec<f64> = (0..5).map(|_| rng.random_range(-3.0..3.0)).collect();
        let e: Vec<f64> = (0..4).map(|_| rng.random_range(0.2..2.0)).collect();
        let t = SymTridiag::new(d, e).unwrap();
        let got = tridiag_eigenvalues(&t).unwrap();
        let want = charpoly_roots(&t);
        assert_eq!(want.len(), 5);
        for (g, w) in got.values().iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "{g} vs {w}");
        }
    }
}

#[test]
fn first_components_of_a_sampled_six_by_six() {
    let cfg = SpikeConfig::single(2.0, 8.0, 6, 2.0).unwrap();
    let t = sample_bidiagonal(&cfg, &mut stream_rng(3, 0)).unwrap().to_tridiag();
    let (lambda, q) = first_components(&t).unwrap();
    let a = t.diag()[0];
    let s: f64 = lambda.values().iter().zip(&q).map(|(l, q)| q * q * l).sum();
    assert!((a - s).abs() <= 1e-10 * (1.0 + a.abs()));
}

proptest! {
    #[test]
    fn trace_is_sum_of_eigenvalues(t in tridiag()) {
        let ev = tridiag_eigenvalues(&t).unwrap();
        let scale = 1.0 + t.diag().iter().map(|v| v.abs()).sum::<f64>();
        prop_assert!((ev.sum() - t.trace()).abs() <= 1e-10 * scale);
    }

    #[test]
    fn first_components_are_a_unit_vector(t in tridiag()) {
        let (lambda, q) = first_components(&t).unwrap();
        prop_assert!(q.iter().all(|v| *v >= 0.0));
        let norm: f64 = q.iter().map(|v| v * v).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        let a = t.diag()[0];
        let s: f64 = lambda.values().iter().zip(&q).map(|(l, q)| q * q * l).sum();
        prop_assert!((a - s).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn corner_entry_of_sampled_models(
        beta in prop::sample::select(vec![1.0, 2.0, 4.0]),
        big_n in 2usize..=12,
        extra in 0.0..6.0f64,
        b in 0.2..5.0f64,
        seed in any::<u64>(),
    ) {
        let cfg = SpikeConfig::single(beta, big_n as f64 + extra, big_n, b).unwrap();
        let t = sample_bidiagonal(&cfg, &mut stream_rng(seed, 0)).unwrap().to_tridiag();
        let (lambda, q) = first_components(&t).unwrap();
        let norm: f64 = q.iter().map(|v| v * v).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        let a = t.diag()[0];
        let s: f64 = lambda.values().iter().zip(&q).map(|(l, q)| q * q * l).sum();
        prop_assert!((a - s).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn pencil_zeros_interlace_and_bracket(
        beta in prop::sample::select(vec![1.0, 2.0, 4.0]),
        big_n in 2usize..=8,
        extra in 0.0..4.0f64,
        b in 0.2..5.0f64,
        seed in any::<u64>(),
    ) {
        let cfg = SpikeConfig::single(beta, big_n as f64 + extra, big_n, b).unwrap();
        let p: BidiagonalPencil = sample_pencil(&cfg, &mut stream_rng(seed, 0)).unwrap();
        let (x, y) = p.eigenvalues().unwrap();
        prop_assert_eq!(x.len(), big_n);
        prop_assert_eq!(y.len(), big_n - 1);
        prop_assert!(x.interlaces(&y));
        prop_assert!(x.smallest().unwrap() > 0.0);
        let xs = x.values();
        // B_N alternates in sign on points separating the reported zeros,
        // so each gap holds exactly one zero
        let mut probes = vec![2.0 * xs[0] + 1.0];
        probes.extend(xs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        probes.push(0.5 * xs[xs.len() - 1]);
        let signs: Vec<f64> = probes.iter().map(|&t| p.recurrence_eval(t).0.signum()).collect();
        prop_assert!(signs.windows(2).all(|w| w[0] * w[1] < 0.0));
        for &z in xs {
            let (bn, _) = p.recurrence_eval(z);
            let scale: f64 = p.a().iter().zip(p.b().iter().chain(std::iter::once(&0.0))).map(|(a, b)| z.abs() + a + b).product();
            prop_assert!(bn.abs() <= 1e-9 * scale);
        }
    }
}
