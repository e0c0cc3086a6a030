use rand::Rng;
use spiked_wishart::harness::suites::{equivalence_suite, hardedge_suite, EquivalenceParams, HardEdgeParams};
use spiked_wishart::harness::{ks_one_sample, ks_two_sample, par_draw, SuiteName};
use spiked_wishart::sampling::SpikeConfig;

// Under the null the p-value is uniform, so about 0.1% of runs reject at
// level 0.001 and about 5% at level 0.05.
#[test]
fn ks_rejection_rate_is_calibrated() {
    let reps = 1_000;
    let p = par_draw(31, "calibration", reps, |rng| {
        let mut u: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        u.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(ks_one_sample(&u, |x| Ok(x))?.p_value)
    })
    .unwrap();
    let at = |level: f64| p.iter().filter(|&&v| v < level).count();
    assert!(at(0.001) <= 5, "{}", at(0.001));
    let five = at(0.05);
    // binomial(1000, 0.05): mean 50, sd 6.9
    assert!((29..=71).contains(&five), "{five}");
}

#[test]
fn two_sample_rejection_rate_is_calibrated() {
    let p = par_draw(32, "calibration2", 400, |rng| {
        let mut draw = |n: usize| {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        let (a, b) = (draw(2_000), draw(3_000));
        Ok(ks_two_sample(&a, &b)?.p_value)
    })
    .unwrap();
    let five = p.iter().filter(|&&v| v < 0.05).count();
    // binomial(400, 0.05): mean 20, sd 4.4
    assert!((7..=33).contains(&five), "{five}");
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn reports_do_not_depend_on_the_thread_count() {
    let p = EquivalenceParams::new(SpikeConfig::single(1.0, 8.0, 5, 2.5).unwrap(), 2_000, 41);
    let one = in_pool(1, || equivalence_suite(&p).unwrap().report.to_json().unwrap());
    let four = in_pool(4, || equivalence_suite(&p).unwrap().report.to_json().unwrap());
    assert_eq!(one, four);
    let h = HardEdgeParams::new(5_000, 41);
    let one = in_pool(1, || hardedge_suite(&h).unwrap().report.to_json().unwrap());
    let three = in_pool(3, || hardedge_suite(&h).unwrap().report.to_json().unwrap());
    assert_eq!(one, three);
}

#[test]
fn failed_suites_dump_their_samples() {
    // with a large spike the square-root pencil convention fails even on a small run
    let mut p = EquivalenceParams::new(SpikeConfig::single(1.0, 7.0, 4, 6.0).unwrap(), 3_000, 42);
    p.variants.pencil_scaling = spiked_wishart::sampling::pencil::PencilSpikeScaling::SquareRoot;
    let out = equivalence_suite(&p).unwrap();
    assert!(!out.report.pass);
    let dir = tempfile::tempdir().unwrap();
    let files = out.write(dir.path()).unwrap();
    assert!(files.iter().any(|f| f.extension().is_some_and(|e| e == "json")));
    assert!(files.iter().any(|f| f.extension().is_some_and(|e| e == "csv")));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("equivalence.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["seed"], 42);
}

#[test]
fn suite_names_round_trip() {
    for s in SuiteName::ALL {
        assert_eq!(s.as_str().parse::<SuiteName>().unwrap(), s);
    }
    assert!("nope".parse::<SuiteName>().is_err());
}
