use std::path::Path;
use std::process::{Command, Output};

fn spiked(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiked"))
        .current_dir(dir)
        .env_remove("SPIKED_OUT_DIR")
        .args(args)
        .output()
        .expect("run spiked")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn column(csv: &[u8], k: usize) -> Vec<f64> {
    std::str::from_utf8(csv)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(k).unwrap().parse().unwrap())
        .collect()
}

const SAMPLE: &[&str] =
    &["sample", "--construction", "bidiagonal", "--beta", "2", "--n", "6", "--N", "4", "--b", "1.5", "--samples", "1000"];

#[test]
fn sample_writes_rows_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(dir.path(), &[SAMPLE, &["--seed", "42", "--out", "a.csv"]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(text.lines().count(), 1001);
    assert_eq!(text.lines().next().unwrap(), "lambda_1,lambda_2,lambda_3,lambda_4");
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.json")).unwrap()).unwrap();
    assert_eq!(side["seed"], 42);
    assert_eq!(side["n_samples"], 1000);
    assert_eq!(side["construction"], "bidiagonal");
}

#[test]
fn same_seed_same_bytes_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = spiked(dir.path(), &[SAMPLE, &["--seed", "42", "--out", "a.csv", "--threads", "1"]].concat());
    let b = spiked(dir.path(), &[SAMPLE, &["--seed", "42", "--out", "b.csv", "--threads", "3"]].concat());
    let c = spiked(dir.path(), &[SAMPLE, &["--seed", "43", "--out", "c.csv"]].concat());
    assert!(a.status.success() && b.status.success() && c.status.success());
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_ne!(read("a.csv"), read("c.csv"));
}

#[test]
fn sidecar_reruns_the_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(dir.path(), &[SAMPLE, &["--seed", "5", "--out", "a.csv"]].concat());
    assert!(o.status.success());
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.json")).unwrap()).unwrap();
    let mut args: Vec<String> =
        side["command"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let at = args.iter().position(|a| a == "--out").unwrap();
    args[at + 1] = "b.csv".into();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    assert!(spiked(dir.path(), &refs).status.success());
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
}

#[test]
fn out_dir_env_sets_default_path() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("runs")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_spiked"))
        .current_dir(dir.path())
        .env("SPIKED_OUT_DIR", dir.path().join("runs"))
        .args([SAMPLE, &["--seed", "1"]].concat())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("runs/bidiagonal-seed1.csv").exists());
}

#[test]
fn argument_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_beta = [
        "sample", "--construction", "bidiagonal", "--beta", "0", "--n", "6", "--N", "4", "--b", "1.5", "--samples", "10",
        "--seed", "1",
    ];
    assert_eq!(code(&spiked(dir.path(), &bad_beta)), 2);
    let no_seed = spiked(dir.path(), &SAMPLE[..SAMPLE.len() - 2].iter().chain(&["--samples", "10"]).copied().collect::<Vec<_>>());
    assert_eq!(code(&no_seed), 2);
    assert_eq!(code(&spiked(dir.path(), &["verify", "--suite", "nope", "--seed", "1"])), 2);
    assert_eq!(code(&spiked(dir.path(), &["verify", "--suite", "hardedge"])), 2);
    let hermite = ["sample", "--construction", "hermite", "--beta", "1", "--n", "3", "--N", "3", "--b", "1", "--samples", "2", "--seed", "1"];
    assert_eq!(code(&spiked(dir.path(), &hermite)), 2);
}

#[test]
fn blind_density_rejects_positive_w() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(dir.path(), &["curves", "--curve", "density-blind", "--w", "1", "--s-min", "-1", "--s-max", "1", "--step", "0.5"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported domain"));
}

#[test]
fn tw_goe_curve_is_a_cdf() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(dir.path(), &["curves", "--curve", "tw-goe", "--s-min", "-6", "--s-max", "4", "--step", "0.05"]);
    assert!(o.status.success());
    let f = column(&o.stdout, 1);
    assert_eq!(f.len(), 201);
    assert!(f.windows(2).all(|w| w[1] >= w[0]));
    assert!(f[0] < 1e-4 && f[f.len() - 1] > 0.999);
}

#[test]
fn spiked_edge_at_zero_is_tw_goe() {
    let dir = tempfile::tempdir().unwrap();
    let range = ["--s-min", "-6", "--s-max", "4", "--step", "0.05"];
    let tw = spiked(dir.path(), &[&["curves", "--curve", "tw-goe"][..], &range].concat());
    let se = spiked(dir.path(), &[&["curves", "--curve", "spiked-edge", "--w", "0"][..], &range].concat());
    assert!(tw.status.success() && se.status.success());
    let (a, b) = (column(&tw.stdout, 1), column(&se.stdout, 1));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-10);
    }
}

#[test]
fn verify_examples_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(dir.path(), &["verify", "--suite", "hardedge", "--seed", "7", "--samples", "20000"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("hardedge.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 7);

    let o = spiked(
        dir.path(),
        &["verify", "--suite", "equivalence", "--beta", "4", "--n", "6.5", "--N", "5", "--b", "2", "--seed", "7", "--samples", "2000"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn printed_zero_weight_scale_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = spiked(
        dir.path(),
        &[
            "verify", "--suite", "equivalence", "--beta", "2", "--n", "6", "--N", "4", "--b", "1.5", "--seed", "3", "--samples",
            "5000", "--q0-scale", "half",
        ],
    );
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}
