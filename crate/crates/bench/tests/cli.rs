use std::process::{Command, Output};

fn qmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_column(csv: &str, column: &str) -> String {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let skip = header.iter().position(|h| *h == column);
    std::iter::once(header.join(","))
        .chain(lines.map(|l| l.split(',').enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, v)| v).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes() {
    assert_eq!(qmc(&["--help"]).status.code(), Some(0));
    assert_eq!(qmc(&["--version"]).status.code(), Some(0));
    assert_eq!(qmc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qmc(&["oracle", "stress", "--bogus"]).status.code(), Some(1));
    let o = qmc(&["sweep", "--app", "neoclassical", "--estimator", "classical", "--n-samples", "100", "--repeats", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeats"));
    assert_eq!(qmc(&["run", "simple", "--m", "29", "--n", "4"]).status.code(), Some(2));
    assert_eq!(qmc(&["run", "stress", "--n", "20"]).status.code(), Some(2));
    assert_eq!(qmc(&["run", "simple", "--loader", "trained"]).status.code(), Some(1));
}

#[test]
fn oracle_stress_prints_continuous_and_grid() {
    let o = qmc(&["oracle", "stress"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let value = |q: &str| -> f64 {
        out.lines().find(|l| l.starts_with(&format!("stress,{q},"))).unwrap().rsplit(',').next().unwrap().parse().unwrap()
    };
    assert!((value("continuous") - 0.01608).abs() < 1e-5);
    assert!((value("grid") - 0.016115).abs() < 1e-5);
}

#[test]
fn run_simple() {
    let o = qmc(&["run", "simple", "--m", "5", "--n", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "app,n,N_oracle,theta_hat,mu_normalized,mu,abs_error,oracle_value,fractional_error");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[..3], ["simple", "6", "63"]);
    let theta: f64 = row[3].parse().unwrap();
    let mu: f64 = row[5].parse().unwrap();
    assert!((theta - 0.457).abs() <= 1.0 / 64.0);
    assert!((mu - 0.432).abs() <= 0.01);
}

#[test]
fn sweeps_are_deterministic_apart_from_timings() {
    let args = ["--seed", "9", "sweep", "--app", "stress", "--estimator", "classical", "--n-samples", "100,1000", "--repeats", "3"];
    let (a, b) = (stdout(&qmc(&args)), stdout(&qmc(&args)));
    assert!(a.starts_with("# nondeterministic columns: wall_time_s\napp,estimator,n,N,error,wall_time_s\n"));
    assert_eq!(without_column(&a, "wall_time_s"), without_column(&b, "wall_time_s"));
    let other = stdout(&qmc(&["--seed", "10", "sweep", "--app", "stress", "--estimator", "classical", "--n-samples", "100,1000", "--repeats", "3"]));
    assert_ne!(without_column(&a, "wall_time_s"), without_column(&other, "wall_time_s"));

    let q = ["--jobs", "2", "sweep", "--app", "simple", "--estimator", "qmc-exact", "--n", "2..5"];
    let (a, b) = (stdout(&qmc(&q)), stdout(&qmc(&q)));
    assert_eq!(without_column(&a, "wall_time_s"), without_column(&b, "wall_time_s"));
    assert_eq!(a.lines().filter(|l| l.starts_with("simple,")).count(), 4);
}

#[test]
fn json_mirrors_csv() {
    let o = qmc(&["--format", "json", "sweep", "--app", "simple", "--estimator", "qmc-exact", "--n", "3,4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nondeterministic_columns"][0], "wall_time_s");
    assert_eq!(v["rows"][1]["N"], 15);
}

#[test]
fn resources_and_train_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = stdout(&qmc(&["resources", "--n", "3,4"]));
    assert!(r.starts_with("n,total_gates,rx,ry,rz,cnot,depth,num_qubits\n"));
    assert_eq!(r.lines().count(), 3);

    let art = dir.path().join("a.txt");
    let t = qmc(&["--out", art.to_str().unwrap(), "train-a", "--m", "3", "--layers", "2", "--epochs", "20"]);
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    let run = qmc(&["run", "simple", "--m", "3", "--n", "4", "--loader", "trained", "--ansatz", art.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, "stress_m = 3\n").unwrap();
    let o = stdout(&qmc(&["--config", cfg.to_str().unwrap(), "oracle", "stress"]));
    let d = stdout(&qmc(&["oracle", "stress"]));
    assert_ne!(o.lines().nth(2), d.lines().nth(2));
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(qmc(&["--config", cfg.to_str().unwrap(), "oracle", "stress"]).status.code(), Some(1));
}
