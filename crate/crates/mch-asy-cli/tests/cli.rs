use std::path::Path;
use std::process::{Command, Output};

use mch_asy_cli::output::from_json;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mch-asy")).args(args).current_dir(dir).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SCAN: &str = "[scattering]
kappa_r = 0.4
beta = 0.3
[scan]
t = [1e4, 1e6]
s = { start = -0.3, stop = 0.3, step = 0.1 }
";

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.toml", SCAN);
    for (name, threads) in [("one.csv", "1"), ("two.csv", "4")] {
        let out = Command::new(env!("CARGO_BIN_EXE_mch-asy"))
            .args(["region1", "--config", &cfg, "--out", name])
            .env("MCH_ASY_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir.path().join("one.csv")).unwrap();
    let b = std::fs::read(dir.path().join("two.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert!(text.starts_with("x,t,region,s,u,err_order,error\n"));
}

#[test]
fn json_output_carries_meta() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.toml", &format!("{SCAN}[output]\nformat = \"json\"\npath = \"out.json\"\n"));
    let out = run(&["region1", "--config", &cfg], dir.path());
    assert!(out.status.success());
    let table = from_json(&std::fs::read(dir.path().join("out.json")).unwrap()).unwrap();
    assert_eq!(table.meta.version, env!("CARGO_PKG_VERSION"));
    assert_eq!(table.meta.config_hash.len(), 64);
    assert_eq!(table.rows.len(), 14);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "[shock]\np = -1.0\n");
    let out = run(&["region1", "--config", &bad], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shock.p"));

    let missing = run(&["region1", "--config", "nope.toml"], dir.path());
    assert_eq!(missing.status.code(), Some(3));

    let cfg = write(dir.path(), "ok.toml", SCAN);
    let unwritable = run(&["region1", "--config", &cfg, "--out", "/nonexistent/x.csv"], dir.path());
    assert_eq!(unwritable.status.code(), Some(3));

    let shock = write(dir.path(), "shock.toml", "[scattering]\nkappa_r = 1.0\nbeta = 0.5\n[scan]\nwindow = [3.5]\n");
    let lenient = run(&["region3", "--config", &shock], dir.path());
    assert_eq!(lenient.status.code(), Some(0));
    let text = String::from_utf8_lossy(&lenient.stdout).to_string();
    assert!(text.contains("R_III") && text.contains("not real"), "{text}");
    let strict = run(&["region3", "--config", &shock, "--strict"], dir.path());
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn pq_invariance_report() {
    let dir = tempfile::tempdir().unwrap();
    let shock =
        write(dir.path(), "shock.toml", "[scattering]\nkappa_r = 1.0\nbeta = 0.5\n[scan]\nwindow = [3.0, 4.0]\n");
    let out = run(&["region3", "--config", &shock, "--check-pq-invariance"], dir.path());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.starts_with("x,t,u_re(1,1)"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pii_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["pii", "--k", "0.5", "--s", "-2:2:0.5"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "s,v,v_prime,q");
    let bad = run(&["pii", "--k", "0.5", "--s", "2:-2:0.5"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn check_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.toml", "[scattering]\nkappa_r = 1.0\nbeta = 0.5\n");
    let out = run(&["check", "--config", &cfg], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("generic      true") && text.ends_with("PASS\n"), "{text}");
}

#[test]
fn tabulated_data_is_read_relative_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let mut table = String::from("zeta,re,im\n");
    for i in 0..=400 {
        let z = (-6.0 + 0.03 * i as f64).exp();
        let l: f64 = z.ln();
        table.push_str(&format!("{z},{},0\n", 0.4 * (-0.3 * l * l).exp()));
    }
    write(dir.path(), "r.csv", &table);
    let cfg =
        write(dir.path(), "a.toml", "[scattering]\nfamily = \"table\"\ntable_path = \"r.csv\"\n[scan]\ns = [0.0]\n");
    let ref_cfg = write(dir.path(), "b.toml", "[scattering]\nkappa_r = 0.4\nbeta = 0.3\n[scan]\ns = [0.0]\n");
    let a = run(&["region1", "--config", &cfg], Path::new("/"));
    let b = run(&["region1", "--config", &ref_cfg], Path::new("/"));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let u = |o: &Output| {
        let text = String::from_utf8_lossy(&o.stdout).to_string();
        text.lines().nth(1).unwrap().split(',').nth(4).unwrap().parse::<f64>().unwrap()
    };
    assert!((u(&a) - u(&b)).abs() < 1e-12);
}
