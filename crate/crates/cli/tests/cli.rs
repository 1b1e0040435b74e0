//! End-to-end tests of the `nswave` binary: config handling, dataset
//! schemas, manifest invariants, and exit codes.

use std::fs;
use std::process::Command;

fn nswave() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nswave"))
}

#[test]
fn static_defaults_give_linear_phase() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run").to_str().unwrap().to_owned();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "[grid]\nt_max = 2.0\nt_steps = 5\n").unwrap();
    let out = nswave()
        .args(["phase-evolution", "--config", cfg.to_str().unwrap(), "--out", &prefix])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(format!("{prefix}.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,gamma_total,gamma_dynamical,gamma_geometric,gamma_geometric_rate"
    );
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 5);
        // static mode, n = 0: gamma_total = -(1/2)(t - t0)
        assert!((cols[1] + 0.5 * cols[0]).abs() < 1e-12);
        assert!(cols[3].abs() < 1e-12); // geometric phase identically zero
    }
}

#[test]
fn invalid_coefficients_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "[mode]\nc1 = 1.0\nc2 = 0.5\n").unwrap();
    let out = nswave()
        .args(["phase-evolution", "--config", cfg.to_str().unwrap(), "--out", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("config error"), "{err}");
}

#[test]
fn missing_out_prefix_exit_2() {
    let out = nswave().args(["field-map"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_config_key_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "[mode]\nc9 = 1.0\n").unwrap();
    let out = nswave()
        .args(["field-map", "--config", cfg.to_str().unwrap(), "--out", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn manifest_df_matches_measure() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run").to_str().unwrap().to_owned();
    let cfg = dir.path().join("cfg.toml");
    fs::write(
        &cfg,
        "[mode]\nc1 = 10000.0\nc2 = 10000.0\nsign = \"+\"\n[grid]\nt_steps = 4\n",
    )
    .unwrap();
    let out = nswave()
        .args(["geometric-phase", "--config", cfg.to_str().unwrap(), "--out", &prefix])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = fs::read_to_string(format!("{prefix}.manifest.toml")).unwrap();
    let df_line = manifest.lines().find(|l| l.starts_with("d_f = ")).unwrap();
    let df: f64 = df_line.trim_start_matches("d_f = ").parse().unwrap();
    let expect = nswave_core::measure_df(10_000.0, 10_000.0).unwrap();
    assert_eq!(df, expect);
}

#[test]
fn dataset_schemas_match_spec() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(
        &cfg,
        "[mode]\nc1 = 1.5\nc2 = 1.5\nsign = \"+\"\n\
         [mode_ii]\nomega = 1.5\n\
         [fock]\nn = 5\nm = 8\nbeta_n = [0.7071067811865476, 0.0]\nbeta_m = [0.5, 0.5]\n\
         [grid]\nt_steps = 3\nx_steps = 3\nq_steps = 3\n",
    )
    .unwrap();
    let cases = [
        ("density-map", "t,q,density"),
        ("geometric-phase", "t,gamma_geometric,gamma_geometric_rate"),
        ("field-trace", "t,x,phase,phase_factor,amplitude,A,E,B"),
        ("field-map", "t,x,A,E,B"),
        ("superposition", "t,q,total_density,cross_term"),
        ("interference", "t,x,E_total"),
    ];
    for (sub, header) in cases {
        let prefix = dir.path().join(sub).to_str().unwrap().to_owned();
        let out = nswave()
            .args([sub, "--config", cfg.to_str().unwrap(), "--out", &prefix])
            .output()
            .unwrap();
        assert!(out.status.success(), "{sub}: {}", String::from_utf8_lossy(&out.stderr));
        let csv = fs::read_to_string(format!("{prefix}.csv")).unwrap();
        assert_eq!(csv.lines().next().unwrap(), header, "{sub}");
        // Row count fully determined by config: 3x3 grids (or 3 for 1-D).
        let rows = csv.lines().count() - 1;
        assert!(rows == 9 || rows == 3, "{sub}: {rows} rows");
    }
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(
        &cfg,
        "[mode]\nc1 = 1.5\nc2 = 1.0\nsign = \"-\"\n[grid]\nt_steps = 40\nx_steps = 16\n",
    )
    .unwrap();
    let p1 = dir.path().join("a").to_str().unwrap().to_owned();
    let p2 = dir.path().join("b").to_str().unwrap().to_owned();
    for (prefix, threads) in [(&p1, "1"), (&p2, "8")] {
        let out = nswave()
            .args([
                "field-map",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                prefix,
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(format!("{p1}.csv")).unwrap(), fs::read(format!("{p2}.csv")).unwrap());
    assert_eq!(
        fs::read(format!("{p1}.manifest.toml")).unwrap(),
        fs::read(format!("{p2}.manifest.toml")).unwrap()
    );
}
