//! Acceptance gate: every acceptance criterion prints one pass/fail line.
//! Criteria 1-14 run in-process at full level; criterion 15 (thread-count
//! determinism) exercises the built binary.

use std::fs;
use std::process::Command;

use nswave_core::checks::{self, Level};

#[test]
fn acceptance() {
    let mut all_ok = true;
    for o in checks::run(Level::Full) {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>4} {}: {}", o.id, o.name, o.detail);
        all_ok &= o.passed;
    }

    let det = determinism_across_threads();
    println!(
        "{} AC15 byte-identical output across --threads 1 and --threads 8{}",
        if det.is_ok() { "PASS" } else { "FAIL" },
        det.as_ref().err().map(|e| format!(": {e}")).unwrap_or_default()
    );
    all_ok &= det.is_ok();

    assert!(all_ok, "acceptance criteria failed (see lines above)");
}

fn determinism_across_threads() -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("cfg.toml");
    fs::write(
        &cfg,
        "[mode]\nc1 = 10000.0\nc2 = 10000.0\nsign = \"+\"\n\
         [fock]\nn = 7\n\
         [grid]\nt_steps = 200\nx_steps = 32\n",
    )
    .map_err(|e| e.to_string())?;

    let mut outputs = Vec::new();
    for threads in ["1", "8"] {
        let prefix = dir.path().join(format!("run{threads}")).to_str().unwrap().to_owned();
        let out = Command::new(env!("CARGO_BIN_EXE_nswave"))
            .args([
                "field-trace",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                &prefix,
                "--threads",
                threads,
            ])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "--threads {threads} exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let csv = fs::read(format!("{prefix}.csv")).map_err(|e| e.to_string())?;
        let manifest = fs::read(format!("{prefix}.manifest.toml")).map_err(|e| e.to_string())?;
        outputs.push((csv, manifest));
    }
    if outputs[0] != outputs[1] {
        return Err("outputs differ between thread counts".into());
    }
    Ok(())
}
