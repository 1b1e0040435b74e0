//! Scenario execution: evaluates the requested grid, writes `<prefix>.csv`
//! plus `<prefix>.manifest.toml`, and returns the manifest text.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use nswave_core::analysis;
use nswave_core::fields::{self, FieldParams};
use nswave_core::phases::{self, PhaseState};
use nswave_core::timebase::measure_df;
use nswave_core::wavefunctions;
use nswave_core::ModeParams;
use rayon::prelude::*;

use crate::config::{Axis, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    PhaseEvolution,
    DensityMap,
    GeometricPhase,
    FieldTrace,
    FieldMap,
    Superposition,
    Interference,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::PhaseEvolution => "phase-evolution",
            Scenario::DensityMap => "density-map",
            Scenario::GeometricPhase => "geometric-phase",
            Scenario::FieldTrace => "field-trace",
            Scenario::FieldMap => "field-map",
            Scenario::Superposition => "superposition",
            Scenario::Interference => "interference",
        }
    }

    fn header(&self) -> &'static str {
        match self {
            Scenario::PhaseEvolution => {
                "t,gamma_total,gamma_dynamical,gamma_geometric,gamma_geometric_rate"
            }
            Scenario::DensityMap => "t,q,density",
            Scenario::GeometricPhase => "t,gamma_geometric,gamma_geometric_rate",
            Scenario::FieldTrace => "t,x,phase,phase_factor,amplitude,A,E,B",
            Scenario::FieldMap => "t,x,A,E,B",
            Scenario::Superposition => "t,q,total_density,cross_term",
            Scenario::Interference => "t,x,E_total",
        }
    }
}

/// 17 significant digits: enough to round-trip any f64 exactly.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn phase_state(cfg: &ScenarioConfig, n: u32) -> PhaseState {
    PhaseState::new(n, cfg.gamma_d0, cfg.gamma_g0)
}

/// Evaluate one CSV row per grid point, in parallel but in a fixed order.
fn rows<F>(count: usize, eval: F) -> Result<Vec<String>>
where
    F: Fn(usize) -> Result<String> + Send + Sync,
{
    (0..count).into_par_iter().map(eval).collect()
}

fn grid_rows<F>(outer: Axis, inner: Option<Axis>, eval: F) -> Result<Vec<String>>
where
    F: Fn(f64, f64) -> Result<String> + Send + Sync,
{
    match inner {
        None => rows(outer.steps, |i| eval(outer.at(i), 0.0)),
        Some(inner) => rows(outer.steps * inner.steps, |idx| {
            let (i, j) = (idx / inner.steps, idx % inner.steps);
            eval(outer.at(i), inner.at(j))
        }),
    }
}

fn second_field(cfg: &ScenarioConfig) -> FieldParams {
    FieldParams { theta: cfg.theta_ii, ..cfg.field }
}

pub struct RunOutput {
    pub csv_path: String,
    pub manifest_path: String,
}

pub fn run_scenario(scenario: Scenario, cfg: &ScenarioConfig, threads: usize) -> Result<RunOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building thread pool")?;
    let (body, summary) = pool.install(|| compute(scenario, cfg))?;

    let csv_path = format!("{}.csv", cfg.out_prefix);
    let manifest_path = format!("{}.manifest.toml", cfg.out_prefix);
    let mut csv = String::with_capacity(body.iter().map(|l| l.len() + 1).sum::<usize>() + 64);
    csv.push_str(scenario.header());
    csv.push('\n');
    for line in &body {
        csv.push_str(line);
        csv.push('\n');
    }
    fs::write(&csv_path, csv).with_context(|| format!("writing {csv_path}"))?;
    let manifest = manifest_text(scenario, cfg, &summary)?;
    fs::write(&manifest_path, manifest).with_context(|| format!("writing {manifest_path}"))?;
    Ok(RunOutput { csv_path, manifest_path })
}

/// Scenario-specific summary lines for the manifest `[summary]` table.
type Summary = Vec<(String, String)>;

fn compute(scenario: Scenario, cfg: &ScenarioConfig) -> Result<(Vec<String>, Summary)> {
    let mode = &cfg.mode;
    let consts = &cfg.consts;
    let fp = &cfg.field;
    let t_axis = cfg.t_axis;
    let mut summary: Summary = Vec::new();

    let body = match scenario {
        Scenario::PhaseEvolution => {
            let state = phase_state(cfg, cfg.n);
            let lines = grid_rows(t_axis, None, |t, _| {
                let total = phases::total_phase(mode, &state, t)?;
                let d = phases::dynamical_phase(mode, &state, t)?;
                let g = phases::geometric_phase(mode, &state, t)?;
                let rate = phases::geometric_phase_rate(mode, &state, t)?;
                Ok(format!("{},{},{},{},{}", num(t), num(total), num(d), num(g), num(rate)))
            })?;
            let drop = phases::total_phase(mode, &state, mode.t0)?
                - phases::total_phase(mode, &state, mode.t0 + mode.period())?;
            summary.push(("per_period_drop".into(), num(drop)));
            lines
        }
        Scenario::GeometricPhase => {
            let state = phase_state(cfg, cfg.n);
            let lines = grid_rows(t_axis, None, |t, _| {
                let g = phases::geometric_phase(mode, &state, t)?;
                let rate = phases::geometric_phase_rate(mode, &state, t)?;
                Ok(format!("{},{},{}", num(t), num(g), num(rate)))
            })?;
            let gain = phases::geometric_phase(mode, &state, mode.t0 + mode.period())?
                - phases::geometric_phase(mode, &state, mode.t0)?;
            summary.push(("per_period_gain".into(), num(gain)));
            lines
        }
        Scenario::DensityMap => {
            let state = phase_state(cfg, cfg.n);
            let lines = grid_rows(t_axis, Some(cfg.q_axis), |t, q| {
                let psi = wavefunctions::wavefunction(q, mode, consts, &state, t)?;
                Ok(format!("{},{},{}", num(t), num(q), num(psi.norm_sqr())))
            })?;
            let peak = lines
                .iter()
                .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
                .fold(0.0f64, f64::max);
            summary.push(("peak_density".into(), num(peak)));
            lines
        }
        Scenario::Superposition => {
            let spec = cfg
                .superposition
                .as_ref()
                .context("superposition scenario needs fock.m, fock.beta_n, fock.beta_m")?;
            let sn = phase_state(cfg, spec.n);
            let sm = phase_state(cfg, spec.m);
            grid_rows(t_axis, Some(cfg.q_axis), |t, q| {
                let (total, cross) = wavefunctions::superposition_density(
                    spec,
                    q,
                    mode,
                    consts,
                    (&sn, &sm),
                    t,
                )?;
                Ok(format!("{},{},{},{}", num(t), num(q), num(total), num(cross)))
            })?
        }
        Scenario::FieldTrace => grid_rows(t_axis, Some(cfg.x_axis), |t, x| {
            let s = fields::field_sample(mode, consts, fp, x, t)?;
            Ok(format!(
                "{},{},{},{},{},{},{},{}",
                num(t),
                num(x),
                num(s.phase_e),
                num(s.phase_e.cos()),
                num(s.amp_e),
                num(s.a),
                num(s.e),
                num(s.b)
            ))
        })?,
        Scenario::FieldMap => {
            let lines = grid_rows(t_axis, Some(cfg.x_axis), |t, x| {
                let s = fields::field_sample(mode, consts, fp, x, t)?;
                Ok(format!("{},{},{},{},{}", num(t), num(x), num(s.a), num(s.e), num(s.b)))
            })?;
            let (contrast, velocity) = field_map_summary(cfg)?;
            summary.push(("standing_wave_contrast".into(), num(contrast)));
            if let Some(v) = velocity {
                summary.push(("group_velocity_estimate".into(), num(v)));
            }
            lines
        }
        Scenario::Interference => {
            let mode_ii = cfg
                .mode_ii
                .as_ref()
                .context("interference scenario needs a [mode_ii] section")?;
            let fp_ii = second_field(cfg);
            let lines = grid_rows(t_axis, Some(cfg.x_axis), |t, x| {
                let e = fields::electric_field(x, t, mode, consts, fp)?
                    + fields::electric_field(x, t, mode_ii, consts, &fp_ii)?;
                Ok(format!("{},{},{}", num(t), num(x), num(e)))
            })?;
            interference_summary(cfg, mode_ii, &fp_ii, &mut summary)?;
            lines
        }
    };
    Ok((body, summary))
}

/// Standing-wave contrast (min/max of RMS-over-time across x) and a ridge
/// group-velocity estimate from the configured grid.
fn field_map_summary(cfg: &ScenarioConfig) -> Result<(f64, Option<f64>)> {
    let (t_axis, x_axis) = (cfg.t_axis, cfg.x_axis);
    let mut rows_tx: Vec<Vec<f64>> = Vec::with_capacity(t_axis.steps);
    for i in 0..t_axis.steps {
        let t = t_axis.at(i);
        let mut row = Vec::with_capacity(x_axis.steps);
        for j in 0..x_axis.steps {
            row.push(fields::electric_field(x_axis.at(j), t, &cfg.mode, &cfg.consts, &cfg.field)?);
        }
        rows_tx.push(row);
    }
    let mut min_rms = f64::INFINITY;
    let mut max_rms = 0.0f64;
    for j in 0..x_axis.steps {
        let col: Vec<f64> = rows_tx.iter().map(|r| r[j]).collect();
        let rms = analysis::time_rms(&col);
        min_rms = min_rms.min(rms);
        max_rms = max_rms.max(rms);
    }
    let contrast = if max_rms > 0.0 { min_rms / max_rms } else { 0.0 };
    let dx = (x_axis.max - x_axis.min) / (x_axis.steps - 1) as f64;
    let dt = (t_axis.max - t_axis.min) / (t_axis.steps - 1) as f64;
    let velocity = analysis::group_velocity_estimate(&rows_tx, dx, dt, 1);
    Ok((contrast, velocity))
}

fn interference_summary(
    cfg: &ScenarioConfig,
    mode_ii: &ModeParams,
    fp_ii: &FieldParams,
    summary: &mut Summary,
) -> Result<()> {
    let t_axis = cfg.t_axis;
    let dt = (t_axis.max - t_axis.min) / (t_axis.steps - 1) as f64;
    let x0 = cfg.x_axis.min;
    let mut sig = Vec::with_capacity(t_axis.steps);
    for i in 0..t_axis.steps {
        let t = t_axis.at(i);
        sig.push(
            fields::electric_field(x0, t, &cfg.mode, &cfg.consts, &cfg.field)?
                + fields::electric_field(x0, t, mode_ii, &cfg.consts, fp_ii)?,
        );
    }
    let carrier = 2.0 * PI / (0.5 * (cfg.mode.omega + mode_ii.omega));
    if let Some(beat) = analysis::beat_envelope_peak_spacing(&sig, dt, carrier) {
        summary.push(("beat_period".into(), num(beat)));
    }
    let mut table = String::from("[");
    for j in 0..cfg.x_axis.steps {
        let x = cfg.x_axis.at(j);
        let mut col = Vec::with_capacity(t_axis.steps);
        for i in 0..t_axis.steps {
            let t = t_axis.at(i);
            col.push(
                fields::electric_field(x, t, &cfg.mode, &cfg.consts, &cfg.field)?
                    + fields::electric_field(x, t, mode_ii, &cfg.consts, fp_ii)?,
            );
        }
        if j > 0 {
            table.push_str(", ");
        }
        write!(table, "[{}, {}]", num(x), num(analysis::time_rms(&col))).unwrap();
    }
    table.push(']');
    summary.push(("rms_vs_x".into(), table));
    Ok(())
}

fn write_mode(out: &mut String, table: &str, mode: &ModeParams) {
    writeln!(out, "[{table}]").unwrap();
    writeln!(out, "omega = {}", num(mode.omega)).unwrap();
    writeln!(out, "c1 = {}", num(mode.c1)).unwrap();
    writeln!(out, "c2 = {}", num(mode.c2)).unwrap();
    writeln!(out, "c3 = {}", num(mode.c3)).unwrap();
    writeln!(out, "t0 = {}", num(mode.t0)).unwrap();
    writeln!(out, "phi = {}", num(mode.phi)).unwrap();
    writeln!(out).unwrap();
}

fn manifest_text(scenario: Scenario, cfg: &ScenarioConfig, summary: &Summary) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "[scenario]").unwrap();
    writeln!(out, "name = \"{}\"", scenario.name()).unwrap();
    writeln!(out).unwrap();

    write_mode(&mut out, "config.mode", &cfg.mode);
    if let Some(m2) = &cfg.mode_ii {
        write_mode(&mut out, "config.mode_ii", m2);
    }

    writeln!(out, "[config.consts]").unwrap();
    writeln!(out, "hbar = {}", num(cfg.consts.hbar)).unwrap();
    writeln!(out, "epsilon = {}", num(cfg.consts.epsilon)).unwrap();
    writeln!(out).unwrap();

    writeln!(out, "[config.fock]").unwrap();
    writeln!(out, "n = {}", cfg.n).unwrap();
    if let Some(spec) = &cfg.superposition {
        writeln!(out, "m = {}", spec.m).unwrap();
        writeln!(out, "beta_n = [{}, {}]", num(spec.beta_n.re), num(spec.beta_n.im)).unwrap();
        writeln!(out, "beta_m = [{}, {}]", num(spec.beta_m.re), num(spec.beta_m.im)).unwrap();
    }
    writeln!(out, "gamma_d0 = {}", num(cfg.gamma_d0)).unwrap();
    writeln!(out, "gamma_g0 = {}", num(cfg.gamma_g0)).unwrap();
    writeln!(out).unwrap();

    writeln!(out, "[config.field]").unwrap();
    writeln!(out, "theta = {}", num(cfg.field.theta)).unwrap();
    writeln!(out, "alpha0 = {}", num(cfg.field.alpha0)).unwrap();
    writeln!(out, "k = {}", num(cfg.field.k)).unwrap();
    writeln!(out, "volume = {}", num(cfg.field.volume)).unwrap();
    if cfg.mode_ii.is_some() {
        writeln!(out, "theta_ii = {}", num(cfg.theta_ii)).unwrap();
    }
    writeln!(out).unwrap();

    writeln!(out, "[config.grid]").unwrap();
    for (name, axis) in [("t", cfg.t_axis), ("x", cfg.x_axis), ("q", cfg.q_axis)] {
        writeln!(out, "{name}_min = {}", num(axis.min)).unwrap();
        writeln!(out, "{name}_max = {}", num(axis.max)).unwrap();
        writeln!(out, "{name}_steps = {}", axis.steps).unwrap();
    }
    writeln!(out).unwrap();

    writeln!(out, "[derived]").unwrap();
    writeln!(out, "d_f = {}", num(measure_df(cfg.mode.c1, cfg.mode.c2)?)).unwrap();
    writeln!(out, "f_min = {}", num(cfg.mode.f_min())).unwrap();
    writeln!(out, "f_max = {}", num(cfg.mode.f_max())).unwrap();
    writeln!(out, "period = {}", num(cfg.mode.period())).unwrap();
    let nodes = cfg.mode.node_times(cfg.t_axis.max);
    let node_list: Vec<String> = nodes.iter().map(|t| num(*t)).collect();
    writeln!(out, "node_times = [{}]", node_list.join(", ")).unwrap();
    writeln!(out).unwrap();

    writeln!(out, "[summary]").unwrap();
    for (k, v) in summary {
        writeln!(out, "{k} = {v}").unwrap();
    }
    Ok(out)
}
