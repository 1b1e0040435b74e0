//! TOML scenario configuration: parsing, defaults, flag overrides, and
//! validation into ready-to-run parameter sets.

use nswave_core::{
    fields::FieldParams,
    timebase::{C3Sign, ModeParams},
    wavefunctions::{QuantumConstants, SuperpositionSpec},
    Complex64,
};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed config document: {0}")]
    MalformedDocument(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("invalid value at `{field}`: {reason}")]
    InvariantViolation { field: String, reason: String },
}

fn invariant(field: &str, reason: impl ToString) -> ConfigError {
    ConfigError::InvariantViolation { field: field.into(), reason: reason.to_string() }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default)]
    pub mode: RawMode,
    /// Second mode for interference runs; defaults mirror `mode` defaults.
    #[serde(default)]
    pub mode_ii: Option<RawMode>,
    #[serde(default)]
    pub consts: RawConsts,
    #[serde(default)]
    pub fock: RawFock,
    #[serde(default)]
    pub field: RawField,
    #[serde(default)]
    pub grid: RawGrid,
    #[serde(default)]
    pub output: RawOutput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMode {
    pub omega: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    /// Explicit c3; mutually exclusive with `sign`.
    pub c3: Option<f64>,
    /// "+" or "-": resolve c3 = ±sqrt(c1*c2 - 1).
    pub sign: Option<String>,
    pub t0: Option<f64>,
    pub phi: Option<f64>,
}

impl Default for RawMode {
    fn default() -> Self {
        Self { omega: None, c1: None, c2: None, c3: None, sign: None, t0: None, phi: None }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConsts {
    pub hbar: Option<f64>,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFock {
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub beta_n: Option<[f64; 2]>,
    pub beta_m: Option<[f64; 2]>,
    pub gamma_d0: Option<f64>,
    pub gamma_g0: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub theta: Option<f64>,
    pub alpha0: Option<f64>,
    pub k: Option<f64>,
    pub volume: Option<f64>,
    /// Phase constant of the second interference mode.
    pub theta_ii: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_steps: Option<usize>,
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub q_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub prefix: Option<String>,
}

/// One axis of a sampling grid; endpoints inclusive, `steps >= 2`.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn at(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    fn validate(&self, name: &str) -> Result<(), ConfigError> {
        if self.steps < 2 {
            return Err(invariant(&format!("grid.{name}_steps"), "must be >= 2"));
        }
        if !(self.max > self.min) {
            return Err(invariant(
                &format!("grid.{name}_max"),
                format!("must exceed {name}_min"),
            ));
        }
        Ok(())
    }
}

/// Fully validated scenario parameters.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub mode: ModeParams,
    pub mode_ii: Option<ModeParams>,
    pub consts: QuantumConstants,
    pub n: u32,
    pub superposition: Option<SuperpositionSpec>,
    pub gamma_d0: f64,
    pub gamma_g0: f64,
    pub field: FieldParams,
    pub theta_ii: f64,
    pub t_axis: Axis,
    pub x_axis: Axis,
    pub q_axis: Axis,
    pub out_prefix: String,
}

fn build_mode(raw: &RawMode, path: &str) -> Result<ModeParams, ConfigError> {
    let omega = raw.omega.unwrap_or(1.0);
    let c1 = raw.c1.unwrap_or(1.0);
    let c2 = raw.c2.unwrap_or(1.0);
    let t0 = raw.t0.unwrap_or(0.0);
    let phi = raw.phi.unwrap_or(0.0);
    let built = match (&raw.c3, &raw.sign) {
        (Some(_), Some(_)) => {
            return Err(invariant(
                &format!("{path}.c3"),
                "give either c3 or sign, not both",
            ))
        }
        (Some(c3), None) => ModeParams::new(omega, c1, c2, *c3, t0, phi),
        (None, Some(s)) => {
            let sign = match s.as_str() {
                "+" => C3Sign::Plus,
                "-" => C3Sign::Minus,
                other => {
                    return Err(invariant(
                        &format!("{path}.sign"),
                        format!("expected \"+\" or \"-\", got {other:?}"),
                    ))
                }
            };
            ModeParams::with_sign(omega, c1, c2, sign, t0, phi)
        }
        (None, None) => ModeParams::with_sign(omega, c1, c2, C3Sign::Plus, t0, phi),
    };
    built.map_err(|e| invariant(path, e))
}

impl RawConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::MalformedDocument(e.to_string()))
    }

    pub fn validate(&self, out_prefix_flag: Option<&str>) -> Result<ScenarioConfig, ConfigError> {
        let mode = build_mode(&self.mode, "mode")?;
        let mode_ii = match &self.mode_ii {
            Some(raw) => Some(build_mode(raw, "mode_ii")?),
            None => None,
        };

        let consts = QuantumConstants::new(
            self.consts.hbar.unwrap_or(1.0),
            self.consts.epsilon.unwrap_or(1.0),
        )
        .map_err(|e| invariant("consts", e))?;

        let n = self.fock.n.unwrap_or(0);
        let superposition = match (self.fock.m, self.fock.beta_n, self.fock.beta_m) {
            (None, None, None) => None,
            (Some(m), Some(bn), Some(bm)) => Some(
                SuperpositionSpec::new(
                    n,
                    m,
                    Complex64::new(bn[0], bn[1]),
                    Complex64::new(bm[0], bm[1]),
                )
                .map_err(|e| invariant("fock", e))?,
            ),
            _ => {
                return Err(invariant(
                    "fock",
                    "superposition needs all of m, beta_n, beta_m",
                ))
            }
        };

        let field = FieldParams::new(
            self.field.theta.unwrap_or(0.0),
            self.field.alpha0.unwrap_or(1.0),
            self.field.k.unwrap_or(1.0),
            self.field.volume.unwrap_or(1.0),
        )
        .map_err(|e| invariant("field", e))?;

        let t_axis = Axis {
            min: self.grid.t_min.unwrap_or(mode.t0),
            max: self.grid.t_max.unwrap_or(mode.t0 + 10.0 * std::f64::consts::PI / mode.omega),
            steps: self.grid.t_steps.unwrap_or(1000),
        };
        let x_axis = Axis {
            min: self.grid.x_min.unwrap_or(0.0),
            max: self.grid.x_max.unwrap_or(2.0 * std::f64::consts::PI / field.k),
            steps: self.grid.x_steps.unwrap_or(200),
        };
        let q_axis = Axis {
            min: self.grid.q_min.unwrap_or(-6.0),
            max: self.grid.q_max.unwrap_or(6.0),
            steps: self.grid.q_steps.unwrap_or(200),
        };
        t_axis.validate("t")?;
        x_axis.validate("x")?;
        q_axis.validate("q")?;
        if t_axis.min < mode.t0 {
            return Err(invariant("grid.t_min", "must be >= mode t0"));
        }

        let out_prefix = out_prefix_flag
            .map(str::to_owned)
            .or_else(|| self.output.prefix.clone())
            .ok_or(ConfigError::MissingField("output.prefix (or --out)"))?;

        Ok(ScenarioConfig {
            mode,
            mode_ii,
            consts,
            n,
            superposition,
            gamma_d0: self.fock.gamma_d0.unwrap_or(0.0),
            gamma_g0: self.fock.gamma_g0.unwrap_or(0.0),
            field,
            theta_ii: self.field.theta_ii.unwrap_or(0.0),
            t_axis,
            x_axis,
            q_axis,
            out_prefix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_static_defaults() {
        let cfg = RawConfig::from_toml("").unwrap().validate(Some("out")).unwrap();
        assert_eq!(cfg.mode.c1, 1.0);
        assert_eq!(cfg.mode.c2, 1.0);
        assert_eq!(cfg.mode.c3, 0.0);
        assert_eq!(cfg.mode.omega, 1.0);
        assert_eq!(cfg.consts.hbar, 1.0);
        assert_eq!(cfg.field.alpha0, 1.0);
        assert_eq!(cfg.n, 0);
    }

    #[test]
    fn sign_resolves_c3() {
        let cfg = RawConfig::from_toml("[mode]\nc1 = 10000.0\nc2 = 10000.0\nsign = \"+\"\n")
            .unwrap()
            .validate(Some("out"))
            .unwrap();
        assert!((cfg.mode.c3 - (1e8f64 - 1.0).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn subunit_product_rejected() {
        let err = RawConfig::from_toml("[mode]\nc1 = 1.0\nc2 = 0.5\n")
            .unwrap()
            .validate(Some("out"))
            .unwrap_err();
        assert!(matches!(err, ConfigError::InvariantViolation { .. }), "{err}");
    }

    #[test]
    fn unknown_key_is_malformed() {
        let err = RawConfig::from_toml("[mode]\nc5 = 1.0\n").unwrap_err();
        assert!(matches!(err, ConfigError::MalformedDocument(_)));
    }

    #[test]
    fn missing_output_prefix() {
        let err = RawConfig::from_toml("").unwrap().validate(None).unwrap_err();
        assert!(matches!(err, ConfigError::MissingField(_)));
    }
}
