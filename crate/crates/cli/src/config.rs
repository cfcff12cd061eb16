//! TOML job description.
//!
//! Matrices are written row by row; each entry is either a real number or an
//! `[re, im]` pair:
//!
//! ```toml
//! [matrices]
//! a = [[[-0.5, 0.0]]]
//! m = [[0.3]]
//! ```

use std::path::{Path, PathBuf};

use oqf_core::gaussian::{params_from_model, GaussianState, LiouvillianParams, PhysicalModel};
use oqf_core::matrix::{CMatrix, CVector, C64};
use oqf_core::skin::HatanoNelsonParams;
use serde::Deserialize;

use crate::error::CliError;

/// Default `δ` for the featureless comparison bath.
pub const DEFAULT_DELTA: f64 = 1.0 / 3.0;
/// Default mode count for `verify`.
pub const DEFAULT_VERIFY_MODES: usize = 2;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Output path; `--out` takes precedence, stdout if neither is given.
    pub output: Option<PathBuf>,
    /// Sample times for `evolve`.
    pub times: Option<Vec<f64>>,
    /// Seed for `verify`; `--seed` takes precedence.
    pub seed: Option<u64>,
    pub matrices: Option<MatrixSpec>,
    pub physical: Option<PhysicalSpec>,
    pub skin: Option<SkinSpec>,
    pub initial: Option<InitialSpec>,
    pub verify: Option<VerifySpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for C64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// Explicit generator `L(A, M)`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub a: Vec<Vec<Entry>>,
    pub m: Vec<Vec<Entry>>,
}

/// Hamiltonian plus loss and gain jump vectors.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSpec {
    pub h: Vec<Vec<Entry>>,
    #[serde(default)]
    pub loss: Vec<Vec<Entry>>,
    #[serde(default)]
    pub gain: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkinSpec {
    pub n: usize,
    pub omega: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub a: f64,
    pub x: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    /// `"vacuum"` or `"filled"`.
    pub state: Option<String>,
    pub r: Option<Vec<Vec<Entry>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Replaces every per-identity tolerance in `verify`.
    pub verify: Option<f64>,
    /// Slack on the GKSL check and on the spectrum of `R(t)`.
    pub physicality: Option<f64>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The generator from `[matrices]` or `[physical]`, exactly one of which
    /// must be present.
    pub fn liouvillian(&self) -> Result<LiouvillianParams, CliError> {
        if self.skin.is_some() {
            return Err(invalid("[skin] is only used by the skin command"));
        }
        match (&self.matrices, &self.physical) {
            (Some(spec), None) => Ok(LiouvillianParams::new(
                matrix("matrices.a", &spec.a)?,
                matrix("matrices.m", &spec.m)?,
            )?),
            (None, Some(spec)) => {
                let h = matrix("physical.h", &spec.h)?;
                let model = PhysicalModel::new(
                    h,
                    vectors("physical.loss", &spec.loss)?,
                    vectors("physical.gain", &spec.gain)?,
                )?;
                Ok(params_from_model(&model)?)
            }
            (Some(_), Some(_)) => Err(invalid("give either [matrices] or [physical], not both")),
            (None, None) => Err(invalid("missing model: add a [matrices] or [physical] section")),
        }
    }

    pub fn skin_params(&self) -> Result<(HatanoNelsonParams, f64), CliError> {
        if self.matrices.is_some() || self.physical.is_some() {
            return Err(invalid("the skin command takes its model from [skin] only"));
        }
        let s = self
            .skin
            .as_ref()
            .ok_or_else(|| invalid("missing [skin] section"))?;
        let p = HatanoNelsonParams::new(s.n, s.omega, s.lambda, s.gamma, s.a, s.x)?;
        Ok((p, s.delta.unwrap_or(DEFAULT_DELTA)))
    }

    pub fn initial_state(&self, n: usize) -> Result<GaussianState, CliError> {
        let Some(init) = &self.initial else {
            return Ok(GaussianState::vacuum(n));
        };
        match (&init.state, &init.r) {
            (Some(label), None) => match label.as_str() {
                "vacuum" => Ok(GaussianState::vacuum(n)),
                "filled" => Ok(GaussianState::filled(n)),
                other => Err(invalid(format!(
                    "initial.state: unknown label {other:?} (expected \"vacuum\" or \"filled\")"
                ))),
            },
            (None, Some(rows)) => GaussianState::new(matrix("initial.r", rows)?)
                .map_err(|e| invalid(format!("initial.r: {e}"))),
            (None, None) => Ok(GaussianState::vacuum(n)),
            (Some(_), Some(_)) => Err(invalid("initial: give either state or r, not both")),
        }
    }

    /// Sample times, checked to be finite, nonnegative and ascending.
    pub fn sample_times(&self) -> Result<Vec<f64>, CliError> {
        let times = self
            .times
            .clone()
            .ok_or_else(|| invalid("missing times = [...]"))?;
        if times.is_empty() {
            return Err(invalid("times must not be empty"));
        }
        if let Some(t) = times.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(invalid(format!("times must be finite and nonnegative, got {t}")));
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(invalid("times must be sorted ascending"));
        }
        Ok(times)
    }

    pub fn verify_modes(&self) -> usize {
        self.verify
            .as_ref()
            .and_then(|v| v.n)
            .unwrap_or(DEFAULT_VERIFY_MODES)
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn matrix(field: &str, rows: &[Vec<Entry>]) -> Result<CMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(invalid(format!("{field}: matrix is empty")));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(invalid(format!(
            "{field}: row {} has {} entries, expected {n}",
            i + 1,
            row.len()
        )));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j].into()))
}

fn vectors(field: &str, list: &[Vec<Entry>]) -> Result<Vec<CVector>, CliError> {
    list.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.is_empty() {
                Err(invalid(format!("{field}[{i}]: vector is empty")))
            } else {
                Ok(CVector::from_iterator(v.len(), v.iter().map(|&e| e.into())))
            }
        })
        .collect()
}
