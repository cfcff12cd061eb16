//! Browser bindings for three small computations: the skin-effect steady
//! profile, relaxation of site occupations on a driven chain, and the
//! entropy of the same trajectory.
//!
//! The `wasm_bindgen` exports are thin wrappers over the plain functions in
//! this module, which are what the native tests exercise.

// Checks written as `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use oqf_core::affine::AffineElement;
use oqf_core::error::{Error, Result};
use oqf_core::gaussian::{entropy, params_from_model, GaussianState, PhysicalModel};
use oqf_core::matrix::{diag, zeros, CMatrix, CVector, C64};
use oqf_core::skin::{featureless_profile, steady_profile, HatanoNelsonParams};
use wasm_bindgen::prelude::*;

/// Largest chain the page may request.
pub const MAX_SITES: usize = 40;
/// Largest number of time samples per curve.
pub const MAX_SAMPLES: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct SkinCurves {
    pub occupations: Vec<f64>,
    pub featureless: Vec<f64>,
    pub kappa: f64,
    pub log_slope: f64,
}

/// Steady occupations of the skin-effect chain next to those of the
/// featureless bath with the same non-Hermitian Hamiltonian.
pub fn skin_curves(
    n: usize,
    omega: f64,
    lambda: f64,
    gamma: f64,
    a: f64,
    delta: f64,
) -> Result<SkinCurves> {
    check_sites(n)?;
    let p = HatanoNelsonParams::new(n, omega, lambda, gamma, a, None)?;
    let profile = steady_profile(&p)?;
    Ok(SkinCurves {
        featureless: featureless_profile(&p, delta)?,
        occupations: profile.occupations,
        kappa: p.kappa(),
        log_slope: profile.log_slope,
    })
}

/// Nearest-neighbour chain with loss on the first site and gain on the last,
/// started from alternating occupation `1, 0, 1, …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenChain {
    pub sites: usize,
    pub hopping: f64,
    pub loss: f64,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `times.len() × sites`, row-major.
    pub occupations: Vec<f64>,
    pub entropy: Vec<f64>,
}

impl DrivenChain {
    fn model(&self) -> Result<PhysicalModel> {
        check_sites(self.sites)?;
        let n = self.sites;
        if !(self.loss >= 0.0 && self.gain >= 0.0) || !self.hopping.is_finite() {
            return Err(Error::InvalidParameter(
                "loss and gain must be nonnegative, hopping finite".into(),
            ));
        }
        let mut h = zeros(n);
        for j in 1..n {
            h[(j, j - 1)] = C64::new(self.hopping, 0.0);
            h[(j - 1, j)] = C64::new(self.hopping, 0.0);
        }
        let site = |j: usize, rate: f64| {
            let mut v = CVector::zeros(n);
            v[j] = C64::new(rate.sqrt(), 0.0);
            v
        };
        PhysicalModel::new(h, vec![site(0, self.loss)], vec![site(n - 1, self.gain)])
    }

    fn initial(&self) -> CMatrix {
        diag(
            &(0..self.sites)
                .map(|j| C64::new(if j % 2 == 0 { 1.0 } else { 0.0 }, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// `samples` evenly spaced times on `[0, t_max]`, stepping the affine
    /// flow by a fixed increment.
    pub fn trajectory(&self, t_max: f64, samples: usize) -> Result<Trajectory> {
        if !(t_max > 0.0 && t_max.is_finite()) || !(2..=MAX_SAMPLES).contains(&samples) {
            return Err(Error::InvalidParameter(format!(
                "need t_max > 0 and 2..={MAX_SAMPLES} samples"
            )));
        }
        let params = params_from_model(&self.model()?)?;
        let dt = t_max / (samples - 1) as f64;
        let step: AffineElement = params.generator().flow(dt)?;
        let mut r = self.initial();
        let mut out = Trajectory {
            times: Vec::with_capacity(samples),
            occupations: Vec::with_capacity(samples * self.sites),
            entropy: Vec::with_capacity(samples),
        };
        for k in 0..samples {
            if k > 0 {
                r = step.act(&r)?;
            }
            let state = GaussianState::new(r.clone())?;
            out.times.push(k as f64 * dt);
            out.occupations.extend(state.occupations());
            out.entropy.push(entropy(&state));
        }
        Ok(out)
    }
}

fn check_sites(n: usize) -> Result<()> {
    if (2..=MAX_SITES).contains(&n) {
        Ok(())
    } else {
        Err(Error::ModeCount { n, max: MAX_SITES })
    }
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct SkinResult {
    inner: SkinCurves,
}

#[wasm_bindgen]
impl SkinResult {
    #[wasm_bindgen(getter)]
    pub fn occupations(&self) -> Vec<f64> {
        self.inner.occupations.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn featureless(&self) -> Vec<f64> {
        self.inner.featureless.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn kappa(&self) -> f64 {
        self.inner.kappa
    }

    #[wasm_bindgen(getter, js_name = logSlope)]
    pub fn log_slope(&self) -> f64 {
        self.inner.log_slope
    }
}

#[wasm_bindgen(js_name = skinProfile)]
pub fn skin_profile(
    n: usize,
    omega: f64,
    lambda: f64,
    gamma: f64,
    a: f64,
    delta: f64,
) -> std::result::Result<SkinResult, JsError> {
    skin_curves(n, omega, lambda, gamma, a, delta)
        .map(|inner| SkinResult { inner })
        .map_err(js)
}

/// Row-major `samples × sites` occupations.
#[wasm_bindgen(js_name = relaxationOccupations)]
pub fn relaxation_occupations(
    sites: usize,
    hopping: f64,
    loss: f64,
    gain: f64,
    t_max: f64,
    samples: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    let chain = DrivenChain { sites, hopping, loss, gain };
    chain
        .trajectory(t_max, samples)
        .map(|t| t.occupations)
        .map_err(js)
}

#[wasm_bindgen(js_name = entropyCurve)]
pub fn entropy_curve(
    sites: usize,
    hopping: f64,
    loss: f64,
    gain: f64,
    t_max: f64,
    samples: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    let chain = DrivenChain { sites, hopping, loss, gain };
    chain.trajectory(t_max, samples).map(|t| t.entropy).map_err(js)
}
