//! Non-Hermitian skin effect on an open Hatano–Nelson chain.
//!
//! `H = ωI + λ𝔽` and `D − E = γ(aI + 𝔾)` give the effective Hamiltonian
//! `H_nH = H − i(D − E) = (ω − iaγ)I + 𝕂`, similar under `V(κ) = diag(κ^{j−1})`
//! to `(ω − iaγ)I − i√(γ² − λ²)𝔾`. Choosing the gain `E` appropriately makes
//! `X = xV(κ)⁻²` stationary, so the occupation grows geometrically along the
//! chain. The featureless choice `E = δD` instead relaxes to `δ/(1+δ)·I`.

use crate::error::{Error, Result};
use crate::gaussian::{expectation_quadratic, steady_state, GaussianState, LiouvillianParams};
use crate::linalg::{eigenvalues, lyapunov_solve};
use crate::matrix::{
    diag, hermitian_part, identity, max_abs, min_hermitian_eigenvalue, zeros, CMatrix, C64, I,
};

const SIMILARITY_TOL: f64 = 1e-10;
const BATH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatanoNelsonParams {
    n: usize,
    omega: f64,
    lambda: f64,
    gamma: f64,
    a: f64,
    x: f64,
}

impl HatanoNelsonParams {
    /// Validates `ω > 0`, `γ > λ > 0`, `a > 2` and `x ∈ (0, κ^{2n−2}/2)`.
    /// `x = None` picks the midpoint `κ^{2n−2}/4`.
    pub fn new(n: usize, omega: f64, lambda: f64, gamma: f64, a: f64, x: Option<f64>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        if n == 0 {
            return invalid("lattice size n must be at least 1".into());
        }
        for (name, v) in [("omega", omega), ("lambda", lambda), ("gamma", gamma), ("a", a)] {
            if !v.is_finite() {
                return invalid(format!("{name} must be finite, got {v}"));
            }
        }
        if !(omega > 0.0) {
            return invalid(format!("omega must be positive, got {omega}"));
        }
        if !(lambda > 0.0) {
            return invalid(format!("lambda must be positive, got {lambda}"));
        }
        if !(gamma > lambda) {
            return invalid(format!("gamma must exceed lambda, got gamma={gamma}, lambda={lambda}"));
        }
        if !(a > 2.0) {
            return invalid(format!("a must exceed 2, got {a}"));
        }
        let kappa = ((gamma - lambda) / (gamma + lambda)).sqrt();
        let x_max = kappa.powi(2 * n as i32 - 2) / 2.0;
        let x = x.unwrap_or(x_max / 2.0);
        if !(x > 0.0 && x < x_max) {
            return invalid(format!("x must lie in (0, {x_max:e}), got {x}"));
        }
        Ok(Self { n, omega, lambda, gamma, a, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// `√((γ − λ)/(γ + λ))`.
    pub fn kappa(&self) -> f64 {
        ((self.gamma - self.lambda) / (self.gamma + self.lambda)).sqrt()
    }

    /// Upper end of the admissible interval for `x`.
    pub fn x_max(&self) -> f64 {
        self.kappa().powi(2 * self.n as i32 - 2) / 2.0
    }

    fn root(&self) -> f64 {
        (self.gamma * self.gamma - self.lambda * self.lambda).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct SkinMatrices {
    /// `𝔽_jk = δ_{j,k+1} + δ_{j+1,k}`.
    pub f: CMatrix,
    /// `𝔾_jk = iδ_{j,k+1} − iδ_{j+1,k}`.
    pub g: CMatrix,
    /// `H = ωI + λ𝔽`.
    pub h: CMatrix,
    /// `D − E = γ(aI + 𝔾)`.
    pub d_minus_e: CMatrix,
    pub h_nh: CMatrix,
    /// `V(κ) = diag(1, κ, …, κ^{n−1})`.
    pub v_kappa: CMatrix,
    /// Max-entry residual of `V H_nH V⁻¹ = (ω − iaγ)I − i√(γ²−λ²)𝔾`.
    pub similarity_residual: f64,
}

pub fn build_matrices(p: &HatanoNelsonParams) -> Result<SkinMatrices> {
    let n = p.n;
    let one = C64::new(1.0, 0.0);
    let mut f = zeros(n);
    let mut g = zeros(n);
    for j in 1..n {
        f[(j, j - 1)] = one;
        f[(j - 1, j)] = one;
        g[(j, j - 1)] = I;
        g[(j - 1, j)] = -I;
    }
    let h = identity(n).scale(p.omega) + f.scale(p.lambda);
    let d_minus_e = (identity(n).scale(p.a) + &g).scale(p.gamma);
    let h_nh = &h - &d_minus_e * I;

    let kappa = p.kappa();
    let powers: Vec<C64> = (0..n).map(|j| C64::new(kappa.powi(j as i32), 0.0)).collect();
    let inv_powers: Vec<C64> = powers.iter().map(|z| z.inv()).collect();
    let v_kappa = diag(&powers);
    let similar = &v_kappa * &h_nh * diag(&inv_powers);
    let target = identity(n) * C64::new(p.omega, -p.a * p.gamma) - &g * (I * p.root());
    let similarity_residual = max_abs(&(similar - target));
    if similarity_residual > SIMILARITY_TOL {
        return Err(Error::Postcondition {
            what: "similarity V H_nH V^-1",
            value: similarity_residual,
        });
    }
    Ok(SkinMatrices {
        f,
        g,
        h,
        d_minus_e,
        h_nh,
        v_kappa,
        similarity_residual,
    })
}

/// Eigenvalues of `H_nH`; all have imaginary part below zero.
pub fn nh_spectrum(p: &HatanoNelsonParams) -> Result<Vec<C64>> {
    eigenvalues(&build_matrices(p)?.h_nh)
}

#[derive(Debug, Clone)]
pub struct SkinBath {
    /// Target steady state `X = xV(κ)⁻²`.
    pub x_mat: CMatrix,
    pub e: CMatrix,
    /// `D = (D − E) + E`.
    pub d: CMatrix,
    /// `M = 2E`.
    pub m: CMatrix,
    /// `A = −iH_nH − M`.
    pub a: CMatrix,
    /// `‖AX + XA† + M‖_max`.
    pub lyapunov_residual: f64,
}

impl SkinBath {
    pub fn params(&self) -> Result<LiouvillianParams> {
        LiouvillianParams::new(self.a.clone(), self.m.clone())
    }
}

/// `E = ∫₀^∞ e^{(2X−I)s} Y e^{(2X−I)s} ds` with
/// `Y = xV⁻¹[2aγI + 2√(γ²−λ²)𝔾]V⁻¹`, evaluated as the Lyapunov solve
/// `(2X − I)E + E(2X − I) = −Y`.
pub fn build_bath(p: &HatanoNelsonParams) -> Result<SkinBath> {
    let mats = build_matrices(p)?;
    let n = p.n;
    let kappa = p.kappa();
    let v_inv = diag(
        &(0..n)
            .map(|j| C64::new(kappa.powi(-(j as i32)), 0.0))
            .collect::<Vec<_>>(),
    );
    let x_mat = (&v_inv * &v_inv).scale(p.x);
    let core = identity(n).scale(2.0 * p.a * p.gamma) + mats.g.scale(2.0 * p.root());
    let y = (&v_inv * core * &v_inv).scale(p.x);
    let drift = x_mat.scale(2.0) - identity(n);
    let e = hermitian_part(&lyapunov_solve(&drift, &y)?);
    let m = e.scale(2.0);
    let a = -(&mats.h_nh * I) - &m;
    let d = &mats.d_minus_e + &e;

    let checks = [
        ("E >= 0", min_hermitian_eigenvalue(&e)),
        ("M >= 0", min_hermitian_eigenvalue(&m)),
        ("-A - A^dagger - M >= 0", min_hermitian_eigenvalue(&(-&a - a.adjoint() - &m))),
    ];
    for (what, value) in checks {
        if value < -BATH_TOL {
            return Err(Error::Postcondition { what, value });
        }
    }
    let lyapunov_residual = max_abs(&(&a * &x_mat + &x_mat * a.adjoint() + &m));
    if lyapunov_residual > BATH_TOL {
        return Err(Error::Postcondition {
            what: "A X + X A^dagger + M = 0",
            value: lyapunov_residual,
        });
    }
    Ok(SkinBath {
        x_mat,
        e,
        d,
        m,
        a,
        lyapunov_residual,
    })
}

#[derive(Debug, Clone)]
pub struct SkinProfile {
    /// `⟨c_j† c_j⟩` in the steady state, `j = 1…n`.
    pub occupations: Vec<f64>,
    /// Least-squares slope of `log n_j` against `j`.
    pub log_slope: f64,
    /// Largest deviation of the per-site slope from the fit.
    pub slope_spread: f64,
    /// Steady correlation matrix from the Lyapunov solve.
    pub steady: CMatrix,
    /// `max |R − xV⁻²|`.
    pub deviation_from_target: f64,
}

pub fn steady_profile(p: &HatanoNelsonParams) -> Result<SkinProfile> {
    let bath = build_bath(p)?;
    let state = steady_state(&bath.params()?)?;
    let occupations = site_occupations(&state)?;
    let (log_slope, slope_spread) = log_slope(&occupations);
    Ok(SkinProfile {
        deviation_from_target: max_abs(&(state.r() - &bath.x_mat)),
        steady: state.into_inner(),
        occupations,
        log_slope,
        slope_spread,
    })
}

fn site_occupations(state: &GaussianState) -> Result<Vec<f64>> {
    let n = state.dim();
    (0..n)
        .map(|j| {
            let mut t = zeros(n);
            t[(j, j)] = C64::new(1.0, 0.0);
            expectation_quadratic(state, &t).map(|z| z.re)
        })
        .collect()
}

/// Slope of the least-squares line through `(j, log n_j)` and the largest
/// deviation of a nearest-neighbour slope from it.
fn log_slope(occ: &[f64]) -> (f64, f64) {
    let k = occ.len();
    if k < 2 {
        return (0.0, 0.0);
    }
    let logs: Vec<f64> = occ.iter().map(|v| v.ln()).collect();
    let mean_j = (k - 1) as f64 / 2.0;
    let mean_l = logs.iter().sum::<f64>() / k as f64;
    let (num, den) = logs.iter().enumerate().fold((0.0, 0.0), |(num, den), (j, l)| {
        let dj = j as f64 - mean_j;
        (num + dj * (l - mean_l), den + dj * dj)
    });
    let slope = num / den;
    let spread = logs
        .windows(2)
        .map(|w| (w[1] - w[0] - slope).abs())
        .fold(0.0, f64::max);
    (slope, spread)
}

#[derive(Debug, Clone)]
pub struct FeaturelessBath {
    pub d: CMatrix,
    pub e: CMatrix,
    pub a: CMatrix,
    pub m: CMatrix,
    /// Steady correlation matrix from the Lyapunov solve.
    pub steady: CMatrix,
    /// `max |R − δ/(1+δ)·I|`.
    pub deviation_from_target: f64,
}

/// The bath `E = δD` sharing the same `H_nH`:
/// `E = (iδ / (2(1 − δ)))(H_nH − H_nH†)`, which requires `0 < δ < 1`.
pub fn featureless_choice(p: &HatanoNelsonParams, delta: f64) -> Result<FeaturelessBath> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let mats = build_matrices(p)?;
    let anti = &mats.h_nh - mats.h_nh.adjoint();
    let e = hermitian_part(&(anti * (I * (delta / (2.0 * (1.0 - delta))))));
    let d = e.scale(1.0 / delta);
    let a = -(&mats.h * I) - &d - &e;
    let m = e.scale(2.0);
    let params = LiouvillianParams::new(a.clone(), m.clone())?;
    if !params.gksl() {
        return Err(Error::Postcondition {
            what: "featureless bath satisfies O <= M <= -A - A^dagger",
            value: min_hermitian_eigenvalue(&m),
        });
    }
    let steady = steady_state(&params)?.into_inner();
    let target = identity(p.n).scale(delta / (1.0 + delta));
    Ok(FeaturelessBath {
        deviation_from_target: max_abs(&(&steady - target)),
        d,
        e,
        a,
        m,
        steady,
    })
}

/// Occupations of the featureless steady state.
pub fn featureless_profile(p: &HatanoNelsonParams, delta: f64) -> Result<Vec<f64>> {
    let bath = featureless_choice(p, delta)?;
    site_occupations(&GaussianState::new(bath.steady)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> HatanoNelsonParams {
        HatanoNelsonParams::new(6, 1.0, 0.3, 0.5, 2.5, None).unwrap()
    }

    #[test]
    fn validation() {
        assert!(HatanoNelsonParams::new(2, 1.0, 0.5, 0.5, 2.5, None).is_err());
        assert!(HatanoNelsonParams::new(3, 0.0, 0.3, 0.5, 2.5, None).is_err());
        assert!(HatanoNelsonParams::new(3, 1.0, 0.3, 0.5, 2.0, None).is_err());
        assert!(HatanoNelsonParams::new(3, 1.0, -0.3, 0.5, 2.5, None).is_err());
        assert!(HatanoNelsonParams::new(3, 1.0, 0.3, 0.5, 2.5, Some(0.5f64.powi(4) / 2.0)).is_err());
        assert!(HatanoNelsonParams::new(3, 1.0, 0.3, 0.5, 2.5, Some(0.0)).is_err());
        assert!(HatanoNelsonParams::new(0, 1.0, 0.3, 0.5, 2.5, None).is_err());
    }

    #[test]
    fn kappa_closed_form() {
        let p = HatanoNelsonParams::new(3, 1.0, 0.3, 0.5, 2.5, None).unwrap();
        assert!((p.kappa() - 0.5).abs() < 1e-15);
        let mats = build_matrices(&p).unwrap();
        let want = diag(&[C64::new(1.0, 0.0), C64::new(0.5, 0.0), C64::new(0.25, 0.0)]);
        assert!(max_abs(&(mats.v_kappa - want)) < 1e-15);
        assert!((p.x() - 0.5f64.powi(4) / 4.0).abs() < 1e-18);
    }

    #[test]
    fn effective_hamiltonian_hoppings() {
        let p = reference();
        let mats = build_matrices(&p).unwrap();
        assert!(mats.similarity_residual <= 1e-10);
        // 𝕂_jk = (γ+λ)δ_{j,k+1} − (γ−λ)δ_{j+1,k}
        let k = &mats.h_nh - identity(6) * C64::new(p.omega(), -p.a() * p.gamma());
        for j in 0..6 {
            for l in 0..6 {
                let want = if j == l + 1 {
                    p.gamma() + p.lambda()
                } else if j + 1 == l {
                    -(p.gamma() - p.lambda())
                } else {
                    0.0
                };
                assert!((k[(j, l)] - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn spectrum_is_damped() {
        let p = reference();
        for z in nh_spectrum(&p).unwrap() {
            assert!(z.im < 0.0);
            assert!((z.im + p.a() * p.gamma()).abs() <= 2.0 * (p.gamma().powi(2) - p.lambda().powi(2)).sqrt() + 1e-12);
        }
    }

    #[test]
    fn bath_postconditions() {
        let p = HatanoNelsonParams::new(4, 1.0, 0.3, 0.5, 2.5, Some(0.5f64.powi(6) / 4.0)).unwrap();
        let bath = build_bath(&p).unwrap();
        assert!(bath.lyapunov_residual <= 1e-9);
        assert!(min_hermitian_eigenvalue(&bath.m) >= -1e-9);
        assert!(min_hermitian_eigenvalue(&(-&bath.a - bath.a.adjoint() - &bath.m)) >= -1e-9);
        assert!(bath.params().unwrap().gksl());
        let kappa = p.kappa();
        for j in 0..4 {
            let want = p.x() * kappa.powi(-2 * j as i32);
            assert_eq!(bath.x_mat[(j, j)].re, want);
        }
    }

    #[test]
    fn geometric_profile() {
        let p = HatanoNelsonParams::new(3, 1.0, 0.3, 0.5, 2.5, Some(0.5f64.powi(4) / 4.0)).unwrap();
        let prof = steady_profile(&p).unwrap();
        for (got, factor) in prof.occupations.iter().zip([1.0, 4.0, 16.0]) {
            assert!((got - p.x() * factor).abs() < 1e-12);
        }
        assert!(prof.deviation_from_target < 1e-9);

        let p = reference();
        let prof = steady_profile(&p).unwrap();
        let want = -2.0 * p.kappa().ln();
        assert!((prof.log_slope - want).abs() < 1e-10);
        assert!(prof.slope_spread < 1e-10);
        assert!(prof.occupations.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn featureless_examples() {
        let p = HatanoNelsonParams::new(4, 1.0, 0.3, 0.5, 2.5, None).unwrap();
        let bath = featureless_choice(&p, 1.0 / 3.0).unwrap();
        assert!(max_abs(&(&bath.steady - identity(4).scale(0.25))) < 1e-9);
        assert!(max_abs(&(&bath.e - bath.d.scale(1.0 / 3.0))) < 1e-14);
        let tiny = featureless_choice(&p, 1e-9).unwrap();
        assert!(max_abs(&tiny.steady) < 1e-8);
        assert!(featureless_choice(&p, 1.0).is_err());
        assert!(featureless_choice(&p, 0.0).is_err());
    }

    #[test]
    fn bath_choice_matters() {
        let p = reference();
        let skin = steady_profile(&p).unwrap().occupations;
        let flat = featureless_profile(&p, 1.0 / 3.0).unwrap();
        let ratio = |v: &[f64]| {
            v.iter().cloned().fold(f64::MIN, f64::max) / v.iter().cloned().fold(f64::MAX, f64::min)
        };
        let want = p.kappa().powi(2 - 2 * 6);
        assert!((ratio(&skin) / want - 1.0).abs() < 1e-9);
        assert!((ratio(&flat) - 1.0).abs() < 1e-9);
    }
}
