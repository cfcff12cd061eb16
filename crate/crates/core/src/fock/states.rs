use super::FockSpace;
use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::linalg::mat_exp;
use crate::matrix::{
    ensure_operand, hermitian_eigen, hermitian_eigenvalues, hermitian_function, identity, trace,
    zeros, CMatrix,
};

/// Spectra closer than this to 0 or 1 use the product form instead of the
/// logarithm.
const INTERIOR_MARGIN: f64 = 1e-8;

/// Density matrix of the Gaussian state with correlation matrix `R`.
///
/// For spectra inside `(0, 1)` this evaluates
/// `det(I − R) exp((c, log(R(I − R)⁻¹) c))` literally. Otherwise it uses the
/// product `Π_m [(1 − r_m) d_m d_m† + r_m d_m† d_m]` over the eigenmodes
/// `d_m = (u_m, c)` of `R`.
pub fn gaussian_density(space: &FockSpace, s: &GaussianState) -> Result<CMatrix> {
    ensure_operand(s.r(), space.modes())?;
    let spec = s.spectrum();
    let interior = spec
        .iter()
        .all(|&x| x > INTERIOR_MARGIN && x < 1.0 - INTERIOR_MARGIN);
    if interior {
        gaussian_density_formula(space, s.r())
    } else {
        gaussian_density_product(space, s.r())
    }
}

pub(crate) fn gaussian_density_formula(space: &FockSpace, r: &CMatrix) -> Result<CMatrix> {
    let n = space.modes();
    let det = (identity(n) - r).determinant();
    let log_ratio = hermitian_function(r, |x| (x / (1.0 - x)).ln());
    let rho = mat_exp(&space.quadratic(&log_ratio)?)? * det;
    Ok(crate::matrix::hermitian_part(&rho))
}

pub(crate) fn gaussian_density_product(space: &FockSpace, r: &CMatrix) -> Result<CMatrix> {
    let (values, u) = hermitian_eigen(r);
    let mut rho = space.identity();
    for (m, &x) in values.iter().enumerate() {
        let x = x.clamp(0.0, 1.0);
        let d = space.annihilator(&u.column(m).into_owned())?;
        let dd = d.adjoint();
        let factor = (&d * &dd).scale(1.0 - x) + (&dd * &d).scale(x);
        rho *= factor;
    }
    Ok(crate::matrix::hermitian_part(&rho))
}

/// `R_jk = Tr[c_k† c_j ρ]`.
pub fn read_correlations(space: &FockSpace, rho: &CMatrix) -> Result<CMatrix> {
    let n = space.modes();
    ensure_operand(rho, space.dim())?;
    let mut r = zeros(n);
    for j in 0..n {
        let cj_rho = space.c(j) * rho;
        for k in 0..n {
            r[(j, k)] = trace(&(space.c_dag(k) * &cj_rho));
        }
    }
    Ok(r)
}

/// `½ ‖ρ − σ‖₁` for Hermitian arguments.
pub fn trace_distance(rho: &CMatrix, sigma: &CMatrix) -> Result<f64> {
    ensure_operand(sigma, rho.nrows())?;
    Ok(0.5 * hermitian_eigenvalues(&(rho - sigma)).iter().map(|x| x.abs()).sum::<f64>())
}

/// `−Tr[ρ log ρ]`, with `0·log 0 = 0`.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    ensure_operand(rho, rho.nrows())?;
    if rho.nrows() == 0 {
        return Err(Error::InvalidParameter("empty density matrix".into()));
    }
    Ok(hermitian_eigenvalues(rho)
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum())
}
