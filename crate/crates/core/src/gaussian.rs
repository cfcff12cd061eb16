//! Polynomial-cost dynamics of Gaussian states.
//!
//! A Gaussian state is labelled by its one-particle correlation matrix
//! `R_{jk} = Tr[c_k† c_j ρ]`. Under the Liouvillian `L(A, M)` it stays
//! Gaussian and `R` follows the affine flow
//!
//! ```text
//! R(t) = e^{tA} R e^{tA†} + ∫₀ᵗ e^{sA} M e^{sA†} ds.
//! ```

use crate::affine::AffineGenerator;
use crate::error::{Error, Result};
use crate::linalg::{lyapunov_solve, spectral_split, SpectralSplit};
use crate::matrix::{
    ensure_operand, ensure_square, hermitian_deviation, hermitian_eigenvalues, hermitian_part,
    identity, min_hermitian_eigenvalue, norm, outer, trace, zeros, CMatrix, CVector, C64, I,
};

/// Tolerance on the two eigenvalue conditions `O ⩽ M ⩽ −A − A†`.
pub const GKSL_TOL: f64 = 1e-10;
/// Tolerance on the spectrum of a correlation matrix leaving `[0, 1]`.
pub const PHYSICALITY_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-12;

/// The pair `(A, M)` parametrizing
/// `L(A, M) = L̂(−A−A†−M) + Ĝ(M) + F̂(A+M) + B̂(A†+M) − tr M`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianParams {
    a: CMatrix,
    m: CMatrix,
    gksl: bool,
}

impl LiouvillianParams {
    pub fn new(a: CMatrix, m: CMatrix) -> Result<Self> {
        let n = ensure_square(&a)?;
        ensure_operand(&a, n)?;
        ensure_operand(&m, n)?;
        let gksl = satisfies_gksl(&a, &m, GKSL_TOL);
        Ok(Self { a, m, gksl })
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn m(&self) -> &CMatrix {
        &self.m
    }

    /// `O ⩽ M ⩽ −A − A†`: the Liouvillian generates a completely positive
    /// trace-preserving semigroup.
    pub fn gksl(&self) -> bool {
        self.gksl
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn generator(&self) -> AffineGenerator {
        AffineGenerator::new(self.a.clone(), self.m.clone()).expect("validated on construction")
    }
}

pub fn satisfies_gksl(a: &CMatrix, m: &CMatrix, tol: f64) -> bool {
    if a.nrows() == 0 {
        return true;
    }
    if hermitian_deviation(m) > HERMITIAN_TOL * norm(m).max(1.0) {
        return false;
    }
    let scale = (norm(a) + norm(m)).max(1.0);
    min_hermitian_eigenvalue(m) >= -tol * scale
        && min_hermitian_eigenvalue(&(-a - a.adjoint() - m)) >= -tol * scale
}

/// Gaussian state `e^{L(O, R)}Ω` labelled by its correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    r: CMatrix,
}

impl GaussianState {
    pub fn new(r: CMatrix) -> Result<Self> {
        Self::with_tolerance(r, PHYSICALITY_TOL)
    }

    /// Accepts spectra within `[−tol, 1 + tol]`.
    pub fn with_tolerance(r: CMatrix, tol: f64) -> Result<Self> {
        let n = ensure_square(&r)?;
        ensure_operand(&r, n)?;
        let dev = hermitian_deviation(&r);
        if dev > HERMITIAN_TOL * norm(&r).max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        let r = hermitian_part(&r);
        let spec = hermitian_eigenvalues(&r);
        if let (Some(&min), Some(&max)) = (spec.first(), spec.last()) {
            if min < -tol || max > 1.0 + tol {
                return Err(Error::SpectrumOutOfRange { min, max });
            }
        }
        Ok(Self { r })
    }

    pub fn vacuum(n: usize) -> Self {
        Self { r: zeros(n) }
    }

    pub fn filled(n: usize) -> Self {
        Self { r: identity(n) }
    }

    pub fn r(&self) -> &CMatrix {
        &self.r
    }

    pub fn into_inner(self) -> CMatrix {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.r.nrows()
    }

    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.r)
    }

    /// `⟨c_j† c_j⟩ = R_jj`.
    pub fn occupations(&self) -> Vec<f64> {
        self.r.diagonal().iter().map(|z| z.re).collect()
    }
}

/// One-particle description of the master equation
/// `dρ/dt = −i[H, ρ] + Σ_loss (2 Dρ D† − {D†D, ρ}) + Σ_gain (2 D†ρ D − {D D†, ρ})`
/// with `H = (c, Hc)` and jump operators `D_m = (ℓ_m, c)`.
#[derive(Debug, Clone)]
pub struct PhysicalModel {
    h: CMatrix,
    loss: Vec<CVector>,
    gain: Vec<CVector>,
}

impl PhysicalModel {
    pub fn new(h: CMatrix, loss: Vec<CVector>, gain: Vec<CVector>) -> Result<Self> {
        let n = ensure_square(&h)?;
        ensure_operand(&h, n)?;
        let dev = hermitian_deviation(&h);
        if dev > HERMITIAN_TOL * norm(&h).max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        for v in loss.iter().chain(&gain) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self {
            h: hermitian_part(&h),
            loss,
            gain,
        })
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// `D = Σ_loss ℓℓ†`.
    pub fn d(&self) -> CMatrix {
        sum_outer(self.dim(), &self.loss)
    }

    /// `E = Σ_gain ℓℓ†`.
    pub fn e(&self) -> CMatrix {
        sum_outer(self.dim(), &self.gain)
    }
}

fn sum_outer(n: usize, vs: &[CVector]) -> CMatrix {
    vs.iter().fold(zeros(n), |acc, v| acc + outer(v, v))
}

/// `A = −iH − D − E`, `M = 2E`.
pub fn params_from_model(model: &PhysicalModel) -> Result<LiouvillianParams> {
    let d = model.d();
    let e = model.e();
    let a = -(model.h() * I) - &d - &e;
    LiouvillianParams::new(a, e.scale(2.0))
}

/// `R(t) = e^{tA} R e^{tA†} + ∫₀ᵗ e^{sA} M e^{sA†} ds`.
pub fn evolve_state(p: &LiouvillianParams, s: &GaussianState, t: f64) -> Result<GaussianState> {
    evolve_state_with_tolerance(p, s, t, PHYSICALITY_TOL)
}

pub fn evolve_state_with_tolerance(
    p: &LiouvillianParams,
    s: &GaussianState,
    t: f64,
    tol: f64,
) -> Result<GaussianState> {
    ensure_operand(s.r(), p.dim())?;
    let g = p.generator().flow(t)?;
    let r = g.act(s.r())?;
    GaussianState::with_tolerance(hermitian_part(&r), tol)
}

/// The unique stationary Gaussian state `R = ∫₀^∞ e^{sA} M e^{sA†} ds`,
/// i.e. the solution of `AR + RA† + M = O`. Requires every eigenvalue of `A`
/// to be strictly damped.
pub fn steady_state(p: &LiouvillianParams) -> Result<GaussianState> {
    let split = spectral_split(p.a(), None)?;
    if !split.imaginary_eigenvalues.is_empty() {
        return Err(Error::NoUniqueSteadyState {
            eigenvalues: split.imaginary_eigenvalues,
        });
    }
    let r = lyapunov_solve(p.a(), p.m())?;
    GaussianState::new(r)
}

/// Long-time description of a Gaussian trajectory:
/// `R(t) − (M∞ + e^{tA₀} P₀RP₀ e^{tA₀†}) → O`.
#[derive(Debug, Clone)]
pub struct AsymptoticDecomposition {
    /// `((A₀, O))`, the persistent rotation.
    pub a0_flow: AffineGenerator,
    /// `∫₀^∞ e^{sA} M e^{sA†} ds`.
    pub m_inf: CMatrix,
    /// `P₀ R P₀`.
    pub projected_state: GaussianState,
    pub split: SpectralSplit,
}

impl AsymptoticDecomposition {
    /// Correlation matrix of `e^{tL(A₀,O)} e^{L(O,M∞)} 𝔭ρ(0)`.
    pub fn predict(&self, t: f64) -> Result<CMatrix> {
        let rot = self.a0_flow.flow(t)?;
        Ok(&self.m_inf + rot.act(self.projected_state.r())?)
    }
}

pub fn asymptotic_decomposition(
    p: &LiouvillianParams,
    s: &GaussianState,
) -> Result<AsymptoticDecomposition> {
    if !p.gksl() {
        return Err(Error::InvalidParameter(
            "asymptotic decomposition requires O <= M <= -A - A^dagger".into(),
        ));
    }
    ensure_operand(s.r(), p.dim())?;
    let n = p.dim();
    let split = spectral_split(p.a(), None)?;

    // M vanishes on the persistent subspace, so the improper integral is a
    // Lyapunov solve restricted to the damped subspace.
    let q = &split.v_minus_basis;
    let m_inf = if q.ncols() == 0 {
        zeros(n)
    } else {
        let a_r = q.adjoint() * p.a() * q;
        let m_r = q.adjoint() * p.m() * q;
        let t = lyapunov_solve(&a_r, &m_r)?;
        hermitian_part(&(q * t * q.adjoint()))
    };
    let projected = hermitian_part(&(&split.p0 * s.r() * &split.p0));
    Ok(AsymptoticDecomposition {
        a0_flow: AffineGenerator::new(split.a0.clone(), zeros(n))?,
        m_inf,
        projected_state: GaussianState::new(projected)?,
        split,
    })
}

/// `Tr[(c, Tc) ρ] = tr(T R)`.
pub fn expectation_quadratic(s: &GaussianState, t_mat: &CMatrix) -> Result<C64> {
    ensure_operand(t_mat, s.dim())?;
    Ok(trace(&(t_mat * s.r())))
}

/// `−tr(R log R) − tr((I−R) log(I−R))`, with `0·log 0 = 0`.
pub fn entropy(s: &GaussianState) -> f64 {
    s.spectrum()
        .into_iter()
        .map(|x| binary_entropy(x.clamp(0.0, 1.0)))
        .sum()
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    term(x) + term(1.0 - x)
}
