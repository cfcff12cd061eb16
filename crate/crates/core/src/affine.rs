//! The group of affine maps `X ↦ U X U† + M` on `n×n` matrices, its Lie
//! bracket on generator pairs `(A, M)`, and the one-parameter semigroups
//!
//! ```text
//! exp(t·(A, M)) = ( e^{tA}, ∫₀ᵗ e^{sA} M e^{sA†} ds ).
//! ```
//!
//! Correlation matrices of Gaussian states evolve by exactly these maps.

use crate::error::{Error, Result};
use crate::linalg::{lyapunov_solve, propagator_and_integral};
use crate::matrix::{commutator, ensure_operand, ensure_square, identity, norm, zeros, CMatrix};

/// Largest accepted condition number for the linear part.
pub const DEFAULT_CONDITION_CAP: f64 = 1e12;

/// Group element `(U, M)` acting by `X ↦ U X U† + M`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineElement {
    u: CMatrix,
    m: CMatrix,
}

impl AffineElement {
    pub fn new(u: CMatrix, m: CMatrix) -> Result<Self> {
        Self::with_condition_cap(u, m, DEFAULT_CONDITION_CAP)
    }

    pub fn with_condition_cap(u: CMatrix, m: CMatrix, cap: f64) -> Result<Self> {
        let n = ensure_square(&u)?;
        ensure_operand(&u, n)?;
        ensure_operand(&m, n)?;
        if n > 0 {
            let sv = u.singular_values();
            let (max, min) = sv
                .iter()
                .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
            let cond = if min > 0.0 { max / min } else { f64::INFINITY };
            if !(cond <= cap) {
                return Err(Error::IllConditioned(cond));
            }
        }
        Ok(Self { u, m })
    }

    /// For linear parts that are invertible by construction (exponentials).
    fn from_parts(u: CMatrix, m: CMatrix) -> Self {
        Self { u, m }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts(identity(n), zeros(n))
    }

    pub fn translation(m: CMatrix) -> Result<Self> {
        let n = ensure_square(&m)?;
        Self::new(identity(n), m)
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    pub fn m(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// `U X U† + M`.
    pub fn act(&self, x: &CMatrix) -> Result<CMatrix> {
        ensure_operand(x, self.dim())?;
        Ok(&self.u * x * self.u.adjoint() + &self.m)
    }

    /// `(U, M) ∘ (V, N) = (UV, U N U† + M)`.
    pub fn compose(&self, other: &AffineElement) -> Result<AffineElement> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self::from_parts(
            &self.u * &other.u,
            &self.u * &other.m * self.u.adjoint() + &self.m,
        ))
    }

    /// `(U⁻¹, −U⁻¹ M U⁻¹†)`.
    pub fn inverse(&self) -> Result<AffineElement> {
        let inv = self
            .u
            .clone()
            .try_inverse()
            .ok_or(Error::IllConditioned(f64::INFINITY))?;
        let m = -(&inv * &self.m * inv.adjoint());
        Ok(Self::from_parts(inv, m))
    }

    /// `max(‖U − V‖, ‖M − N‖)` in the Frobenius norm.
    pub fn distance(&self, other: &AffineElement) -> f64 {
        norm(&(&self.u - &other.u)).max(norm(&(&self.m - &other.m)))
    }
}

/// Lie-algebra element `((A, M))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineGenerator {
    a: CMatrix,
    m: CMatrix,
}

impl AffineGenerator {
    pub fn new(a: CMatrix, m: CMatrix) -> Result<Self> {
        let n = ensure_square(&a)?;
        ensure_operand(&a, n)?;
        ensure_operand(&m, n)?;
        Ok(Self { a, m })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            a: zeros(n),
            m: zeros(n),
        }
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn m(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// `[((A,M)), ((B,N))] = (([A,B], AN + NA† − BM − MB†))`.
    pub fn bracket(&self, other: &AffineGenerator) -> Result<AffineGenerator> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let (a, m) = (&self.a, &self.m);
        let (b, n) = (&other.a, &other.m);
        Ok(Self {
            a: commutator(a, b),
            m: a * n + n * a.adjoint() - b * m - m * b.adjoint(),
        })
    }

    /// `e^{t((A,M))} = (e^{tA}, ∫₀ᵗ e^{sA} M e^{sA†} ds)`.
    pub fn flow(&self, t: f64) -> Result<AffineElement> {
        let (u, m) = propagator_and_integral(&self.a, &self.m, t)?;
        Ok(AffineElement::from_parts(u, m))
    }
}

pub fn act(g: &AffineElement, x: &CMatrix) -> Result<CMatrix> {
    g.act(x)
}

pub fn compose(g: &AffineElement, h: &AffineElement) -> Result<AffineElement> {
    g.compose(h)
}

pub fn bracket(p: &AffineGenerator, q: &AffineGenerator) -> Result<AffineGenerator> {
    p.bracket(q)
}

pub fn flow(p: &AffineGenerator, t: f64) -> Result<AffineElement> {
    p.flow(t)
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Compares `e^{t((A,M))}` with `(I, T) ∘ (e^{tA}, O) ∘ (I, −T)` where
/// `AT + TA† = −M`.
pub fn conjugation_identity_check(a: &CMatrix, m: &CMatrix, t: f64) -> Result<IdentityCheck> {
    let generator = AffineGenerator::new(a.clone(), m.clone())?;
    let n = generator.dim();
    let lyap = lyapunov_solve(a, m)?;
    let lhs = generator.flow(t)?;
    let linear = AffineGenerator::new(a.clone(), zeros(n))?.flow(t)?;
    let rhs = AffineElement::from_parts(identity(n), lyap.clone())
        .compose(&linear)?
        .compose(&AffineElement::from_parts(identity(n), -lyap))?;
    let residual = lhs.distance(&rhs);
    let tol = 1e-10 * (1.0 + norm(m));
    Ok(IdentityCheck {
        holds: residual <= tol,
        residual,
    })
}
