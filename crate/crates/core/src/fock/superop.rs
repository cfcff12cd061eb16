use std::ops::{Add, Mul, Sub};

use super::FockSpace;
use crate::error::{Error, Result};
use crate::gaussian::LiouvillianParams;
use crate::linalg::{mat_exp, unvec, vec};
use crate::matrix::{ensure_operand, identity, kron, matmul, max_abs, trace, zeros, CMatrix, C64};

/// Largest mode count for which superoperators are exponentiated.
pub const EXP_MAX_MODES: usize = 5;

/// Linear map on `2^n × 2^n` operators, stored as its `4^n × 4^n` matrix
/// on column-stacked vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSuperOperator {
    n: usize,
    matrix: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperKind {
    /// `ρ ↦ Σ A_jk c_k ρ c_j†`
    Lhat,
    /// `ρ ↦ Σ A_jk c_j† ρ c_k`
    Ghat,
    /// `ρ ↦ (c, Ac) ρ`
    Fhat,
    /// `ρ ↦ ρ (c, Ac)`
    Bhat,
}

impl DenseSuperOperator {
    pub fn from_matrix(n: usize, matrix: CMatrix) -> Result<Self> {
        ensure_operand(&matrix, 1 << (2 * n))?;
        Ok(Self { n, matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            matrix: zeros(1 << (2 * n)),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: identity(1 << (2 * n)),
        }
    }

    /// `ρ ↦ X ρ Y`.
    pub fn sandwich(n: usize, x: &CMatrix, y: &CMatrix) -> Self {
        Self {
            n,
            matrix: kron(&y.transpose(), x),
        }
    }

    pub fn left(n: usize, x: &CMatrix) -> Self {
        Self::sandwich(n, x, &identity(1 << n))
    }

    pub fn right(n: usize, y: &CMatrix) -> Self {
        Self::sandwich(n, &identity(1 << n), y)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        ensure_operand(rho, 1 << self.n)?;
        Ok(unvec(&(&self.matrix * vec(rho)), 1 << self.n))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: matmul(&self.matrix, &other.matrix),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: matmul(&self.matrix, &other.matrix) - matmul(&other.matrix, &self.matrix),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix * z,
        }
    }

    /// `e^{t𝓛}`; refuses more than [`EXP_MAX_MODES`] modes.
    pub fn exp(&self, t: f64) -> Result<Self> {
        if self.n > EXP_MAX_MODES {
            return Err(Error::ModeCount {
                n: self.n,
                max: EXP_MAX_MODES,
            });
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::NegativeTime(t));
        }
        Ok(Self {
            n: self.n,
            matrix: mat_exp(&self.matrix.scale(t))?,
        })
    }

    /// `max_ρ |Tr 𝓛ρ|` over matrix units: zero for trace-preserving generators.
    pub fn trace_defect(&self) -> f64 {
        let tr_row = vec(&identity(1 << self.n)).transpose();
        max_abs(&(tr_row * &self.matrix))
    }

    /// Frobenius distance between the two matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        crate::matrix::distance(&self.matrix, &other.matrix)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }
}

impl Add for &DenseSuperOperator {
    type Output = DenseSuperOperator;
    fn add(self, rhs: Self) -> DenseSuperOperator {
        DenseSuperOperator {
            n: self.n,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &DenseSuperOperator {
    type Output = DenseSuperOperator;
    fn sub(self, rhs: Self) -> DenseSuperOperator {
        DenseSuperOperator {
            n: self.n,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &DenseSuperOperator {
    type Output = DenseSuperOperator;
    fn mul(self, rhs: Self) -> DenseSuperOperator {
        self.compose(rhs)
    }
}

pub fn super_basic(space: &FockSpace, kind: SuperKind, a: &CMatrix) -> Result<DenseSuperOperator> {
    let n = space.modes();
    ensure_operand(a, n)?;
    let d = space.dim();
    let weighted = |k: usize, ops: &dyn Fn(usize) -> CMatrix| {
        (0..n).fold(zeros(d), |acc, j| acc + ops(j) * a[(j, k)])
    };
    let matrix = match kind {
        SuperKind::Lhat => (0..n).fold(zeros(d * d), |acc, k| {
            // (c_j†)ᵗ = c̄_j
            let w = weighted(k, &|j| space.c(j).conjugate());
            acc + kron(&w, space.c(k))
        }),
        SuperKind::Ghat => (0..n).fold(zeros(d * d), |acc, k| {
            let w = weighted(k, &|j| space.c_dag(j).clone());
            acc + kron(&space.c(k).transpose(), &w)
        }),
        SuperKind::Fhat => kron(&identity(d), &space.quadratic(a)?),
        SuperKind::Bhat => kron(&space.quadratic(a)?.transpose(), &identity(d)),
    };
    Ok(DenseSuperOperator { n, matrix })
}

/// `L(A, M) = L̂(−A−A†−M) + Ĝ(M) + F̂(A+M) + B̂(A†+M) − tr M` for arbitrary
/// complex `A`, `M`.
pub fn liouvillian(space: &FockSpace, a: &CMatrix, m: &CMatrix) -> Result<DenseSuperOperator> {
    let n = space.modes();
    ensure_operand(a, n)?;
    ensure_operand(m, n)?;
    let ad = a.adjoint();
    let l = super_basic(space, SuperKind::Lhat, &(-a - &ad - m))?;
    let g = super_basic(space, SuperKind::Ghat, m)?;
    let f = super_basic(space, SuperKind::Fhat, &(a + m))?;
    let b = super_basic(space, SuperKind::Bhat, &(&ad + m))?;
    let shift = DenseSuperOperator::identity(n).scale(-trace(m));
    Ok(&(&(&(&l + &g) + &f) + &b) + &shift)
}

pub fn super_liouvillian(space: &FockSpace, p: &LiouvillianParams) -> Result<DenseSuperOperator> {
    liouvillian(space, p.a(), p.m())
}

/// `e^{tL(A,M)} ρ` by exponentiating the dense generator.
pub fn dense_evolve(
    space: &FockSpace,
    p: &LiouvillianParams,
    rho: &CMatrix,
    t: f64,
) -> Result<CMatrix> {
    super_liouvillian(space, p)?.exp(t)?.apply(rho)
}
