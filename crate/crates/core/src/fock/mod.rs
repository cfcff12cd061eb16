//! Brute-force Fock-space oracle.
//!
//! Everything here works with dense `2^n × 2^n` operators and
//! `4^n × 4^n` superoperators, so it is only usable for a handful of modes.
//! It exists to check the matrix-level calculus against ground truth.
//!
//! Conventions: occupation basis `|ν₁…ν_n⟩` with `ν₁` the most significant
//! bit, `c_j = Z ⊗ … ⊗ Z ⊗ σ⁻ ⊗ I ⊗ … ⊗ I` with the lowering operator at
//! site `j`, and column-stacking vectorization
//! `vec(XρY) = (Yᵗ ⊗ X) vec(ρ)`.

mod basis;
mod majorana;
mod states;
mod superop;

pub use basis::{
    omega_pi_expansion, phi_basis, phi_basis_matrix, phi_evolution_check, pi_basis,
    pi_omega_expansion, projection_onto_persistent,
};
pub use majorana::{
    majorana_anticommutator_residual, majorana_liouvillian, majorana_liouvillian_check,
    majorana_operators, MajoranaCheck,
};
pub use states::{
    gaussian_density, read_correlations, trace_distance, von_neumann_entropy,
};
pub use superop::{
    dense_evolve, liouvillian, super_basic, super_liouvillian, DenseSuperOperator, SuperKind,
    EXP_MAX_MODES,
};

use crate::error::{Error, Result};
use crate::matrix::{anticommutator, identity, kron, max_abs, zeros, CMatrix, CVector, C64};

/// Largest mode count for which operators are built.
pub const MAX_MODES: usize = 6;

/// The CAR algebra on `n` modes.
#[derive(Debug, Clone)]
pub struct FockSpace {
    n: usize,
    c: Vec<CMatrix>,
    c_dag: Vec<CMatrix>,
}

impl FockSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_MODES {
            return Err(Error::ModeCount { n, max: MAX_MODES });
        }
        let c = build_car(n)?;
        let c_dag = c.iter().map(|x| x.adjoint()).collect();
        Ok(Self { n, c, c_dag })
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn c(&self, j: usize) -> &CMatrix {
        &self.c[j]
    }

    pub fn c_dag(&self, j: usize) -> &CMatrix {
        &self.c_dag[j]
    }

    pub fn identity(&self) -> CMatrix {
        identity(self.dim())
    }

    /// `Ω = |v⟩⟨v|`, the projection onto the empty state.
    pub fn vacuum(&self) -> CMatrix {
        let mut omega = zeros(self.dim());
        omega[(0, 0)] = C64::new(1.0, 0.0);
        omega
    }

    /// `(c, ξ) = Σ ξ_j c_j†`.
    pub fn creator(&self, xi: &CVector) -> Result<CMatrix> {
        self.check_vector(xi)?;
        Ok(self
            .c_dag
            .iter()
            .zip(xi.iter())
            .fold(zeros(self.dim()), |acc, (cd, &x)| acc + cd * x))
    }

    /// `(η, c) = Σ η̄_j c_j`.
    pub fn annihilator(&self, eta: &CVector) -> Result<CMatrix> {
        self.check_vector(eta)?;
        Ok(self
            .c
            .iter()
            .zip(eta.iter())
            .fold(zeros(self.dim()), |acc, (cj, &e)| acc + cj * e.conj()))
    }

    /// `(c, Tc) = Σ T_jk c_j† c_k`.
    pub fn quadratic(&self, t: &CMatrix) -> Result<CMatrix> {
        crate::matrix::ensure_operand(t, self.n)?;
        let mut q = zeros(self.dim());
        for k in 0..self.n {
            let mut row = zeros(self.dim());
            for j in 0..self.n {
                if t[(j, k)] != C64::new(0.0, 0.0) {
                    row += &self.c_dag[j] * t[(j, k)];
                }
            }
            q += row * &self.c[k];
        }
        Ok(q)
    }

    /// Largest deviation from the canonical anticommutation relations.
    pub fn car_residual(&self) -> f64 {
        let id = self.identity();
        let mut worst: f64 = 0.0;
        for j in 0..self.n {
            for k in 0..self.n {
                let delta = if j == k { id.clone() } else { zeros(self.dim()) };
                worst = worst
                    .max(max_abs(&anticommutator(&self.c[j], &self.c[k])))
                    .max(max_abs(&(anticommutator(&self.c[j], &self.c_dag[k]) - delta)))
                    .max(max_abs(&anticommutator(&self.c_dag[j], &self.c_dag[k])));
            }
        }
        worst
    }

    fn check_vector(&self, v: &CVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// Annihilation operators `c₁, …, c_n` by the Jordan–Wigner construction.
pub fn build_car(n: usize) -> Result<Vec<CMatrix>> {
    if n == 0 || n > MAX_MODES {
        return Err(Error::ModeCount { n, max: MAX_MODES });
    }
    let one = C64::new(1.0, 0.0);
    let id2 = identity(2);
    let z = crate::matrix::diag(&[one, -one]);
    let mut lower = zeros(2);
    lower[(0, 1)] = one;
    Ok((0..n)
        .map(|j| {
            (0..n).fold(identity(1), |acc, site| {
                let factor = match site.cmp(&j) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => &lower,
                    std::cmp::Ordering::Greater => &id2,
                };
                kron(&acc, factor)
            })
        })
        .collect())
}
