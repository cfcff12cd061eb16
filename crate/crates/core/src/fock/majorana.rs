//! Majorana form of the general quadratic Liouvillian.

use nalgebra::DMatrix;

use super::superop::DenseSuperOperator;
use super::FockSpace;
use crate::error::{Error, Result};
use crate::matrix::{anticommutator, from_real, identity, max_abs, zeros, CMatrix, C64, I};

/// `w_{2m−1} = c_m + c_m†`, `w_{2m} = i(c_m − c_m†)`.
pub fn majorana_operators(space: &FockSpace) -> Vec<CMatrix> {
    (0..space.modes())
        .flat_map(|m| {
            let c = space.c(m);
            let cd = space.c_dag(m);
            [c + cd, (c - cd) * I]
        })
        .collect()
}

/// Largest deviation from `{w_j, w_k} = 2δ_jk`.
pub fn majorana_anticommutator_residual(space: &FockSpace) -> f64 {
    let w = majorana_operators(space);
    let id = space.identity();
    let mut worst: f64 = 0.0;
    for (j, wj) in w.iter().enumerate() {
        for (k, wk) in w.iter().enumerate() {
            let target = if j == k { id.scale(2.0) } else { zeros(space.dim()) };
            worst = worst.max(max_abs(&(anticommutator(wj, wk) - target)));
        }
    }
    worst
}

fn ensure_antisymmetric(m: &DMatrix<f64>) -> Result<()> {
    let dev = (m + m.transpose()).abs().max();
    if dev > 1e-14 * (1.0 + m.norm()) {
        return Err(Error::InvalidParameter(format!(
            "matrix must be antisymmetric, |N + Nᵗ| = {dev:.3e}"
        )));
    }
    Ok(())
}

fn ensure_shape(m: &DMatrix<f64>, size: usize) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: m.nrows(),
        });
    }
    Ok(())
}

/// `L(A, N)ρ = ¼ Σ_jk [ ((A−Aᵗ)_jk/2) [w_j w_k, ρ] + i N_jk {w_j w_k, ρ}
///  + (−A − Aᵗ + 2iN)_jk w_j ρ w_k ]` for real `A` and real antisymmetric `N`.
pub fn majorana_liouvillian(
    space: &FockSpace,
    a: &DMatrix<f64>,
    nmat: &DMatrix<f64>,
) -> Result<DenseSuperOperator> {
    let n = space.modes();
    ensure_shape(a, 2 * n)?;
    ensure_shape(nmat, 2 * n)?;
    ensure_antisymmetric(nmat)?;
    let w = majorana_operators(space);
    let d = space.dim();
    let id = identity(d);
    let comm_coef = from_real(&(a - a.transpose())).scale(0.5);
    let anti_coef = from_real(nmat) * I;
    let sand_coef = from_real(&(-a - a.transpose())) + from_real(nmat) * C64::new(0.0, 2.0);

    // Σ_jk X_jk w_j w_k as one operator, and the sandwich part via
    // Σ_k (Σ_j X_jk w_j) ⊗ … with vec(w_j ρ w_k) = (w_kᵗ ⊗ w_j) vec ρ.
    let pair_sum = |coef: &CMatrix| {
        let mut out = zeros(d);
        for (j, wj) in w.iter().enumerate() {
            for (k, wk) in w.iter().enumerate() {
                out += wj * wk * coef[(j, k)];
            }
        }
        out
    };
    let p = pair_sum(&comm_coef);
    let q = pair_sum(&anti_coef);
    let mut matrix = (nalgebra_kron(&id, &p) - nalgebra_kron(&p.transpose(), &id))
        + (nalgebra_kron(&id, &q) + nalgebra_kron(&q.transpose(), &id));
    for (k, wk) in w.iter().enumerate() {
        let left = w
            .iter()
            .enumerate()
            .fold(zeros(d), |acc, (j, wj)| acc + wj * sand_coef[(j, k)]);
        matrix += nalgebra_kron(&wk.transpose(), &left);
    }
    DenseSuperOperator::from_matrix(n, matrix.scale(0.25))
}

fn nalgebra_kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajoranaCheck {
    /// Frobenius norm of `[L(A,N), L(B,R)] − L([A,B], AR + RAᵗ − BN − NBᵗ)`.
    pub residual: f64,
    /// Frobenius norm of the commutator itself, for scale.
    pub commutator_norm: f64,
}

pub fn majorana_liouvillian_check(
    space: &FockSpace,
    a: &DMatrix<f64>,
    nmat: &DMatrix<f64>,
    b: &DMatrix<f64>,
    rmat: &DMatrix<f64>,
) -> Result<MajoranaCheck> {
    let lhs = majorana_liouvillian(space, a, nmat)?.commutator(&majorana_liouvillian(space, b, rmat)?);
    let bracket_a = a * b - b * a;
    let bracket_n = a * rmat + rmat * a.transpose() - b * nmat - nmat * b.transpose();
    let rhs = majorana_liouvillian(space, &bracket_a, &bracket_n)?;
    Ok(MajoranaCheck {
        residual: lhs.distance(&rhs),
        commutator_norm: crate::matrix::norm(lhs.matrix()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{commutator, distance};
    use crate::random;

    #[test]
    fn majorana_anticommutators() {
        for n in 1..=4 {
            assert!(majorana_anticommutator_residual(&FockSpace::new(n).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn application_matches_definition() {
        let mut rng = random::seeded(70);
        let space = FockSpace::new(2).unwrap();
        let a = random::real_matrix(&mut rng, 4, 1.0);
        let nm = random::real_antisymmetric(&mut rng, 4, 1.0);
        let rho = random::density(&mut rng, 4);
        let w = majorana_operators(&space);
        let mut want = zeros(4);
        for j in 0..4 {
            for k in 0..4 {
                let ww = &w[j] * &w[k];
                want += commutator(&ww, &rho) * C64::from((a[(j, k)] - a[(k, j)]) / 2.0);
                want += anticommutator(&ww, &rho) * (I * nm[(j, k)]);
                want += &w[j] * &rho * &w[k] * C64::new(-a[(j, k)] - a[(k, j)], 2.0 * nm[(j, k)]);
            }
        }
        want = want.scale(0.25);
        let got = majorana_liouvillian(&space, &a, &nm).unwrap().apply(&rho).unwrap();
        assert!(distance(&got, &want) < 1e-13);
    }

    #[test]
    fn identical_generators_commute() {
        let mut rng = random::seeded(71);
        let space = FockSpace::new(2).unwrap();
        let a = random::real_matrix(&mut rng, 4, 1.0);
        let nm = random::real_antisymmetric(&mut rng, 4, 1.0);
        let check = majorana_liouvillian_check(&space, &a, &nm, &a, &nm).unwrap();
        assert!(check.residual < 1e-12 && check.commutator_norm < 1e-12);
    }

    #[test]
    fn commutation_relation() {
        let mut rng = random::seeded(72);
        let space = FockSpace::new(2).unwrap();
        for _ in 0..5 {
            let a = random::real_matrix(&mut rng, 4, 1.0);
            let b = random::real_matrix(&mut rng, 4, 1.0);
            let nm = random::real_antisymmetric(&mut rng, 4, 1.0);
            let rm = random::real_antisymmetric(&mut rng, 4, 1.0);
            let check = majorana_liouvillian_check(&space, &a, &nm, &b, &rm).unwrap();
            assert!(check.residual < 1e-10, "{check:?}");
            assert!(check.commutator_norm > 1e-3);
        }
    }

    #[test]
    fn rejects_symmetric_noise() {
        let space = FockSpace::new(1).unwrap();
        let a = DMatrix::zeros(2, 2);
        let n_sym = DMatrix::from_element(2, 2, 1.0);
        assert!(majorana_liouvillian(&space, &a, &n_sym).is_err());
    }
}
