//! The elements `Φ(ξ₁…ξ_p; η₁…η_q)` and `Π(ξ₁…ξ_p; η₁…η_q)` of operator
//! space, their mutual expansions, and the projection `𝔭` defined on them.

use itertools::Itertools;

use super::superop::{liouvillian, DenseSuperOperator};
use super::FockSpace;
use crate::error::{Error, Result};
use crate::linalg::{mat_exp, vec};
use crate::matrix::{distance, zeros, CMatrix, CVector, C64};

fn check_lists(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<()> {
    let n = space.modes();
    for list in [xis, etas] {
        if list.len() > n {
            return Err(Error::InvalidParameter(format!(
                "at most {n} vectors per list, got {}",
                list.len()
            )));
        }
        if let Some(v) = list.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// `(c, ξ₁)⋯(c, ξ_p) Ω (η_q, c)⋯(η₁, c)`.
pub fn pi_basis(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<CMatrix> {
    check_lists(space, xis, etas)?;
    let mut out = space.identity();
    for xi in xis {
        out *= space.creator(xi)?;
    }
    out *= space.vacuum();
    for eta in etas.iter().rev() {
        out *= space.annihilator(eta)?;
    }
    Ok(out)
}

/// `L(O, ξη†)ρ = −(η,c)ρ(c,ξ) + (c,ξ)ρ(η,c) + {(c,ξ)(η,c), ρ} − (η,ξ)ρ`.
fn rank_one_action(space: &FockSpace, xi: &CVector, eta: &CVector, rho: &CMatrix) -> Result<CMatrix> {
    let cre = space.creator(xi)?;
    let ann = space.annihilator(eta)?;
    let hop = &cre * &ann;
    let overlap = eta.dotc(xi);
    Ok(-(&ann * rho * &cre) + &cre * rho * &ann + &hop * rho + rho * &hop - rho * overlap)
}

/// `Φ(ξ₁…; η₁…) = L(O, ξ₁η₁†) Φ(ξ₂…; η₂…)`, ending in `Π` once either list
/// is exhausted.
pub fn phi_basis(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<CMatrix> {
    check_lists(space, xis, etas)?;
    let k = xis.len().min(etas.len());
    let mut out = pi_basis(space, &xis[k..], &etas[k..])?;
    for i in (0..k).rev() {
        out = rank_one_action(space, &xis[i], &etas[i], &out)?;
    }
    Ok(out)
}

fn permutation_sign(p: &[usize]) -> f64 {
    let inversions = (0..p.len())
        .flat_map(|i| ((i + 1)..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

/// `Σ_{σ,τ,p} s^p sgn σ sgn τ Π_{j≤p}(η_τj, ξ_σj)/p! · base(ξ_σ(>p); η_τ(>p))/((n−p)!(m−p)!)`.
fn expansion(
    space: &FockSpace,
    xis: &[CVector],
    etas: &[CVector],
    alternating: bool,
    base: fn(&FockSpace, &[CVector], &[CVector]) -> Result<CMatrix>,
) -> Result<CMatrix> {
    check_lists(space, xis, etas)?;
    let (n, m) = (xis.len(), etas.len());
    let mut total = zeros(space.dim());
    for sigma in (0..n).permutations(n) {
        let s_sign = permutation_sign(&sigma);
        for tau in (0..m).permutations(m) {
            let sign = s_sign * permutation_sign(&tau);
            for p in 0..=n.min(m) {
                let contraction: C64 = (0..p)
                    .map(|j| etas[tau[j]].dotc(&xis[sigma[j]]))
                    .product();
                let rest_x: Vec<CVector> = sigma[p..].iter().map(|&i| xis[i].clone()).collect();
                let rest_e: Vec<CVector> = tau[p..].iter().map(|&i| etas[i].clone()).collect();
                let parity = if alternating && p % 2 == 1 { -1.0 } else { 1.0 };
                let weight = parity * sign / (factorial(p) * factorial(n - p) * factorial(m - p));
                total += base(space, &rest_x, &rest_e)? * (contraction * weight);
            }
        }
    }
    Ok(total)
}

/// `Φ` expanded in the `Π` elements (alternating contraction signs).
pub fn omega_pi_expansion(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<CMatrix> {
    expansion(space, xis, etas, true, pi_basis)
}

/// `Π` expanded in the `Φ` elements.
pub fn pi_omega_expansion(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<CMatrix> {
    expansion(space, xis, etas, false, phi_basis)
}

/// Index subsets of `{0, …, n−1}` in a fixed order.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..(1usize << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Columns `vec Φ(ξ_I; η_J)` for all increasing index sets `I`, `J`, given
/// bases `{ξ_i}` and `{η_j}` of `ℂⁿ`; a `4^n × 4^n` matrix.
pub fn phi_basis_matrix(space: &FockSpace, xis: &[CVector], etas: &[CVector]) -> Result<CMatrix> {
    Ok(phi_basis_columns(space, xis, etas)?.0)
}

/// Basis matrix plus, per column, the largest index used from each list.
fn phi_basis_columns(
    space: &FockSpace,
    xis: &[CVector],
    etas: &[CVector],
) -> Result<(CMatrix, Vec<Option<usize>>)> {
    let n = space.modes();
    if xis.len() != n || etas.len() != n {
        return Err(Error::InvalidParameter(format!("need {n} basis vectors per list")));
    }
    check_lists(space, xis, etas)?;
    let d = space.dim();
    let sets = subsets(n);
    let mut out = CMatrix::zeros(d * d, d * d);
    let mut highest = Vec::with_capacity(d * d);
    let mut col = 0;
    for i_set in &sets {
        for j_set in &sets {
            let x: Vec<CVector> = i_set.iter().map(|&i| xis[i].clone()).collect();
            let e: Vec<CVector> = j_set.iter().map(|&j| etas[j].clone()).collect();
            out.set_column(col, &vec(&phi_basis(space, &x, &e)?).column(0));
            highest.push(i_set.iter().chain(j_set).copied().max());
            col += 1;
        }
    }
    Ok((out, highest))
}

/// `𝔭Φ(ξ…; η…) = Φ(P₀ξ…; P₀η…)` as a dense superoperator.
///
/// `frame` is unitary with its first `persistent` columns spanning `V₀` and
/// the rest spanning its orthogonal complement, so `𝔭` keeps exactly the
/// basis elements built from the first `persistent` frame vectors.
pub fn projection_onto_persistent(
    space: &FockSpace,
    frame: &CMatrix,
    persistent: usize,
) -> Result<DenseSuperOperator> {
    let n = space.modes();
    crate::matrix::ensure_operand(frame, n)?;
    let cols: Vec<CVector> = (0..n).map(|j| frame.column(j).into_owned()).collect();
    let (b, highest) = phi_basis_columns(space, &cols, &cols)?;
    let keep: Vec<C64> = highest
        .iter()
        .map(|h| match h {
            Some(i) if *i >= persistent => C64::new(0.0, 0.0),
            _ => C64::new(1.0, 0.0),
        })
        .collect();
    let b_inv = b
        .clone()
        .try_inverse()
        .ok_or(Error::IllConditioned(f64::INFINITY))?;
    let matrix = crate::matrix::matmul(&crate::matrix::matmul(&b, &crate::matrix::diag(&keep)), &b_inv);
    DenseSuperOperator::from_matrix(n, matrix)
}

/// `‖e^{tL(A,O)} Φ(ξ; η) − Φ(e^{tA}ξ; e^{tA}η)‖_F`.
pub fn phi_evolution_check(
    space: &FockSpace,
    a: &CMatrix,
    xis: &[CVector],
    etas: &[CVector],
    t: f64,
) -> Result<f64> {
    let n = space.modes();
    let flow = liouvillian(space, a, &zeros(n))?.exp(t)?;
    let lhs = flow.apply(&phi_basis(space, xis, etas)?)?;
    let e = mat_exp(&a.scale(t))?;
    let moved_x: Vec<CVector> = xis.iter().map(|x| &e * x).collect();
    let moved_e: Vec<CVector> = etas.iter().map(|x| &e * x).collect();
    Ok(distance(&lhs, &phi_basis(space, &moved_x, &moved_e)?))
}
