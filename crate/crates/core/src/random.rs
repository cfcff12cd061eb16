//! Seeded generators for random test and verification instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gaussian::{GaussianState, LiouvillianParams};
use crate::matrix::{diag, identity, CMatrix, CVector, C64, I};

pub type InstanceRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Entries uniform in the square `[-1,1]²`, scaled by `scale / √n`.
pub fn matrix(rng: &mut impl Rng, n: usize, scale: f64) -> CMatrix {
    let s = scale / (n.max(1) as f64).sqrt();
    CMatrix::from_fn(n, n, |_, _| unit_complex(rng) * s)
}

pub fn real_matrix(rng: &mut impl Rng, n: usize, scale: f64) -> nalgebra::DMatrix<f64> {
    let s = scale / (n.max(1) as f64).sqrt();
    nalgebra::DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0) * s)
}

pub fn real_antisymmetric(rng: &mut impl Rng, n: usize, scale: f64) -> nalgebra::DMatrix<f64> {
    let x = real_matrix(rng, n, scale);
    (&x - x.transpose()).scale(0.5)
}

pub fn vector(rng: &mut impl Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| unit_complex(rng))
}

pub fn hermitian(rng: &mut impl Rng, n: usize, scale: f64) -> CMatrix {
    let x = matrix(rng, n, scale);
    (&x + x.adjoint()).scale(0.5)
}

/// `X X†` with `X` random: positive semidefinite.
pub fn positive(rng: &mut impl Rng, n: usize, scale: f64) -> CMatrix {
    let x = matrix(rng, n, scale.sqrt());
    &x * x.adjoint()
}

pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    matrix(rng, n, 1.0).qr().q()
}

/// A drift with every eigenvalue strictly in the left half plane.
pub fn stable(rng: &mut impl Rng, n: usize) -> CMatrix {
    let h = hermitian(rng, n, 1.0);
    let d = positive(rng, n, 1.0) + identity(n).scale(0.2);
    -h * I - d
}

/// `A = −iH − D − E`, `M = 2E` with `D ⩾ 0.1·I`, `E ⩾ 0`.
pub fn gksl_params(rng: &mut impl Rng, n: usize) -> LiouvillianParams {
    let h = hermitian(rng, n, 1.0);
    let d = positive(rng, n, 0.6) + identity(n).scale(0.1);
    let e = positive(rng, n, 0.4);
    let a = -h * I - &d - &e;
    LiouvillianParams::new(a, e.scale(2.0)).expect("random GKSL instance is well formed")
}

/// Correlation matrix with spectrum uniform in `[0.05, 0.95]`.
pub fn correlation(rng: &mut impl Rng, n: usize) -> GaussianState {
    let u = unitary(rng, n);
    let r: Vec<C64> = (0..n).map(|_| C64::from(rng.random_range(0.05..0.95))).collect();
    GaussianState::new(&u * diag(&r) * u.adjoint()).expect("random correlation matrix is valid")
}

/// Full-rank density matrix of dimension `dim`.
pub fn density(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let x = CMatrix::from_fn(dim, dim, |_, _| unit_complex(rng));
    let rho = &x * x.adjoint();
    let tr = rho.trace();
    rho / tr
}
