//! Dense linear-algebra kernels: the matrix exponential, the finite-time
//! noise integral `∫₀ᵗ e^{sA} M e^{sA†} ds`, the Lyapunov equation
//! `AT + TA† = −M`, and the splitting of a dissipative drift into its
//! persistent (imaginary-axis) and damped parts.

use nalgebra::linalg::Schur;

use crate::error::{Error, Result};
use crate::matrix::{
    ensure_finite, ensure_operand, ensure_square, hermitian_deviation, hermitian_eigen,
    hermitian_part, identity, matmul, min_hermitian_eigenvalue, norm, one_norm, zeros, CMatrix,
    CVector, C64,
};

// Padé [13/13] coefficients and the matching 1-norm bound.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `e^a` by scaling and squaring with a degree-13 Padé approximant.
pub fn mat_exp(a: &CMatrix) -> Result<CMatrix> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    if n == 0 {
        return Ok(zeros(0));
    }
    let norm1 = one_norm(a);
    let squarings = if norm1 > THETA13 {
        (norm1 / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a.scale(0.5f64.powi(squarings));

    let b = PADE13;
    let id = identity(n);
    let a2 = matmul(&scaled, &scaled);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a4, &a2);

    let u_inner = &a6 * C64::from(b[13]) + &a4 * C64::from(b[11]) + &a2 * C64::from(b[9]);
    let u_tail =
        &a6 * C64::from(b[7]) + &a4 * C64::from(b[5]) + &a2 * C64::from(b[3]) + &id * C64::from(b[1]);
    let u = matmul(&scaled, &(matmul(&a6, &u_inner) + u_tail));

    let v_inner = &a6 * C64::from(b[12]) + &a4 * C64::from(b[10]) + &a2 * C64::from(b[8]);
    let v = matmul(&a6, &v_inner)
        + &a6 * C64::from(b[6])
        + &a4 * C64::from(b[4])
        + &a2 * C64::from(b[2])
        + &id * C64::from(b[0]);

    let p = &v + &u;
    let q = &v - &u;
    let mut result = q
        .lu()
        .solve(&p)
        .ok_or(Error::IllConditioned(f64::INFINITY))?;
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    ensure_finite(&result)?;
    Ok(result)
}

/// Returns `(e^{tA}, ∫₀ᵗ e^{sA} M e^{sA†} ds)`.
///
/// The integral is read off the Van Loan block exponential
/// `exp(h [[A, M], [O, −A†]])` at a step `h = t / 2^k` small enough that the
/// anti-stable block stays bounded, then doubled `k` times with
/// `I(2h) = I(h) + e^{hA} I(h) e^{hA†}`.
pub fn propagator_and_integral(a: &CMatrix, m: &CMatrix, t: f64) -> Result<(CMatrix, CMatrix)> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    ensure_operand(m, n)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    if n == 0 {
        return Ok((zeros(0), zeros(0)));
    }
    if t == 0.0 {
        return Ok((identity(n), zeros(n)));
    }

    let scale = one_norm(a).max(one_norm(m)).max(1e-300);
    let mut doublings = 0u32;
    let mut h = t;
    while h * scale > 1.0 && doublings < 64 {
        h *= 0.5;
        doublings += 1;
    }

    let mut block = zeros(2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&a.scale(h));
    block.view_mut((0, n), (n, n)).copy_from(&m.scale(h));
    block
        .view_mut((n, n), (n, n))
        .copy_from(&(-a.adjoint()).scale(h));
    let eb = mat_exp(&block)?;
    let mut prop: CMatrix = eb.view((0, 0), (n, n)).into_owned();
    let upper: CMatrix = eb.view((0, n), (n, n)).into_owned();
    let mut integral = upper * prop.adjoint();

    for _ in 0..doublings {
        integral = &integral + &prop * &integral * prop.adjoint();
        prop = &prop * &prop;
    }

    if hermitian_deviation(m) <= 1e-14 * (1.0 + norm(m)) {
        integral = hermitian_part(&integral);
    }
    ensure_finite(&integral)?;
    Ok((prop, integral))
}

/// `∫₀ᵗ e^{sA} M e^{sA†} ds`.
pub fn van_loan_integral(a: &CMatrix, m: &CMatrix, t: f64) -> Result<CMatrix> {
    propagator_and_integral(a, m, t).map(|(_, integral)| integral)
}

/// Eigenvalues of a general complex matrix (diagonal of its Schur form).
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 100_000).ok_or(Error::NoConvergence)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Solves `AT + TA† = −M` through the vectorized system
/// `(I ⊗ A + Ā ⊗ I) vec T = −vec M`, with one step of iterative refinement.
pub fn lyapunov_solve(a: &CMatrix, m: &CMatrix) -> Result<CMatrix> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    ensure_operand(m, n)?;
    if n == 0 {
        return Ok(zeros(0));
    }

    let lambdas = eigenvalues(a)?;
    let sep_tol = 1e-12 * (1.0 + norm(a));
    let mut worst: Option<(usize, usize, f64)> = None;
    for (i, li) in lambdas.iter().enumerate() {
        for (j, lj) in lambdas.iter().enumerate() {
            let s = (li + lj.conj()).norm();
            if worst.is_none_or(|(_, _, w)| s < w) {
                worst = Some((i, j, s));
            }
        }
    }
    if let Some((i, j, s)) = worst {
        if s <= sep_tol {
            return Err(Error::NearResonance {
                i,
                j,
                lambda_i: lambdas[i],
                lambda_j: lambdas[j],
                sum: s,
            });
        }
    }

    let id = identity(n);
    let op = id.kronecker(a) + a.conjugate().kronecker(&id);
    let lu = op.clone().lu();
    let rhs = -vec(m);
    let mut x = lu.solve(&rhs).ok_or(Error::IllConditioned(f64::INFINITY))?;
    let resid = &rhs - &op * &x;
    if let Some(dx) = lu.solve(&resid) {
        x += dx;
    }
    let mut t = unvec(&x, n);
    if hermitian_deviation(m) <= 1e-14 * (1.0 + norm(m)) {
        t = hermitian_part(&t);
    }
    ensure_finite(&t)?;
    Ok(t)
}

/// Residual `‖AT + TA† + M‖_F`.
pub fn lyapunov_residual(a: &CMatrix, t: &CMatrix, m: &CMatrix) -> f64 {
    norm(&(a * t + t * a.adjoint() + m))
}

/// Column-stacking vectorization.
pub fn vec(m: &CMatrix) -> CMatrix {
    CMatrix::from_column_slice(m.nrows() * m.ncols(), 1, m.as_slice())
}

pub fn unvec(v: &CMatrix, n: usize) -> CMatrix {
    CMatrix::from_column_slice(n, n, v.as_slice())
}

/// Drift split into its imaginary-axis and strictly damped parts.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    /// Orthogonal projector onto the span of imaginary-axis eigenvectors.
    pub p0: CMatrix,
    /// `A P₀`.
    pub a0: CMatrix,
    /// `A − A P₀`.
    pub a_minus: CMatrix,
    pub imaginary_eigenvalues: Vec<C64>,
    pub eigenvalues: Vec<C64>,
    /// Orthonormal basis of the persistent subspace (columns).
    pub v0_basis: CMatrix,
    /// Orthonormal basis of its orthogonal complement.
    pub v_minus_basis: CMatrix,
    /// Some eigenvalue has `reTol < |Re λ| ≤ 2·reTol`.
    pub ambiguous: bool,
    pub re_tol: f64,
}

impl SpectralSplit {
    pub fn persistent_dim(&self) -> usize {
        self.v0_basis.ncols()
    }

    /// Largest real part among the damped eigenvalues (negative), or `None`
    /// when every eigenvalue lies on the imaginary axis.
    pub fn slowest_damping(&self) -> Option<f64> {
        self.eigenvalues
            .iter()
            .filter(|l| l.re.abs() > self.re_tol)
            .map(|l| l.re)
            .max_by(f64::total_cmp)
    }
}

pub fn default_re_tol(a: &CMatrix) -> f64 {
    1e-9 * norm(a)
}

/// Splits a dissipative drift `A` (`−A − A† ⩾ O`) as `A = A₀ + A₋`.
///
/// Eigenvalues with `|Re λ| ≤ re_tol` are treated as lying on the imaginary
/// axis; `None` selects `1e-9·‖A‖`.
pub fn spectral_split(a: &CMatrix, re_tol: Option<f64>) -> Result<SpectralSplit> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    let a_norm = norm(a);
    let diss_tol = 1e-10 * (1.0 + a_norm);
    let diss = min_hermitian_eigenvalue(&(-a - a.adjoint()));
    if n > 0 && diss < -diss_tol {
        return Err(Error::NotDissipative(diss));
    }
    let re_tol = re_tol.unwrap_or_else(|| default_re_tol(a));
    if !(re_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("re_tol must be nonnegative, got {re_tol}")));
    }

    let lambdas = eigenvalues(a)?;
    let ambiguous = lambdas
        .iter()
        .any(|l| l.re.abs() > re_tol && l.re.abs() <= 2.0 * re_tol);
    let mut axis: Vec<C64> = lambdas.iter().copied().filter(|l| l.re.abs() <= re_tol).collect();
    axis.sort_by(|x, y| x.im.total_cmp(&y.im));

    // Group numerically coincident axis eigenvalues.
    let cluster_tol = 1e-7 * (1.0 + a_norm);
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for l in &axis {
        match clusters.last_mut() {
            Some(cl) if (cl[cl.len() - 1] - l).norm() <= cluster_tol => cl.push(*l),
            _ => clusters.push(vec![*l]),
        }
    }

    let semisimple_tol = 1e-6 * (1.0 + a_norm);
    let mut columns: Vec<CVector> = Vec::new();
    for cl in &clusters {
        let k = cl.len();
        let mu = cl.iter().sum::<C64>() / k as f64;
        let shifted = a - identity(n) * mu;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or(Error::NoConvergence)?;
        let sv = &svd.singular_values;
        if sv[n - k] > semisimple_tol {
            return Err(Error::NotSemisimple(mu, sv[n - k]));
        }
        for r in (n - k)..n {
            columns.push(v_t.row(r).adjoint());
        }
    }

    let k0 = columns.len();
    let (v0_basis, v_minus_basis, p0) = if k0 == 0 {
        (CMatrix::zeros(n, 0), identity(n), zeros(n))
    } else {
        let mut stacked = CMatrix::zeros(n, k0);
        for (j, col) in columns.iter().enumerate() {
            stacked.set_column(j, col);
        }
        let q = stacked.qr().q();
        let p0 = hermitian_part(&(&q * q.adjoint()));
        let (values, vectors) = hermitian_eigen(&p0);
        let m_count = values.iter().filter(|&&v| v < 0.5).count();
        let v_minus = vectors.columns(0, m_count).into_owned();
        let v0 = vectors.columns(m_count, n - m_count).into_owned();
        (v0, v_minus, p0)
    };

    let a0 = a * &p0;
    let a_minus = a - &a0;
    Ok(SpectralSplit {
        p0,
        a0,
        a_minus,
        imaginary_eigenvalues: axis,
        eigenvalues: lambdas,
        v0_basis,
        v_minus_basis,
        ambiguous,
        re_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, commutator, diag, distance, max_abs, CVector, I};
    use crate::random;
    use proptest::prelude::*;

    fn taylor_exp(a: &CMatrix, terms: usize) -> CMatrix {
        let n = a.nrows();
        let mut term = identity(n);
        let mut sum = identity(n);
        for k in 1..=terms {
            term = &term * a / C64::from(k as f64);
            sum += &term;
        }
        sum
    }

    /// `e^{sA}` for moderate `‖sA‖` by Taylor series on `sA/2^k` and squaring.
    fn reference_exp(a: &CMatrix) -> CMatrix {
        let k = (one_norm(a).max(1.0).log2().ceil() as i32).max(0) + 2;
        let mut e = taylor_exp(&a.scale(0.5f64.powi(k)), 30);
        for _ in 0..k {
            e = &e * &e;
        }
        e
    }

    /// Composite Simpson rule on `s ↦ e^{sA} M e^{sA†}`.
    fn quadrature(a: &CMatrix, m: &CMatrix, t: f64, panels: usize) -> CMatrix {
        let h = t / panels as f64;
        let f = |s: f64| {
            let e = reference_exp(&a.scale(s));
            &e * m * e.adjoint()
        };
        let mut sum = f(0.0) + f(t);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += f(i as f64 * h).scale(w);
        }
        sum.scale(h / 3.0)
    }

    #[test]
    fn exp_examples() {
        assert_eq!(mat_exp(&zeros(2)).unwrap(), identity(2));
        let half_pi = std::f64::consts::FRAC_PI_2;
        let rot = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-half_pi, 0.0), c(half_pi, 0.0), c(0.0, 0.0)]);
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(max_abs(&(mat_exp(&rot).unwrap() - want)) < 1e-15);

        let mut rng = random::seeded(1);
        for _ in 0..20 {
            let mut a = random::matrix(&mut rng, 4, 1.0);
            a /= C64::from(norm(&a).max(1.0));
            assert!(max_abs(&(mat_exp(&a).unwrap() - taylor_exp(&a, 40))) < 1e-12);
        }
    }

    #[test]
    fn exp_nilpotent_and_diagonal() {
        let mut a = zeros(3);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 2)] = c(0.0, 3.0);
        let want = identity(3) + &a + &a * &a / C64::from(2.0);
        assert!(max_abs(&(mat_exp(&a).unwrap() - want)) < 1e-14);

        let d = diag(&[c(-30.0, 2.0), c(0.5, -1.0), c(7.0, 0.0)]);
        let e = mat_exp(&d).unwrap();
        for i in 0..3 {
            let want = d[(i, i)].exp();
            assert!((e[(i, i)] - want).norm() <= 1e-13 * want.norm());
        }
    }

    #[test]
    fn exp_of_commuting_sum() {
        let mut rng = random::seeded(2);
        for _ in 0..20 {
            let a = random::matrix(&mut rng, 4, 1.5);
            let b = &a * &a * c(0.3, 0.1) - &a * c(0.5, 0.0) + identity(4) * c(0.2, 0.0);
            let lhs = mat_exp(&(&a + &b)).unwrap();
            let rhs = mat_exp(&a).unwrap() * mat_exp(&b).unwrap();
            assert!(max_abs(&(lhs - rhs)) < 1e-10);
        }
    }

    #[test]
    fn exp_rejects_bad_input() {
        assert!(matches!(mat_exp(&CMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        let mut a = zeros(2);
        a[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(mat_exp(&a), Err(Error::NonFinite)));
    }

    #[test]
    fn integral_examples() {
        let mut rng = random::seeded(3);
        let m = random::hermitian(&mut rng, 3, 1.0);
        let got = van_loan_integral(&zeros(3), &m, 3.0).unwrap();
        assert!(max_abs(&(got - m.scale(3.0))) < 1e-14);

        let (gamma, mu, t) = (0.7, 1.3, 2.5);
        let got = van_loan_integral(
            &CMatrix::from_element(1, 1, c(-gamma, 0.0)),
            &CMatrix::from_element(1, 1, c(mu, 0.0)),
            t,
        )
        .unwrap();
        let want = mu * (1.0 - (-2.0 * gamma * t).exp()) / (2.0 * gamma);
        assert!((got[(0, 0)].re - want).abs() < 1e-15);
        assert!(got[(0, 0)].im.abs() < 1e-15);

        assert!(matches!(
            van_loan_integral(&zeros(2), &zeros(2), -1.0),
            Err(Error::NegativeTime(_))
        ));
        assert!(van_loan_integral(&zeros(2), &zeros(3), 1.0).is_err());
    }

    #[test]
    fn integral_matches_quadrature() {
        let mut rng = random::seeded(4);
        for _ in 0..3 {
            let a = random::stable(&mut rng, 3);
            let m = random::positive(&mut rng, 3, 1.0);
            let got = van_loan_integral(&a, &m, 1.0).unwrap();
            let want = quadrature(&a, &m, 1.0, 2000);
            assert!(max_abs(&(&got - &want)) < 1e-9);
            assert_eq!(hermitian_deviation(&got), 0.0);
        }
    }

    #[test]
    fn integral_cocycle() {
        let mut rng = random::seeded(5);
        for n in 1..=5 {
            let a = random::matrix(&mut rng, n, 1.0);
            let m = random::matrix(&mut rng, n, 1.0);
            let (t, s) = (0.8, 1.9);
            let whole = van_loan_integral(&a, &m, t + s).unwrap();
            let (e, first) = propagator_and_integral(&a, &m, t).unwrap();
            let second = van_loan_integral(&a, &m, s).unwrap();
            let scale = 1.0 + norm(&whole);
            assert!(max_abs(&(whole - first - &e * second * e.adjoint())) < 1e-10 * scale);
        }
    }

    #[test]
    fn lyapunov_examples() {
        let mut rng = random::seeded(6);
        let m = random::matrix(&mut rng, 3, 1.0);
        let t = lyapunov_solve(&(identity(3) * c(-0.5, 0.0)), &m).unwrap();
        assert!(max_abs(&(t - &m)) < 1e-14);

        let lambdas = [c(-0.3, 1.0), c(-1.2, -0.4), c(-2.0, 0.0)];
        let a = diag(&lambdas);
        let t = lyapunov_solve(&a, &m).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let want = -m[(j, k)] / (lambdas[j] + lambdas[k].conj());
                assert!((t[(j, k)] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn lyapunov_random_residuals() {
        let mut rng = random::seeded(7);
        for i in 0..100 {
            let n = 2 + i % 7;
            let a = random::stable(&mut rng, n);
            let m = random::positive(&mut rng, n, 1.0);
            let t = lyapunov_solve(&a, &m).unwrap();
            assert!(lyapunov_residual(&a, &t, &m) <= 1e-10 * (1.0 + norm(&m)));
        }
    }

    #[test]
    fn lyapunov_matches_long_time_integral() {
        let mut rng = random::seeded(8);
        let a = random::stable(&mut rng, 3);
        let m = random::positive(&mut rng, 3, 1.0);
        let slowest = eigenvalues(&a).unwrap().iter().map(|l| l.re).fold(f64::MIN, f64::max);
        let t_long = 40.0 / slowest.abs();
        let integral = van_loan_integral(&a, &m, t_long).unwrap();
        assert!(max_abs(&(lyapunov_solve(&a, &m).unwrap() - integral)) < 1e-8);
    }

    #[test]
    fn lyapunov_names_resonant_pair() {
        let a = diag(&[I, c(-1.0, 0.0)]);
        match lyapunov_solve(&a, &identity(2)) {
            Err(Error::NearResonance { i, j, .. }) => assert_eq!((i, j), (0, 0)),
            other => panic!("expected NearResonance, got {other:?}"),
        }
    }

    fn check_split_invariants(a: &CMatrix, s: &SpectralSplit) {
        let p = &s.p0;
        assert!(max_abs(&(p * p - p)) < 1e-10);
        assert!(hermitian_deviation(p) < 1e-12);
        assert!(max_abs(&commutator(a, p)) < 1e-9);
        // Exact up to the single rounding in A − A₀.
        assert!(max_abs(&(&s.a0 + &s.a_minus - a)) <= 2.0 * f64::EPSILON * max_abs(a));
        assert!(max_abs(&commutator(&s.a0, &s.a_minus)) < 1e-9);
    }

    #[test]
    fn split_examples() {
        let mut rng = random::seeded(9);
        let h = random::hermitian(&mut rng, 3, 1.0);
        let a = &h * I;
        let s = spectral_split(&a, None).unwrap();
        assert!(max_abs(&(&s.p0 - identity(3))) < 1e-12);
        assert!(max_abs(&(&s.a0 - &a)) < 1e-12);
        assert!(max_abs(&s.a_minus) < 1e-12);
        check_split_invariants(&a, &s);

        let a = random::stable(&mut rng, 3);
        let s = spectral_split(&a, None).unwrap();
        assert_eq!(s.persistent_dim(), 0);
        assert_eq!(max_abs(&s.p0), 0.0);
        assert_eq!(s.a_minus, a);

        let a = diag(&[I, c(-1.0, 0.0)]);
        let s = spectral_split(&a, None).unwrap();
        assert!(max_abs(&(&s.p0 - diag(&[c(1.0, 0.0), c(0.0, 0.0)]))) < 1e-14);
        assert!(max_abs(&(&s.a0 - diag(&[I, c(0.0, 0.0)]))) < 1e-14);
        assert!(max_abs(&(&s.a_minus - diag(&[c(0.0, 0.0), c(-1.0, 0.0)]))) < 1e-14);
    }

    /// Two distinct undamped frequencies plus a damped block, rotated.
    fn mixed_drift(rng: &mut random::InstanceRng) -> CMatrix {
        let mut a = zeros(5);
        a[(0, 0)] = c(0.0, 0.6);
        a[(1, 1)] = c(0.0, -1.1);
        a.view_mut((2, 2), (3, 3)).copy_from(&random::stable(rng, 3));
        let u = random::unitary(rng, 5);
        &u * a * u.adjoint()
    }

    #[test]
    fn split_of_mixed_drift() {
        let mut rng = random::seeded(10);
        let a = mixed_drift(&mut rng);
        let s = spectral_split(&a, None).unwrap();
        assert_eq!(s.persistent_dim(), 2);
        check_split_invariants(&a, &s);

        // e^{tA₋} → P₀.
        let damping = s.slowest_damping().unwrap().abs();
        let e = mat_exp(&s.a_minus.scale(50.0 / damping)).unwrap();
        assert!(norm(&(e - &s.p0)) <= 1e-6);

        // Eigenvectors for distinct axis eigenvalues are orthogonal.
        let vecs: Vec<CVector> = s
            .imaginary_eigenvalues
            .iter()
            .map(|&mu| {
                let svd = (&a - identity(5) * mu).svd(false, true);
                svd.v_t.unwrap().row(4).adjoint()
            })
            .collect();
        assert!(vecs[0].dotc(&vecs[1]).norm() < 1e-8);
    }

    #[test]
    fn split_errors() {
        assert!(matches!(
            spectral_split(&identity(2), None),
            Err(Error::NotDissipative(_))
        ));
        assert!(spectral_split(&zeros(2), Some(-1.0)).is_err());
    }

    #[test]
    fn split_flags_ambiguous_eigenvalues() {
        let a = diag(&[c(-1.5e-6, 1.0), c(-1.0, 0.0)]);
        let s = spectral_split(&a, Some(1e-6)).unwrap();
        assert!(s.ambiguous);
        assert_eq!(s.persistent_dim(), 0);
        let s = spectral_split(&a, Some(1e-5)).unwrap();
        assert!(!s.ambiguous);
        assert_eq!(s.persistent_dim(), 1);
    }

    fn matrix_strategy(n: usize) -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec(-1.0f64..1.0, 2 * n * n)
            .prop_map(move |v| CMatrix::from_fn(n, n, |i, j| c(v[2 * (i * n + j)], v[2 * (i * n + j) + 1])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exp_inverse_pair(a in matrix_strategy(4)) {
            let prod = mat_exp(&a).unwrap() * mat_exp(&(-&a)).unwrap();
            prop_assert!(distance(&prod, &identity(4)) < 1e-11);
        }

        #[test]
        fn lyapunov_residual_small(x in matrix_strategy(3), y in matrix_strategy(3)) {
            let a = &x - identity(3) * c(4.0, 0.0);
            let m = &y * y.adjoint();
            let t = lyapunov_solve(&a, &m).unwrap();
            prop_assert!(lyapunov_residual(&a, &t, &m) <= 1e-10 * (1.0 + norm(&m)));
        }

        #[test]
        fn integral_is_hermitian_for_hermitian_noise(x in matrix_strategy(3), y in matrix_strategy(3), t in 0.0f64..20.0) {
            let m = &y + y.adjoint();
            let integral = van_loan_integral(&x, &m, t).unwrap();
            prop_assert_eq!(hermitian_deviation(&integral), 0.0);
        }
    }
}
