//! Seeded suite of identity checks against the dense oracle.
//!
//! Every row compares two independently computed sides of an identity on a
//! random instance and reports the Frobenius norm of their difference.

use nalgebra::DMatrix;

use crate::affine::conjugation_identity_check;
use crate::error::{Error, Result};
use crate::fock::{
    dense_evolve, gaussian_density, liouvillian, majorana_liouvillian_check, omega_pi_expansion,
    phi_basis, phi_basis_matrix, phi_evolution_check, pi_basis, pi_omega_expansion,
    read_correlations, super_basic, von_neumann_entropy, DenseSuperOperator, FockSpace, SuperKind,
    EXP_MAX_MODES,
};
use crate::gaussian::{entropy, evolve_state, expectation_quadratic, GaussianState};
use crate::linalg::{mat_exp, van_loan_integral};
use crate::matrix::{commutator, distance, outer, trace, zeros, CMatrix, CVector, C64};
use crate::random::{self, InstanceRng};

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub name: &'static str,
    /// The identity being checked, in plain text.
    pub identity: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl VerificationRow {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

struct Suite {
    rows: Vec<VerificationRow>,
    tol_override: Option<f64>,
}

impl Suite {
    fn push(&mut self, name: &'static str, identity: &'static str, residual: f64, tolerance: f64) {
        self.rows.push(VerificationRow {
            name,
            identity,
            residual,
            tolerance: self.tol_override.unwrap_or(tolerance),
        });
    }
}

/// Runs every check on `n` modes (`1 ≤ n ≤ 5`) with instances drawn from
/// `seed`. `tol_override` replaces every per-row tolerance.
pub fn run_suite(n: usize, seed: u64, tol_override: Option<f64>) -> Result<Vec<VerificationRow>> {
    if n == 0 || n > EXP_MAX_MODES {
        return Err(Error::ModeCount {
            n,
            max: EXP_MAX_MODES,
        });
    }
    if let Some(t) = tol_override {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {t}")));
        }
    }
    let space = FockSpace::new(n)?;
    let mut rng = random::seeded(seed);
    let mut suite = Suite {
        rows: Vec::new(),
        tol_override,
    };
    suite.push("car", "{c_j, c_k^dag} = delta_jk, {c_j, c_k} = 0", space.car_residual(), 1e-14);
    superoperator_algebra(&mut suite, &space, &mut rng)?;
    dynamics(&mut suite, &space, &mut rng)?;
    gaussian_states(&mut suite, &space, &mut rng)?;
    basis(&mut suite, &space, &mut rng)?;
    majorana(&mut suite, &space, &mut rng)?;
    Ok(suite.rows)
}

fn superoperator_algebra(suite: &mut Suite, space: &FockSpace, rng: &mut InstanceRng) -> Result<()> {
    use SuperKind::*;
    let n = space.modes();
    let c = random::matrix(rng, n, 1.0);
    let d = random::matrix(rng, n, 1.0);
    let s = |k, m: &CMatrix| super_basic(space, k, m);
    let bracket = commutator(&c, &d);
    let dc = &d * &c;
    let cd = &c * &d;

    let pairs: [(&'static str, &'static str, SuperKind, SuperKind, DenseSuperOperator); 9] = [
        ("ff_commutator", "[F(C), F(D)] = F([C,D])", Fhat, Fhat, s(Fhat, &bracket)?),
        ("bb_commutator", "[B(C), B(D)] = -B([C,D])", Bhat, Bhat, s(Bhat, &bracket)?.scale(C64::from(-1.0))),
        ("fl_commutator", "[F(C), L(D)] = -L(DC)", Fhat, Lhat, s(Lhat, &dc)?.scale(C64::from(-1.0))),
        ("bl_commutator", "[B(C), L(D)] = -L(CD)", Bhat, Lhat, s(Lhat, &cd)?.scale(C64::from(-1.0))),
        ("fg_commutator", "[F(C), G(D)] = G(CD)", Fhat, Ghat, s(Ghat, &cd)?),
        ("bg_commutator", "[B(C), G(D)] = G(DC)", Bhat, Ghat, s(Ghat, &dc)?),
        ("fb_commutator", "[F(C), B(D)] = 0", Fhat, Bhat, DenseSuperOperator::zero(n)),
        ("ll_commutator", "[L(C), L(D)] = 0", Lhat, Lhat, DenseSuperOperator::zero(n)),
        ("gg_commutator", "[G(C), G(D)] = 0", Ghat, Ghat, DenseSuperOperator::zero(n)),
    ];
    for (name, text, k1, k2, rhs) in pairs {
        let lhs = s(k1, &c)?.commutator(&s(k2, &d)?);
        suite.push(name, text, lhs.distance(&rhs), 1e-10);
    }
    let lhs = s(Lhat, &c)?.commutator(&s(Ghat, &d)?);
    let rhs = &(&DenseSuperOperator::identity(n).scale(trace(&cd)) - &s(Fhat, &dc)?) - &s(Bhat, &cd)?;
    suite.push("lg_commutator", "[L(C), G(D)] = tr(CD) - F(DC) - B(CD)", lhs.distance(&rhs), 1e-10);

    let (a, m) = (random::matrix(rng, n, 1.0), random::matrix(rng, n, 1.0));
    let (b, nn) = (random::matrix(rng, n, 1.0), random::matrix(rng, n, 1.0));
    let lhs = liouvillian(space, &a, &m)?.commutator(&liouvillian(space, &b, &nn)?);
    let new_m = &a * &nn + &nn * a.adjoint() - &b * &m - &m * b.adjoint();
    let rhs = liouvillian(space, &commutator(&a, &b), &new_m)?;
    suite.push(
        "liouvillian_commutator",
        "[L(A,M), L(B,N)] = L([A,B], AN + NA^dag - BM - MB^dag)",
        lhs.distance(&rhs),
        1e-10,
    );
    suite.push(
        "trace_preservation",
        "Tr L(A,M) rho = 0",
        liouvillian(space, &a, &m)?.trace_defect(),
        1e-12,
    );
    let vac = liouvillian(space, &a, &zeros(n))?.apply(&space.vacuum())?;
    suite.push("vacuum_invariance", "L(A,O) Omega = 0", crate::matrix::norm(&vac), 1e-13);

    let (xi, eta) = (random::vector(rng, n), random::vector(rng, n));
    let l1 = liouvillian(space, &zeros(n), &outer(&xi, &eta))?;
    suite.push("rank_one_nilpotency", "L(O, xi eta^dag)^2 = 0", (&l1 * &l1).max_abs(), 1e-12);
    Ok(())
}

fn dynamics(suite: &mut Suite, space: &FockSpace, rng: &mut InstanceRng) -> Result<()> {
    let n = space.modes();
    let p = random::gksl_params(rng, n);
    let (a, m) = (p.a().clone(), p.m().clone());
    let t = 0.7;
    let full = liouvillian(space, &a, &m)?.exp(t)?;
    let drift = liouvillian(space, &a, &zeros(n))?.exp(t)?;
    let integral = van_loan_integral(&a, &m, t)?;
    let noise = liouvillian(space, &zeros(n), &integral)?.exp(1.0)?;
    suite.push(
        "time_evolution_factorization",
        "exp(tL(A,M)) = exp(L(O, int_0^t e^{sA} M e^{sA^dag} ds)) exp(tL(A,O))",
        full.distance(&(&noise * &drift)),
        1e-9,
    );

    let e = mat_exp(&a.scale(t))?;
    let w = random::matrix(rng, n, 1.0);
    let lhs = &drift * &liouvillian(space, &zeros(n), &w)?;
    let rhs = &liouvillian(space, &zeros(n), &(&e * &w * e.adjoint()))? * &drift;
    suite.push(
        "drift_noise_intertwining",
        "exp(tL(A,O)) L(O,M) = L(O, e^{tA} M e^{tA^dag}) exp(tL(A,O))",
        lhs.distance(&rhs),
        1e-10,
    );

    let h = random::positive(rng, n, 1.0);
    let tm = random::matrix(rng, n, 1.0);
    let flow = liouvillian(space, &h.scale(-0.5), &h)?.exp(t)?;
    let half = mat_exp(&h.scale(0.5 * t))?;
    let lhs = &flow * &super_basic(space, SuperKind::Ghat, &tm)?;
    let rhs = &super_basic(space, SuperKind::Ghat, &(&half * &tm * &half))? * &flow;
    suite.push(
        "gain_intertwining",
        "exp(tL(-M/2,M)) G(T) = G(e^{tM/2} T e^{tM/2}) exp(tL(-M/2,M))",
        lhs.distance(&rhs),
        1e-10,
    );

    let check = conjugation_identity_check(&a, &m, t)?;
    suite.push(
        "affine_conjugation",
        "p_t(A,M) = (I,T) o (e^{tA},O) o (I,-T) with AT + TA^dag = -M",
        check.residual,
        1e-10,
    );
    Ok(())
}

fn gaussian_states(suite: &mut Suite, space: &FockSpace, rng: &mut InstanceRng) -> Result<()> {
    let n = space.modes();
    let p = random::gksl_params(rng, n);
    let s = random::correlation(rng, n);
    let rho = gaussian_density(space, &s)?;
    suite.push(
        "gaussian_unit_trace",
        "Tr det(I-R) exp((c, log(R(I-R)^-1) c)) = 1",
        (trace(&rho) - C64::new(1.0, 0.0)).norm(),
        1e-12,
    );
    suite.push(
        "correlation_round_trip",
        "Tr[c_k^dag c_j rho_R] = R_jk",
        distance(&read_correlations(space, &rho)?, s.r()),
        1e-11,
    );
    let t_mat = random::hermitian(rng, n, 1.0);
    let dense = trace(&(space.quadratic(&t_mat)? * &rho));
    suite.push(
        "quadratic_expectation",
        "Tr[(c,Tc) rho_R] = tr(TR)",
        (dense - expectation_quadratic(&s, &t_mat)?).norm(),
        1e-10,
    );
    suite.push(
        "gaussian_entropy",
        "-Tr[rho log rho] = -tr(R log R) - tr((I-R) log(I-R))",
        (von_neumann_entropy(&rho)? - entropy(&s)).abs(),
        1e-9,
    );
    let t = 0.5;
    let dense = read_correlations(space, &dense_evolve(space, &p, &rho, t)?)?;
    let fast = evolve_state(&p, &s, t)?;
    suite.push(
        "gaussian_evolution",
        "R(t) = e^{tA} R e^{tA^dag} + int_0^t e^{sA} M e^{sA^dag} ds",
        distance(&dense, fast.r()),
        1e-9,
    );
    let out = evolve_state(&p, &GaussianState::vacuum(n), t)?;
    let dense = read_correlations(space, &dense_evolve(space, &p, &space.vacuum(), t)?)?;
    suite.push(
        "vacuum_evolution",
        "exp(tL(A,M)) Omega = exp(L(O, int_0^t e^{sA} M e^{sA^dag} ds)) Omega",
        distance(&dense, out.r()),
        1e-9,
    );
    Ok(())
}

fn basis(suite: &mut Suite, space: &FockSpace, rng: &mut InstanceRng) -> Result<()> {
    let n = space.modes();
    let vectors = |rng: &mut InstanceRng, k: usize| -> Vec<CVector> {
        (0..k).map(|_| random::vector(rng, n)).collect()
    };
    let p = n.min(2);
    let q = n.min(3);
    let xs = vectors(rng, p);
    let es = vectors(rng, q);
    let phi = phi_basis(space, &xs, &es)?;
    let mut swapped = xs.clone();
    swapped.reverse();
    // Reversal of p items has sign (−1)^{p(p−1)/2}.
    let sign = if (p * p.saturating_sub(1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    suite.push(
        "phi_antisymmetry",
        "Phi(xi_sigma; eta_tau) = sgn(sigma) sgn(tau) Phi(xi; eta)",
        distance(&phi_basis(space, &swapped, &es)?, &(&phi * C64::from(sign))),
        1e-12,
    );
    suite.push(
        "phi_in_pi",
        "Phi = sum (-1)^p sgn sgn prod(eta,xi)/p! Pi/((n-p)!(m-p)!)",
        distance(&omega_pi_expansion(space, &xs, &es)?, &phi),
        1e-11,
    );
    let pi = pi_basis(space, &xs, &es)?;
    suite.push(
        "pi_in_phi",
        "Pi = sum sgn sgn prod(eta,xi)/p! Phi/((n-p)!(m-p)!)",
        distance(&pi_omega_expansion(space, &xs, &es)?, &pi),
        1e-11,
    );
    let a = random::matrix(rng, n, 1.0);
    suite.push(
        "phi_drift_covariance",
        "exp(tL(A,O)) Phi(xi; eta) = Phi(e^{tA} xi; e^{tA} eta)",
        phi_evolution_check(space, &a, &xs, &es, 0.7)?,
        1e-10,
    );
    let mut b = phi_basis_matrix(space, &vectors(rng, n), &vectors(rng, n))?;
    for mut col in b.column_iter_mut() {
        let nrm = col.norm();
        col /= C64::new(nrm, 0.0);
    }
    let smallest = b.singular_values().min();
    // Reported as a residual: the basis property holds when it is positive.
    suite.push(
        "phi_basis_rank",
        "{Phi(xi_I; eta_J)} spans operator space (1/smallest singular value)",
        1.0 / smallest,
        1e8,
    );
    Ok(())
}

fn majorana(suite: &mut Suite, space: &FockSpace, rng: &mut InstanceRng) -> Result<()> {
    let n = space.modes();
    let a: DMatrix<f64> = random::real_matrix(rng, 2 * n, 1.0);
    let b = random::real_matrix(rng, 2 * n, 1.0);
    let nm = random::real_antisymmetric(rng, 2 * n, 1.0);
    let rm = random::real_antisymmetric(rng, 2 * n, 1.0);
    suite.push(
        "majorana_anticommutator",
        "{w_j, w_k} = 2 delta_jk",
        crate::fock::majorana_anticommutator_residual(space),
        1e-14,
    );
    let check = majorana_liouvillian_check(space, &a, &nm, &b, &rm)?;
    suite.push(
        "majorana_commutator",
        "[L(A,N), L(B,R)] = L([A,B], AR + RA^t - BN - NB^t)",
        check.residual,
        1e-10,
    );
    Ok(())
}
