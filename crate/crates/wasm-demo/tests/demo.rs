use oqf_core::fock::{dense_evolve, gaussian_density, read_correlations, FockSpace};
use oqf_core::gaussian::{evolve_state, params_from_model, steady_state, GaussianState, PhysicalModel};
use oqf_core::matrix::{diag, zeros, CVector, C64};
use oqf_wasm::{skin_curves, DrivenChain, MAX_SITES};

#[test]
fn skin_profile_is_geometric() {
    let curves = skin_curves(6, 1.0, 0.3, 0.5, 2.5, 1.0 / 3.0).unwrap();
    assert!((curves.kappa - 0.5).abs() < 1e-15);
    // x = κ^{2n−2}/4, so site j holds κ^{2n−2−2j}/4.
    for (j, occ) in curves.occupations.iter().enumerate() {
        let want = 0.25 * 0.5f64.powi(10 - 2 * j as i32);
        assert!((occ - want).abs() < 1e-12, "site {j}: {occ} vs {want}");
    }
    assert!(curves.featureless.iter().all(|f| (f - 0.25).abs() < 1e-12));
    assert!((curves.log_slope - 4f64.ln()).abs() < 1e-12);
}

fn chain() -> DrivenChain {
    DrivenChain { sites: 3, hopping: 0.7, loss: 0.4, gain: 0.25 }
}

/// Same model written out by hand.
fn reference_model() -> PhysicalModel {
    let mut h = zeros(3);
    for j in 1..3 {
        h[(j, j - 1)] = C64::new(0.7, 0.0);
        h[(j - 1, j)] = C64::new(0.7, 0.0);
    }
    let loss = CVector::from_vec(vec![C64::new(0.4f64.sqrt(), 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
    let gain = CVector::from_vec(vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.25f64.sqrt(), 0.0)]);
    PhysicalModel::new(h, vec![loss], vec![gain]).unwrap()
}

#[test]
fn trajectory_starts_from_alternating_filling() {
    let t = chain().trajectory(5.0, 11).unwrap();
    assert_eq!(t.times.len(), 11);
    assert_eq!(t.occupations.len(), 33);
    assert_eq!(&t.occupations[..3], &[1.0, 0.0, 1.0]);
    assert_eq!(t.entropy[0], 0.0);
    assert!((t.times[10] - 5.0).abs() < 1e-14);
    assert!(t.occupations.iter().all(|x| (-1e-12..=1.0 + 1e-12).contains(x)));
    assert!(t.entropy[1..].iter().all(|&s| s > 0.0));
}

#[test]
fn stepped_flow_matches_dense_oracle() {
    let t_max = 3.0;
    let traj = chain().trajectory(t_max, 31).unwrap();
    let last = &traj.occupations[90..93];

    let params = params_from_model(&reference_model()).unwrap();
    let start = GaussianState::new(diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)])).unwrap();
    let direct = evolve_state(&params, &start, t_max).unwrap();

    let space = FockSpace::new(3).unwrap();
    let rho = dense_evolve(&space, &params, &gaussian_density(&space, &start).unwrap(), t_max).unwrap();
    let dense = read_correlations(&space, &rho).unwrap();
    for (j, x) in last.iter().enumerate() {
        assert!((x - direct.r()[(j, j)].re).abs() < 1e-12);
        assert!((x - dense[(j, j)].re).abs() < 1e-10);
    }
}

#[test]
fn long_run_reaches_steady_state() {
    let traj = chain().trajectory(200.0, 201).unwrap();
    let steady = steady_state(&params_from_model(&reference_model()).unwrap()).unwrap();
    let last = &traj.occupations[600..603];
    for (j, x) in last.iter().enumerate() {
        assert!((x - steady.r()[(j, j)].re).abs() < 1e-10);
    }
    let tail = &traj.entropy[195..];
    assert!(tail.windows(2).all(|w| (w[1] - w[0]).abs() < 1e-10));
}

#[test]
fn rejects_bad_input() {
    assert!(skin_curves(1, 1.0, 0.3, 0.5, 2.5, 0.3).is_err());
    assert!(skin_curves(MAX_SITES + 1, 1.0, 0.3, 0.5, 2.5, 0.3).is_err());
    assert!(skin_curves(6, 1.0, 0.3, 0.5, 2.5, 1.5).is_err());
    assert!(chain().trajectory(0.0, 10).is_err());
    assert!(chain().trajectory(1.0, 1).is_err());
    assert!(DrivenChain { loss: -1.0, ..chain() }.trajectory(1.0, 10).is_err());
}
