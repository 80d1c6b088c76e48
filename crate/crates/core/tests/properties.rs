//! Module-level invariants exercised on seeded random ensembles.

#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use rand::Rng;

use qcorr_core::evolution::{
    min_nonzero_gap_squared, propagate_kraus_adaptive, propagate_spectral, steady_state,
    DecoherenceParams,
};
use qcorr_core::hamiltonian::{
    analytic_eigensystem, bohr_frequencies, build_hamiltonian, ModelParams,
};
use qcorr_core::linalg::{
    fano_bloch, hermitian_eig, sqrt_psd, sym3_eigenvalues, trace_norm, Matrix4,
};
use qcorr_core::measures::{
    concurrence, lqu, tdd_bruteforce, tdd_x, uin, w_matrix,
};
use qcorr_core::states::{
    bell_diagonal, elements_from_density, evolved_bell_diagonal_elements, werner,
    BellDiagonalSpec, WernerSpec,
};

#[test]
fn fano_round_trip_on_random_hermitian() {
    let mut rng = rng(0xA1);
    for _ in 0..1000 {
        let m = random_hermitian(&mut rng);
        let f = fano_bloch(&m).unwrap();
        assert!(f.reconstruct().max_abs_diff(&m) < 1e-12);
    }
}

#[test]
fn sqrt_squares_back_on_random_psd() {
    let mut rng = rng(0xA2);
    for _ in 0..1000 {
        let m = random_psd(&mut rng);
        let s = sqrt_psd(&m).unwrap();
        assert!(s.mul(&s).max_abs_diff(&m) < 1e-10);
    }
}

#[test]
fn trace_norm_is_sum_of_absolute_eigenvalues() {
    let mut rng = rng(0xA3);
    for _ in 0..200 {
        let m = random_hermitian(&mut rng);
        let eig = hermitian_eig(&m).unwrap();
        let expected: f64 = eig.values.iter().map(|x| x.abs()).sum();
        assert!((trace_norm(&m) - expected).abs() < 1e-10);
    }
    // Every density matrix has unit trace norm.
    for _ in 0..50 {
        let rho = random_density(&mut rng);
        assert!((trace_norm(rho.matrix()) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sqrt_of_werner_state_squares_back() {
    let rho = werner(&WernerSpec::new(0.9).unwrap());
    let s = sqrt_psd(rho.matrix()).unwrap();
    assert!(s.mul(&s).max_abs_diff(rho.matrix()) < 1e-10);
}

#[test]
fn fano_of_bell_diagonal_is_its_correlation_vector() {
    let mut rng = rng(0xA6);
    for _ in 0..50 {
        let spec = random_bell_spec(&mut rng);
        let f = fano_bloch(bell_diagonal(&spec).matrix()).unwrap();
        for alpha in 0..4 {
            for beta in 0..4 {
                let expect = match (alpha, beta) {
                    (0, 0) => 1.0,
                    (1, 1) => spec.c1,
                    (2, 2) => spec.c2,
                    (3, 3) => spec.c3,
                    _ => 0.0,
                };
                assert!((f.r[alpha][beta] - expect).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn eigensolver_reconstruction_and_orthonormality() {
    let mut rng = rng(0xA4);
    for k in 0..300 {
        // Every third sample is built degenerate by unitary conjugation of
        // a two-level diagonal.
        let m = if k % 3 == 0 {
            let u = random_local_unitary(&mut rng);
            let mut d = Matrix4::zeros();
            for (i, v) in [0.7, 0.7, -0.2, -0.2].into_iter().enumerate() {
                d.0[i][i] = qcorr_core::linalg::cr(v);
            }
            u.mul(&d).mul(&u.dagger())
        } else {
            random_hermitian(&mut rng)
        };
        let m = Matrix4::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5);
        let eig = hermitian_eig(&m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
        for a in 0..4 {
            assert!(eig.values[a] <= eig.values.get(a + 1).copied().unwrap_or(f64::INFINITY));
            for b in 0..4 {
                let mut ip = num_complex::Complex64::default();
                for i in 0..4 {
                    ip += eig.vectors[a][i].conj() * eig.vectors[b][i];
                }
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip.norm() - expect).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn sym3_matches_embedded_jacobi() {
    let mut rng = rng(0xA5);
    for k in 0..500 {
        let mut w = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v: f64 = rng.gen_range(-2.0..2.0);
                w[i][j] = v;
                w[j][i] = v;
            }
        }
        if k % 5 == 0 {
            // Force a (near-)degenerate pair.
            w = [[1.0, 0.0, 0.0], [0.0, 1.0 + 1e-13 * k as f64, 0.0], [0.0, 0.0, -0.5]];
        }
        // Embed into a 4x4 Hermitian with a sentinel eigenvalue strictly
        // above the 3x3 range, then compare against the Jacobi solver.
        let mut frob = 0.0;
        for row in &w {
            for x in row {
                frob += x * x;
            }
        }
        let sentinel = frob.sqrt() + 1.0;
        let mut embed = Matrix4::zeros();
        for i in 0..3 {
            for j in 0..3 {
                embed.0[i][j] = qcorr_core::linalg::cr(w[i][j]);
            }
        }
        embed.0[3][3] = qcorr_core::linalg::cr(sentinel);
        let eig = hermitian_eig(&embed).unwrap();
        assert!((eig.values[3] - sentinel).abs() < 1e-10);
        let got = sym3_eigenvalues(&w);
        for i in 0..3 {
            assert!(
                (got[i] - eig.values[i]).abs() < 1e-10,
                "sample {k}: {got:?} vs {:?}",
                &eig.values[..3]
            );
        }
    }
}

#[test]
fn analytic_eigensystem_matches_numerical_over_parameter_plane() {
    let mut rng = rng(0xB1);
    for _ in 0..200 {
        let mut mu: f64 = rng.gen_range(0.0..3.0);
        let mut b: f64 = rng.gen_range(0.0..3.0);
        if mu + b <= 1e-6 {
            mu = 0.5;
            b = 0.5;
        }
        let es = analytic_eigensystem(mu, b).unwrap();
        let h = build_hamiltonian(&ModelParams::one_axis_twisting(mu, b).unwrap());

        let numeric = hermitian_eig(&h).unwrap();
        let mut analytic_sorted = es.energies;
        analytic_sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for k in 0..4 {
            assert!((analytic_sorted[k] - numeric.values[k]).abs() < 1e-10);
        }

        assert!(es.eigen_equation_residual(&h) < 1e-10);
        let trace: f64 = es.energies.iter().sum();
        assert!((trace - 2.0 * mu).abs() < 1e-12);
        assert!((es.kappa * es.kappa - (mu * mu + 4.0 * b * b)).abs() < 1e-12);
        assert!(es.kappa >= mu - 1e-15 && es.kappa >= 2.0 * b - 1e-15);

        // Singlet/triplet vectors are parameter-independent.
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((es.states[2][2].re - inv_sqrt2).abs() < 1e-14);
        assert!((es.states[2][1].re + inv_sqrt2).abs() < 1e-14);
        assert!((es.states[3][2].re - inv_sqrt2).abs() < 1e-14);
        assert!((es.states[3][1].re - inv_sqrt2).abs() < 1e-14);

        let table = bohr_frequencies(&es);
        assert!((table[1][0] - es.kappa).abs() < 1e-12);
    }
}

#[test]
fn backends_preserve_state_invariants() {
    let mut rng = rng(0xB2);
    for k in 0..25 {
        let mu = rng.gen_range(0.0..2.5);
        let b = rng.gen_range(0.0..2.5);
        let gamma = rng.gen_range(0.0..0.3);
        let t = rng.gen_range(0.0..10.0);
        let es = analytic_eigensystem(mu, b).unwrap();
        let rho0 = random_density(&mut rng);
        let d = DecoherenceParams::new(gamma, t).unwrap();
        let spectral = propagate_spectral(&es, &rho0, &d);
        spectral.validate().unwrap();
        let (kraus, _) = propagate_kraus_adaptive(&es, &rho0, &d).unwrap();
        kraus.validate().unwrap();
        if k % 5 == 0 {
            let h = build_hamiltonian(&ModelParams::one_axis_twisting(mu, b).unwrap());
            let rk4 = qcorr_core::evolution::integrate_master(&h, &rho0, &d, 1e-3).unwrap();
            rk4.validate().unwrap();
        }
    }
}

#[test]
fn dephasing_never_increases_purity() {
    let mut rng = rng(0xB3);
    for _ in 0..20 {
        let mu = rng.gen_range(0.1..2.5);
        let b = rng.gen_range(0.1..2.5);
        let gamma = rng.gen_range(0.01..0.3);
        let es = analytic_eigensystem(mu, b).unwrap();
        let rho0 = random_density(&mut rng);
        let mut previous = f64::INFINITY;
        for k in 0..40 {
            let t = k as f64 * 0.25;
            let rho = propagate_spectral(&es, &rho0, &DecoherenceParams::new(gamma, t).unwrap());
            let purity = rho.purity();
            assert!(
                purity <= previous + 1e-12,
                "purity rose from {previous} to {purity} at t = {t}"
            );
            previous = purity;
        }
    }
}

#[test]
fn steady_state_is_long_time_limit() {
    let mut rng = rng(0xB4);
    for _ in 0..10 {
        let mu = rng.gen_range(0.2..2.5);
        let b = rng.gen_range(0.2..2.5);
        let gamma = rng.gen_range(0.05..0.3);
        let es = analytic_eigensystem(mu, b).unwrap();
        let rho0 = random_density(&mut rng);
        let fixed = steady_state(&es, &rho0);
        let gap2 = min_nonzero_gap_squared(&es).unwrap();
        let horizon = 50.0 / (gamma * gap2);
        let late = propagate_spectral(&es, &rho0, &DecoherenceParams::new(gamma, horizon).unwrap());
        assert!(late.matrix().max_abs_diff(fixed.matrix()) < 1e-8);
        // And the fixed point really is fixed.
        let more = propagate_spectral(&es, &fixed, &DecoherenceParams::new(gamma, 3.7).unwrap());
        assert!(more.matrix().max_abs_diff(fixed.matrix()) < 1e-10);
    }
}

#[test]
fn x_structure_preserved_along_the_flow() {
    let mut rng = rng(0xB5);
    for _ in 0..50 {
        let spec = random_bell_spec(&mut rng);
        let mu = rng.gen_range(0.0..2.5);
        let b = rng.gen_range(0.0..2.5);
        let gamma = rng.gen_range(0.0..0.3);
        let t = rng.gen_range(0.0..12.0);
        let es = analytic_eigensystem(mu, b).unwrap();
        let rho = propagate_spectral(
            &es,
            &bell_diagonal(&spec),
            &DecoherenceParams::new(gamma, t).unwrap(),
        );
        let m = rho.matrix();
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    assert!(m.0[i][j].norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn w_matrix_trace_definition_matches_fano_expression() {
    let mut rng = rng(0xC1);
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        let direct = w_matrix(&rho).unwrap();
        let via_fano = w_matrix_fano(&rho);
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (direct.w[i][j] - via_fano[i][j]).abs() < 1e-9,
                    "w[{i}][{j}]: {} vs {}",
                    direct.w[i][j],
                    via_fano[i][j]
                );
            }
        }
    }
}

#[test]
fn w_matrix_eigenvalues_in_unit_interval() {
    let mut rng = rng(0xC2);
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        let w = w_matrix(&rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((w.w[i][j] - w.w[j][i]).abs() < 1e-10);
            }
        }
        assert!(w.lambda_max() <= 1.0 + 1e-9);
        assert!(w.lambda_min() >= -1e-9);
    }
}

#[test]
fn uin_dominates_lqu() {
    let mut rng = rng(0xC3);
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        let u = uin(&rho).unwrap().value;
        let l = lqu(&rho).unwrap().value;
        assert!(u >= l - 1e-9, "uin {u} < lqu {l}");
    }
}

#[test]
fn measures_bounded_on_random_states() {
    let mut rng = rng(0xC4);
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        for value in [
            concurrence(&rho).unwrap().value,
            lqu(&rho).unwrap().value,
            uin(&rho).unwrap().value,
            tdd_bruteforce(&rho, 64).value,
        ] {
            assert!((0.0..=1.0 + 1e-9).contains(&value), "value = {value}");
        }
    }
}

#[test]
fn closed_measures_are_local_unitary_invariant() {
    let mut rng = rng(0xC5);
    let base_states = [
        bell_diagonal(&BellDiagonalSpec::new(0.9, -0.4, 0.4).unwrap()),
        werner(&WernerSpec::new(0.9).unwrap()),
        {
            let es = analytic_eigensystem(1.6, 0.25).unwrap();
            propagate_spectral(
                &es,
                &bell_diagonal(&BellDiagonalSpec::new(0.9, -0.4, 0.4).unwrap()),
                &DecoherenceParams::new(0.1, 2.0).unwrap(),
            )
        },
        random_density(&mut rng),
    ];
    for k in 0..50 {
        let rho = &base_states[k % base_states.len()];
        let u = random_local_unitary(&mut rng);
        let rotated = conjugate(rho, &u);
        assert!(
            (concurrence(rho).unwrap().value - concurrence(&rotated).unwrap().value).abs() < 1e-9
        );
        assert!((lqu(rho).unwrap().value - lqu(&rotated).unwrap().value).abs() < 1e-9);
        assert!((uin(rho).unwrap().value - uin(&rotated).unwrap().value).abs() < 1e-9);
    }
}

#[test]
fn tdd_closed_form_survives_local_rotation_within_oracle_accuracy() {
    // The rotated state leaves the X family, so the only general evaluator
    // is the brute-force minimization; agreement is bounded by its grid
    // accuracy rather than the closed-form 1e-9.
    let mut rng = rng(0xC6);
    let es = analytic_eigensystem(2.0, 0.6).unwrap();
    let rho = propagate_spectral(
        &es,
        &werner(&WernerSpec::new(0.9).unwrap()),
        &DecoherenceParams::new(0.01, 1.5).unwrap(),
    );
    let closed = tdd_x(&elements_from_density(&rho).unwrap()).value;
    for _ in 0..6 {
        let u = random_local_unitary(&mut rng);
        let rotated = conjugate(&rho, &u);
        let brute = tdd_bruteforce(&rotated, 2048).value;
        assert!((closed - brute).abs() < 2e-3, "{closed} vs {brute}");
    }
}

#[test]
fn evolved_bell_diagonal_stays_physical() {
    let mut rng = rng(0xC7);
    for _ in 0..50 {
        let spec = random_bell_spec(&mut rng);
        let mu = rng.gen_range(0.0..2.5);
        let b = rng.gen_range(0.0..2.5);
        let gamma = rng.gen_range(0.0..0.3);
        let t = rng.gen_range(0.0..10.0);
        let x = evolved_bell_diagonal_elements(&spec, mu, b, gamma, t);
        x.validate().unwrap();
    }
}
