//! Skew-information measures: local quantum uncertainty (minimal skew
//! information over local observables) and uncertainty-induced nonlocality
//! (maximal skew information over observables commuting with the reduced
//! state).
//!
//! Both closed forms run through the W matrix
//! w_ij = tr{√ρ (σ_i⊗1) √ρ (σ_j⊗1)}, computed from the operational trace
//! definition; the re-expression of W through Fano–Bloch coefficients of
//! √ρ serves as a test oracle only.

use super::optimizer::{maximize_on_sphere, minimize_on_sphere, normalize3};
use super::{sqrt_state, MeasureResult};
use crate::evolution::DensityMatrix;
use crate::linalg::{
    bloch_vector, kron, partial_trace_b, pauli, sym3_eigenvalues, LinalgError, Matrix2, Matrix4,
};
use crate::tolerances::BLOCH_ZERO_TOL;

/// W matrix of the skew-information closed forms, with its eigenvalues
/// sorted descending (Λ₁ ≥ Λ₂ ≥ Λ₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WMatrix {
    pub w: [[f64; 3]; 3],
    pub eigenvalues: [f64; 3],
}

impl WMatrix {
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[2]
    }

    /// n^T W n for a unit direction.
    pub fn quadratic_form(&self, n: &[f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += n[i] * self.w[i][j] * n[j];
            }
        }
        s
    }
}

/// w_ij = tr{√ρ (σ_i⊗1) √ρ (σ_j⊗1)} by the direct trace definition.
pub fn w_matrix(rho: &DensityMatrix) -> Result<WMatrix, LinalgError> {
    let root = sqrt_state(rho.matrix())?;
    let products: Vec<Matrix4> = (1..=3)
        .map(|i| root.mul(&kron(&pauli(i), &Matrix2::identity())))
        .collect();
    let mut w = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let value = products[i].trace_of_product(&products[j]).re;
            w[i][j] = value;
            w[j][i] = value;
        }
    }
    let asc = sym3_eigenvalues(&w);
    Ok(WMatrix {
        w,
        eigenvalues: [asc[2], asc[1], asc[0]],
    })
}

/// Local quantum uncertainty, 1 − Λ_max(W).
pub fn lqu(rho: &DensityMatrix) -> Result<MeasureResult, LinalgError> {
    let w = w_matrix(rho)?;
    Ok(MeasureResult::closed(1.0 - w.lambda_max()))
}

/// Uncertainty-induced nonlocality: 1 − Λ_min(W) when the subsystem-a Bloch
/// vector vanishes, else 1 − r̂'ᵀ W r̂'.
pub fn uin(rho: &DensityMatrix) -> Result<MeasureResult, LinalgError> {
    let w = w_matrix(rho)?;
    let r = bloch_vector(&partial_trace_b(rho.matrix()));
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let value = if len < BLOCH_ZERO_TOL {
        1.0 - w.lambda_min()
    } else {
        let unit = normalize3(&r);
        1.0 - w.quadratic_form(&unit)
    };
    Ok(MeasureResult::closed(value))
}

/// Wigner–Yanase skew information I(ρ, n·σ⊗1) = −½ tr{[√ρ, n·σ⊗1]²},
/// evaluated from the commutator definition given √ρ.
pub fn skew_information(root: &Matrix4, n: &[f64; 3]) -> f64 {
    let mut k2 = Matrix2::zeros();
    for (i, weight) in n.iter().enumerate() {
        let s = pauli(i + 1);
        for a in 0..2 {
            for b in 0..2 {
                k2.0[a][b] += s.0[a][b] * weight;
            }
        }
    }
    let k4 = kron(&k2, &Matrix2::identity());
    let comm = root.mul(&k4).sub(&k4.mul(root));
    -0.5 * comm.trace_of_product(&comm).re
}

/// Definitional LQU oracle: minimize the skew information over unit-Bloch
/// local observables via lattice search plus local refinement.
pub fn lqu_bruteforce(rho: &DensityMatrix, n_grid: usize) -> Result<MeasureResult, LinalgError> {
    let root = sqrt_state(rho.matrix())?;
    let opt = minimize_on_sphere(n_grid, |n| skew_information(&root, n));
    Ok(MeasureResult::brute(opt.value, opt.direction))
}

/// Definitional UIN oracle: maximize the skew information over observables
/// commuting with ρ_a. A degenerate ρ_a admits every direction; otherwise
/// only ±r̂' commute, and the two give equal skew information.
pub fn uin_bruteforce(rho: &DensityMatrix, n_grid: usize) -> Result<MeasureResult, LinalgError> {
    let root = sqrt_state(rho.matrix())?;
    let r = bloch_vector(&partial_trace_b(rho.matrix()));
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if len < BLOCH_ZERO_TOL {
        let opt = maximize_on_sphere(n_grid, |n| skew_information(&root, n));
        Ok(MeasureResult::brute(opt.value, opt.direction))
    } else {
        let unit = normalize3(&r);
        Ok(MeasureResult::brute(skew_information(&root, &unit), unit))
    }
}
