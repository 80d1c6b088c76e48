//! Wootters concurrence: the spin-flip construction for arbitrary two-qubit
//! states and the anti-diagonal shortcut for X states.

use super::{sqrt_state, MeasureResult};
use crate::evolution::DensityMatrix;
use crate::linalg::{hermitian_eig, pauli_pair, LinalgError};
use crate::states::XStateElements;

/// C(ρ) = max{0, λ₁ − λ₂ − λ₃ − λ₄}, λ_i the descending eigenvalues of
/// √(√ρ ρ̃ √ρ) with ρ̃ = (σy⊗σy) ρ* (σy⊗σy).
pub fn concurrence(rho: &DensityMatrix) -> Result<MeasureResult, LinalgError> {
    let yy = pauli_pair(2, 2);
    let flipped = yy.mul(&rho.matrix().conj()).mul(&yy);
    let root = sqrt_state(rho.matrix())?;
    let m = root.mul(&flipped).mul(&root);
    let eig = hermitian_eig(&m)?;
    let mut lambdas: Vec<f64> = eig.values.iter().map(|x| x.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(MeasureResult::closed(
        lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3],
    ))
}

/// X-state form: 2·max{0, |ρ₁₄| − √(ρ₃₃ρ₂₂), |ρ₂₃| − √(ρ₄₄ρ₁₁)}.
pub fn concurrence_x(x: &XStateElements) -> MeasureResult {
    let outer = x.rho14.norm() - (x.rho33.max(0.0) * x.rho22.max(0.0)).sqrt();
    let inner = x.rho23.norm() - (x.rho44.max(0.0) * x.rho11.max(0.0)).sqrt();
    MeasureResult::closed(2.0 * outer.max(inner).max(0.0))
}
