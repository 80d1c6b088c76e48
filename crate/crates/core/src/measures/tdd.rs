//! Trace distance discord: Schatten 1-norm distance to the nearest state
//! left invariant by a local projective measurement on subsystem a.
//!
//! The compact X-state form is evaluated on the canonical real
//! representative: a local phase rotation (a local unitary, which leaves
//! discord untouched) makes ρ₁₄ and ρ₂₃ real non-negative, after which only
//! their magnitudes enter. The definitional minimization over measurement
//! axes is kept as an independent oracle and adjudicates the closed form.
//!
//! Normalization note: the definitional distance ‖ρ − Π(ρ)‖₁ reaches 1 on a
//! Bell state, and the compact form here is scaled to match it (no global
//! ½), consistent with the unit saturation of the other measures.

use super::optimizer::minimize_on_sphere;
use super::MeasureResult;
use crate::evolution::DensityMatrix;
use crate::linalg::{kron, pauli, trace_norm, Matrix2, Matrix4};
use crate::states::XStateElements;
use crate::tolerances::TDD_DENOM_TOL;

/// Auxiliary X-state quantities of the compact form: g₁ = 2(|ρ₂₃|+|ρ₁₄|),
/// g₂ = 2(|ρ₂₃|−|ρ₁₄|), g₃ = 1 − 2(ρ₂₂+ρ₃₃) and the subsystem-a Bloch
/// z-component x_A = 2(ρ₁₁+ρ₂₂) − 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TddAux {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub x_a: f64,
}

impl TddAux {
    pub fn from_elements(x: &XStateElements) -> Self {
        let outer = x.rho14.norm();
        let inner = x.rho23.norm();
        Self {
            g1: 2.0 * (inner + outer),
            g2: 2.0 * (inner - outer),
            g3: 1.0 - 2.0 * (x.rho22 + x.rho33),
            x_a: 2.0 * (x.rho11 + x.rho22) - 1.0,
        }
    }
}

/// Compact X-state trace distance discord.
pub fn tdd_x(x: &XStateElements) -> MeasureResult {
    let aux = TddAux::from_elements(x);
    let g1s = aux.g1 * aux.g1;
    let g2s = aux.g2 * aux.g2;
    let g3s = aux.g3 * aux.g3;
    let xas = aux.x_a * aux.x_a;
    let top = g3s.max(g2s + xas);
    let bottom = g3s.min(g1s);
    let denominator = top - bottom + g1s - g2s;
    let value = if denominator.abs() < TDD_DENOM_TOL {
        // Degenerate geometry: both extremal radii coincide with g1 and the
        // ratio limit collapses to it.
        aux.g1.abs()
    } else {
        let numerator = (g1s * top - g2s * bottom).max(0.0);
        (numerator / denominator).sqrt()
    };
    MeasureResult::closed(value)
}

/// Measurement map Π_n(ρ) = Σ_± (P_±⊗1) ρ (P_±⊗1) with
/// P_± = (1 ± n·σ)/2 on subsystem a.
fn measured_state(rho: &Matrix4, n: &[f64; 3]) -> Matrix4 {
    let mut spin = Matrix2::zeros();
    for (i, weight) in n.iter().enumerate() {
        let s = pauli(i + 1);
        for a in 0..2 {
            for b in 0..2 {
                spin.0[a][b] += s.0[a][b] * weight;
            }
        }
    }
    let mut out = Matrix4::zeros();
    for sign in [1.0f64, -1.0] {
        let mut proj = Matrix2::identity();
        for a in 0..2 {
            for b in 0..2 {
                proj.0[a][b] = (proj.0[a][b] + spin.0[a][b] * sign) * 0.5;
            }
        }
        let p4 = kron(&proj, &Matrix2::identity());
        out = out.add(&p4.mul(rho).mul(&p4));
    }
    out
}

/// Definitional oracle: min over measurement axes of ‖ρ − Π_n(ρ)‖₁.
pub fn tdd_bruteforce(rho: &DensityMatrix, n_grid: usize) -> MeasureResult {
    let m = rho.matrix();
    let opt = minimize_on_sphere(n_grid, |n| trace_norm(&m.sub(&measured_state(m, n))));
    MeasureResult::brute(opt.value, opt.direction)
}
