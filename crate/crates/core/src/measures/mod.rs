//! Quantum-correlation quantifiers for two-qubit states.
//!
//! Four measures, each in two independent routes: a closed-form evaluator
//! and a brute-force optimization over the definitional manifold
//! (Bloch-sphere observables or local projective measurements). The pairs
//! cross-check each other in the test suites.
//!
//! All values are clamped into [0, 1] from below and snapped to exactly 0
//! underneath the round-off floor, so zero-correlation fixed points (the
//! maximally mixed state) report exact zeros.

mod concurrence;
mod optimizer;
mod skew;
mod tdd;

pub use concurrence::{concurrence, concurrence_x};
pub use optimizer::{fibonacci_sphere, maximize_on_sphere, minimize_on_sphere, SphereOptimum};
pub use skew::{lqu, lqu_bruteforce, skew_information, uin, uin_bruteforce, w_matrix, WMatrix};
pub use tdd::{tdd_bruteforce, tdd_x, TddAux};

use crate::linalg::{hermitian_eig, LinalgError, Matrix4};
use crate::tolerances::{DENSITY_EIG_FLOOR, MEASURE_ZERO_FLOOR};

/// How a [`MeasureResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    BruteForce,
}

/// A correlation value in [0, 1]; brute-force results carry the Bloch
/// direction that achieved the optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    pub optimizer_argument: Option<[f64; 3]>,
}

impl MeasureResult {
    pub(crate) fn closed(value: f64) -> Self {
        Self {
            value: snap(value),
            method: Method::ClosedForm,
            optimizer_argument: None,
        }
    }

    pub(crate) fn brute(value: f64, direction: [f64; 3]) -> Self {
        Self {
            value: snap(value),
            method: Method::BruteForce,
            optimizer_argument: Some(direction),
        }
    }
}

/// Snap round-off residue to an exact zero and clamp tiny negatives.
fn snap(value: f64) -> f64 {
    if value.abs() <= MEASURE_ZERO_FLOOR {
        0.0
    } else {
        value.max(0.0)
    }
}

/// √ρ for measure evaluation: clamps spectrum noise down to the density
/// positivity floor (slightly wider than the generic PSD clamp, matching
/// the DensityMatrix invariant).
pub(crate) fn sqrt_state(m: &Matrix4) -> Result<Matrix4, LinalgError> {
    let eig = hermitian_eig(m)?;
    if eig.values[0] < -DENSITY_EIG_FLOOR {
        return Err(LinalgError::NotPositiveSemidefinite {
            min_eigenvalue: eig.values[0],
        });
    }
    Ok(eig.map_values(|x| x.max(0.0).sqrt()))
}
