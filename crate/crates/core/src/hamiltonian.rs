//! Two-qubit spin-squeezing Hamiltonian and its eigensystem.
//!
//! The full model is H = μS_x² + ζS_y² + Γ(S_xS_y + S_yS_x) + BS_z with
//! collective operators S_α = ½(σ_α⊗1 + 1⊗σ_α). With ζ = Γ = 0 it reduces
//! to the one-axis-twisting form H = μS_x² + BS_z, whose eigensystem is
//! known in closed form; that case drives all closed-form dynamics. The
//! generic case is diagonalized numerically.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{cr, hermitian_eig, kron, pauli, Matrix2, Matrix4};
use crate::tolerances::EIG_DEGENERACY_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("model parameter {name} must be finite and >= 0, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("numerical diagonalization failed: {0}")]
    Diagonalization(#[from] crate::linalg::LinalgError),
}

/// Couplings of the spin-squeezing model; all non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// x-squeezing strength μ.
    pub mu: f64,
    /// y-squeezing strength ζ.
    pub zeta: f64,
    /// Cross xy-squeezing strength Γ.
    pub gamma_xy: f64,
    /// Transverse magnetic field B along z.
    pub field_b: f64,
}

impl ModelParams {
    pub fn new(mu: f64, zeta: f64, gamma_xy: f64, field_b: f64) -> Result<Self, ModelError> {
        for (name, value) in [
            ("mu", mu),
            ("zeta", zeta),
            ("gamma_xy", gamma_xy),
            ("field_b", field_b),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        Ok(Self {
            mu,
            zeta,
            gamma_xy,
            field_b,
        })
    }

    /// One-axis-twisting restriction (ζ = Γ = 0).
    pub fn one_axis_twisting(mu: f64, field_b: f64) -> Result<Self, ModelError> {
        Self::new(mu, 0.0, 0.0, field_b)
    }

    pub fn is_one_axis_twisting(&self) -> bool {
        self.zeta == 0.0 && self.gamma_xy == 0.0
    }

    /// κ = √(μ² + 4B²), the gap of the {|00>, |11>} sector.
    pub fn kappa(&self) -> f64 {
        (self.mu * self.mu + 4.0 * self.field_b * self.field_b).sqrt()
    }
}

/// Collective spin operator S_α = ½(σ_α⊗1 + 1⊗σ_α), α in 1..=3.
pub fn collective_spin(axis: usize) -> Matrix4 {
    let s = pauli(axis);
    let id = Matrix2::identity();
    kron(&s, &id).add(&kron(&id, &s)).scale(0.5)
}

/// Build the spin-squeezing Hamiltonian in the {|00>, |01>, |10>, |11>}
/// basis.
pub fn build_hamiltonian(p: &ModelParams) -> Matrix4 {
    let sx = collective_spin(1);
    let sy = collective_spin(2);
    let sz = collective_spin(3);
    let mut h = sx.mul(&sx).scale(p.mu);
    h = h.add(&sy.mul(&sy).scale(p.zeta));
    h = h.add(&sx.mul(&sy).add(&sy.mul(&sx)).scale(p.gamma_xy));
    h.add(&sz.scale(p.field_b))
}

/// Energies and eigenvectors of the one-axis-twisting Hamiltonian.
///
/// Ordering follows the analytic labels: E₁ = (μ−κ)/2 and E₂ = (μ+κ)/2 for
/// the {|00>, |11>} sector, E₃ = 0 (singlet) and E₄ = μ (triplet) for the
/// field-independent {|01>, |10>} sector.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub energies: [f64; 4],
    /// `states[k]` is the normalized eigenvector paired with `energies[k]`.
    pub states: [[Complex64; 4]; 4],
    /// κ = √(μ² + 4B²).
    pub kappa: f64,
    /// Set when μ = B = 0: the Bell-sector vectors degenerate and the
    /// computational basis is returned (evolution reduces to the identity).
    pub degenerate: bool,
}

impl Eigensystem {
    /// Residual max_k ‖(H − E_k)|φ_k>‖_max; the ground-truth check for any
    /// claimed eigensystem.
    pub fn eigen_equation_residual(&self, h: &Matrix4) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..4 {
            let hv = h.apply(&self.states[k]);
            for i in 0..4 {
                worst = worst.max((hv[i] - self.states[k][i] * self.energies[k]).norm());
            }
        }
        worst
    }
}

/// Closed-form eigensystem of H = μS_x² + BS_z.
///
/// The Bell-sector vectors are written as φ₁ ∝ μ|00> − (2B+κ)|11> and
/// φ₂ ∝ (2B+κ)|00> + μ|11>, which stay well-conditioned for every
/// (μ, B) ≠ (0, 0) and satisfy the eigen-equation of [`build_hamiltonian`]
/// exactly; each vector is normalized to unit length.
pub fn analytic_eigensystem(mu: f64, field_b: f64) -> Result<Eigensystem, ModelError> {
    let params = ModelParams::one_axis_twisting(mu, field_b)?;
    let kappa = params.kappa();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;

    let mut states = [[Complex64::default(); 4]; 4];
    // Singlet/triplet sector, independent of mu and B.
    states[2][2] = cr(inv_sqrt2);
    states[2][1] = cr(-inv_sqrt2);
    states[3][2] = cr(inv_sqrt2);
    states[3][1] = cr(inv_sqrt2);

    if kappa == 0.0 {
        states[0][0] = cr(1.0);
        states[1][3] = cr(1.0);
        return Ok(Eigensystem {
            energies: [0.0; 4],
            states,
            kappa,
            degenerate: true,
        });
    }

    let big = 2.0 * field_b + kappa;
    let norm = (mu * mu + big * big).sqrt();
    states[0][0] = cr(mu / norm);
    states[0][3] = cr(-big / norm);
    states[1][0] = cr(big / norm);
    states[1][3] = cr(mu / norm);

    Ok(Eigensystem {
        energies: [0.5 * (mu - kappa), 0.5 * (mu + kappa), 0.0, mu],
        states,
        kappa,
        degenerate: false,
    })
}

/// Eigensystem of the full model via numerical diagonalization; the route
/// for ζ > 0 or Γ > 0 where no closed form applies.
pub fn numeric_eigensystem(p: &ModelParams) -> Result<Eigensystem, ModelError> {
    let h = build_hamiltonian(p);
    let eig = hermitian_eig(&h)?;
    Ok(Eigensystem {
        energies: eig.values,
        states: eig.vectors,
        kappa: p.kappa(),
        degenerate: eig.values[3] - eig.values[0] <= EIG_DEGENERACY_TOL,
    })
}

/// Bohr frequency table, entry (m, n) = E_m − E_n.
pub fn bohr_frequencies(es: &Eigensystem) -> [[f64; 4]; 4] {
    let mut out = [[0.0f64; 4]; 4];
    for (m, row) in out.iter_mut().enumerate() {
        for (n, entry) in row.iter_mut().enumerate() {
            *entry = es.energies[m] - es.energies[n];
        }
    }
    out
}
