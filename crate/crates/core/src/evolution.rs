//! Propagation of two-qubit density matrices under intrinsic decoherence.
//!
//! Three mutually cross-checking backends implement the same channel:
//!
//! * [`propagate_spectral`] — the exact eigenbasis formula
//!   ρ(t) = Σ exp(−γt(E_m−E_n)²/2) exp(−i(E_m−E_n)t) <φ_m|ρ(0)|φ_n> |φ_m><φ_n|,
//!   the primary engine (no integrator error, O(1) in t);
//! * [`propagate_kraus`] — the truncated operator sum Σ M_l ρ M_l† with
//!   M_l = (γt)^{l/2}/√(l!) H^l exp(−iHt) exp(−γtH²/2);
//! * [`integrate_master`] — fixed-step RK4 on
//!   dρ/dt = −i[H,ρ] − (γ/2)[H,[H,ρ]].
//!
//! [`steady_state`] keeps only energy-degenerate matrix elements, the
//! γt → ∞ limit of the spectral formula.

use num_complex::Complex64;
use thiserror::Error;

use crate::hamiltonian::Eigensystem;
use crate::linalg::{hermitian_eig, LinalgError, Matrix4};
use crate::tolerances::{
    DENSITY_EIG_FLOOR, ENERGY_DEGENERACY_TOL, HERMITICITY_TOL, INTEGRATOR_TRACE_DRIFT_TOL,
    KRAUS_COMPLETENESS_TOL, KRAUS_LMAX_CAP, KRAUS_LMAX_DEFAULT, TRACE_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvolutionError {
    #[error("density matrix is not Hermitian: max |M - M^dag| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace is {trace:.12}, expected 1")]
    TraceNotUnit { trace: f64 },
    #[error("density matrix has eigenvalue {min_eigenvalue:.3e} below the positivity floor")]
    NotPositive { min_eigenvalue: f64 },
    #[error("parameter {name} must be finite and >= 0, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("Kraus coefficient overflowed at order {l}")]
    TruncationOverflow { l: usize },
    #[error(
        "Kraus completeness residual {residual:.3e} above tolerance at the order cap {l_max}"
    )]
    CompletenessNotReached { residual: f64, l_max: usize },
    #[error("integration step too large: trace drifted by {trace_drift:.3e}")]
    StepTooLarge { trace_drift: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Validated two-qubit state: Hermitian, unit trace, positive semidefinite
/// within the documented floors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: Matrix4,
}

impl DensityMatrix {
    pub fn new(m: Matrix4) -> Result<Self, EvolutionError> {
        let dm = Self { m };
        dm.validate()?;
        Ok(dm)
    }

    /// Wrap a matrix produced by an internal trace-preserving map; skips the
    /// eigenvalue check, which those maps cannot violate beyond round-off.
    pub(crate) fn unchecked(m: Matrix4) -> Self {
        debug_assert!(m.hermiticity_deviation() <= 1e-8);
        debug_assert!((m.trace().re - 1.0).abs() <= 1e-6);
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix4 {
        self.m
    }

    /// Full invariant check: Hermiticity, unit trace, spectrum above the
    /// positivity floor.
    pub fn validate(&self) -> Result<(), EvolutionError> {
        let deviation = self.m.hermiticity_deviation();
        if !self.m.is_finite() || deviation > HERMITICITY_TOL {
            return Err(EvolutionError::NotHermitian { deviation });
        }
        let trace = self.m.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(EvolutionError::TraceNotUnit { trace });
        }
        let eig = hermitian_eig(&self.m)?;
        if eig.values[0] < -DENSITY_EIG_FLOOR {
            return Err(EvolutionError::NotPositive {
                min_eigenvalue: eig.values[0],
            });
        }
        Ok(())
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Matrix4::identity().scale(0.25),
        }
    }

    /// |ψ><ψ| for a (not necessarily normalized) ket.
    pub fn from_pure(ket: &[Complex64; 4]) -> Self {
        let norm_sqr: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        let proj = Matrix4::outer(ket, ket).scale(1.0 / norm_sqr);
        Self { m: proj }
    }

    /// tr ρ².
    pub fn purity(&self) -> f64 {
        self.m.trace_of_product(&self.m).re
    }
}

/// Intrinsic decoherence rate γ and evolution time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceParams {
    pub gamma: f64,
    pub t: f64,
}

impl DecoherenceParams {
    pub fn new(gamma: f64, t: f64) -> Result<Self, EvolutionError> {
        for (name, value) in [("gamma", gamma), ("t", t)] {
            if !value.is_finite() || value < 0.0 {
                return Err(EvolutionError::InvalidParameter { name, value });
            }
        }
        Ok(Self { gamma, t })
    }
}

fn to_eigenbasis(es: &Eigensystem, m: &Matrix4) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::default(); 4]; 4];
    for (row_m, row_out) in es.states.iter().zip(out.iter_mut()) {
        for (n, entry) in row_out.iter_mut().enumerate() {
            let mut s = Complex64::default();
            for i in 0..4 {
                for j in 0..4 {
                    s += row_m[i].conj() * m.0[i][j] * es.states[n][j];
                }
            }
            *entry = s;
        }
    }
    out
}

fn from_eigenbasis(es: &Eigensystem, tilde: &[[Complex64; 4]; 4]) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for m in 0..4 {
        for n in 0..4 {
            let coeff = tilde[m][n];
            if coeff == Complex64::default() {
                continue;
            }
            for i in 0..4 {
                for j in 0..4 {
                    out.0[i][j] += coeff * es.states[m][i] * es.states[n][j].conj();
                }
            }
        }
    }
    out
}

fn hermitized(m: &Matrix4) -> Matrix4 {
    Matrix4::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5)
}

/// Exact spectral propagation: dephase and rotate every eigenbasis
/// coherence by its Bohr frequency. At γ = 0 this is exactly the unitary
/// conjugation exp(−iHt) ρ exp(iHt).
pub fn propagate_spectral(
    es: &Eigensystem,
    rho0: &DensityMatrix,
    d: &DecoherenceParams,
) -> DensityMatrix {
    if d.t == 0.0 {
        return rho0.clone();
    }
    let mut tilde = to_eigenbasis(es, rho0.matrix());
    for m in 0..4 {
        for n in 0..4 {
            let delta = es.energies[m] - es.energies[n];
            let damp = (-0.5 * d.gamma * d.t * delta * delta).exp();
            let phase = Complex64::from_polar(damp, -delta * d.t);
            tilde[m][n] *= phase;
        }
    }
    DensityMatrix::unchecked(hermitized(&from_eigenbasis(es, &tilde)))
}

/// ln(l!) table up to `l_max` inclusive.
fn ln_factorials(l_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(0.0);
    for l in 1..=l_max {
        out.push(out[l - 1] + (l as f64).ln());
    }
    out
}

/// Kraus operators M_0 .. M_{l_max} of the intrinsic-decoherence channel,
/// assembled in the energy eigenbasis where every factor acts diagonally.
pub fn kraus_operators(
    es: &Eigensystem,
    d: &DecoherenceParams,
    l_max: usize,
) -> Result<Vec<Matrix4>, EvolutionError> {
    let lf = ln_factorials(l_max);
    let gt = d.gamma * d.t;
    let projectors: Vec<Matrix4> = (0..4)
        .map(|k| Matrix4::outer(&es.states[k], &es.states[k]))
        .collect();

    let mut ops = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let mut op = Matrix4::zeros();
        for k in 0..4 {
            let energy = es.energies[k];
            let magnitude = if l == 0 {
                (-0.5 * gt * energy * energy).exp()
            } else if gt == 0.0 || energy == 0.0 {
                0.0
            } else {
                // (γt)^{l/2} |E|^l / sqrt(l!) e^{-γtE²/2}, evaluated in log
                // space; bounded by 1 (a Poisson weight), so exp cannot
                // overflow for finite input.
                let ln_mag = 0.5 * (l as f64) * gt.ln() + (l as f64) * energy.abs().ln()
                    - 0.5 * lf[l]
                    - 0.5 * gt * energy * energy;
                ln_mag.exp()
            };
            if !magnitude.is_finite() {
                return Err(EvolutionError::TruncationOverflow { l });
            }
            if magnitude == 0.0 {
                continue;
            }
            let sign = if l % 2 == 1 && energy < 0.0 { -1.0 } else { 1.0 };
            let coeff = Complex64::from_polar(magnitude, -energy * d.t) * sign;
            op = op.add(&projectors[k].scale_c(coeff));
        }
        ops.push(op);
    }
    Ok(ops)
}

/// ‖Σ M†M − 1‖_max, the truncation-quality certificate for a Kraus list.
pub fn kraus_completeness_residual(ops: &[Matrix4]) -> f64 {
    let mut sum = Matrix4::zeros();
    for op in ops {
        sum = sum.add(&op.dagger().mul(op));
    }
    sum.max_abs_diff(&Matrix4::identity())
}

/// Operator-sum propagation ρ(t) = Σ M_l ρ(0) M_l†.
///
/// The caller is responsible for supplying a list that passes the
/// completeness check; [`propagate_kraus_adaptive`] does that automatically.
pub fn propagate_kraus(rho0: &DensityMatrix, ops: &[Matrix4]) -> DensityMatrix {
    let mut out = Matrix4::zeros();
    for op in ops {
        out = out.add(&op.mul(rho0.matrix()).mul(&op.dagger()));
    }
    DensityMatrix::unchecked(hermitized(&out))
}

/// Kraus propagation with automatic truncation control: starts at order
/// 40 and doubles (capped at 640) until the completeness residual falls
/// below 1e-10.
pub fn propagate_kraus_adaptive(
    es: &Eigensystem,
    rho0: &DensityMatrix,
    d: &DecoherenceParams,
) -> Result<(DensityMatrix, usize), EvolutionError> {
    let mut l_max = KRAUS_LMAX_DEFAULT;
    loop {
        let ops = kraus_operators(es, d, l_max)?;
        let residual = kraus_completeness_residual(&ops);
        if residual <= KRAUS_COMPLETENESS_TOL {
            return Ok((propagate_kraus(rho0, &ops), l_max));
        }
        if l_max >= KRAUS_LMAX_CAP {
            return Err(EvolutionError::CompletenessNotReached { residual, l_max });
        }
        l_max = (2 * l_max).min(KRAUS_LMAX_CAP);
    }
}

/// Fixed-step classical RK4 integration of the master equation
/// dρ/dt = −i[H,ρ] − (γ/2)[H,[H,ρ]] from 0 to `d.t`.
pub fn integrate_master(
    h: &Matrix4,
    rho0: &DensityMatrix,
    d: &DecoherenceParams,
    dt: f64,
) -> Result<DensityMatrix, EvolutionError> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(EvolutionError::InvalidParameter {
            name: "dt",
            value: dt,
        });
    }
    if d.t == 0.0 {
        return Ok(rho0.clone());
    }
    let steps = (d.t / dt).ceil().max(1.0);
    if steps > 1e8 {
        return Err(EvolutionError::InvalidParameter {
            name: "t/dt (step count)",
            value: steps,
        });
    }
    let steps = steps as usize;
    let step = d.t / steps as f64;
    let gamma = d.gamma;

    let rhs = |rho: &Matrix4| -> Matrix4 {
        let comm = h.commutator(rho);
        let double = h.commutator(&comm);
        comm.scale_c(Complex64::new(0.0, -1.0))
            .sub(&double.scale(0.5 * gamma))
    };

    let mut rho = *rho0.matrix();
    for _ in 0..steps {
        let k1 = rhs(&rho);
        let k2 = rhs(&rho.add(&k1.scale(0.5 * step)));
        let k3 = rhs(&rho.add(&k2.scale(0.5 * step)));
        let k4 = rhs(&rho.add(&k3.scale(step)));
        let incr = k1
            .add(&k2.scale(2.0))
            .add(&k3.scale(2.0))
            .add(&k4)
            .scale(step / 6.0);
        rho = rho.add(&incr);
    }

    let trace_drift = (rho.trace().re - 1.0).abs();
    // NaN-safe: a blown-up integration must not slip past the comparison.
    if trace_drift.is_nan() || trace_drift > INTEGRATOR_TRACE_DRIFT_TOL {
        return Err(EvolutionError::StepTooLarge { trace_drift });
    }
    Ok(DensityMatrix::unchecked(hermitized(&rho)))
}

/// γt → ∞ limit of the spectral formula: only matrix elements between
/// degenerate energy levels survive. Idempotent by construction.
pub fn steady_state(es: &Eigensystem, rho0: &DensityMatrix) -> DensityMatrix {
    let mut tilde = to_eigenbasis(es, rho0.matrix());
    for m in 0..4 {
        for n in 0..4 {
            if (es.energies[m] - es.energies[n]).abs() > ENERGY_DEGENERACY_TOL {
                tilde[m][n] = Complex64::default();
            }
        }
    }
    DensityMatrix::unchecked(hermitized(&from_eigenbasis(es, &tilde)))
}

/// Smallest nonzero squared Bohr frequency, used to convert the dephasing
/// horizon γt·ΔE² into a concrete time.
pub fn min_nonzero_gap_squared(es: &Eigensystem) -> Option<f64> {
    let mut min: Option<f64> = None;
    for m in 0..4 {
        for n in 0..4 {
            let delta = (es.energies[m] - es.energies[n]).abs();
            if delta > ENERGY_DEGENERACY_TOL {
                let sq = delta * delta;
                min = Some(min.map_or(sq, |cur: f64| cur.min(sq)));
            }
        }
    }
    min
}
