//! Dynamics of two-qubit quantum correlations under intrinsic decoherence.
//!
//! The library evolves two-qubit density matrices generated by the
//! spin-squeezing Hamiltonian H = μS_x² + ζS_y² + Γ(S_xS_y+S_yS_x) + BS_z
//! under intrinsic decoherence,
//! dρ/dt = −i[H,ρ] − (γ/2)[H,[H,ρ]] — pure energy-basis dephasing with no
//! external bath — and computes four correlation
//! quantifiers — concurrence, local quantum uncertainty, trace distance
//! discord and uncertainty-induced nonlocality — each through both a
//! closed form and an independent brute-force definition.
//!
//! Module map:
//! * [`linalg`] — fixed-size complex linear algebra (Jacobi eigensolver,
//!   PSD square root, trace norm, Pauli expansion, partial trace);
//! * [`hamiltonian`] — model construction and the analytic eigensystem of
//!   the one-axis-twisting restriction;
//! * [`evolution`] — spectral, Kraus and RK4 propagation backends plus the
//!   infinite-time steady state;
//! * [`states`] — Bell-diagonal and Werner factories with closed-form
//!   evolved X-state elements;
//! * [`measures`] — the four quantifiers and their brute-force oracles;
//! * [`sweep`] — time sweeps, figure presets and CSV emission.

// Index loops over fixed 4x4/3x3 shapes read better than iterator chains
// in the matrix kernels below.
#![allow(clippy::needless_range_loop)]

pub mod evolution;
pub mod hamiltonian;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod sweep;
pub mod tolerances;

pub use evolution::{DecoherenceParams, DensityMatrix};
pub use hamiltonian::{Eigensystem, ModelParams};
pub use states::{BellDiagonalSpec, WernerSpec, XStateElements};
pub use sweep::{Backend, CorrelationRecord, Measure, SweepConfig};
