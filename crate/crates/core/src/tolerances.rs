//! Centralized numerical tolerances.
//!
//! Every threshold used by the library lives here with a short note on its
//! origin, so accuracy contracts are pinned in one place instead of scattered
//! as magic numbers.

/// Maximum `‖M − M†‖_max` accepted before an input is rejected as
/// non-Hermitian. Density matrices and Hamiltonians are O(1) scale, so a
/// fixed absolute threshold is appropriate.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi eigensolver convergence: iteration stops once the off-diagonal
/// Frobenius mass drops below this (scaled by the input Frobenius norm for
/// inputs larger than unit scale). Quadratic convergence makes the final
/// sweep essentially free.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps. Convergence is typically reached in < 10
/// sweeps for 4×4 Hermitian input; hitting the cap signals non-finite data.
pub const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigenvalues above `-PSD_CLAMP` are clamped to zero when taking a PSD
/// square root; anything more negative is a genuine positivity violation.
/// This is the double-precision noise floor for 4×4 eigenproblems.
pub const PSD_CLAMP: f64 = 1e-10;

/// Gap below which two sorted eigenvalues are treated as one degenerate
/// cluster for eigenvector re-orthonormalization.
pub const EIG_DEGENERACY_TOL: f64 = 1e-12;

/// Density-matrix trace deviation accepted at construction.
pub const TRACE_TOL: f64 = 1e-10;

/// Floor for density-matrix eigenvalues: values below `-DENSITY_EIG_FLOOR`
/// fail validation.
pub const DENSITY_EIG_FLOOR: f64 = 1e-9;

/// Physicality floor for Bell-diagonal spectra: an analytic eigenvalue below
/// `-BELL_TETRAHEDRON_TOL` places the correlation vector outside the
/// physical tetrahedron.
pub const BELL_TETRAHEDRON_TOL: f64 = 1e-12;

/// Off-X-pattern entries below this are treated as exact zeros when reading
/// a density matrix into X-state elements.
pub const X_STRUCTURE_TOL: f64 = 1e-10;

/// Slack allowed on the X-block positivity bounds |ρ₁₄| ≤ √(ρ₁₁ρ₄₄) and
/// |ρ₂₃| ≤ √(ρ₂₂ρ₃₃).
pub const X_BLOCK_PSD_TOL: f64 = 1e-9;

/// Energies closer than this are treated as degenerate: their coherences
/// survive the infinite-time dephasing limit. Double-precision identity
/// scale for O(1) energies.
pub const ENERGY_DEGENERACY_TOL: f64 = 1e-12;

/// Kraus-sum completeness: `‖Σ M†M − 1‖_max` must fall below this before a
/// truncated operator list is considered faithful.
pub const KRAUS_COMPLETENESS_TOL: f64 = 1e-10;

/// Default Kraus truncation order; doubled automatically (up to
/// [`KRAUS_LMAX_CAP`]) until the completeness check passes.
pub const KRAUS_LMAX_DEFAULT: usize = 40;

/// Upper bound on the adaptive Kraus truncation order.
pub const KRAUS_LMAX_CAP: usize = 640;

/// Trace drift beyond which a fixed-step integration run is rejected as
/// under-resolved.
pub const INTEGRATOR_TRACE_DRIFT_TOL: f64 = 1e-6;

/// Subsystem Bloch vectors shorter than this are treated as zero, selecting
/// the unconstrained branch of the commuting-observable maximization.
pub const BLOCH_ZERO_TOL: f64 = 1e-9;

/// Denominator magnitude below which the compact X-state trace-distance
/// formula switches to its degenerate limit.
pub const TDD_DENOM_TOL: f64 = 1e-12;

/// Measure values with magnitude below this are snapped to exactly 0.
/// Correlation measures of the maximally mixed state are mathematically
/// zero but accumulate O(1e-16) round-off through the propagator; genuine
/// nonzero correlations in the studied parameter ranges sit far above this
/// floor.
pub const MEASURE_ZERO_FLOOR: f64 = 1e-12;

/// Cardano discriminant scale below which the 3×3 symmetric eigensolver
/// falls back to tridiagonalization + QL iteration (near-degenerate roots
/// lose relative accuracy in the trigonometric closed form).
pub const CARDANO_DEGENERACY_TOL: f64 = 1e-14;

/// Nelder–Mead iteration budget for local refinement on the Bloch sphere.
pub const NELDER_MEAD_MAX_ITERS: usize = 200;

/// Nelder–Mead termination: simplex diameter and value spread below this
/// stop the refinement.
pub const NELDER_MEAD_TOL: f64 = 1e-10;

/// Default Fibonacci-sphere resolution for brute-force measure oracles.
pub const BRUTE_FORCE_GRID: usize = 2048;
