//! Exact-size complex linear algebra for 2×2 and 4×4 Hermitian matrices.
//!
//! Everything here is deterministic and dependency-free: the 4×4 Hermitian
//! eigensolver is a cyclic complex Jacobi iteration (unconditionally
//! convergent for Hermitian input), and the 3×3 real symmetric eigensolver
//! uses the trigonometric closed form with a tridiagonal QL fallback near
//! degeneracies.

use num_complex::Complex64;
use thiserror::Error;

use crate::tolerances::{
    CARDANO_DEGENERACY_TOL, EIG_DEGENERACY_TOL, HERMITICITY_TOL, JACOBI_MAX_SWEEPS,
    JACOBI_OFFDIAG_TOL, PSD_CLAMP,
};

/// Shorthand for a real complex number.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Shorthand complex constructor.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("input is not Hermitian: max |M - M^dag| = {deviation:.3e}")]
    NonHermitianInput { deviation: f64 },
    #[error("input is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("Jacobi iteration did not converge (non-finite input?)")]
    NoConvergence,
}

/// 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

/// 4×4 complex matrix, the workhorse type: density operators, Hamiltonians
/// and Kraus operators all live here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Matrix2 {
    pub fn zeros() -> Self {
        Matrix2([[Complex64::default(); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        m.0[0][0] = cr(1.0);
        m.0[1][1] = cr(1.0);
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Complex64::default();
                for k in 0..2 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Matrix2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        d
    }
}

/// Pauli matrices; index 0 is the identity, 1..3 are σx, σy, σz.
pub fn pauli(i: usize) -> Matrix2 {
    match i {
        0 => Matrix2::identity(),
        1 => Matrix2([[cr(0.0), cr(1.0)], [cr(1.0), cr(0.0)]]),
        2 => Matrix2([[cr(0.0), c(0.0, -1.0)], [c(0.0, 1.0), cr(0.0)]]),
        3 => Matrix2([[cr(1.0), cr(0.0)], [cr(0.0), cr(-1.0)]]),
        _ => panic!("Pauli index out of range: {i}"),
    }
}

/// Kronecker product of two single-qubit operators in the
/// {|00>, |01>, |10>, |11>} ordering (first factor = subsystem a).
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// σ_α ⊗ σ_β for α, β in 0..=3.
pub fn pauli_pair(alpha: usize, beta: usize) -> Matrix4 {
    kron(&pauli(alpha), &pauli(beta))
}

impl Matrix4 {
    pub fn zeros() -> Self {
        Matrix4([[Complex64::default(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = cr(1.0);
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// |u><v| outer product.
    pub fn outer(u: &[Complex64; 4], v: &[Complex64; 4]) -> Self {
        Self::from_fn(|i, j| u[i] * v[j].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = Complex64::default();
                for k in 0..4 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    /// tr(self · rhs) without forming the product.
    pub fn trace_of_product(&self, rhs: &Self) -> Complex64 {
        let mut s = Complex64::default();
        for i in 0..4 {
            for k in 0..4 {
                s += self.0[i][k] * rhs.0[k][i];
            }
        }
        s
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::default(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for k in 0..4 {
                *o += self.0[i][k] * v[k];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.0 {
            for z in row {
                m = m.max(z.norm());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0f64;
        for row in &self.0 {
            for z in row {
                s += z.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Largest deviation from Hermiticity, max |M_ij - conj(M_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Eigendecomposition of a Hermitian 4×4 matrix.
///
/// `values` are sorted ascending (ties keep the solver's original order);
/// `vectors[k]` is the orthonormal eigenvector paired with `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: [f64; 4],
    pub vectors: [[Complex64; 4]; 4],
}

impl HermitianEig {
    /// Rebuild Σ λ_k |v_k><v_k|.
    pub fn reconstruct(&self) -> Matrix4 {
        self.map_values(|x| x)
    }

    /// Σ f(λ_k) |v_k><v_k| — applies a scalar function in the eigenbasis.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for k in 0..4 {
            let fv = f(self.values[k]);
            if fv == 0.0 {
                continue;
            }
            let proj = Matrix4::outer(&self.vectors[k], &self.vectors[k]);
            out = out.add(&proj.scale(fv));
        }
        out
    }
}

fn inner(u: &[Complex64; 4], v: &[Complex64; 4]) -> Complex64 {
    let mut s = Complex64::default();
    for k in 0..4 {
        s += u[k].conj() * v[k];
    }
    s
}

fn normalize(v: &mut [Complex64; 4]) {
    let n = inner(v, v).re.sqrt();
    for z in v.iter_mut() {
        *z /= n;
    }
}

/// Cyclic complex Jacobi eigendecomposition of a Hermitian 4×4 matrix.
///
/// Each rotation diagonalizes one 2×2 Hermitian sub-block exactly, so the
/// iterate stays Hermitian by construction and the off-diagonal mass decays
/// quadratically. Eigenvectors inside a degenerate cluster are
/// re-orthonormalized by Gram–Schmidt in stable index order.
pub fn hermitian_eig(m: &Matrix4) -> Result<HermitianEig, LinalgError> {
    let deviation = m.hermiticity_deviation();
    if !m.is_finite() || deviation > HERMITICITY_TOL {
        return Err(LinalgError::NonHermitianInput { deviation });
    }

    // Hermitized working copy: real diagonal, exact conjugate symmetry.
    let mut a = Matrix4::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5);
    for i in 0..4 {
        a.0[i][i] = cr(a.0[i][i].re);
    }
    let scale = a.frobenius_norm().max(1.0);
    let mut v = Matrix4::identity();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off += a.0[i][j].norm_sqr();
                }
            }
        }
        if off.sqrt() <= JACOBI_OFFDIAG_TOL * scale {
            converged = true;
            break;
        }

        for p in 0..3 {
            for q in (p + 1)..4 {
                let g = a.0[p][q];
                if g.norm_sqr() == 0.0 {
                    continue;
                }
                let alpha = a.0[p][p].re;
                let beta = a.0[q][q].re;
                let half_diff = 0.5 * (alpha - beta);
                let mean = 0.5 * (alpha + beta);
                let gn = g.norm();
                let r = half_diff.hypot(gn);
                // r - half_diff without cancellation when half_diff > 0.
                let rd = if half_diff >= 0.0 {
                    gn * gn / (r + half_diff)
                } else {
                    r - half_diff
                };
                let norm = (gn * gn + rd * rd).sqrt();
                // Unitary U with columns = eigenvectors of [[alpha, g], [g*, beta]];
                // column p pairs with mean + r, column q with mean - r.
                let u00 = g / norm;
                let u10 = cr(rd / norm);
                let u01 = cr(-rd / norm);
                let u11 = g.conj() / norm;

                for j in 0..4 {
                    let ajp = a.0[j][p];
                    let ajq = a.0[j][q];
                    a.0[j][p] = ajp * u00 + ajq * u10;
                    a.0[j][q] = ajp * u01 + ajq * u11;
                }
                for j in 0..4 {
                    let apj = a.0[p][j];
                    let aqj = a.0[q][j];
                    a.0[p][j] = u00.conj() * apj + u10.conj() * aqj;
                    a.0[q][j] = u01.conj() * apj + u11.conj() * aqj;
                }
                a.0[p][q] = Complex64::default();
                a.0[q][p] = Complex64::default();
                a.0[p][p] = cr(mean + r);
                a.0[q][q] = cr(mean - r);

                for j in 0..4 {
                    let vjp = v.0[j][p];
                    let vjq = v.0[j][q];
                    v.0[j][p] = vjp * u00 + vjq * u10;
                    v.0[j][q] = vjp * u01 + vjq * u11;
                }
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let mut order: [usize; 4] = [0, 1, 2, 3];
    order.sort_by(|&i, &j| {
        a.0[i][i]
            .re
            .partial_cmp(&a.0[j][j].re)
            .unwrap()
            .then(i.cmp(&j))
    });

    let mut values = [0.0f64; 4];
    let mut vectors = [[Complex64::default(); 4]; 4];
    for (k, &idx) in order.iter().enumerate() {
        values[k] = a.0[idx][idx].re;
        for row in 0..4 {
            vectors[k][row] = v.0[row][idx];
        }
    }

    // Gram-Schmidt inside degenerate clusters, in stable index order.
    let cluster_tol = EIG_DEGENERACY_TOL * scale;
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && values[end] - values[end - 1] <= cluster_tol {
            end += 1;
        }
        for k in start..end {
            for j in start..k {
                let proj = inner(&vectors[j], &vectors[k]);
                for row in 0..4 {
                    let adj = proj * vectors[j][row];
                    vectors[k][row] -= adj;
                }
            }
            normalize(&mut vectors[k]);
        }
        start = end;
    }

    Ok(HermitianEig { values, vectors })
}

/// Hermitian PSD square root via the eigendecomposition.
///
/// Eigenvalues in `[-PSD_CLAMP, 0)` are clamped to zero; anything below the
/// clamp window is a real positivity violation and is rejected.
pub fn sqrt_psd(m: &Matrix4) -> Result<Matrix4, LinalgError> {
    let eig = hermitian_eig(m)?;
    if eig.values[0] < -PSD_CLAMP {
        return Err(LinalgError::NotPositiveSemidefinite {
            min_eigenvalue: eig.values[0],
        });
    }
    Ok(eig.map_values(|x| x.max(0.0).sqrt()))
}

/// Schatten 1-norm (sum of singular values).
///
/// Hermitian inputs take the exact path Σ|λ_k|; general matrices go through
/// the singular values obtained from M†M.
pub fn trace_norm(m: &Matrix4) -> f64 {
    if m.max_abs() == 0.0 {
        return 0.0;
    }
    if m.hermiticity_deviation() <= HERMITICITY_TOL * m.max_abs().max(1.0) {
        let sym = Matrix4::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * 0.5);
        let eig = hermitian_eig(&sym).expect("hermitized matrix is Hermitian");
        return eig.values.iter().map(|x| x.abs()).sum();
    }
    let gram = m.dagger().mul(m);
    let eig = hermitian_eig(&gram).expect("M^dag M is Hermitian");
    eig.values.iter().map(|x| x.max(0.0).sqrt()).sum()
}

/// Pauli⊗Pauli expansion coefficients R_{αβ} = tr(M σ_α⊗σ_β) of a
/// Hermitian two-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoBloch {
    pub r: [[f64; 4]; 4],
}

impl FanoBloch {
    /// Inverse expansion ¼ Σ R_{αβ} σ_α⊗σ_β.
    pub fn reconstruct(&self) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for alpha in 0..4 {
            for beta in 0..4 {
                if self.r[alpha][beta] != 0.0 {
                    out = out.add(&pauli_pair(alpha, beta).scale(self.r[alpha][beta] * 0.25));
                }
            }
        }
        out
    }

    /// Bloch vector of subsystem a (rows α = 1..3, β = 0).
    pub fn bloch_a(&self) -> [f64; 3] {
        [self.r[1][0], self.r[2][0], self.r[3][0]]
    }
}

/// Fano–Bloch decomposition of a Hermitian two-qubit operator.
pub fn fano_bloch(m: &Matrix4) -> Result<FanoBloch, LinalgError> {
    let deviation = m.hermiticity_deviation();
    if !m.is_finite() || deviation > HERMITICITY_TOL * m.max_abs().max(1.0) {
        return Err(LinalgError::NonHermitianInput { deviation });
    }
    let mut r = [[0.0f64; 4]; 4];
    for (alpha, row) in r.iter_mut().enumerate() {
        for (beta, entry) in row.iter_mut().enumerate() {
            *entry = m.trace_of_product(&pauli_pair(alpha, beta)).re;
        }
    }
    Ok(FanoBloch { r })
}

/// Partial trace over subsystem b: (ρ_a)_{ij} = Σ_k M_{ik,jk}.
pub fn partial_trace_b(m: &Matrix4) -> Matrix2 {
    let mut out = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.0[i][j] = m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1];
        }
    }
    out
}

/// Bloch vector of a single-qubit operator, r_i = Re tr(M σ_i).
pub fn bloch_vector(m: &Matrix2) -> [f64; 3] {
    let mut out = [0.0f64; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let s = pauli(i + 1);
        let mut t = Complex64::default();
        for a in 0..2 {
            for b in 0..2 {
                t += m.0[a][b] * s.0[b][a];
            }
        }
        *o = t.re;
    }
    out
}

/// Eigenvalues (ascending) of a real symmetric 3×3 matrix.
///
/// Primary path is the trigonometric closed form of the characteristic
/// cubic; when the discriminant signals near-degenerate roots the solver
/// falls back to Householder tridiagonalization plus implicit-shift QL,
/// which keeps full relative accuracy there.
pub fn sym3_eigenvalues(w: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut s = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = 0.5 * (w[i][j] + w[j][i]);
        }
    }
    let q = (s[0][0] + s[1][1] + s[2][2]) / 3.0;
    let mut b = s;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
    }
    let mut p2 = 0.0f64;
    for row in &b {
        for x in row {
            p2 += x * x;
        }
    }
    p2 /= 6.0;
    let p = p2.sqrt();
    let scale = q.abs().max(p).max(1.0);
    if p <= CARDANO_DEGENERACY_TOL * scale {
        return [q, q, q];
    }
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det_b / (2.0 * p * p2.max(f64::MIN_POSITIVE))).clamp(-1.0, 1.0);
    if 1.0 - r.abs() <= CARDANO_DEGENERACY_TOL {
        return tridiagonal_ql_eigenvalues(&s);
    }
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3 * 2.0).cos();
    let mid = 3.0 * q - hi - lo;
    let mut out = [lo, mid, hi];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Householder tridiagonalization + implicit-shift QL, eigenvalues only.
fn tridiagonal_ql_eigenvalues(s: &[[f64; 3]; 3]) -> [f64; 3] {
    // One Householder reflection on rows/cols 1..2 zeroes the (0,2) entry.
    let mut d = [s[0][0], s[1][1], s[2][2]];
    let mut e = [s[0][1], s[1][2], 0.0];
    if s[0][2] != 0.0 {
        let x = s[0][1];
        let y = s[0][2];
        let norm = x.hypot(y);
        if norm > 0.0 {
            // Rotation G on coordinates (1,2) with G^T [x, y] = [norm, 0].
            let cth = x / norm;
            let sth = y / norm;
            let a11 = s[1][1];
            let a12 = s[1][2];
            let a22 = s[2][2];
            let b11 = cth * (a11 * cth + a12 * sth) + sth * (a12 * cth + a22 * sth);
            let b12 = cth * (a12 * cth + a22 * sth) - sth * (a11 * cth + a12 * sth);
            let b22 = cth * (a22 * cth - a12 * sth) - sth * (a12 * cth - a11 * sth);
            d = [s[0][0], b11, b22];
            e = [norm, b12, 0.0];
        }
    }

    // Implicit-shift QL on the tridiagonal (d, e); EISPACK tql1 specialized
    // to n = 3, eigenvalues only.
    let eps = f64::EPSILON;
    for l in 0..3 {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < 2 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sg = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sg);
            let mut sin = 1.0f64;
            let mut cos = 1.0f64;
            let mut p = 0.0f64;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let f = sin * e[i];
                let b = cos * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                sin = f / r;
                cos = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * sin + 2.0 * cos * b;
                p = sin * r;
                d[i + 1] = g + p;
                g = cos * r - b;
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}
