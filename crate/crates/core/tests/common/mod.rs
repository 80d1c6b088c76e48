//! Shared helpers for the integration and acceptance suites: seeded random
//! state generators and independent oracles (Taylor matrix exponential,
//! Fano–Bloch form of the W matrix).

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcorr_core::evolution::DensityMatrix;
use qcorr_core::linalg::{cr, fano_bloch, sqrt_psd, Matrix2, Matrix4};
use qcorr_core::states::{BellDiagonalSpec, XStateElements};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller pairs; unit-variance real and imaginary parts.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * u2.cos(), r * u2.sin())
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = random_complex(rng);
        }
    }
    m
}

pub fn random_hermitian(rng: &mut ChaCha8Rng) -> Matrix4 {
    let g = random_matrix(rng);
    Matrix4::from_fn(|i, j| (g.0[i][j] + g.0[j][i].conj()) * 0.5)
}

/// Ginibre-induced density matrix A·A†/tr(A·A†).
pub fn random_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    loop {
        let g = random_matrix(rng);
        let psd = g.mul(&g.dagger());
        let trace = psd.trace().re;
        if trace > 1e-9 {
            return DensityMatrix::new(psd.scale(1.0 / trace)).expect("Ginibre state is physical");
        }
    }
}

/// Random PSD matrix (not normalized) for square-root checks.
pub fn random_psd(rng: &mut ChaCha8Rng) -> Matrix4 {
    let g = random_matrix(rng);
    let psd = g.mul(&g.dagger());
    let trace = psd.trace().re;
    psd.scale(1.0 / trace.max(1e-12))
}

/// Uniform draw from the Bell-diagonal tetrahedron by rejection.
pub fn random_bell_spec(rng: &mut ChaCha8Rng) -> BellDiagonalSpec {
    loop {
        let c1 = rng.gen_range(-1.0..=1.0);
        let c2 = rng.gen_range(-1.0..=1.0);
        let c3 = rng.gen_range(-1.0..=1.0);
        if let Ok(spec) = BellDiagonalSpec::new(c1, c2, c3) {
            return spec;
        }
    }
}

/// Random valid X-state elements: Dirichlet-ish populations, coherences
/// drawn inside the positivity disks with uniform phases.
pub fn random_x_elements(rng: &mut ChaCha8Rng) -> XStateElements {
    let mut p = [0.0f64; 4];
    let mut total = 0.0;
    for x in p.iter_mut() {
        *x = rng.gen_range(0.01..1.0);
        total += *x;
    }
    for x in p.iter_mut() {
        *x /= total;
    }
    let m14 = rng.gen_range(0.0..1.0) * (p[0] * p[3]).sqrt();
    let m23 = rng.gen_range(0.0..1.0) * (p[1] * p[2]).sqrt();
    let ph14 = rng.gen_range(0.0..std::f64::consts::TAU);
    let ph23 = rng.gen_range(0.0..std::f64::consts::TAU);
    XStateElements {
        rho11: p[0],
        rho22: p[1],
        rho33: p[2],
        rho44: p[3],
        rho14: Complex64::from_polar(m14, ph14),
        rho23: Complex64::from_polar(m23, ph23),
    }
}

/// Haar-ish random single-qubit unitary from a normalized quaternion.
pub fn random_su2(rng: &mut ChaCha8Rng) -> Matrix2 {
    loop {
        let q: [f64; 4] = [
            random_complex(rng).re,
            random_complex(rng).re,
            random_complex(rng).re,
            random_complex(rng).re,
        ];
        let norm = (q.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if norm < 1e-6 {
            continue;
        }
        let (a, b, c, d) = (q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm);
        return Matrix2([
            [Complex64::new(a, b), Complex64::new(c, d)],
            [Complex64::new(-c, d), Complex64::new(a, -b)],
        ]);
    }
}

/// Random local unitary U_a ⊗ U_b.
pub fn random_local_unitary(rng: &mut ChaCha8Rng) -> Matrix4 {
    qcorr_core::linalg::kron(&random_su2(rng), &random_su2(rng))
}

pub fn conjugate(rho: &DensityMatrix, u: &Matrix4) -> DensityMatrix {
    DensityMatrix::new(u.mul(rho.matrix()).mul(&u.dagger())).expect("unitary image is physical")
}

/// Matrix exponential by scaling-and-squaring Taylor summation —
/// independent of the eigendecomposition used by the spectral propagator.
pub fn expm(m: &Matrix4) -> Matrix4 {
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m.scale(1.0 / 2f64.powi(squarings as i32));
    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for n in 1..200 {
        term = term.mul(&scaled).scale(1.0 / n as f64);
        sum = sum.add(&term);
        if term.max_abs() < 1e-22 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// The W matrix through the Fano–Bloch coefficients of √ρ:
/// w_ii = ¼ Σ_β (R₀β² − Σ_k R_kβ²) + ½ Σ_β R_iβ² and
/// w_ij = ½ Σ_β R_iβ R_jβ — the re-expression used only as an oracle.
pub fn w_matrix_fano(rho: &DensityMatrix) -> [[f64; 3]; 3] {
    let root = sqrt_psd(rho.matrix()).expect("valid state has a PSD square root");
    let f = fano_bloch(&root).expect("square root is Hermitian");
    let r = f.r;
    let mut w = [[0.0f64; 3]; 3];
    let base: f64 = (0..4)
        .map(|beta| {
            let k_sum: f64 = (1..4).map(|k| r[k][beta] * r[k][beta]).sum();
            r[0][beta] * r[0][beta] - k_sum
        })
        .sum();
    for i in 0..3 {
        for j in 0..3 {
            let cross: f64 = (0..4).map(|beta| r[i + 1][beta] * r[j + 1][beta]).sum();
            w[i][j] = if i == j {
                0.25 * base + 0.5 * cross
            } else {
                0.5 * cross
            };
        }
    }
    w
}

/// Largest element-wise difference between two X-element records.
pub fn max_element_diff(a: &XStateElements, b: &XStateElements) -> f64 {
    [
        (a.rho11 - b.rho11).abs(),
        (a.rho22 - b.rho22).abs(),
        (a.rho33 - b.rho33).abs(),
        (a.rho44 - b.rho44).abs(),
        (a.rho14 - b.rho14).norm(),
        (a.rho23 - b.rho23).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Density matrix for the Bell state (|00> + |11>)/√2.
pub fn bell_phi_plus() -> DensityMatrix {
    DensityMatrix::from_pure(&[cr(1.0), cr(0.0), cr(0.0), cr(1.0)])
}
