//! Deterministic direction search on the unit sphere: Fibonacci-lattice
//! seeding followed by Nelder–Mead refinement in a tangent-plane chart.
//!
//! Used by the brute-force measure oracles, so reproducibility matters more
//! than speed: no randomness anywhere, ties resolved by lowest index.

use crate::tolerances::{NELDER_MEAD_MAX_ITERS, NELDER_MEAD_TOL};

const GOLDEN_ANGLE: f64 = 2.399963229728653; // pi * (3 - sqrt(5))

/// `n` near-uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> impl Iterator<Item = [f64; 3]> {
    (0..n).map(move |k| {
        let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let phi = GOLDEN_ANGLE * k as f64;
        [r * phi.cos(), r * phi.sin(), z]
    })
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn normalize3(v: &[f64; 3]) -> [f64; 3] {
    let n = norm3(v);
    [v[0] / n, v[1] / n, v[2] / n]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal basis of the tangent plane at `p`.
fn tangent_basis(p: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let seed = if p[0].abs() <= p[1].abs() && p[0].abs() <= p[2].abs() {
        [1.0, 0.0, 0.0]
    } else if p[1].abs() <= p[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let u = normalize3(&cross(p, &seed));
    let v = cross(p, &u);
    (u, v)
}

#[derive(Debug, Clone, Copy)]
pub struct SphereOptimum {
    pub value: f64,
    pub direction: [f64; 3],
}

/// Minimize `f` over unit directions: scan a Fibonacci lattice of `n_grid`
/// points, then refine the best seed with 2-D Nelder–Mead in the local
/// tangent chart n(a, b) = normalize(p + a·u + b·v).
pub fn minimize_on_sphere(n_grid: usize, f: impl Fn(&[f64; 3]) -> f64) -> SphereOptimum {
    let mut best = SphereOptimum {
        value: f64::INFINITY,
        direction: [0.0, 0.0, 1.0],
    };
    for point in fibonacci_sphere(n_grid.max(1)) {
        let value = f(&point);
        if value < best.value {
            best = SphereOptimum {
                value,
                direction: point,
            };
        }
    }

    let (u, v) = tangent_basis(&best.direction);
    let p = best.direction;
    let chart = |a: f64, b: f64| -> [f64; 3] {
        normalize3(&[
            p[0] + a * u[0] + b * v[0],
            p[1] + a * u[1] + b * v[1],
            p[2] + a * u[2] + b * v[2],
        ])
    };
    let eval = |a: f64, b: f64| f(&chart(a, b));

    // Initial simplex scaled to the lattice spacing.
    let h = (4.0 * std::f64::consts::PI / n_grid.max(1) as f64).sqrt();
    let mut simplex = [
        (0.0, 0.0, best.value),
        (h, 0.0, eval(h, 0.0)),
        (0.0, h, eval(0.0, h)),
    ];

    for _ in 0..NELDER_MEAD_MAX_ITERS {
        simplex.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap());
        let spread = simplex[2].2 - simplex[0].2;
        let diameter = {
            let da = (simplex[1].0 - simplex[0].0).hypot(simplex[1].1 - simplex[0].1);
            let db = (simplex[2].0 - simplex[0].0).hypot(simplex[2].1 - simplex[0].1);
            da.max(db)
        };
        if spread.abs() <= NELDER_MEAD_TOL && diameter <= NELDER_MEAD_TOL {
            break;
        }

        let centroid = (
            0.5 * (simplex[0].0 + simplex[1].0),
            0.5 * (simplex[0].1 + simplex[1].1),
        );
        let worst = simplex[2];
        let reflected = (
            centroid.0 + (centroid.0 - worst.0),
            centroid.1 + (centroid.1 - worst.1),
        );
        let fr = eval(reflected.0, reflected.1);

        if fr < simplex[0].2 {
            let expanded = (
                centroid.0 + 2.0 * (centroid.0 - worst.0),
                centroid.1 + 2.0 * (centroid.1 - worst.1),
            );
            let fe = eval(expanded.0, expanded.1);
            simplex[2] = if fe < fr {
                (expanded.0, expanded.1, fe)
            } else {
                (reflected.0, reflected.1, fr)
            };
        } else if fr < simplex[1].2 {
            simplex[2] = (reflected.0, reflected.1, fr);
        } else {
            let contracted = (
                centroid.0 + 0.5 * (worst.0 - centroid.0),
                centroid.1 + 0.5 * (worst.1 - centroid.1),
            );
            let fc = eval(contracted.0, contracted.1);
            if fc < worst.2 {
                simplex[2] = (contracted.0, contracted.1, fc);
            } else {
                for k in 1..3 {
                    let a = simplex[0].0 + 0.5 * (simplex[k].0 - simplex[0].0);
                    let b = simplex[0].1 + 0.5 * (simplex[k].1 - simplex[0].1);
                    simplex[k] = (a, b, eval(a, b));
                }
            }
        }
    }

    simplex.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap());
    if simplex[0].2 < best.value {
        best = SphereOptimum {
            value: simplex[0].2,
            direction: chart(simplex[0].0, simplex[0].1),
        };
    }
    best
}

/// Maximize `f` over unit directions.
pub fn maximize_on_sphere(n_grid: usize, f: impl Fn(&[f64; 3]) -> f64) -> SphereOptimum {
    let opt = minimize_on_sphere(n_grid, |n| -f(n));
    SphereOptimum {
        value: -opt.value,
        direction: opt.direction,
    }
}
