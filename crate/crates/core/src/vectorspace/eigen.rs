use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{dot, gaussian_solve, Matrix, Vector};
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
/// Consecutive small Rayleigh-quotient changes required to declare convergence.
const STABLE_STEPS: usize = 3;

/// Result of an iterative eigenvalue estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn check_symmetric(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::WrongShape {
            expected: "square",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_symmetric(SYMMETRY_TOL * (1.0 + m.max_abs())) {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// Both eigenvalues of a symmetric 2x2 matrix, largest first.
pub fn sym_eigen_2x2(m: &Matrix) -> Result<(f64, f64)> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongShape {
            expected: "2x2",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    check_symmetric(m)?;
    let (a, b, c) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b);
    let det = a * c - b * b;
    // the root with the larger magnitude is free of cancellation; recover the
    // other one from the determinant
    let (hi, lo) = if mean >= 0.0 {
        let hi = mean + radius;
        (hi, if hi != 0.0 { det / hi } else { mean - radius })
    } else {
        let lo = mean - radius;
        (if lo != 0.0 { det / lo } else { mean + radius }, lo)
    };
    Ok((hi, lo))
}

fn normalize(x: &mut [f64]) -> f64 {
    let n = dot(x, x).sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
    n
}

fn seeded_start(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    normalize(&mut x);
    x
}

/// Dominant eigenvalue of a symmetric positive semidefinite matrix.
///
/// Converges once the relative change of the Rayleigh quotient stays below
/// `tol` for three consecutive iterations. Hitting `max_iter` is reported
/// through `converged = false` with the last estimate.
pub fn power_iteration(m: &Matrix, tol: f64, max_iter: usize, seed: u64) -> Result<PowerEstimate> {
    check_symmetric(m)?;
    let mut x = seeded_start(m.rows(), seed);
    let mut previous: Option<f64> = None;
    let mut stable = 0;
    for it in 1..=max_iter {
        let mut y = m.mul_vec(&x)?;
        let rayleigh = dot(&x, &y);
        if normalize(&mut y) == 0.0 {
            return Ok(PowerEstimate {
                value: 0.0,
                iterations: it,
                converged: true,
            });
        }
        x = y;
        if let Some(prev) = previous {
            if (rayleigh - prev).abs() <= tol * rayleigh.abs().max(f64::MIN_POSITIVE) {
                stable += 1;
                if stable >= STABLE_STEPS {
                    return Ok(PowerEstimate {
                        value: rayleigh,
                        iterations: it,
                        converged: true,
                    });
                }
            } else {
                stable = 0;
            }
        }
        previous = Some(rayleigh);
    }
    let y = m.mul_vec(&x)?;
    Ok(PowerEstimate {
        value: dot(&x, &y),
        iterations: max_iter,
        converged: false,
    })
}

/// Smallest eigenvalue of a symmetric positive definite matrix by inverse
/// power iteration (shift 0). Singular input surfaces as `SingularMatrix`.
pub fn inverse_power_min(m: &Matrix, tol: f64, max_iter: usize) -> Result<PowerEstimate> {
    check_symmetric(m)?;
    let mut x = seeded_start(m.rows(), 0);
    let mut previous: Option<f64> = None;
    let mut stable = 0;
    for it in 1..=max_iter {
        let mut y = gaussian_solve(m, &Vector::from_raw(x.clone()))?.into_inner();
        if normalize(&mut y) == 0.0 {
            return Err(Error::SingularMatrix { column: 0 });
        }
        x = y;
        let rayleigh = dot(&x, &m.mul_vec(&x)?);
        if let Some(prev) = previous {
            if (rayleigh - prev).abs() <= tol * rayleigh.abs().max(f64::MIN_POSITIVE) {
                stable += 1;
                if stable >= STABLE_STEPS {
                    return Ok(PowerEstimate {
                        value: rayleigh,
                        iterations: it,
                        converged: true,
                    });
                }
            } else {
                stable = 0;
            }
        }
        previous = Some(rayleigh);
    }
    Ok(PowerEstimate {
        value: previous.unwrap_or(0.0),
        iterations: max_iter,
        converged: false,
    })
}
