//! Coherence and Gram-spectrum lower bounds for Euclidean frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vectorspace::{gram, inverse_power_min, sym_eigen_2x2, Matrix, PointSet};

const EIGEN_TOL: f64 = 1e-10;
const EIGEN_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub mu: f64,
    pub m: usize,
    /// The Gershgorin-type floor `1 - (m-1) mu` on the normalized Gram
    /// spectrum, when it is positive.
    pub lambda_min: Option<f64>,
    pub phi_lower: f64,
    pub clamped: bool,
}

fn closed_form(m: usize, mu: f64) -> (f64, bool) {
    let floor = 1.0 - (m as f64 - 1.0) * mu;
    let phi = floor.max(0.0).sqrt() / ((m as f64).sqrt() * (2.0 * (1.0 + mu)).sqrt());
    (phi, floor <= 0.0)
}

pub fn coherence_phi_lower(m: usize, mu: f64) -> Result<CoherenceReport> {
    if m == 0 {
        return Err(Error::OutOfRange {
            name: "m",
            value: 0.0,
        });
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfRange {
            name: "mu",
            value: mu,
        });
    }
    let (phi_lower, clamped) = closed_form(m, mu);
    let floor = 1.0 - (m as f64 - 1.0) * mu;
    Ok(CoherenceReport {
        mu,
        m,
        lambda_min: (floor > 0.0).then_some(floor),
        phi_lower,
        clamped,
    })
}

/// Coherence and bound from `m` rows of length `d` stored row-major in `v`.
///
/// Two sequential passes: squared row norms, then normalized pairwise products.
/// Returns `(phi_lower, mu)`.
pub fn coherence_kernel(v: &[f64], m: usize, d: usize) -> Result<(f64, f64)> {
    if m == 0 || d == 0 {
        return Err(Error::EmptyInput);
    }
    if v.len() != m * d {
        return Err(Error::LengthMismatch {
            left: m * d,
            right: v.len(),
        });
    }
    let row = |i: usize| &v[i * d..(i + 1) * d];
    let mut squares = Vec::with_capacity(m);
    for i in 0..m {
        let mut sum = 0.0;
        for x in row(i) {
            sum += x * x;
        }
        if sum == 0.0 {
            return Err(Error::ZeroVector(i));
        }
        squares.push(sum);
    }
    let mut mu = 0.0_f64;
    for i in 0..m {
        for j in i + 1..m {
            let mut acc = 0.0;
            for (a, b) in row(i).iter().zip(row(j)) {
                acc += a * b;
            }
            // one square root of the product keeps identical rows at exactly 1
            mu = mu.max(acc.abs() / (squares[i] * squares[j]).sqrt());
        }
    }
    // rounding can push a parallel pair just past one
    let mu = mu.min(1.0);
    Ok((closed_form(m, mu).0, mu))
}

pub fn mutual_coherence(ps: &PointSet) -> Result<f64> {
    if !ps.norm().is_euclidean() {
        return Err(Error::NonEuclideanNorm);
    }
    if ps.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: ps.len(),
        });
    }
    let flat: Vec<f64> = ps
        .points()
        .iter()
        .flat_map(|p| p.as_slice().to_vec())
        .collect();
    coherence_kernel(&flat, ps.len(), ps.dim()).map(|(_, mu)| mu)
}

fn lambda_min(g: &Matrix) -> Result<f64> {
    match g.rows() {
        1 => Ok(g.get(0, 0)),
        2 => sym_eigen_2x2(g).map(|(_, lo)| lo),
        _ => match inverse_power_min(g, EIGEN_TOL, EIGEN_MAX_ITER) {
            Ok(est) => Ok(est.value),
            Err(Error::SingularMatrix { .. }) => Ok(0.0),
            Err(e) => Err(e),
        },
    }
}

/// `sqrt(lambda_min(G)) / (sqrt(m) * delta)` for the Gram matrix `G` of `ps`.
pub fn spectral_phi_lower(ps: &PointSet, delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::ZeroDelta);
    }
    let g = gram(ps)?;
    let lambda = lambda_min(&g)?;
    if lambda <= EIGEN_TOL * g.max_abs().max(f64::MIN_POSITIVE) {
        return Ok(0.0);
    }
    Ok(lambda.sqrt() / ((ps.len() as f64).sqrt() * delta))
}
