//! Dense small-scale numerics: vectors, norms, matrices, eigenvalues,
//! linear solves, quadrature and diameters.

mod eigen;
mod geometry;
mod matrix;
mod quadrature;

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigen::{inverse_power_min, power_iteration, sym_eigen_2x2, PowerEstimate};
pub use geometry::{modulus_convexity_l2, pairwise_diameter};
pub use matrix::{gaussian_solve, gram, operator_norm, Matrix};
pub use quadrature::simpson;

/// A dense real vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// Standard basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[index] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * factor).collect())
    }

    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        Self(entries)
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(entries: Vec<f64>) -> Result<Self> {
        Vector::new(entries)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Linear combination `sum coeffs[i] * vs[i]`.
pub(crate) fn combine(vs: &[Vector], coeffs: &[f64]) -> Vec<f64> {
    let dim = vs.first().map_or(0, Vector::dim);
    let mut out = vec![0.0; dim];
    for (v, &c) in vs.iter().zip(coeffs) {
        if c == 0.0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.as_slice()) {
            *o += c * x;
        }
    }
    out
}

/// Which norm governs lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    /// General `p` norm with `1 < p < inf`.
    Lp(f64),
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidNorm(format!("lp:{p}")));
        }
        Ok(NormSpec::Lp(p))
    }

    /// Norm of a raw slice. Callers guarantee finiteness.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match *self {
            NormSpec::L1 => x.iter().map(|a| a.abs()).sum(),
            NormSpec::L2 => {
                let scale = x.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                scale * x.iter().map(|a| (a / scale).powi(2)).sum::<f64>().sqrt()
            }
            NormSpec::Linf => x.iter().fold(0.0, |m, a| m.max(a.abs())),
            NormSpec::Lp(p) => {
                let scale = x.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                scale
                    * x.iter()
                        .map(|a| (a.abs() / scale).powf(p))
                        .sum::<f64>()
                        .powf(1.0 / p)
            }
        }
    }

    /// The dual norm: L1 <-> Linf, L2 <-> L2, Lp <-> Lq with 1/p + 1/q = 1.
    pub fn dual(&self) -> NormSpec {
        match *self {
            NormSpec::L1 => NormSpec::Linf,
            NormSpec::L2 => NormSpec::L2,
            NormSpec::Linf => NormSpec::L1,
            NormSpec::Lp(p) => NormSpec::Lp(p / (p - 1.0)),
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, NormSpec::L2)
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::L1 => f.write_str("l1"),
            NormSpec::L2 => f.write_str("l2"),
            NormSpec::Linf => f.write_str("linf"),
            NormSpec::Lp(p) => write!(f, "lp:{p}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Ok(NormSpec::L1),
            "l2" => Ok(NormSpec::L2),
            "linf" => Ok(NormSpec::Linf),
            other => {
                let p = other
                    .strip_prefix("lp:")
                    .and_then(|p| p.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidNorm(s.to_string()))?;
                NormSpec::lp(p)
            }
        }
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(n: NormSpec) -> Self {
        n.to_string()
    }
}

/// Norm of `v` under `n`.
pub fn norm(v: &Vector, n: NormSpec) -> f64 {
    n.eval(v.as_slice())
}

pub fn dual_norm_spec(n: NormSpec) -> NormSpec {
    n.dual()
}

/// A finite, nonempty list of points of a common dimension with the norm
/// that measures them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vector>,
    norm: NormSpec,
}

impl PointSet {
    pub fn new(points: Vec<Vector>, norm: NormSpec) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyInput)?.dim();
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(Self { dim, points, norm })
    }

    /// Convenience constructor from raw rows.
    pub fn from_rows(rows: Vec<Vec<f64>>, norm: NormSpec) -> Result<Self> {
        let points = rows
            .into_iter()
            .map(Vector::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, norm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn norm(&self) -> NormSpec {
        self.norm
    }

    pub fn with_norm(&self, norm: NormSpec) -> PointSet {
        PointSet {
            norm,
            ..self.clone()
        }
    }

    /// Same points plus `extra`.
    pub fn with_point(&self, extra: Vector) -> Result<PointSet> {
        let mut points = self.points.clone();
        points.push(extra);
        PointSet::new(points, self.norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_norm_of_translation_step() {
        assert!((norm(&v(&[0.2, 0.3]), NormSpec::L2) - 0.13_f64.sqrt()).abs() < 1e-15);
        assert!((norm(&v(&[0.2, 0.3]), NormSpec::L2) - 0.360555).abs() < 1e-6);
    }

    #[test]
    fn zero_vector_has_zero_norm() {
        for n in [
            NormSpec::L1,
            NormSpec::L2,
            NormSpec::Linf,
            NormSpec::Lp(3.0),
        ] {
            assert_eq!(norm(&Vector::zeros(4), n), 0.0);
        }
    }

    #[test]
    fn sup_norm_of_constant_vector() {
        assert_eq!(norm(&v(&[0.1; 10]), NormSpec::Linf), 0.1);
    }

    #[test]
    fn lp_matches_direct_formula() {
        let x = v(&[1.0, -2.0, 3.0]);
        let direct = (1.0_f64 + 8.0 + 27.0).powf(1.0 / 3.0);
        assert!((norm(&x, NormSpec::Lp(3.0)) - direct).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite_entries() {
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(Vector::new(vec![f64::INFINITY]), Err(Error::NonFinite));
    }

    #[test]
    fn duality_pairs() {
        assert_eq!(dual_norm_spec(NormSpec::L1), NormSpec::Linf);
        assert_eq!(dual_norm_spec(NormSpec::Linf), NormSpec::L1);
        assert_eq!(dual_norm_spec(NormSpec::L2), NormSpec::L2);
        match dual_norm_spec(NormSpec::Lp(3.0)) {
            NormSpec::Lp(q) => assert!((q - 1.5).abs() < 1e-15),
            other => panic!("unexpected dual {other}"),
        }
        for n in [
            NormSpec::L1,
            NormSpec::L2,
            NormSpec::Linf,
            NormSpec::Lp(1.25),
        ] {
            match (n, n.dual().dual()) {
                (NormSpec::Lp(p), NormSpec::Lp(q)) => assert!((p - q).abs() < 1e-12),
                (a, b) => assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn norm_tags_parse() {
        assert_eq!("l1".parse::<NormSpec>().unwrap(), NormSpec::L1);
        assert_eq!("LINF".parse::<NormSpec>().unwrap(), NormSpec::Linf);
        assert_eq!("lp:4".parse::<NormSpec>().unwrap(), NormSpec::Lp(4.0));
        assert!("lp:1".parse::<NormSpec>().is_err());
        assert!("lp:inf".parse::<NormSpec>().is_err());
        assert!("l3".parse::<NormSpec>().is_err());
    }

    #[test]
    fn point_set_checks_dimensions() {
        assert_eq!(
            PointSet::from_rows(vec![vec![1.0, 2.0], vec![1.0]], NormSpec::L2),
            Err(Error::DimMismatch {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(PointSet::new(vec![], NormSpec::L2), Err(Error::EmptyInput));
    }
}
