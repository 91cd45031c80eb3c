//! Affine and translation maps, their orbits, and the displacement checks
//! built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vectorspace::{
    combine, gaussian_solve, modulus_convexity_l2, operator_norm, pairwise_diameter, Matrix,
    NormSpec, PointSet, Vector,
};

const NONEXPANSIVE_TOL: f64 = 1e-12;
const LEMMA_TOL: f64 = 1e-9;
const UNIT_BALL_TOL: f64 = 1e-12;
/// Orbit length used by the displacement/diameter check.
pub const CHECK_ORBIT_STEPS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    Affine { a: Matrix, b: Vector },
    Translation { b: Vector },
}

/// `x -> Ax + b` or `x -> x + b`, measured in `ambient_norm`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    #[serde(flatten)]
    pub kind: MapKind,
    #[serde(rename = "norm", default = "default_norm")]
    pub ambient_norm: NormSpec,
}

fn default_norm() -> NormSpec {
    NormSpec::L2
}

impl MapSpec {
    pub fn affine(a: Matrix, b: Vector, ambient_norm: NormSpec) -> Result<Self> {
        let spec = Self {
            kind: MapKind::Affine { a, b },
            ambient_norm,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn translation(b: Vector, ambient_norm: NormSpec) -> Self {
        Self {
            kind: MapKind::Translation { b },
            ambient_norm,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            MapKind::Affine { b, .. } | MapKind::Translation { b } => b.dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let MapKind::Affine { a, b } = &self.kind {
            if a.rows() != a.cols() {
                return Err(Error::WrongShape {
                    expected: "square",
                    rows: a.rows(),
                    cols: a.cols(),
                });
            }
            if a.rows() != b.dim() {
                return Err(Error::DimMismatch {
                    expected: a.rows(),
                    got: b.dim(),
                });
            }
        }
        Ok(())
    }

    /// Whether the map is nonexpansive in its ambient norm. Fails for norms
    /// without a computable operator norm.
    pub fn is_nonexpansive(&self) -> Result<bool> {
        match &self.kind {
            MapKind::Translation { .. } => Ok(true),
            MapKind::Affine { a, .. } => {
                Ok(operator_norm(a, self.ambient_norm)? <= 1.0 + NONEXPANSIVE_TOL)
            }
        }
    }
}

pub fn apply(m: &MapSpec, x: &Vector) -> Result<Vector> {
    m.validate()?;
    if x.dim() != m.dim() {
        return Err(Error::DimMismatch {
            expected: m.dim(),
            got: x.dim(),
        });
    }
    Ok(match &m.kind {
        MapKind::Translation { b } => x.add(b),
        MapKind::Affine { a, b } => Vector::from_raw(a.mul_vec(x.as_slice())?).add(b),
    })
}

/// Solves `(I - A) x = b`.
pub fn fixed_point_affine(m: &MapSpec) -> Result<Vector> {
    m.validate()?;
    let (a, b) = match &m.kind {
        MapKind::Affine { a, b } => (a, b),
        MapKind::Translation { .. } => return Err(Error::SingularSystem),
    };
    let system = Matrix::identity(a.rows()).sub(a)?;
    gaussian_solve(&system, b).map_err(|e| match e {
        Error::SingularMatrix { .. } => Error::SingularSystem,
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Plain,
    Krasnoselskii,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub iterates: Vec<Vector>,
    /// `||x_n - T x_n||` for every iterate.
    pub residuals: Vec<f64>,
    pub hull_diameter: f64,
    pub displacement_estimate: f64,
    pub scheme: Scheme,
}

pub fn orbit(m: &MapSpec, x0: &Vector, steps: usize, scheme: Scheme) -> Result<OrbitRecord> {
    let n = m.ambient_norm;
    let mut iterates = Vec::with_capacity(steps + 1);
    let mut residuals = Vec::with_capacity(steps + 1);
    // a translation moves every point by exactly b; evaluating x - Tx in
    // floating point would add cancellation noise
    let fixed_residual = match &m.kind {
        MapKind::Translation { b } => Some(n.eval(b.as_slice())),
        MapKind::Affine { .. } => None,
    };
    let mut x = x0.clone();
    for step in 0..=steps {
        let tx = apply(m, &x)?;
        residuals.push(fixed_residual.unwrap_or_else(|| n.eval(x.sub(&tx).as_slice())));
        let next = match scheme {
            Scheme::Plain => tx,
            Scheme::Krasnoselskii => x.add(&tx).scale(0.5),
        };
        iterates.push(std::mem::replace(&mut x, next));
        if step == steps {
            break;
        }
    }
    let hull_diameter = pairwise_diameter(&PointSet::new(iterates.clone(), n)?);
    let displacement_estimate = residuals.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(OrbitRecord {
        iterates,
        residuals,
        hull_diameter,
        displacement_estimate,
        scheme,
    })
}

fn in_bounding_box(x: &Vector, samples: &[Vector]) -> bool {
    (0..x.dim()).all(|j| {
        let lo = samples.iter().map(|s| s[j]).fold(f64::INFINITY, f64::min);
        let hi = samples
            .iter()
            .map(|s| s[j])
            .fold(f64::NEG_INFINITY, f64::max);
        (lo..=hi).contains(&x[j])
    })
}

/// Estimate of `inf ||x - Tx||` over the region represented by `samples`.
pub fn minimal_displacement(m: &MapSpec, samples: &[Vector]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    match &m.kind {
        MapKind::Translation { b } => return Ok(m.ambient_norm.eval(b.as_slice())),
        MapKind::Affine { .. } => match fixed_point_affine(m) {
            Ok(fp) if in_bounding_box(&fp, samples) => return Ok(0.0),
            Ok(_) | Err(Error::SingularSystem) => {}
            Err(e) => return Err(e),
        },
    }
    samples.iter().try_fold(f64::INFINITY, |best, x| {
        let tx = apply(m, x)?;
        Ok(best.min(m.ambient_norm.eval(x.sub(&tx).as_slice())))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacementCheck {
    pub delta_est: f64,
    pub diam: f64,
    /// `delta_est <= diam(region)`.
    pub lemma_5a_ok: bool,
    /// `delta_est <= 2 * diam(orbit hull)` for every sampled start.
    pub lemma_5b_ok: bool,
}

pub fn displacement_diameter_check(m: &MapSpec, region: &PointSet) -> Result<DisplacementCheck> {
    let region = region.with_norm(m.ambient_norm);
    let delta_est = minimal_displacement(m, region.points())?;
    let diam = pairwise_diameter(&region);
    let mut lemma_5b_ok = true;
    for x in region.points() {
        let o = orbit(m, x, CHECK_ORBIT_STEPS, Scheme::Plain)?;
        lemma_5b_ok &= delta_est <= 2.0 * o.hull_diameter + LEMMA_TOL;
    }
    Ok(DisplacementCheck {
        delta_est,
        diam,
        lemma_5a_ok: delta_est <= diam + LEMMA_TOL,
        lemma_5b_ok,
    })
}

/// `count` seeded random convex combinations of the generators, with
/// uniform (flat Dirichlet) weights.
pub fn sample_hull(generators: &PointSet, count: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut w: Vec<f64> = (0..generators.len())
                // 1 - U lies in (0, 1], so the logarithm is finite
                .map(|_| -(1.0 - rng.random::<f64>()).ln())
                .collect();
            let total: f64 = w.iter().sum();
            if total > 0.0 {
                w.iter_mut().for_each(|x| *x /= total);
            } else {
                w.iter_mut()
                    .for_each(|x| *x = 1.0 / generators.len() as f64);
            }
            Vector::from_raw(combine(generators.points(), &w))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCheck {
    pub lambda: f64,
    pub combination_norm: f64,
    pub separation: f64,
    /// `1 - modulus(separation)`.
    pub bound: f64,
    /// Set only at the midpoint, where the inequality is asserted.
    pub holds: Option<bool>,
}

/// Compares `||lambda u1 + (1 - lambda) u2||` with `1 - modulus(||u1 - u2||)`
/// in the Euclidean plane.
pub fn two_point_convexity_check(u1: &Vector, u2: &Vector, lambda: f64) -> Result<ConvexityCheck> {
    if u1.dim() != u2.dim() {
        return Err(Error::DimMismatch {
            expected: u1.dim(),
            got: u2.dim(),
        });
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        });
    }
    let l2 = |v: &Vector| NormSpec::L2.eval(v.as_slice());
    if l2(u1) > 1.0 + UNIT_BALL_TOL || l2(u2) > 1.0 + UNIT_BALL_TOL {
        return Err(Error::NotUnitBall);
    }
    let combination_norm = l2(&u1.scale(lambda).add(&u2.scale(1.0 - lambda)));
    let separation = l2(&u1.sub(u2));
    let bound = 1.0 - modulus_convexity_l2(separation.min(2.0))?;
    let holds = (lambda == 0.5).then_some(combination_norm <= bound + UNIT_BALL_TOL);
    Ok(ConvexityCheck {
        lambda,
        combination_norm,
        separation,
        bound,
        holds,
    })
}
