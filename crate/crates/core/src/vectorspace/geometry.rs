use super::PointSet;
use crate::error::{Error, Result};

/// Largest pairwise distance under the set's norm; 0 for a singleton.
pub fn pairwise_diameter(ps: &PointSet) -> f64 {
    let pts = ps.points();
    let norm = ps.norm();
    let mut diff = vec![0.0; ps.dim()];
    let mut best = 0.0_f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for (d, (a, b)) in diff
                .iter_mut()
                .zip(pts[i].as_slice().iter().zip(pts[j].as_slice()))
            {
                *d = a - b;
            }
            best = best.max(norm.eval(&diff));
        }
    }
    best
}

/// Modulus of convexity of the Euclidean plane, `1 - sqrt(1 - eps^2/4)`.
pub fn modulus_convexity_l2(eps: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&eps) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
        });
    }
    Ok(1.0 - (1.0 - eps * eps / 4.0).max(0.0).sqrt())
}
