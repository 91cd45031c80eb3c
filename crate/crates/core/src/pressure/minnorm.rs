//! Wolfe's active-set algorithm for the minimum-norm point of a convex hull.

use crate::vectorspace::{dot, gaussian_solve, Matrix, Vector};

/// Stopping threshold on the Wolfe gap `|x|^2 - min_i <x, p_i>`, relative to
/// the squared scale of the (rescaled) points.
const GAP_TOL: f64 = 1e-14;
const WEIGHT_EPS: f64 = 1e-15;
pub(crate) const MAX_ITER: usize = 10_000;

fn point_at(points: &[Vec<f64>], support: &[usize], weights: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (&i, &w) in support.iter().zip(weights) {
        for (xj, pj) in x.iter_mut().zip(&points[i]) {
            *xj += w * pj;
        }
    }
    x
}

/// Minimizer of `|| sum alpha_i p_i ||_2` over the affine hull `sum alpha_i = 1`.
fn affine_minimizer(points: &[Vec<f64>], support: &[usize]) -> Option<Vec<f64>> {
    let s = support.len();
    let mut kkt = Matrix::zeros(s + 1, s + 1);
    for a in 0..s {
        for b in a..s {
            let g = dot(&points[support[a]], &points[support[b]]);
            kkt.set(a, b, g);
            kkt.set(b, a, g);
        }
        kkt.set(a, s, 1.0);
        kkt.set(s, a, 1.0);
    }
    let mut rhs = vec![0.0; s + 1];
    rhs[s] = 1.0;
    let sol = gaussian_solve(&kkt, &Vector::from_raw(rhs)).ok()?;
    Some(sol.as_slice()[..s].to_vec())
}

/// Convex weights (one per input point) of the minimum Euclidean norm point
/// of `conv(points)`.
pub(crate) fn min_norm_weights(points: &[&[f64]]) -> Vec<f64> {
    let k = points.len();
    let mut weights = vec![0.0; k];
    if k == 1 {
        weights[0] = 1.0;
        return weights;
    }
    let scale = points
        .iter()
        .map(|p| dot(p, p))
        .fold(0.0_f64, f64::max)
        .sqrt();
    if scale == 0.0 {
        weights[0] = 1.0;
        return weights;
    }
    // weights are invariant under uniform rescaling; work at unit scale
    let pts: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|x| x / scale).collect())
        .collect();

    let start = (0..k)
        .min_by(|&a, &b| dot(&pts[a], &pts[a]).total_cmp(&dot(&pts[b], &pts[b])))
        .unwrap_or(0);
    let mut support = vec![start];
    let mut lambda = vec![1.0];
    let mut x = pts[start].clone();

    'major: for _ in 0..MAX_ITER {
        let xx = dot(&x, &x);
        let (j, xp) =
            (0..k)
                .map(|i| (i, dot(&x, &pts[i])))
                .fold(
                    (0, f64::INFINITY),
                    |best, cur| if cur.1 < best.1 { cur } else { best },
                );
        if xx - xp <= GAP_TOL || support.contains(&j) {
            break;
        }
        support.push(j);
        lambda.push(0.0);

        loop {
            let Some(alpha) = affine_minimizer(&pts, &support) else {
                // affinely dependent support: keep the last consistent iterate
                support.pop();
                lambda.pop();
                break 'major;
            };
            if alpha.iter().all(|&a| a > WEIGHT_EPS) {
                lambda = alpha;
                x = point_at(&pts, &support, &lambda);
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= WEIGHT_EPS)
                .map(|(&l, &a)| if l - a > 0.0 { l / (l - a) } else { 0.0 })
                .fold(1.0_f64, f64::min);
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l += theta * (a - *l);
            }
            // drop the blocking coefficient(s)
            let mut keep_support = Vec::with_capacity(support.len());
            let mut keep_lambda = Vec::with_capacity(lambda.len());
            for (&i, &l) in support.iter().zip(&lambda) {
                if l > WEIGHT_EPS {
                    keep_support.push(i);
                    keep_lambda.push(l);
                }
            }
            if keep_support.is_empty() {
                keep_support.push(j);
                keep_lambda.push(1.0);
            }
            let total: f64 = keep_lambda.iter().sum();
            keep_lambda.iter_mut().for_each(|l| *l /= total);
            support = keep_support;
            lambda = keep_lambda;
        }
    }

    for (&i, &l) in support.iter().zip(&lambda) {
        weights[i] += l;
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    weights
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_at(points: &[&[f64]], w: &[f64]) -> f64 {
        let mut x = vec![0.0; points[0].len()];
        for (p, wi) in points.iter().zip(w) {
            for (xj, pj) in x.iter_mut().zip(p.iter()) {
                *xj += wi * pj;
            }
        }
        dot(&x, &x).sqrt()
    }

    /// Brute force over a simplex grid with `n` steps per coordinate (k <= 3).
    fn grid_min(points: &[&[f64]], n: usize) -> f64 {
        let k = points.len();
        let mut best = f64::INFINITY;
        for a in 0..=n {
            if k == 2 {
                let w = [a as f64 / n as f64, (n - a) as f64 / n as f64];
                best = best.min(norm_at(points, &w));
                continue;
            }
            for b in 0..=n - a {
                let w = [
                    a as f64 / n as f64,
                    b as f64 / n as f64,
                    (n - a - b) as f64 / n as f64,
                ];
                best = best.min(norm_at(points, &w));
            }
        }
        best
    }

    #[test]
    fn two_orthogonal_unit_vectors() {
        let pts: [&[f64]; 2] = [&[1.0, 0.0], &[0.0, 1.0]];
        let w = min_norm_weights(&pts);
        assert!((w[0] - 0.5).abs() < 1e-14 && (w[1] - 0.5).abs() < 1e-14);
        let v = norm_at(&pts, &w);
        assert!((v - 0.5_f64.sqrt()).abs() < 1e-14);
        // brute-force oracle agrees to grid resolution
        assert!((grid_min(&pts, 2000) - v).abs() < 1e-6);
    }

    #[test]
    fn origin_inside_triangle() {
        let s3 = 3.0_f64.sqrt();
        let pts: [&[f64]; 3] = [
            &[1.0 / s3, 0.0],
            &[-1.0 / (2.0 * s3), 0.5],
            &[-1.0 / (2.0 * s3), -0.5],
        ];
        let w = min_norm_weights(&pts);
        assert!(norm_at(&pts, &w) < 1e-15);
        for wi in w {
            assert!((wi - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vertex_is_optimal() {
        let pts: [&[f64]; 3] = [&[1.0, 1.0], &[2.0, 3.0], &[1.5, 4.0]];
        let w = min_norm_weights(&pts);
        assert_eq!(w, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn matches_grid_on_skewed_triangle() {
        let pts: [&[f64]; 3] = [&[1.0, 0.2, -0.3], &[-0.4, 0.9, 0.1], &[0.3, -0.2, 0.8]];
        let v = norm_at(&pts, &min_norm_weights(&pts));
        let g = grid_min(&pts, 400);
        assert!(v <= g + 1e-12);
        assert!(g - v < 5e-3);
    }

    #[test]
    fn more_points_than_dimensions() {
        let pts: [&[f64]; 5] = [
            &[1.0, 0.0],
            &[0.0, 1.0],
            &[-1.0, 0.2],
            &[0.3, -1.0],
            &[2.0, 2.0],
        ];
        let w = min_norm_weights(&pts);
        assert!(norm_at(&pts, &w) < 1e-14);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(w.iter().all(|&x| x >= 0.0));
    }
}
