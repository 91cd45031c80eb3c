//! Inner minimizations: the l1 unit sphere (signed) and the standard simplex
//! (unsigned).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::minnorm::min_norm_weights;
use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Relation};
use crate::vectorspace::{combine, NormSpec, Vector};

/// Largest tuple handled by sign-pattern enumeration (2^15 subproblems).
pub const MAX_EXACT_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerMode {
    SignedL1Sphere,
    UnsignedSimplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Approximate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerMethod {
    ExactSignPatterns,
    Subgradient,
    /// Enumerate the l1 sphere on the lattice `Z^k / resolution`.
    GridOracle {
        resolution: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerSolution {
    pub value: f64,
    pub coefficients: Vec<f64>,
    pub mode: InnerMode,
    pub exactness: Exactness,
}

fn check_input(vs: &[Vector]) -> Result<usize> {
    let dim = vs.first().ok_or(Error::EmptyInput)?.dim();
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    Ok(dim)
}

/// `|| sum coeffs_i vs_i ||` under `n`.
pub fn evaluate_combination(vs: &[Vector], coeffs: &[f64], n: NormSpec) -> Result<f64> {
    if vs.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            left: vs.len(),
            right: coeffs.len(),
        });
    }
    check_input(vs)?;
    Ok(n.eval(&combine(vs, coeffs)))
}

fn solution(
    vs: &[Vector],
    coefficients: Vec<f64>,
    n: NormSpec,
    mode: InnerMode,
    exactness: Exactness,
) -> InnerSolution {
    InnerSolution {
        value: n.eval(&combine(vs, &coefficients)),
        coefficients,
        mode,
        exactness,
    }
}

// ---------------------------------------------------------------------------
// unsigned: min over the simplex

/// Convex weights minimizing the norm, with the exactness of the solver used.
fn simplex_weights(points: &[&[f64]], n: NormSpec) -> (Vec<f64>, Exactness) {
    match n {
        NormSpec::L2 => (min_norm_weights(points), Exactness::Exact),
        NormSpec::L1 | NormSpec::Linf => match polyhedral_simplex_min(points, n) {
            Ok(w) => (w, Exactness::Exact),
            Err(_) => (frank_wolfe(points, n), Exactness::Approximate),
        },
        NormSpec::Lp(_) => {
            let mut w = frank_wolfe(points, n);
            if points.len() <= 3 {
                let g = simplex_grid_weights(points, n, 100);
                if n.eval(&mix(points, &g)) < n.eval(&mix(points, &w)) {
                    w = g;
                }
            }
            (w, Exactness::Approximate)
        }
    }
}

fn mix(points: &[&[f64]], w: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (p, &wi) in points.iter().zip(w) {
        for (xj, pj) in x.iter_mut().zip(p.iter()) {
            *xj += wi * pj;
        }
    }
    x
}

/// Exact LP for the L1 and Linf norms.
///
/// Variables are the k weights followed by d auxiliaries (L1) or a single
/// bound `t` (Linf).
fn polyhedral_simplex_min(points: &[&[f64]], n: NormSpec) -> Result<Vec<f64>> {
    let k = points.len();
    let d = points[0].len();
    let aux = if n == NormSpec::L1 { d } else { 1 };
    let nv = k + aux;
    let mut objective = vec![0.0; nv];
    objective[k..].iter_mut().for_each(|c| *c = 1.0);
    let mut cons = Vec::with_capacity(1 + 2 * d);
    let mut simplex = vec![0.0; nv];
    simplex[..k].iter_mut().for_each(|c| *c = 1.0);
    cons.push(Constraint::new(simplex, Relation::Eq, 1.0));
    for j in 0..d {
        let aux_col = if n == NormSpec::L1 { k + j } else { k };
        for sign in [1.0, -1.0] {
            let mut row = vec![0.0; nv];
            for (i, p) in points.iter().enumerate() {
                row[i] = sign * p[j];
            }
            row[aux_col] = -1.0;
            cons.push(Constraint::new(row, Relation::Le, 0.0));
        }
    }
    let sol = lp::minimize(&objective, &cons)?;
    let mut w = sol.x[..k].to_vec();
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        return Err(Error::LpInfeasible);
    }
    w.iter_mut().for_each(|x| *x /= total);
    Ok(w)
}

/// Gradient of the norm at `x` (a dual-norm unit functional attaining `||x||`).
pub(crate) fn norm_gradient(x: &[f64], n: NormSpec) -> Vec<f64> {
    let value = n.eval(x);
    if value == 0.0 {
        return vec![0.0; x.len()];
    }
    match n {
        NormSpec::L1 => x
            .iter()
            .map(|v| {
                if *v > 0.0 {
                    1.0
                } else if *v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect(),
        NormSpec::L2 => x.iter().map(|v| v / value).collect(),
        NormSpec::Linf => {
            let j = (0..x.len())
                .max_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs()).then(b.cmp(&a)))
                .unwrap_or(0);
            let mut g = vec![0.0; x.len()];
            g[j] = x[j].signum();
            g
        }
        NormSpec::Lp(p) => x
            .iter()
            .map(|v| v.signum() * (v.abs() / value).powf(p - 1.0))
            .collect(),
    }
}

/// Minimizes a convex function of one variable on `[0, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, hi: f64) -> f64 {
    let ratio = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(0.0, f(0.0)), (hi, f(hi)), (mid, f(mid))]
        .into_iter()
        .fold((0.0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        })
        .0
}

/// Pairwise conditional-gradient scheme with exact line search.
fn frank_wolfe(points: &[&[f64]], n: NormSpec) -> Vec<f64> {
    let k = points.len();
    let start = (0..k)
        .min_by(|&a, &b| n.eval(points[a]).total_cmp(&n.eval(points[b])))
        .unwrap_or(0);
    let mut w = vec![0.0; k];
    w[start] = 1.0;
    for _ in 0..super::minnorm::MAX_ITER {
        let x = mix(points, &w);
        if n.eval(&x) == 0.0 {
            break;
        }
        let g = norm_gradient(&x, n);
        let grads: Vec<f64> = points
            .iter()
            .map(|p| crate::vectorspace::dot(&g, p))
            .collect();
        let toward = (0..k)
            .min_by(|&a, &b| grads[a].total_cmp(&grads[b]))
            .unwrap_or(0);
        let away = (0..k)
            .filter(|&i| w[i] > 0.0)
            .max_by(|&a, &b| grads[a].total_cmp(&grads[b]))
            .unwrap_or(toward);
        if grads[away] - grads[toward] <= 1e-13 || away == toward {
            break;
        }
        let cap = w[away];
        let step = golden_section(
            |s| {
                let mut trial = w.clone();
                trial[toward] += s;
                trial[away] -= s;
                n.eval(&mix(points, &trial))
            },
            cap,
        );
        if step <= 0.0 {
            break;
        }
        w[toward] += step;
        w[away] -= step;
    }
    w
}

/// Best point of the simplex grid with `resolution` steps per coordinate.
fn simplex_grid_weights(points: &[&[f64]], n: NormSpec, resolution: u32) -> Vec<f64> {
    let k = points.len();
    let r = resolution as usize;
    let mut best = (f64::INFINITY, vec![0.0; k]);
    let mut counts = vec![0usize; k];
    fn rec(pos: usize, left: usize, counts: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            visit(counts);
            return;
        }
        for c in 0..=left {
            counts[pos] = c;
            rec(pos + 1, left - c, counts, visit);
        }
    }
    rec(0, r, &mut counts, &mut |c: &[usize]| {
        let w: Vec<f64> = c.iter().map(|&x| x as f64 / r as f64).collect();
        let v = n.eval(&mix(points, &w));
        if v < best.0 {
            best = (v, w);
        }
    });
    best.1
}

/// Minimum of `|| sum w_i vs_i ||` over the standard simplex.
pub fn inner_unsigned_min(vs: &[Vector], n: NormSpec) -> Result<InnerSolution> {
    check_input(vs)?;
    let pts: Vec<&[f64]> = vs.iter().map(Vector::as_slice).collect();
    let (w, exactness) = simplex_weights(&pts, n);
    Ok(solution(vs, w, n, InnerMode::UnsignedSimplex, exactness))
}

/// Simplex grid oracle for the unsigned problem (testing and validation).
pub fn unsigned_grid_oracle(vs: &[Vector], n: NormSpec, resolution: u32) -> Result<InnerSolution> {
    check_input(vs)?;
    let pts: Vec<&[f64]> = vs.iter().map(Vector::as_slice).collect();
    let w = simplex_grid_weights(&pts, n, resolution.max(1));
    Ok(solution(
        vs,
        w,
        n,
        InnerMode::UnsignedSimplex,
        Exactness::Approximate,
    ))
}

// ---------------------------------------------------------------------------
// signed: min over the l1 unit sphere

/// A collapse that needs no search: a zero vector or two identical vectors.
fn trivial_collapse(vs: &[Vector]) -> Option<Vec<f64>> {
    let k = vs.len();
    if let Some(i) = vs
        .iter()
        .position(|v| v.as_slice().iter().all(|&x| x == 0.0))
    {
        let mut a = vec![0.0; k];
        a[i] = 1.0;
        return Some(a);
    }
    for i in 0..k {
        for j in i + 1..k {
            if vs[i] == vs[j] {
                let mut a = vec![0.0; k];
                a[i] = 0.5;
                a[j] = -0.5;
                return Some(a);
            }
        }
    }
    None
}

fn sign_patterns(vs: &[Vector], n: NormSpec) -> (Vec<f64>, Exactness) {
    let k = vs.len();
    let mut best = (f64::INFINITY, vec![0.0; k], Exactness::Exact);
    let mut signed: Vec<Vec<f64>> = vs.iter().map(|v| v.as_slice().to_vec()).collect();
    // a -> -a symmetry: fix the first sign to +
    for pattern in 0u32..(1u32 << (k - 1)) {
        for i in 1..k {
            let s = if pattern >> (i - 1) & 1 == 1 {
                -1.0
            } else {
                1.0
            };
            for (dst, src) in signed[i].iter_mut().zip(vs[i].as_slice()) {
                *dst = s * src;
            }
        }
        let refs: Vec<&[f64]> = signed.iter().map(Vec::as_slice).collect();
        let (w, exactness) = simplex_weights(&refs, n);
        let value = n.eval(&mix(&refs, &w));
        if value < best.0 {
            let a = w
                .iter()
                .enumerate()
                .map(|(i, &wi)| {
                    if i > 0 && pattern >> (i - 1) & 1 == 1 {
                        -wi
                    } else {
                        wi
                    }
                })
                .collect();
            best = (value, a, exactness);
        }
        if best.0 == 0.0 {
            break;
        }
    }
    (best.1, best.2)
}

fn project_l1_sphere(a: &mut [f64]) -> bool {
    let l1: f64 = a.iter().map(|x| x.abs()).sum();
    if l1 == 0.0 || !l1.is_finite() {
        return false;
    }
    a.iter_mut().for_each(|x| *x /= l1);
    true
}

/// Projected subgradient descent on the l1 sphere with deterministic restarts.
fn subgradient(vs: &[Vector], n: NormSpec) -> Vec<f64> {
    const RESTARTS: usize = 32;
    const STEPS: usize = 2_000;
    let k = vs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let eval = |a: &[f64]| n.eval(&combine(vs, a));
    let mut starts: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut a = vec![0.0; k];
            a[i] = 1.0;
            a
        })
        .collect();
    starts.push(vec![1.0 / k as f64; k]);
    while starts.len() < k + 1 + RESTARTS {
        let mut a: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        if project_l1_sphere(&mut a) {
            starts.push(a);
        }
    }
    let mut best = (f64::INFINITY, starts[0].clone());
    for mut a in starts {
        let mut current = eval(&a);
        if current < best.0 {
            best = (current, a.clone());
        }
        for step in 1..=STEPS {
            let x = combine(vs, &a);
            if n.eval(&x) == 0.0 {
                break;
            }
            let g = norm_gradient(&x, n);
            let grad: Vec<f64> = vs
                .iter()
                .map(|v| crate::vectorspace::dot(&g, v.as_slice()))
                .collect();
            let t = 0.5 / (step as f64).sqrt();
            for (ai, gi) in a.iter_mut().zip(&grad) {
                *ai -= t * gi;
            }
            if !project_l1_sphere(&mut a) {
                break;
            }
            current = eval(&a);
            if current < best.0 {
                best = (current, a.clone());
            }
        }
    }
    best.1
}

/// Enumerates the lattice points of the l1 sphere of radius `resolution`.
fn grid_signed(vs: &[Vector], n: NormSpec, resolution: u32) -> Vec<f64> {
    let k = vs.len();
    let r = resolution.max(1) as i64;
    let mut best = (f64::INFINITY, vec![0.0; k]);
    let mut a = vec![0i64; k];
    fn rec(pos: usize, left: i64, a: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if pos + 1 == a.len() {
            if left == 0 {
                a[pos] = 0;
                visit(a);
            } else {
                for s in [left, -left] {
                    a[pos] = s;
                    visit(a);
                }
            }
            return;
        }
        for c in 0..=left {
            if c == 0 {
                a[pos] = 0;
                rec(pos + 1, left, a, visit);
            } else {
                for s in [c, -c] {
                    a[pos] = s;
                    rec(pos + 1, left - c, a, visit);
                }
            }
        }
    }
    rec(0, r, &mut a, &mut |lattice: &[i64]| {
        let coeffs: Vec<f64> = lattice.iter().map(|&x| x as f64 / r as f64).collect();
        let v = n.eval(&combine(vs, &coeffs));
        if v < best.0 {
            best = (v, coeffs);
        }
    });
    best.1
}

/// Minimum of `|| sum a_i vs_i ||` over `||a||_1 = 1`.
pub fn inner_signed_min(vs: &[Vector], n: NormSpec, method: InnerMethod) -> Result<InnerSolution> {
    check_input(vs)?;
    let k = vs.len();
    let mode = InnerMode::SignedL1Sphere;
    match method {
        InnerMethod::ExactSignPatterns => {
            if k > MAX_EXACT_POINTS {
                return Err(Error::TooManyPoints(k));
            }
            if let Some(a) = trivial_collapse(vs) {
                return Ok(solution(vs, a, n, mode, Exactness::Exact));
            }
            let (a, exactness) = sign_patterns(vs, n);
            Ok(solution(vs, a, n, mode, exactness))
        }
        InnerMethod::Subgradient => {
            if let Some(a) = trivial_collapse(vs) {
                return Ok(solution(vs, a, n, mode, Exactness::Exact));
            }
            Ok(solution(
                vs,
                subgradient(vs, n),
                n,
                mode,
                Exactness::Approximate,
            ))
        }
        InnerMethod::GridOracle { resolution } => Ok(solution(
            vs,
            grid_signed(vs, n, resolution),
            n,
            mode,
            Exactness::Approximate,
        )),
    }
}

/// The default signed solver for a tuple of size `k`.
pub(crate) fn default_signed_method(k: usize) -> InnerMethod {
    if k <= MAX_EXACT_POINTS {
        InnerMethod::ExactSignPatterns
    } else {
        InnerMethod::Subgradient
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[f64]]) -> Vec<Vector> {
        rows.iter()
            .map(|r| Vector::new(r.to_vec()).unwrap())
            .collect()
    }

    fn basis(m: usize) -> Vec<Vector> {
        (0..m).map(|i| Vector::basis(m, i)).collect()
    }

    fn assert_signed_invariant(s: &InnerSolution) {
        let l1: f64 = s.coefficients.iter().map(|x| x.abs()).sum();
        assert!((l1 - 1.0).abs() < 1e-10, "sum |a| = {l1}");
    }

    fn assert_simplex_invariant(s: &InnerSolution) {
        assert!(s.coefficients.iter().all(|&w| w >= 0.0));
        assert!((s.coefficients.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn orthonormal_triple_signed_min() {
        let s = inner_signed_min(&basis(3), NormSpec::L2, InnerMethod::ExactSignPatterns).unwrap();
        assert!((s.value - 1.0 / 3.0_f64.sqrt()).abs() < 1e-12);
        assert!((s.value - 0.577350).abs() < 1e-6);
        for a in &s.coefficients {
            assert!((a.abs() - 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(s.exactness, Exactness::Exact);
        assert_signed_invariant(&s);
    }

    #[test]
    fn antipodal_pair_collapses() {
        let u = [0.6, 0.8];
        let vs = vecs(&[&[-u[0], -u[1]], &u]);
        for n in [
            NormSpec::L1,
            NormSpec::L2,
            NormSpec::Linf,
            NormSpec::Lp(3.0),
        ] {
            let s = inner_signed_min(&vs, n, InnerMethod::ExactSignPatterns).unwrap();
            assert!(s.value < 1e-15, "{n}: {}", s.value);
            assert!((s.coefficients[0].abs() - 0.5).abs() < 1e-12);
            assert!((s.coefficients[1].abs() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_norm_spreads_mass() {
        let s =
            inner_signed_min(&basis(10), NormSpec::Linf, InnerMethod::ExactSignPatterns).unwrap();
        assert!((s.value - 0.1).abs() < 1e-12, "{}", s.value);
        for a in &s.coefficients {
            assert!((a.abs() - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn single_vector_returns_its_norm() {
        let vs = vecs(&[&[3.0, -4.0]]);
        for n in [NormSpec::L1, NormSpec::L2, NormSpec::Linf] {
            let s = inner_signed_min(&vs, n, InnerMethod::ExactSignPatterns).unwrap();
            assert!((s.value - n.eval(vs[0].as_slice())).abs() < 1e-15);
            let u = inner_unsigned_min(&vs, n).unwrap();
            assert!((u.value - n.eval(vs[0].as_slice())).abs() < 1e-15);
        }
    }

    #[test]
    fn duplicates_give_exact_zero() {
        let vs = vecs(&[&[0.3, 0.1], &[0.9, -0.2], &[0.3, 0.1]]);
        let s = inner_signed_min(&vs, NormSpec::L2, InnerMethod::ExactSignPatterns).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.coefficients, vec![0.5, 0.0, -0.5]);
    }

    #[test]
    fn signed_errors() {
        assert_eq!(
            inner_signed_min(&[], NormSpec::L2, InnerMethod::ExactSignPatterns),
            Err(Error::EmptyInput)
        );
        assert_eq!(
            inner_signed_min(&basis(17), NormSpec::L2, InnerMethod::ExactSignPatterns),
            Err(Error::TooManyPoints(17))
        );
    }

    #[test]
    fn subgradient_handles_large_tuples() {
        let s = inner_signed_min(&basis(20), NormSpec::L2, InnerMethod::Subgradient).unwrap();
        let exact = 1.0 / 20.0_f64.sqrt();
        assert_eq!(s.exactness, Exactness::Approximate);
        assert!(s.value >= exact - 1e-12);
        assert!(s.value - exact < 1e-2, "{}", s.value);
        assert_signed_invariant(&s);
    }

    #[test]
    fn grid_oracle_brackets_exact() {
        let vs = vecs(&[&[1.0, 0.2], &[0.1, 0.7], &[-0.5, 0.5]]);
        let exact = inner_signed_min(&vs, NormSpec::L2, InnerMethod::ExactSignPatterns).unwrap();
        let grid = inner_signed_min(
            &vs,
            NormSpec::L2,
            InnerMethod::GridOracle { resolution: 200 },
        )
        .unwrap();
        assert!(grid.value >= exact.value - 1e-12);
        assert!(grid.value - exact.value <= 2.0 / 200.0);
        assert_signed_invariant(&grid);
    }

    #[test]
    fn unsigned_two_basis_vectors() {
        let s = inner_unsigned_min(&basis(2), NormSpec::L2).unwrap();
        assert!((s.value - 0.5_f64.sqrt()).abs() < 1e-14);
        assert_simplex_invariant(&s);
        let grid = unsigned_grid_oracle(&basis(2), NormSpec::L2, 1000).unwrap();
        assert!((grid.value - s.value).abs() < 1e-6);
    }

    #[test]
    fn unsigned_equilateral_origin_in_hull() {
        let s3 = 3.0_f64.sqrt();
        let vs = vecs(&[
            &[1.0 / s3, 0.0],
            &[-1.0 / (2.0 * s3), 0.5],
            &[-1.0 / (2.0 * s3), -0.5],
        ]);
        let s = inner_unsigned_min(&vs, NormSpec::L2).unwrap();
        assert!(s.value < 1e-15);
        for w in &s.coefficients {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unsigned_polyhedral_norms_match_grid() {
        let vs = vecs(&[&[1.0, 0.2, -0.1], &[-0.3, 0.8, 0.4], &[0.2, -0.5, 0.9]]);
        for n in [NormSpec::L1, NormSpec::Linf] {
            let s = inner_unsigned_min(&vs, n).unwrap();
            assert_eq!(s.exactness, Exactness::Exact);
            assert_simplex_invariant(&s);
            let g = unsigned_grid_oracle(&vs, n, 300).unwrap();
            assert!(s.value <= g.value + 1e-12, "{n}");
            assert!(g.value - s.value < 1e-2, "{n}");
        }
    }

    #[test]
    fn unsigned_lp_norm_is_approximate_but_close() {
        let vs = vecs(&[&[1.0, 0.2], &[-0.3, 0.8], &[0.2, -0.5]]);
        let s = inner_unsigned_min(&vs, NormSpec::Lp(3.0)).unwrap();
        assert_eq!(s.exactness, Exactness::Approximate);
        let g = unsigned_grid_oracle(&vs, NormSpec::Lp(3.0), 400).unwrap();
        assert!(s.value <= g.value + 1e-9);
        assert_simplex_invariant(&s);
    }

    #[test]
    fn combination_values() {
        let vs = basis(2);
        let a = evaluate_combination(&vs, &[0.6, 0.4], NormSpec::L2).unwrap();
        assert!((a - 0.52_f64.sqrt()).abs() < 1e-15);
        assert!((a - 0.721).abs() < 5e-4);
        let b = evaluate_combination(&vs, &[0.7, 0.3], NormSpec::L2).unwrap();
        assert!((b - 0.58_f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            evaluate_combination(&vs, &[1.0], NormSpec::L2),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn two_point_weighted_sums() {
        // normalized two-point set with Delta = 2: {-u, +u}
        let u = [0.0, 1.0];
        let vs = vecs(&[&[-u[0], -u[1]], &u]);
        let a = evaluate_combination(&vs, &[0.4, 0.6], NormSpec::L2).unwrap();
        assert!((a - 0.2).abs() < 1e-12);
        let b = evaluate_combination(&vs, &[0.2, 0.8], NormSpec::L2).unwrap();
        assert!((b - 0.6).abs() < 1e-12);
        assert_eq!(
            evaluate_combination(&vs, &[0.5, 0.5], NormSpec::L2).unwrap(),
            0.0
        );
    }
}
