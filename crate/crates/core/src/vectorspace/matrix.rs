use serde::{Deserialize, Serialize};

use super::{eigen, NormSpec, PointSet, Vector};
use crate::error::{Error, Result};

/// Relative pivot threshold below which a system is declared singular.
pub const PIVOT_REL_TOL: f64 = 1e-12;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::WrongShape {
                expected: "rows*cols entries",
                rows,
                cols,
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::WrongShape {
                expected: "rectangular rows",
                rows: r,
                cols: c,
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::identity(values.len());
        for (i, &x) in values.iter().enumerate() {
            m.data[i * values.len() + i] = x;
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), x)).collect())
    }

    /// `self - other`, same shape required.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::WrongShape {
                expected: "matching shapes",
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// `A^T A`.
    pub fn gram_of_columns(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let s: f64 = (0..self.rows)
                    .map(|r| self.get(r, i) * self.get(r, j))
                    .sum();
                out.set(i, j, s);
                out.set(j, i, s);
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

/// Gram matrix `G[i][j] = <v_i, v_j>` of a Euclidean point set.
pub fn gram(ps: &PointSet) -> Result<Matrix> {
    if !ps.norm().is_euclidean() {
        return Err(Error::NonEuclideanNorm);
    }
    let pts = ps.points();
    let m = pts.len();
    let mut g = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let d = pts[i].dot(&pts[j]);
            g.set(i, j, d);
            g.set(j, i, d);
        }
    }
    Ok(g)
}

/// Induced operator norm of `a` for L1 (max column sum), Linf (max row sum)
/// and L2 (largest singular value).
pub fn operator_norm(a: &Matrix, n: NormSpec) -> Result<f64> {
    match n {
        NormSpec::L1 => Ok((0..a.cols())
            .map(|j| (0..a.rows()).map(|i| a.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)),
        NormSpec::Linf => Ok((0..a.rows())
            .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)),
        NormSpec::L2 => {
            let ata = a.gram_of_columns();
            let lambda_max = match ata.rows() {
                1 => ata.get(0, 0),
                2 => eigen::sym_eigen_2x2(&ata)?.0,
                _ => eigen::power_iteration(&ata, 1e-14, 100_000, 0x5eed)?.value,
            };
            Ok(lambda_max.max(0.0).sqrt())
        }
        NormSpec::Lp(_) => Err(Error::UnsupportedNorm(n.to_string())),
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn gaussian_solve(a: &Matrix, b: &Vector) -> Result<Vector> {
    if !a.is_square() {
        return Err(Error::WrongShape {
            expected: "square",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.dim() != n {
        return Err(Error::DimMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::SingularMatrix { column: 0 });
    }
    let threshold = PIVOT_REL_TOL * scale;
    let mut m: Vec<Vec<f64>> = a.to_rows();
    let mut rhs = b.as_slice().to_vec();

    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, m[r][col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs < threshold {
            return Err(Error::SingularMatrix { column: col });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let (top, below) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let pivot_rhs = rhs[col];
        for (row, r) in below.iter_mut().zip(col + 1..) {
            let factor = row[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
            rhs[r] -= factor * pivot_rhs;
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (rhs[i] - tail) / m[i][i];
    }
    Vector::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gram_of_orthonormal_basis_is_identity() {
        let ps =
            PointSet::new((0..3).map(|i| Vector::basis(3, i)).collect(), NormSpec::L2).unwrap();
        assert_eq!(gram(&ps).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn gram_of_duplicates_is_all_ones() {
        let ps = PointSet::from_rows(vec![vec![1.0, 0.0], vec![1.0, 0.0]], NormSpec::L2).unwrap();
        assert_eq!(gram(&ps).unwrap(), mat(&[&[1.0, 1.0], &[1.0, 1.0]]));
    }

    #[test]
    fn gram_of_equilateral_vertices() {
        let s3 = 3.0_f64.sqrt();
        let ps = PointSet::from_rows(
            vec![
                vec![1.0 / s3, 0.0],
                vec![-1.0 / (2.0 * s3), 0.5],
                vec![-1.0 / (2.0 * s3), -0.5],
            ],
            NormSpec::L2,
        )
        .unwrap();
        let g = gram(&ps).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 / 3.0 } else { -1.0 / 6.0 };
                assert!(
                    (g.get(i, j) - expected).abs() < 1e-15,
                    "G[{i}][{j}] = {}",
                    g.get(i, j)
                );
            }
        }
    }

    #[test]
    fn gram_rejects_other_norms() {
        let ps = PointSet::from_rows(vec![vec![1.0]], NormSpec::L1).unwrap();
        assert_eq!(gram(&ps), Err(Error::NonEuclideanNorm));
    }

    #[test]
    fn operator_norms_of_comparison_matrix() {
        let a = mat(&[&[0.8, 0.3], &[0.2, 0.7]]);
        assert!((operator_norm(&a, NormSpec::L1).unwrap() - 1.0).abs() < 1e-15);
        assert!((operator_norm(&a, NormSpec::Linf).unwrap() - 1.1).abs() < 1e-15);
        assert!((operator_norm(&a, NormSpec::L2).unwrap() - 1.00662).abs() < 1e-5);
    }

    #[test]
    fn spectral_norm_of_shear() {
        let a = mat(&[&[1.0, 0.1], &[0.0, 1.0]]);
        let s = operator_norm(&a, NormSpec::L2).unwrap();
        assert!((s - 1.05125).abs() < 1e-5);
        // not the misprinted earlier value
        assert!((s - 1.00499).abs() > 1e-2);
    }

    #[test]
    fn spectral_norm_uses_power_iteration_above_two() {
        let a = Matrix::diag(&[3.0, -5.0, 1.0]);
        assert!((operator_norm(&a, NormSpec::L2).unwrap() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn operator_norm_rejects_lp() {
        assert!(matches!(
            operator_norm(&Matrix::identity(2), NormSpec::Lp(3.0)),
            Err(Error::UnsupportedNorm(_))
        ));
    }

    #[test]
    fn solves_affine_fixed_point_system() {
        let a = Matrix::identity(2)
            .sub(&mat(&[&[0.5, 0.2], &[0.1, 0.4]]))
            .unwrap();
        let b = Vector::new(vec![1.0, 1.0]).unwrap();
        let x = gaussian_solve(&a, &b).unwrap();
        assert!((x[0] - 20.0 / 7.0).abs() < 1e-12);
        assert!((x[1] - 15.0 / 7.0).abs() < 1e-12);
        assert!((x[0] - 2.85714).abs() < 1e-5 && (x[1] - 2.14286).abs() < 1e-5);
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = Vector::new(vec![3.0, -1.0, 0.5]).unwrap();
        assert_eq!(gaussian_solve(&Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn rank_deficient_is_singular() {
        let b = Vector::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            gaussian_solve(&mat(&[&[1.0, 1.0], &[1.0, 1.0]]), &b),
            Err(Error::SingularMatrix { .. })
        ));
        assert!(matches!(
            gaussian_solve(&Matrix::zeros(2, 2), &b),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn solve_rejects_bad_shapes() {
        let b = Vector::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            gaussian_solve(&Matrix::zeros(2, 3), &b),
            Err(Error::WrongShape { .. })
        ));
        assert!(matches!(
            gaussian_solve(&Matrix::identity(3), &b),
            Err(Error::DimMismatch { .. })
        ));
    }
}
