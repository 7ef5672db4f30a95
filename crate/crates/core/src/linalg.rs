//! Exact matrix algebra over the Gaussian rationals: rank, determinant,
//! minors, linear solves. Plain fraction arithmetic with first-nonzero pivot
//! selection; all sizes in this crate are tiny (at most 12x12).

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::tensor::Tensor;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer entries, for fixtures and tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.get(r, c) * &v[c]);
                }
                acc
            })
            .collect())
    }

    /// Exact rank by Gaussian elimination. Pivot is the first nonzero entry
    /// in row-major order, so results are deterministic.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot else { continue };
            m.swap_rows(rank, pr);
            let inv = m.get(rank, col).inv().expect("pivot is nonzero");
            for r in (rank + 1)..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.get(r, col) * &inv);
                for c in col..m.cols {
                    let v = m.get(r, c) - &(factor * m.get(rank, c));
                    m.set(r, c, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries
                .swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<GaussianRational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.get(r, col) * &inv);
                for c in col..n {
                    let v = m.get(r, c) - &(factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Determinant of the submatrix with the listed rows/columns removed.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Result<GaussianRational> {
        for &r in drop_rows {
            if r >= self.rows {
                return Err(Error::InvalidIndexSet(format!("row {r} out of range")));
            }
        }
        for &c in drop_cols {
            if c >= self.cols {
                return Err(Error::InvalidIndexSet(format!("column {c} out of range")));
            }
        }
        let keep_rows: Vec<usize> = (0..self.rows).filter(|r| !drop_rows.contains(r)).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|c| !drop_cols.contains(c)).collect();
        if keep_rows.len() != keep_cols.len() {
            return Err(Error::InvalidIndexSet(format!(
                "submatrix {}x{} is not square",
                keep_rows.len(),
                keep_cols.len()
            )));
        }
        self.submatrix(&keep_rows, &keep_cols).determinant()
    }

    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(keep_rows.len(), keep_cols.len());
        for (i, &r) in keep_rows.iter().enumerate() {
            for (j, &c) in keep_cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Solves M x = b for square invertible M.
    pub fn solve(&self, b: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch("rhs length".to_string()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Err(Error::ShapeMismatch("singular system".to_string()));
            };
            m.swap_rows(col, pr);
            rhs.swap(col, pr);
            let inv = m.get(col, col).inv().expect("pivot is nonzero");
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.get(r, col) * &inv);
                for c in col..n {
                    let v = m.get(r, c) - &(factor * m.get(col, c));
                    m.set(r, c, v);
                }
                rhs[r] = &rhs[r] - &(factor * &rhs[col]);
            }
        }
        (0..n)
            .map(|r| rhs[r].div(m.get(r, r)))
            .collect()
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

/// The j-th entry is the rank of the single-party flattening at party j
/// (the Schmidt local rank).
pub fn local_ranks(a: &Tensor) -> Vec<usize> {
    (0..a.format().n_parties())
        .map(|j| a.flatten(&[j]).expect("single party is a proper subset").rank())
        .collect()
}

/// Bipartite onion class: a two-party state of local rank j sits in
/// S_j - S_{j-1}.
pub fn bipartite_class(a: &Tensor) -> Result<usize> {
    if a.format().n_parties() != 2 {
        return Err(Error::FormatMismatch(format!(
            "bipartite_class requires 2 parties, got {}",
            a.format()
        )));
    }
    Ok(a.flatten(&[0])?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_invertible_matrix, SplitMix64};
    use crate::tensor::Tensor;

    #[test]
    fn rank_examples() {
        let ghz = Tensor::ghz3();
        assert_eq!(ghz.flatten(&[0]).unwrap().rank(), 2);
        let sep = Tensor::basis_state(&[2, 2, 2], &[&[0, 0, 0]]);
        assert_eq!(sep.flatten(&[0]).unwrap().rank(), 1);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            Matrix::identity(2).determinant().unwrap(),
            GaussianRational::from_int(1)
        );
        assert_eq!(
            Matrix::from_int_rows(&[&[1, 2], &[3, 4]])
                .determinant()
                .unwrap(),
            GaussianRational::from_int(-2)
        );
        assert!(Matrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn minor_examples() {
        let id3 = Matrix::identity(3);
        assert_eq!(
            id3.minor(&[0], &[0]).unwrap(),
            GaussianRational::from_int(1)
        );
        let repeated = Matrix::from_int_rows(&[&[1, 1, 5], &[2, 2, 7], &[3, 3, 9]]);
        assert_eq!(
            repeated.minor(&[0], &[2]).unwrap(),
            GaussianRational::zero()
        );
        assert!(id3.minor(&[0], &[]).is_err());
        assert!(id3.minor(&[7], &[0]).is_err());
    }

    #[test]
    fn local_rank_examples() {
        assert_eq!(local_ranks(&Tensor::w3()), vec![2, 2, 2]);
        let b1 = Tensor::basis_state(&[2, 2, 2], &[&[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(local_ranks(&b1), vec![1, 2, 2]);
        let gen322 = Tensor::basis_state(
            &[3, 2, 2],
            &[&[0, 0, 0], &[1, 0, 1], &[1, 1, 0], &[2, 1, 1]],
        );
        assert_eq!(local_ranks(&gen322), vec![3, 2, 2]);
    }

    #[test]
    fn bipartite_class_examples() {
        let ghz2 = Tensor::basis_state(&[2, 2], &[&[0, 0], &[1, 1]]);
        assert_eq!(bipartite_class(&ghz2).unwrap(), 2);
        let prod = Tensor::basis_state(&[2, 2], &[&[0, 0]]);
        assert_eq!(bipartite_class(&prod).unwrap(), 1);
        let diag110 = Tensor::basis_state(&[3, 3], &[&[0, 0], &[1, 1]]);
        assert_eq!(bipartite_class(&diag110).unwrap(), 2);
        assert!(bipartite_class(&Tensor::ghz3()).is_err());
    }

    #[test]
    fn rank_invariant_under_invertible_factors() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let m = crate::random::random_matrix(3, 4, &mut rng, 3);
            let g1 = random_invertible_matrix(3, &mut rng, 3);
            let g2 = random_invertible_matrix(4, &mut rng, 3);
            let transformed = g1.matmul(&m).unwrap().matmul(&g2).unwrap();
            assert_eq!(transformed.rank(), m.rank());
        }
    }

    #[test]
    fn determinant_multiplicative() {
        let mut rng = SplitMix64::new(12);
        for _ in 0..20 {
            let m = crate::random::random_matrix(3, 3, &mut rng, 4);
            let n = crate::random::random_matrix(3, 3, &mut rng, 4);
            assert_eq!(
                m.matmul(&n).unwrap().determinant().unwrap(),
                &m.determinant().unwrap() * &n.determinant().unwrap()
            );
        }
    }

    #[test]
    fn laplace_expansion_consistency() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..10 {
            let m = crate::random::random_matrix(4, 4, &mut rng, 4);
            let det = m.determinant().unwrap();
            for row in 0..4 {
                let mut acc = GaussianRational::zero();
                for col in 0..4 {
                    let cofactor = m.minor(&[row], &[col]).unwrap();
                    let signed = if (row + col) % 2 == 0 {
                        cofactor
                    } else {
                        -&cofactor
                    };
                    acc = &acc + &(m.get(row, col) * &signed);
                }
                assert_eq!(acc, det);
            }
        }
    }

    #[test]
    fn solve_round_trip() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let b = vec![
            GaussianRational::from_int(1),
            GaussianRational::from_int(2),
            GaussianRational::from_int(3),
        ];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
    }
}
