//! Dense matrices over [`Scalar`]. Matrices act on column vectors.

use std::fmt;

use crate::linalg::LinalgError;
use crate::scalar::{parse_scalar, CycRat, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    /// `c·I_n`
    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.is_diagonal() {
            return None;
        }
        if self.rows == 0 {
            return Some(Scalar::zero());
        }
        let c = self.get(0, 0);
        (0..self.rows).all(|i| self.get(i, i) == c).then(|| c.clone())
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch);
        }
        let nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &nz[k] {
                    let prod = if a.is_one() {
                        other.get(k, j).clone()
                    } else {
                        a.mul(other.get(k, j))
                    };
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(Scalar::neg)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Integer power; negative exponents use the exact inverse.
    pub fn pow(&self, e: i64) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch);
        }
        let base = if e < 0 {
            crate::linalg::inverse(self)?
        } else {
            self.clone()
        };
        let mut acc = Self::identity(self.rows);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Scalar {
        self.diagonal().iter().fold(Scalar::zero(), |acc, x| acc.add(x))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Self {
        let r: usize = blocks.iter().map(Matrix::rows).sum();
        let c: usize = blocks.iter().map(Matrix::cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Substitutes `q = value` entrywise.
    pub fn specialize(&self, value: &CycRat) -> Result<Self, ScalarError> {
        let data = self
            .data
            .iter()
            .map(|x| x.eval_at(value).map(Scalar::from_cyc))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows of canonical scalar strings.
    pub fn to_text_rows(&self, order: u32) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_text_at(order)).collect())
            .collect()
    }

    pub fn from_text_rows(rows: &[Vec<String>], order: u32) -> Result<Self, ScalarError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s, order)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed).map_err(|_| ScalarError::Parse {
            pos: 0,
            msg: "ragged matrix".into(),
        })
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("conformable matrices")
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrices of equal shape")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrices of equal shape")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Product of a sequence of matrices, `None` for an empty sequence.
pub fn product<'a>(ms: impl IntoIterator<Item = &'a Matrix>) -> Option<Matrix> {
    let mut it = ms.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, m| &acc * m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_powers() {
        let q = Scalar::q();
        let t = Matrix::diag(&[q.clone(), q.inv().unwrap().neg()]);
        let t2 = &t * &t;
        assert_eq!(t2.get(0, 0), &q.mul(&q));
        let ti = t.pow(-1).unwrap();
        assert!((&t * &ti).is_identity());
        assert!(Matrix::identity(3).checked_mul(&Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn kron_and_blocks() {
        let a = Matrix::from_rows(vec![vec![1.into(), 2.into()], vec![3.into(), 4.into()]]).unwrap();
        let i = Matrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 0), &Scalar::from_int(3));
        let b = Matrix::block_diag(&[a.clone(), i]);
        assert_eq!(b.get(3, 3), &Scalar::one());
        assert_eq!(b.get(0, 3), &Scalar::zero());
        assert_eq!(a.trace(), Scalar::from_int(5));
    }
}
