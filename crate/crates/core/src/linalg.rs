//! Exact linear algebra over [`Scalar`]: dense row reduction, a sparse
//! incremental echelon form, commutants and intertwiner spaces.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix shapes do not conform")]
    ShapeMismatch,
    #[error("matrix is singular")]
    Singular,
}

/// Reduced row echelon form. Among candidate pivots in a column the entry of
/// smallest weight is chosen. Returns the reduced matrix and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].weight());
        let Some(p) = best else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, x) in row.iter_mut().enumerate().skip(c) {
                if !pivot_row[j].is_zero() {
                    *x = x.sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix::from_rows(a).unwrap_or_else(|_| Matrix::zeros(rows, cols));
    (reduced, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{v : m·v = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (red, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = red.get(i, f).neg();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::ShapeMismatch);
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Scalar::one());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.get(i, n + j).clone());
        }
    }
    Ok(inv)
}

/// A solution of `m·x = b`, if any.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::ShapeMismatch);
    }
    let cols = m.cols();
    let mut aug = Matrix::zeros(m.rows(), cols + 1);
    for i in 0..m.rows() {
        for j in 0..cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, cols).clone();
    }
    Ok(Some(x))
}

/// Indices of a maximal linearly independent set of columns.
pub fn column_basis(m: &Matrix) -> Vec<usize> {
    rref(m).1
}

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incrementally maintained echelon form of sparse row vectors. Every stored
/// row is monic at its pivot (its first nonzero column) and has zeros at the
/// pivots of all earlier rows.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseRow>,
    pivot_row: BTreeMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Reduces `row` against the stored rows.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .map(|(&c, _)| c)
                .find(|c| self.pivot_row.contains_key(c));
            let Some(c) = next else { break };
            let f = row.remove(&c).expect("present");
            for (&j, v) in &self.rows[self.pivot_row[&c]] {
                if j == c {
                    continue;
                }
                let e = row.entry(j).or_insert_with(Scalar::zero);
                *e = e.sub(&f.mul(v));
                if e.is_zero() {
                    row.remove(&j);
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for v in row.values_mut() {
                *v = v.mul(&inv);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of the solution space of `row·x = 0` for all stored rows, over
    /// `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Scalar>> {
        let mut rows = self.rows.clone();
        let mut order: Vec<(usize, usize)> =
            self.pivot_row.iter().map(|(&p, &i)| (p, i)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        // back substitution from the largest pivot down
        for &(p, i) in &order {
            let pivot = rows[i].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == i {
                    continue;
                }
                let Some(f) = row.remove(&p) else { continue };
                for (&j, v) in &pivot {
                    if j == p {
                        continue;
                    }
                    let e = row.entry(j).or_insert_with(Scalar::zero);
                    *e = e.sub(&f.mul(v));
                    if e.is_zero() {
                        row.remove(&j);
                    }
                }
            }
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivot_row.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); ncols];
                v[f] = Scalar::one();
                for (&p, &i) in &self.pivot_row {
                    if let Some(x) = rows[i].get(&f) {
                        v[p] = x.neg();
                    }
                }
                v
            })
            .collect()
    }
}

/// Basis of `{Φ : Φ·a = b·Φ for every pair (a, b)}`, where each `a` is
/// `da × da` and each `b` is `db × db`; `Φ` is `db × da`.
pub fn intertwiner_space(pairs: &[(&Matrix, &Matrix)], da: usize, db: usize) -> Result<Vec<Matrix>, LinalgError> {
    for (a, b) in pairs {
        if a.rows() != da || a.cols() != da || b.rows() != db || b.cols() != db {
            return Err(LinalgError::ShapeMismatch);
        }
    }
    // diagonal pairs pin entries directly: Φ[i][j]·(a_j - b_i) = 0
    let mut allowed = vec![true; db * da];
    for (a, b) in pairs {
        if a.is_diagonal() && b.is_diagonal() {
            for i in 0..db {
                for j in 0..da {
                    if a.get(j, j) != b.get(i, i) {
                        allowed[i * da + j] = false;
                    }
                }
            }
        }
    }
    let vars: Vec<usize> = (0..db * da).filter(|&k| allowed[k]).collect();
    let index: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(v, &k)| (k, v)).collect();
    let mut ech = SparseEchelon::new();
    for (a, b) in pairs {
        if a.is_diagonal() && b.is_diagonal() {
            continue;
        }
        // (Φa - bΦ)[i][j] = Σ_k Φ[i][k] a[k][j] - Σ_k b[i][k] Φ[k][j]
        for i in 0..db {
            for j in 0..da {
                let mut row = SparseRow::new();
                for k in 0..da {
                    let x = a.get(k, j);
                    if let (false, Some(&v)) = (x.is_zero(), index.get(&(i * da + k))) {
                        let e = row.entry(v).or_insert_with(Scalar::zero);
                        *e = e.add(x);
                    }
                }
                for k in 0..db {
                    let x = b.get(i, k);
                    if let (false, Some(&v)) = (x.is_zero(), index.get(&(k * da + j))) {
                        let e = row.entry(v).or_insert_with(Scalar::zero);
                        *e = e.sub(x);
                    }
                }
                ech.insert(row);
            }
        }
    }
    Ok(ech
        .nullspace(vars.len())
        .into_iter()
        .map(|sol| {
            let mut m = Matrix::zeros(db, da);
            for (v, x) in sol.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(vars[v] / da, vars[v] % da, x);
                }
            }
            m
        })
        .collect())
}

/// Basis of the commutant of a family of square matrices of equal size.
pub fn commutant_basis(generators: &[Matrix]) -> Result<Vec<Matrix>, LinalgError> {
    let d = generators.first().map_or(0, Matrix::rows);
    let pairs: Vec<(&Matrix, &Matrix)> = generators.iter().map(|g| (g, g)).collect();
    intertwiner_space(&pairs, d, d)
}

pub fn commutant_dimension(generators: &[Matrix]) -> Result<usize, LinalgError> {
    Ok(commutant_basis(generators)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t, 1).unwrap()
    }

    #[test]
    fn rank_nullspace_inverse() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(nullspace(&Matrix::zeros(2, 2)).len(), 2);
        let t = Matrix::diag(&[s("q"), s("-q^-1")]);
        let ti = inverse(&t).unwrap();
        let expect = &t - &Matrix::scalar(2, s("q - q^-1"));
        assert_eq!(ti, expect);
        let sing = Matrix::from_rows(vec![vec![s("q"), s("1")], vec![s("q^2"), s("q")]]).unwrap();
        assert_eq!(inverse(&sing), Err(LinalgError::Singular));
        assert_eq!(rank(&sing), 1);
        let ns = nullspace(&sing);
        assert_eq!(ns.len(), 1);
        let v = Matrix::from_columns(2, &ns);
        assert!((&sing * &v).is_zero());
    }

    #[test]
    fn solving() {
        let a = Matrix::from_rows(vec![vec![s("1"), s("q")], vec![s("0"), s("q^2 - 1")]]).unwrap();
        let x = solve(&a, &[s("1"), s("q - 1")]).unwrap().unwrap();
        let xm = Matrix::from_columns(2, &[x]);
        assert_eq!((&a * &xm).column(0), vec![s("1"), s("q - 1")]);
        let z = Matrix::zeros(1, 1);
        assert_eq!(solve(&z, &[s("1")]).unwrap(), None);
    }

    #[test]
    fn commutants() {
        assert_eq!(commutant_dimension(&[Matrix::identity(2)]).unwrap(), 4);
        assert_eq!(
            commutant_dimension(&[Matrix::diag(&[s("q"), s("-q^-1")])]).unwrap(),
            2
        );
        let j = Matrix::from_rows(vec![vec![s("q"), s("1")], vec![s("0"), s("q")]]).unwrap();
        assert_eq!(commutant_dimension(std::slice::from_ref(&j)).unwrap(), 2);
        assert_eq!(
            commutant_dimension(&[j, Matrix::identity(3)]),
            Err(LinalgError::ShapeMismatch)
        );
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        let r = |v: &[(usize, &str)]| v.iter().map(|&(c, t)| (c, s(t))).collect::<SparseRow>();
        assert!(e.insert(r(&[(0, "1"), (2, "q")])));
        assert!(e.insert(r(&[(1, "2"), (2, "1")])));
        assert!(!e.insert(r(&[(0, "2"), (1, "4"), (2, "2*q + 2")])));
        assert!(e.contains(r(&[(0, "1"), (1, "2"), (2, "q + 1")])));
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s("-q"), s("-1/2"), s("1")]);
    }
}
