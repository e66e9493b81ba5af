//! Finite-dimensional algebras with a finite group acting by automorphisms,
//! skew group rings `R ⋊ G` and the averaging idempotent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{nullspace, rank};
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constants have the wrong shape")]
    Malformed,
    #[error("multiplication is not associative on basis ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails")]
    NoUnit,
    #[error("group element {0} does not act by an algebra automorphism")]
    ActionNotAutomorphism(usize),
    #[error("the action is not compatible with the group law at ({0}, {1})")]
    ActionNotHomomorphism(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Vector = Vec<Scalar>;

/// `e_i e_j = Σ_k structure[i][j][k] e_k`. Group element `g` acts by
/// `action[g]`, whose column `j` is `g(e_j)`. Element 0 of the group is the
/// identity.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    dim: usize,
    structure: Vec<Vec<Vector>>,
    unit: Vector,
    group: Vec<Vec<usize>>,
    action: Vec<Matrix>,
}

fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.add(&c.mul(x));
        }
    }
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vector {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
        })
        .collect()
}

impl FiniteDimAlgebra {
    pub fn new(
        structure: Vec<Vec<Vector>>,
        unit: Vector,
        group: Vec<Vec<usize>>,
        action: Vec<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let dim = unit.len();
        let shaped = structure.len() == dim
            && structure.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim))
            && !group.is_empty()
            && group.iter().all(|r| r.len() == group.len() && r.iter().all(|&x| x < group.len()))
            && action.len() == group.len()
            && action.iter().all(|m| m.rows() == dim && m.cols() == dim);
        if !shaped {
            return Err(AlgebraError::Malformed);
        }
        let a = FiniteDimAlgebra {
            dim,
            structure,
            unit,
            group,
            action,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            let e = basis_vec(n, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::NoUnit);
            }
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(&self.structure[i][j], &basis_vec(n, k));
                    let r = self.mul(&e, &self.structure[j][k]);
                    if l != r {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for (g, m) in self.action.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let lhs = apply(m, &self.structure[i][j]);
                    let rhs = self.mul(&m.column(i), &m.column(j));
                    if lhs != rhs {
                        return Err(AlgebraError::ActionNotAutomorphism(g));
                    }
                }
            }
            if crate::linalg::inverse(m).is_err() {
                return Err(AlgebraError::ActionNotAutomorphism(g));
            }
        }
        for g in 0..self.group.len() {
            for h in 0..self.group.len() {
                if &self.action[g] * &self.action[h] != self.action[self.group[g][h]] {
                    return Err(AlgebraError::ActionNotHomomorphism(g, h));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &x.mul(y), &self.structure[i][j]);
                }
            }
        }
        out
    }

    pub fn act(&self, g: usize, v: &[Scalar]) -> Vector {
        apply(&self.action[g], v)
    }

    /// Left multiplication by `a` as a matrix.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &basis_vec(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Basis of `R^G`.
    pub fn fixed_basis(&self) -> Vec<Vector> {
        let n = self.dim;
        let mut rows = Vec::new();
        for m in &self.action[1..] {
            let d = m - &Matrix::identity(n);
            for i in 0..n {
                rows.push(d.row(i).to_vec());
            }
        }
        if rows.is_empty() {
            return (0..n).map(|i| basis_vec(n, i)).collect();
        }
        nullspace(&Matrix::from_rows(rows).expect("rectangular"))
    }

    pub fn center_dimension(&self) -> usize {
        let n = self.dim;
        // z·e_b - e_b·z = Σ_k z_k (e_k e_b - e_b e_k)
        let mut rows = Vec::new();
        for b in 0..n {
            for out in 0..n {
                rows.push((0..n).map(|k| self.structure[k][b][out].sub(&self.structure[b][k][out])).collect());
            }
        }
        n - rank(&Matrix::from_rows(rows).expect("rectangular"))
    }

    /// `R ⋊ G` with basis `e_i g` at index `g·dim + i`, `(r g)(s h) = r g(s) gh`.
    /// The result carries the trivial group.
    pub fn skew_group_ring(&self) -> FiniteDimAlgebra {
        let n = self.dim;
        let m = self.group.len();
        let big = n * m;
        let mut structure = vec![vec![zero_vec(big); big]; big];
        for g in 0..m {
            for i in 0..n {
                for h in 0..m {
                    for j in 0..n {
                        let gs = self.action[g].column(j);
                        let prod = self.mul(&basis_vec(n, i), &gs);
                        let gh = self.group[g][h];
                        let v = &mut structure[g * n + i][h * n + j];
                        for (k, c) in prod.into_iter().enumerate() {
                            v[gh * n + k] = c;
                        }
                    }
                }
            }
        }
        let mut unit = zero_vec(big);
        unit[..n].clone_from_slice(&self.unit);
        FiniteDimAlgebra {
            dim: big,
            structure,
            unit,
            group: vec![vec![0]],
            action: vec![Matrix::identity(big)],
        }
    }

    /// `e = (1/|G|) Σ_g 1·g` in `R ⋊ G`.
    pub fn averaging_idempotent(&self) -> Vector {
        let n = self.dim;
        let m = self.group.len();
        let c = Scalar::from_int(m as i64).inv().expect("nonzero");
        let mut e = zero_vec(n * m);
        for g in 0..m {
            for (i, u) in self.unit.iter().enumerate() {
                e[g * n + i] = u.mul(&c);
            }
        }
        e
    }

    /// `r ↦ r·1_G` into `R ⋊ G`.
    fn embed(&self, r: &[Scalar]) -> Vector {
        let mut v = zero_vec(self.dim * self.group.len());
        v[..self.dim].clone_from_slice(r);
        v
    }

    pub fn to_json(&self) -> AlgebraJson {
        let text = |v: &Vector| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        AlgebraJson {
            dim: self.dim,
            structure: self.structure.iter().map(|r| r.iter().map(text).collect()).collect(),
            unit: text(&self.unit),
            group: self.group.clone(),
            action: self.action.iter().map(|m| m.to_text_rows(1)).collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson, order: u32) -> Result<Self, AlgebraError> {
        let parse = |v: &Vec<String>| v.iter().map(|s| parse_scalar(s, order)).collect::<Result<Vector, _>>();
        let structure = j
            .structure
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let action = j
            .action
            .iter()
            .map(|m| Matrix::from_text_rows(m, order))
            .collect::<Result<Vec<_>, _>>()?;
        if j.dim != j.unit.len() {
            return Err(AlgebraError::Malformed);
        }
        Self::new(structure, parse(&j.unit)?, j.group.clone(), action)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub structure: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub group: Vec<Vec<usize>>,
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerReport {
    pub fixed_dim: usize,
    pub corner_dim: usize,
    pub theta_injective: bool,
    pub theta_onto_corner: bool,
    pub theta_multiplicative: bool,
    pub psi_injective: bool,
    pub psi_onto: bool,
    pub psi_left_linear: bool,
    pub psi_right_linear: bool,
}

impl CornerReport {
    pub fn all_ok(&self) -> bool {
        self.theta_injective
            && self.theta_onto_corner
            && self.theta_multiplicative
            && self.psi_injective
            && self.psi_onto
            && self.psi_left_linear
            && self.psi_right_linear
    }
}

fn span_rank(vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vs.to_vec()).expect("rectangular"))
}

/// Checks that `θ: s ↦ s e` maps `R^G` isomorphically onto `e (R⋊G) e` and
/// that `ψ: r ↦ r e` maps `R` isomorphically onto `(R⋊G) e` as an
/// `(R⋊G, R^G)`-bimodule, where `R⋊G` acts on `R` by `(r g)·x = r g(x)`.
pub fn verify_corner(a: &FiniteDimAlgebra) -> CornerReport {
    let n = a.dim;
    let m = a.group.len();
    let skew = a.skew_group_ring();
    let e = a.averaging_idempotent();
    let big = n * m;
    let basis: Vec<Vector> = (0..big).map(|i| basis_vec(big, i)).collect();

    let fixed = a.fixed_basis();
    let theta: Vec<Vector> = fixed.iter().map(|s| skew.mul(&a.embed(s), &e)).collect();
    let corner: Vec<Vector> = basis.iter().map(|b| skew.mul(&skew.mul(&e, b), &e)).collect();
    let corner_dim = span_rank(&corner);
    let theta_rank = span_rank(&theta);
    let mut with_corner = corner.clone();
    with_corner.extend(theta.iter().cloned());
    let theta_in_corner = span_rank(&with_corner) == corner_dim;
    let theta_multiplicative = fixed.iter().all(|x| {
        fixed.iter().all(|y| {
            let lhs = skew.mul(&a.embed(&a.mul(x, y)), &e);
            let rhs = skew.mul(&skew.mul(&a.embed(x), &e), &skew.mul(&a.embed(y), &e));
            lhs == rhs
        })
    });

    let rbasis: Vec<Vector> = (0..n).map(|i| basis_vec(n, i)).collect();
    let psi: Vec<Vector> = rbasis.iter().map(|r| skew.mul(&a.embed(r), &e)).collect();
    let ae: Vec<Vector> = basis.iter().map(|b| skew.mul(b, &e)).collect();
    let psi_rank = span_rank(&psi);
    let ae_dim = span_rank(&ae);
    let mut both = ae.clone();
    both.extend(psi.iter().cloned());
    let psi_onto = psi_rank == ae_dim && span_rank(&both) == ae_dim;
    // ψ((r g)·x) = (r g) ψ(x)
    let psi_left_linear = (0..m).all(|g| {
        (0..n).all(|i| {
            rbasis.iter().all(|x| {
                let acted = a.mul(&basis_vec(n, i), &a.act(g, x));
                let lhs = skew.mul(&a.embed(&acted), &e);
                let rhs = skew.mul(&basis[g * n + i], &skew.mul(&a.embed(x), &e));
                lhs == rhs
            })
        })
    });
    // ψ(x s) = ψ(x) θ(s)
    let psi_right_linear = rbasis.iter().all(|x| {
        fixed.iter().all(|s| {
            let lhs = skew.mul(&a.embed(&a.mul(x, s)), &e);
            let rhs = skew.mul(&skew.mul(&a.embed(x), &e), &skew.mul(&a.embed(s), &e));
            lhs == rhs
        })
    });

    CornerReport {
        fixed_dim: fixed.len(),
        corner_dim,
        theta_injective: theta_rank == fixed.len(),
        theta_onto_corner: theta_in_corner && theta_rank == corner_dim,
        theta_multiplicative,
        psi_injective: psi_rank == n,
        psi_onto,
        psi_left_linear,
        psi_right_linear,
    }
}

fn int_vec(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn int_matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| int_vec(r)).collect()).expect("rectangular")
}

/// The group algebra of `Z/k` with basis `g^0..g^{k-1}` and the trivial group.
pub fn cyclic_group_algebra(k: usize) -> FiniteDimAlgebra {
    let structure = (0..k)
        .map(|i| (0..k).map(|j| basis_vec(k, (i + j) % k)).collect())
        .collect();
    FiniteDimAlgebra::new(structure, basis_vec(k, 0), vec![vec![0]], vec![Matrix::identity(k)]).expect("valid")
}

/// `Q × Q` with `Z/2` swapping the factors.
pub fn diagonal_pairs_swap() -> FiniteDimAlgebra {
    let structure = vec![
        vec![int_vec(&[1, 0]), int_vec(&[0, 0])],
        vec![int_vec(&[0, 0]), int_vec(&[0, 1])],
    ];
    FiniteDimAlgebra::new(
        structure,
        int_vec(&[1, 1]),
        vec![vec![0, 1], vec![1, 0]],
        vec![Matrix::identity(2), int_matrix(&[&[0, 1], &[1, 0]])],
    )
    .expect("valid")
}

/// `Q × Q` with `Z/2` acting trivially.
pub fn diagonal_pairs_trivial() -> FiniteDimAlgebra {
    let a = diagonal_pairs_swap();
    FiniteDimAlgebra::new(
        a.structure,
        a.unit,
        vec![vec![0, 1], vec![1, 0]],
        vec![Matrix::identity(2), Matrix::identity(2)],
    )
    .expect("valid")
}

/// The ground field with `Z/2` acting trivially.
pub fn ground_field_z2() -> FiniteDimAlgebra {
    FiniteDimAlgebra::new(
        vec![vec![int_vec(&[1])]],
        int_vec(&[1]),
        vec![vec![0, 1], vec![1, 0]],
        vec![Matrix::identity(1), Matrix::identity(1)],
    )
    .expect("valid")
}

/// The group algebra of `Z/4` with `Z/2` acting by inversion.
pub fn z4_inversion() -> FiniteDimAlgebra {
    let base = cyclic_group_algebra(4);
    let inv = int_matrix(&[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]]);
    FiniteDimAlgebra::new(
        base.structure,
        base.unit,
        vec![vec![0, 1], vec![1, 0]],
        vec![Matrix::identity(4), inv],
    )
    .expect("valid")
}
