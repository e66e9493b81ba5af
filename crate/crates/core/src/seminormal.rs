//! Calibrated modules of the affine Hecke algebra of type A, built from
//! placed skew shapes in the seminormal basis.
//!
//! `T_i` (for `2 ≤ i ≤ n`) sends `v_L` to `a·v_L + (q^{-1} + a)·v_{s_iL}` with
//! `a = (q - q^{-1}) / (1 - w_{i-1}/w_i)`, where `w_j = q^{2c(L(j))}` and the
//! second term is dropped when `s_iL` is not standard. `X^{ε_i}` is diagonal
//! with entries `w_i`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::commutant_dimension;
use crate::matrix::Matrix;
use crate::scalar::{elementary_symmetric, text_cmp, Scalar};
use crate::shapes::{PlacedSkewShape, StandardTableau, TableauJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeminormalError {
    #[error("adjacent entries {0} and {1} have equal contents")]
    DenominatorVanishes(usize, usize),
    #[error("shape has no boxes")]
    EmptyShape,
    #[error("basis tableaux carry different content multisets")]
    InconsistentCharacter,
}

#[derive(Clone, Debug)]
pub struct CalibratedModule {
    shape: PlacedSkewShape,
    basis: Vec<StandardTableau>,
    weights: Vec<Vec<Scalar>>,
    t: Vec<Matrix>,
    x: Vec<Matrix>,
}

fn basis_key(s: &PlacedSkewShape, t: &StandardTableau) -> Vec<(usize, usize, usize)> {
    t.cells()
        .iter()
        .map(|&i| {
            let c = s.cells()[i];
            (c.page, c.row, c.col)
        })
        .collect()
}

impl CalibratedModule {
    pub fn build(shape: &PlacedSkewShape) -> Result<Self, SeminormalError> {
        let n = shape.size();
        if n == 0 {
            return Err(SeminormalError::EmptyShape);
        }
        let mut basis = shape.standard_tableaux();
        basis.sort_by_cached_key(|t| basis_key(shape, t));
        let index: HashMap<StandardTableau, usize> =
            basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let weights: Vec<Vec<Scalar>> = basis.iter().map(|t| t.contents(shape)).collect();
        let d = basis.len();
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        let gap = q.sub(&qi);

        let mut t = Vec::with_capacity(n.saturating_sub(1));
        for i in 2..=n {
            let mut m = Matrix::zeros(d, d);
            for (j, tab) in basis.iter().enumerate() {
                let w = &weights[j];
                let ratio = w[i - 2].div(&w[i - 1]).expect("nonzero content");
                let den = Scalar::one().sub(&ratio);
                if den.is_zero() {
                    return Err(SeminormalError::DenominatorVanishes(i - 1, i));
                }
                let a = gap.div(&den).expect("nonzero");
                if let Some(&k) = index.get(&tab.swapped(i)) {
                    m.set(k, j, qi.add(&a));
                }
                m.set(j, j, a);
            }
            t.push(m);
        }
        let x = (0..n)
            .map(|i| Matrix::diag(&weights.iter().map(|w| w[i].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(CalibratedModule {
            shape: shape.clone(),
            basis,
            weights,
            t,
            x,
        })
    }

    pub fn shape(&self) -> &PlacedSkewShape {
        &self.shape
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    /// Content sequence of each basis vector.
    pub fn weights(&self) -> &[Vec<Scalar>] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `T_i` for `2 ≤ i ≤ n`.
    pub fn t(&self, i: usize) -> &Matrix {
        &self.t[i - 2]
    }

    pub fn ts(&self) -> &[Matrix] {
        &self.t
    }

    /// `X^{ε_i}` for `1 ≤ i ≤ n`.
    pub fn x(&self, i: usize) -> &Matrix {
        &self.x[i - 1]
    }

    pub fn xs(&self) -> &[Matrix] {
        &self.x
    }

    /// `T_2..T_n` followed by `X^{ε_1}..X^{ε_n}`.
    pub fn generators(&self) -> Vec<Matrix> {
        self.t.iter().chain(&self.x).cloned().collect()
    }

    /// `X^λ`, diagonal with entry `∏ w_i^{λ_i}` at `v_L`.
    pub fn act_x_lambda(&self, lambda: &[i64]) -> Matrix {
        let diag: Vec<Scalar> = self
            .weights
            .iter()
            .map(|w| {
                w.iter().zip(lambda).fold(Scalar::one(), |acc, (x, &e)| {
                    acc.mul(&x.pow(e).expect("nonzero content"))
                })
            })
            .collect();
        Matrix::diag(&diag)
    }

    pub fn verify(&self) -> RelationReport {
        verify_relations(&self.t, &self.x)
    }

    pub fn is_simple(&self) -> bool {
        is_simple_action(&self.generators())
    }

    pub fn central_character(&self) -> Result<CentralCharacter, SeminormalError> {
        let order = self.shape.order();
        let sorted = |w: &[Scalar]| {
            let mut v = w.to_vec();
            v.sort_by(|a, b| text_cmp(a, b, order));
            v
        };
        let first = sorted(&self.weights[0]);
        if self.weights.iter().any(|w| sorted(w) != first) {
            return Err(SeminormalError::InconsistentCharacter);
        }
        let e = elementary_symmetric(&first)[1..].to_vec();
        Ok(CentralCharacter { values: first, e })
    }

    pub fn to_json(&self) -> ModuleJson {
        let order = self.shape.order();
        ModuleJson {
            dimension: self.dimension(),
            basis: self.basis.iter().map(|t| t.to_json(&self.shape)).collect(),
            t: self
                .t
                .iter()
                .enumerate()
                .map(|(k, m)| ((k + 2).to_string(), m.to_text_rows(order)))
                .collect(),
            x: self
                .x
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let d = m.diagonal().iter().map(|s| s.to_text_at(order)).collect();
                    ((k + 1).to_string(), d)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub dimension: usize,
    pub basis: Vec<TableauJson>,
    #[serde(rename = "T")]
    pub t: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(rename = "X")]
    pub x: BTreeMap<String, Vec<String>>,
}

/// The content multiset of a module and its elementary symmetric values
/// `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub values: Vec<Scalar>,
    pub e: Vec<Scalar>,
}

/// Commutant dimension one.
pub fn is_simple_action(generators: &[Matrix]) -> bool {
    commutant_dimension(generators).is_ok_and(|d| d == 1)
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub residual: Matrix,
}

impl RelationCheck {
    fn new(name: String, lhs: &Matrix, rhs: &Matrix) -> Self {
        RelationCheck {
            name,
            residual: lhs - rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn push(&mut self, name: String, lhs: &Matrix, rhs: &Matrix) {
        self.checks.push(RelationCheck::new(name, lhs, rhs));
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self, order: u32) -> Vec<RelationJson> {
        self.checks
            .iter()
            .map(|c| RelationJson {
                name: c.name.clone(),
                holds: c.holds(),
                residual: (!c.holds()).then(|| c.residual.to_text_rows(order)),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationJson {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<Vec<String>>>,
}

type Residual<'a> = Box<dyn Fn() -> Matrix + Sync + 'a>;

/// The defining relations of the affine Hecke algebra, each as a lazily
/// evaluated residual `lhs - rhs`.
fn relation_suite<'a>(t: &'a [Matrix], x: &'a [Matrix]) -> Vec<(String, Residual<'a>)> {
    let n = x.len();
    let d = x.first().map_or(0, Matrix::rows);
    let ti = move |i: usize| &t[i - 2];
    let xi = move |i: usize| &x[i - 1];
    let mut r: Vec<(String, Residual<'a>)> = Vec::new();

    for i in 2..=n {
        r.push((
            format!("quadratic T{i}"),
            Box::new(move || {
                let id = Matrix::identity(d);
                let a = ti(i) - &id.scale(&Scalar::q());
                let b = ti(i) + &id.scale(&Scalar::q_pow(-1));
                &a * &b
            }),
        ));
    }
    for i in 2..n {
        r.push((
            format!("braid T{i} T{}", i + 1),
            Box::new(move || &(&(ti(i) * ti(i + 1)) * ti(i)) - &(&(ti(i + 1) * ti(i)) * ti(i + 1))),
        ));
    }
    for i in 2..=n {
        for j in i + 2..=n {
            r.push((format!("far T{i} T{j}"), Box::new(move || &(ti(i) * ti(j)) - &(ti(j) * ti(i)))));
        }
    }
    if n >= 2 {
        r.push((
            "X1 T2 X1 T2 = T2 X1 T2 X1".into(),
            Box::new(move || {
                let x1t2 = xi(1) * ti(2);
                let t2x1 = ti(2) * xi(1);
                &(&x1t2 * &x1t2) - &(&t2x1 * &t2x1)
            }),
        ));
    }
    for i in 2..=n {
        r.push((
            format!("X{i} = T{i} X{} T{i}", i - 1),
            Box::new(move || xi(i) - &(&(ti(i) * xi(i - 1)) * ti(i))),
        ));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            r.push((format!("X{i} X{j} = X{j} X{i}"), Box::new(move || &(xi(i) * xi(j)) - &(xi(j) * xi(i)))));
        }
    }
    for i in 2..=n {
        r.push((
            format!("cross X{i} T{i}"),
            Box::new(move || {
                let gap = Scalar::q().sub(&Scalar::q_pow(-1));
                &(&(xi(i) * ti(i)) - &(ti(i) * xi(i - 1))) - &xi(i).scale(&gap)
            }),
        ));
    }
    for i in 2..=n {
        for j in (1..=n).filter(|&j| j != i && j != i - 1) {
            r.push((format!("X{j} T{i} = T{i} X{j}"), Box::new(move || &(xi(j) * ti(i)) - &(ti(i) * xi(j)))));
        }
    }
    r
}

/// Checks the defining relations of the affine Hecke algebra on matrices
/// `t = [T_2..T_n]` and `x = [X^{ε_1}..X^{ε_n}]`.
pub fn verify_relations(t: &[Matrix], x: &[Matrix]) -> RelationReport {
    RelationReport {
        checks: relation_suite(t, x)
            .into_iter()
            .map(|(name, f)| RelationCheck { name, residual: f() })
            .collect(),
    }
}

/// Same relations as [`verify_relations`], stopping at the first failure.
pub fn relations_hold(t: &[Matrix], x: &[Matrix]) -> bool {
    relation_suite(t, x).iter().all(|(_, f)| f().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t, 1).unwrap()
    }

    fn module(tok: &str, outer: &[usize], inner: &[usize]) -> CalibratedModule {
        CalibratedModule::build(&PlacedSkewShape::single(s(tok), outer, inner).unwrap()).unwrap()
    }

    #[test]
    fn one_row_and_one_column() {
        let m = module("q^3", &[2], &[]);
        assert_eq!(m.dimension(), 1);
        assert_eq!(m.t(2).get(0, 0), &s("q"));
        assert_eq!(m.x(1).get(0, 0), &s("q^3"));
        assert_eq!(m.x(2).get(0, 0), &s("q^5"));
        let c = module("q^3", &[1, 1], &[]);
        assert_eq!(c.t(2).get(0, 0), &s("-q^-1"));
    }

    #[test]
    fn shape_two_one() {
        let m = module("1", &[2, 1], &[]);
        assert_eq!(m.dimension(), 2);
        assert_eq!(m.t(2), &Matrix::diag(&[s("q"), s("-q^-1")]));
        let a = s("(q - q^-1)/(1 - q^4)");
        let b = s("(q - q^-1)/(1 - q^-4)");
        let expect = Matrix::from_rows(vec![
            vec![a.clone(), s("q^-1").add(&b)],
            vec![s("q^-1").add(&a), b],
        ])
        .unwrap();
        assert_eq!(m.t(3), &expect);
        let t3 = m.t(3);
        let lhs = t3 * t3;
        let rhs = &t3.scale(&s("q - q^-1")) + &Matrix::identity(2);
        assert_eq!(lhs, rhs);
        assert!(m.verify().all_hold());
        assert!(m.is_simple());
        let inv = crate::linalg::inverse(m.t(2)).unwrap();
        assert_eq!(inv, m.t(2) - &Matrix::identity(2).scale(&s("q - q^-1")));
    }

    #[test]
    fn x_lambda() {
        let m = module("1", &[2, 1], &[]);
        assert!(m.act_x_lambda(&[0, 0, 0]).is_identity());
        assert_eq!(m.act_x_lambda(&[1, 1, 0]), m.x(1) * m.x(2));
        let r = module("q^3", &[2], &[]);
        assert_eq!(r.act_x_lambda(&[1, 0]), Matrix::diag(&[s("q^3")]));
    }

    #[test]
    fn corrupted_module_fails() {
        let m = module("1", &[2, 1], &[]);
        let mut t = m.ts().to_vec();
        let e = t[0].get(0, 0).add(&Scalar::one());
        t[0].set(0, 0, e);
        let rep = verify_relations(&t, m.xs());
        let bad: Vec<_> = rep.failures().map(|c| c.name.clone()).collect();
        assert!(bad.contains(&"quadratic T2".to_string()));
    }

    #[test]
    fn direct_sum_is_not_simple() {
        let a = module("1", &[2], &[]);
        let b = module("1", &[1, 1], &[]);
        let gens: Vec<Matrix> = a
            .generators()
            .iter()
            .zip(b.generators())
            .map(|(x, y)| Matrix::block_diag(&[x.clone(), y]))
            .collect();
        assert_eq!(commutant_dimension(&gens).unwrap(), 2);
        assert!(!is_simple_action(&gens));
        assert!(a.is_simple());
    }

    #[test]
    fn central_characters() {
        let m = module("1", &[2, 1], &[]);
        let mut got = m.central_character().unwrap().values;
        let mut want = vec![s("1"), s("q^2"), s("q^-2")];
        got.sort_by_key(|x| x.to_string());
        want.sort_by_key(|x| x.to_string());
        assert_eq!(got, want);
        let e = m.central_character().unwrap().e;
        let e1 = m.x(1) + &(m.x(2) + m.x(3));
        assert_eq!(e1.as_scalar(), Some(e[0].clone()));
    }

    #[test]
    fn json_layout() {
        let m = module("1", &[2, 1], &[]);
        let v = serde_json::to_value(m.to_json()).unwrap();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["T"]["2"][0][0], "q");
        assert_eq!(v["X"]["2"][1], "q^-2");
    }
}
