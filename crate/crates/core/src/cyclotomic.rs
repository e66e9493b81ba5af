//! Cyclotomic quotients `H(r,1,n)` and their fixed-point subalgebras
//! `H(r,p,n)`, realized through calibrated modules.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{inverse, SparseEchelon, SparseRow};
use crate::matrix::Matrix;
use crate::scalar::{elementary_symmetric, lcm, q_integer, CycRat, Scalar};
use crate::seminormal::{CalibratedModule, RelationReport, SeminormalError};
use crate::shapes::{Page, Partition, PlacedSkewShape, ShapeError, SkewShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("northwest corner content {0} is not among the parameters")]
    NWConditionFails(String),
    #[error("parameters are not semisimple: {0}")]
    NotSemisimple(Certificate),
    #[error("values are not realized by any r-tuple of partitions")]
    NoMatch,
    #[error("value {0} matches more than one parameter")]
    Ambiguous(String),
    #[error("denominator vanishes at the specialization point for {0}")]
    SpecializationPole(String),
    #[error("span closure did not stabilize")]
    ClosureDiverged,
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Seminormal(#[from] SeminormalError),
}

/// Parameters `u_1..u_r` of `H(r,1,n)`, and optionally a value for `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSpec {
    pub r: usize,
    pub u: Vec<Scalar>,
    pub q: Option<CycRat>,
}

impl CyclotomicSpec {
    pub fn new(u: Vec<Scalar>, q: Option<CycRat>) -> Result<Self, CyclotomicError> {
        if u.is_empty() {
            return Err(CyclotomicError::InvalidSpec("r must be at least 1".into()));
        }
        if u.iter().any(Scalar::is_zero) {
            return Err(CyclotomicError::InvalidSpec("parameters must be nonzero".into()));
        }
        if q.as_ref().is_some_and(CycRat::is_zero) {
            return Err(CyclotomicError::InvalidSpec("q must be nonzero".into()));
        }
        Ok(CyclotomicSpec { r: u.len(), u, q })
    }

    /// `u = (1, 2, …, r)` at generic `q`.
    pub fn generic(r: usize) -> Self {
        Self::new((1..=r as i64).map(Scalar::from_int).collect(), None).expect("valid")
    }

    /// `u = (1, ζ, …, ζ^{r-1})`, `q = 1`.
    pub fn group_algebra(r: usize) -> Self {
        let u = (0..r as i64).map(|k| Scalar::zeta(k, r as u32)).collect();
        Self::new(u, Some(CycRat::one())).expect("valid")
    }

    /// Cyclotomic order needed to write the parameters.
    pub fn order(&self) -> u32 {
        let o = self.u.iter().map(Scalar::cyc_order).fold(1, lcm);
        self.q.as_ref().map_or(o, |q| lcm(o, q.order()))
    }

    pub fn q_scalar(&self) -> Scalar {
        self.q.clone().map_or_else(Scalar::q, Scalar::from_cyc)
    }
}

/// Parameters `x_0..x_{d-1}` of `H(r,p,n)` with `r = pd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrpnSpec {
    pub r: usize,
    pub p: usize,
    pub d: usize,
    pub x: Vec<Scalar>,
    pub xi: CycRat,
    pub q: Option<CycRat>,
}

impl HrpnSpec {
    pub fn new(p: usize, x: Vec<Scalar>, q: Option<CycRat>) -> Result<Self, CyclotomicError> {
        if p == 0 || x.is_empty() {
            return Err(CyclotomicError::InvalidSpec("p and d must be at least 1".into()));
        }
        if x.iter().any(Scalar::is_zero) {
            return Err(CyclotomicError::InvalidSpec("parameters must be nonzero".into()));
        }
        Ok(HrpnSpec {
            r: p * x.len(),
            p,
            d: x.len(),
            x,
            xi: CycRat::zeta(1, p as u32),
            q,
        })
    }

    /// `x_ℓ = ℓ + 1` at generic `q`.
    pub fn generic(r: usize, p: usize) -> Result<Self, CyclotomicError> {
        if p == 0 || !r.is_multiple_of(p) {
            return Err(CyclotomicError::InvalidSpec(format!("p = {p} does not divide r = {r}")));
        }
        Self::new(p, (1..=(r / p) as i64).map(Scalar::from_int).collect(), None)
    }

    /// `u_j = ξ^k x_ℓ` where `j - 1 = ℓp + k`.
    pub fn u(&self) -> Vec<Scalar> {
        (0..self.r)
            .map(|j| {
                let (l, k) = (j / self.p, j % self.p);
                self.x[l].scale_cyc(&CycRat::zeta(k as i64, self.p as u32))
            })
            .collect()
    }

    pub fn cyclotomic(&self) -> CyclotomicSpec {
        CyclotomicSpec::new(self.u(), self.q.clone()).expect("valid")
    }

    /// `∏(t - u_j) = ∏(t^p - x_ℓ^p)` coefficientwise.
    pub fn check_polynomial_identity(&self) -> bool {
        let e = elementary_symmetric(&self.u());
        let xp: Vec<Scalar> = self.x.iter().map(|x| x.pow(self.p as i64).expect("nonzero")).collect();
        let f = elementary_symmetric(&xp);
        (0..=self.r).all(|k| {
            if k % self.p == 0 {
                let flip = (k + k / self.p) % 2 == 1;
                e[k] == if flip { f[k / self.p].neg() } else { f[k / self.p].clone() }
            } else {
                e[k].is_zero()
            }
        })
    }
}

/// A violated semisimplicity condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `[k]_q = 0`.
    QInteger { k: usize },
    /// `u_i / u_j = q^{2·power}` (1-based indices).
    Ratio { i: usize, j: usize, power: usize },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::QInteger { k } => write!(f, "[{k}]_q = 0"),
            Certificate::Ratio { i, j, power } => write!(f, "u_{i}/u_{j} = q^{}", 2 * power),
        }
    }
}

fn eval_q(s: &Scalar, q: &Option<CycRat>) -> Option<Scalar> {
    match q {
        None => Some(s.clone()),
        Some(v) => s.eval_at(v).ok().map(Scalar::from_cyc),
    }
}

/// `Ok(())` when `[k]_q ≠ 0` for `k ≤ n` and no ratio `u_i/u_j` lies in
/// `{1, q^2, …, q^{2n}}`; otherwise the first violation found.
pub fn check_semisimple(spec: &CyclotomicSpec, n: usize) -> Result<(), Certificate> {
    for k in 1..=n {
        let v = eval_q(&q_integer(k as u32), &spec.q);
        if v.is_none_or(|v| v.is_zero()) {
            return Err(Certificate::QInteger { k });
        }
    }
    for i in 0..spec.r {
        for j in 0..spec.r {
            if i == j {
                continue;
            }
            let ratio = spec.u[i].div(&spec.u[j]).expect("nonzero");
            for k in 0..=n {
                let target = Scalar::q_pow(2 * k as i32);
                let equal = match (eval_q(&ratio, &spec.q), eval_q(&target, &spec.q)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                };
                if equal {
                    return Err(Certificate::Ratio {
                        i: i + 1,
                        j: j + 1,
                        power: k,
                    });
                }
            }
        }
    }
    Ok(())
}

pub type RTuple = Vec<Partition>;

/// All r-tuples of partitions with `n` boxes in total.
pub fn r_tuples(r: usize, n: usize) -> Vec<RTuple> {
    fn go(r: usize, n: usize, cur: &mut RTuple, out: &mut Vec<RTuple>) {
        if cur.len() == r - 1 {
            for p in Partition::all(n) {
                cur.push(p);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in (0..=n).rev() {
            for p in Partition::all(k) {
                cur.push(p);
                go(r, n - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(r, n, &mut Vec::new(), &mut out);
    out
}

pub fn tuple_text(t: &RTuple) -> String {
    let parts: Vec<String> = t
        .iter()
        .map(|p| {
            if p.is_empty() {
                "∅".to_string()
            } else {
                let s: Vec<String> = p.parts().iter().map(ToString::to_string).collect();
                format!("({})", s.join(","))
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// Page `i` carries token `u_i` and shape `λ^{(i)}`.
pub fn tuple_shape(spec: &CyclotomicSpec, t: &RTuple) -> Result<PlacedSkewShape, ShapeError> {
    let pages = t
        .iter()
        .zip(&spec.u)
        .map(|(p, u)| Page {
            token: u.clone(),
            shape: SkewShape::partition(p.clone()),
        })
        .collect();
    PlacedSkewShape::new(pages)
}

/// A calibrated module with `T_1` acting as `X^{ε_1}`.
#[derive(Clone, Debug)]
pub struct TransportedModule {
    pub module: CalibratedModule,
    /// `T_1..T_n`.
    pub t: Vec<Matrix>,
}

impl TransportedModule {
    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn dimension(&self) -> usize {
        self.module.dimension()
    }

    /// `T_i`, `1 ≤ i ≤ n`.
    pub fn ti(&self, i: usize) -> &Matrix {
        &self.t[i - 1]
    }

    pub fn specialize(&self, q: &CycRat) -> Result<Vec<Matrix>, crate::scalar::ScalarError> {
        self.t.iter().map(|m| m.specialize(q)).collect()
    }
}

pub fn transport(m: &CalibratedModule, spec: &CyclotomicSpec) -> Result<TransportedModule, CyclotomicError> {
    let s = m.shape();
    for c in s.nw_corners() {
        let v = s.content(&c);
        if !spec.u.contains(&v) {
            return Err(CyclotomicError::NWConditionFails(v.to_text_at(spec.order())));
        }
    }
    let mut t = vec![m.x(1).clone()];
    t.extend(m.ts().iter().cloned());
    Ok(TransportedModule { module: m.clone(), t })
}

/// Relations of `H(r,1,n)` on `t = [T_1..T_n]`, with `q` the given scalar.
pub fn verify_cyclotomic(t: &[Matrix], u: &[Scalar], q: &Scalar) -> RelationReport {
    let n = t.len();
    let d = t.first().map_or(0, Matrix::rows);
    let id = Matrix::identity(d);
    let zero = Matrix::zeros(d, d);
    let qi = q.inv().expect("nonzero q");
    let ti = |i: usize| &t[i - 1];
    let mut r = RelationReport::default();
    if n == 0 {
        return r;
    }
    let poly = u.iter().fold(id.clone(), |acc, uj| &acc * &(ti(1) - &id.scale(uj)));
    r.push("cyclotomic T1".into(), &poly, &zero);
    for i in 2..=n {
        let a = ti(i) - &id.scale(q);
        let b = ti(i) + &id.scale(&qi);
        r.push(format!("quadratic T{i}"), &(&a * &b), &zero);
    }
    if n >= 2 {
        let ab = ti(1) * ti(2);
        let ba = ti(2) * ti(1);
        r.push("T1 T2 T1 T2 = T2 T1 T2 T1".into(), &(&ab * &ab), &(&ba * &ba));
    }
    for i in 3..=n {
        r.push(format!("T1 T{i} = T{i} T1"), &(ti(1) * ti(i)), &(ti(i) * ti(1)));
    }
    for i in 2..n {
        let lhs = &(ti(i) * ti(i + 1)) * ti(i);
        let rhs = &(ti(i + 1) * ti(i)) * ti(i + 1);
        r.push(format!("braid T{i} T{}", i + 1), &lhs, &rhs);
    }
    for i in 2..=n {
        for j in i + 2..=n {
            r.push(format!("far T{i} T{j}"), &(ti(i) * ti(j)), &(ti(j) * ti(i)));
        }
    }
    r
}

/// The word `T_i T_{i-1} … T_2 T_1 T_2 … T_i` as generator indices.
pub fn jm_word(i: usize) -> Vec<usize> {
    (2..=i).rev().chain(1..=i).collect()
}

pub fn eval_word(t: &[Matrix], word: &[usize]) -> Matrix {
    let d = t.first().map_or(0, Matrix::rows);
    word.iter().fold(Matrix::identity(d), |acc, &g| &acc * &t[g - 1])
}

/// `M_i = X^{ε_i}`, the `M_i` pairwise commute and are diagonal.
pub fn verify_jm(tm: &TransportedModule) -> RelationReport {
    let n = tm.n();
    let m: Vec<Matrix> = (1..=n).map(|i| eval_word(&tm.t, &jm_word(i))).collect();
    let mut r = RelationReport::default();
    for i in 1..=n {
        r.push(format!("M{i} = X{i}"), &m[i - 1], tm.module.x(i));
        let d = Matrix::diag(&m[i - 1].diagonal());
        r.push(format!("M{i} diagonal"), &m[i - 1], &d);
        for j in i + 1..=n {
            r.push(format!("M{i} M{j} = M{j} M{i}"), &(&m[i - 1] * &m[j - 1]), &(&m[j - 1] * &m[i - 1]));
        }
    }
    r
}

/// The scalars by which `e_k(M_1..M_n)` act, `None` if one is not scalar.
pub fn center_values(tm: &TransportedModule) -> Option<Vec<Scalar>> {
    let n = tm.n();
    let d = tm.dimension();
    let mut e = vec![Matrix::zeros(d, d); n + 1];
    e[0] = Matrix::identity(d);
    for i in 1..=n {
        let m = eval_word(&tm.t, &jm_word(i));
        for k in (1..=i).rev() {
            e[k] = &e[k] + &(&e[k - 1] * &m);
        }
    }
    e[1..].iter().map(Matrix::as_scalar).collect()
}

#[derive(Clone, Debug)]
pub struct InventoryEntry {
    pub tuple: RTuple,
    pub module: TransportedModule,
}

#[derive(Clone, Debug)]
pub struct Inventory {
    pub spec: CyclotomicSpec,
    pub n: usize,
    pub entries: Vec<InventoryEntry>,
}

impl Inventory {
    pub fn sum_dim_squared(&self) -> usize {
        self.entries.iter().map(|e| e.module.dimension().pow(2)).sum()
    }

    /// `r^n n!`
    pub fn expected(&self) -> usize {
        self.spec.r.pow(self.n as u32) * (1..=self.n).product::<usize>()
    }
}

pub fn modules_inventory(spec: &CyclotomicSpec, n: usize) -> Result<Inventory, CyclotomicError> {
    check_semisimple(spec, n).map_err(CyclotomicError::NotSemisimple)?;
    let entries = r_tuples(spec.r, n)
        .into_par_iter()
        .map(|tuple| {
            let shape = tuple_shape(spec, &tuple)?;
            let m = CalibratedModule::build(&shape)?;
            let module = transport(&m, spec)?;
            Ok(InventoryEntry { tuple, module })
        })
        .collect::<Result<Vec<_>, CyclotomicError>>()?;
    Ok(Inventory {
        spec: spec.clone(),
        n,
        entries,
    })
}

/// Recovers the r-tuple whose content multiset has elementary symmetric
/// values `a = [e_1..e_n]`, together with that multiset.
pub fn center_reconstruct(a: &[Scalar], spec: &CyclotomicSpec) -> Result<(RTuple, Vec<Scalar>), CyclotomicError> {
    let n = a.len();
    let ni = n as i64;
    let mut candidates: Vec<(Scalar, usize, i64)> = Vec::new();
    for (i, u) in spec.u.iter().enumerate() {
        for k in -ni..=ni {
            let v = u.mul(&Scalar::q_pow(2 * k as i32));
            if let Some(other) = candidates.iter().find(|c| c.0 == v) {
                if other.1 != i {
                    return Err(CyclotomicError::Ambiguous(v.to_text_at(spec.order())));
                }
            }
            candidates.push((v, i, k));
        }
    }
    // monic polynomial t^n - a_1 t^{n-1} + …, highest degree first
    let mut poly: Vec<Scalar> = std::iter::once(Scalar::one())
        .chain(a.iter().enumerate().map(|(k, x)| if k % 2 == 0 { x.neg() } else { x.clone() }))
        .collect();
    let mut diags: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); spec.r];
    let mut roots = Vec::new();
    for (v, i, k) in &candidates {
        loop {
            if poly.len() == 1 {
                break;
            }
            let (quot, rem) = synthetic_division(&poly, v);
            if !rem.is_zero() {
                break;
            }
            poly = quot;
            *diags[*i].entry(*k).or_default() += 1;
            roots.push(v.clone());
        }
    }
    if poly.len() != 1 {
        return Err(CyclotomicError::NoMatch);
    }
    let tuple = diags
        .iter()
        .map(|m| partition_from_diagonals(m).ok_or(CyclotomicError::NoMatch))
        .collect::<Result<RTuple, _>>()?;
    Ok((tuple, roots))
}

fn synthetic_division(poly: &[Scalar], root: &Scalar) -> (Vec<Scalar>, Scalar) {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut acc = Scalar::zero();
    for c in poly {
        acc = acc.mul(root).add(c);
        out.push(acc.clone());
    }
    let rem = out.pop().expect("nonempty");
    (out, rem)
}

/// The partition whose diagonal `d` holds `m[d]` boxes, if one exists.
pub fn partition_from_diagonals(m: &BTreeMap<i64, usize>) -> Option<Partition> {
    let count = |d: i64| m.get(&d).copied().unwrap_or(0);
    let rows = count(0) + m.keys().filter(|&&d| d < 0).count();
    let mut parts = Vec::new();
    for j in 1..=rows.max(count(0)) as i64 {
        let right = m.iter().filter(|&(&d, &c)| d >= 0 && c as i64 >= j).count();
        let left = m
            .iter()
            .filter(|&(&d, &c)| d < 0 && j + d >= 1 && j + d <= c as i64)
            .count();
        parts.push(right + left);
    }
    let p = Partition::new(parts).ok()?;
    let mut check: BTreeMap<i64, usize> = BTreeMap::new();
    for (row, &len) in p.parts().iter().enumerate() {
        for col in 1..=len {
            *check.entry(col as i64 - row as i64 - 1).or_default() += 1;
        }
    }
    let expect: BTreeMap<i64, usize> = m.iter().filter(|(_, &c)| c > 0).map(|(&d, &c)| (d, c)).collect();
    (check == expect).then_some(p)
}

#[derive(Clone, Debug)]
pub struct GroupAlgebraEntry {
    pub tuple: RTuple,
    pub report: RelationReport,
}

/// Builds every inventory module for `u = (1, ζ, …, ζ^{r-1})` at generic `q`,
/// substitutes `q = 1` and checks the relations of `G(r,1,n)`.
pub fn group_algebra_mode(r: usize, n: usize) -> Result<Vec<GroupAlgebraEntry>, CyclotomicError> {
    let spec = CyclotomicSpec::group_algebra(r);
    let generic = CyclotomicSpec::new(spec.u.clone(), None)?;
    let one = CycRat::one();
    r_tuples(r, n)
        .into_par_iter()
        .map(|tuple| {
            let shape = tuple_shape(&generic, &tuple)?;
            let tm = transport(&CalibratedModule::build(&shape)?, &generic)?;
            let t = tm
                .specialize(&one)
                .map_err(|_| CyclotomicError::SpecializationPole(tuple_text(&tuple)))?;
            let report = verify_cyclotomic(&t, &spec.u, &Scalar::one());
            Ok(GroupAlgebraEntry { tuple, report })
        })
        .collect()
}

/// `a_0 = T_1^p`, `a_1 = T_1^{-1} T_2 T_1`, `a_i = T_i` for `i ≥ 2`.
pub fn a_generators(t: &[Matrix], p: usize) -> Vec<Matrix> {
    let mut out = vec![t[0].pow(p as i64).expect("square")];
    if t.len() >= 2 {
        let inv = inverse(&t[0]).expect("T1 invertible");
        out.push(&(&inv * &t[1]) * &t[0]);
    }
    out.extend(t[1..].iter().cloned());
    out
}

/// Number of `λ ∈ {0..r-1}^n` with `|λ| ≡ 0 mod p`.
pub fn graded_count(r: usize, p: usize, n: usize) -> usize {
    let mut counts = vec![0usize; p];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0usize; p];
        for (res, &c) in counts.iter().enumerate() {
            for v in 0..r {
                next[(res + v) % p] += c;
            }
        }
        counts = next;
    }
    counts[0]
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedDimension {
    pub dimension: usize,
    pub expected: usize,
    pub graded: usize,
}

/// Dimension of the subalgebra generated by the `a_i` inside the faithful
/// block-diagonal image of `H(r,1,n)`.
pub fn fixed_subalgebra_dimension(spec: &HrpnSpec, n: usize) -> Result<FixedDimension, CyclotomicError> {
    let inv = modules_inventory(&spec.cyclotomic(), n)?;
    let blocks: Vec<Vec<Matrix>> = inv.entries.iter().map(|e| a_generators(&e.module.t, spec.p)).collect();
    let gens: Vec<Vec<Matrix>> = (0..blocks[0].len())
        .map(|g| blocks.iter().map(|b| b[g].clone()).collect())
        .collect();
    let identity: Vec<Matrix> = inv.entries.iter().map(|e| Matrix::identity(e.module.dimension())).collect();
    let total = inv.expected();
    let dimension = span_closure(identity, &gens, total)?;
    let fact: usize = (1..=n).product();
    Ok(FixedDimension {
        dimension,
        expected: total / spec.p,
        graded: graded_count(spec.r, spec.p, n) * fact,
    })
}

pub(crate) fn flatten_blocks(blocks: &[Matrix]) -> SparseRow {
    let mut row = SparseRow::new();
    let mut off = 0;
    for b in blocks {
        for (k, v) in b.entries().iter().enumerate() {
            if !v.is_zero() {
                row.insert(off + k, v.clone());
            }
        }
        off += b.entries().len();
    }
    row
}

/// Dimension of the right ideal spanned by `start·w` over words `w` in `gens`,
/// where elements are tuples of blocks.
pub fn span_closure(start: Vec<Matrix>, gens: &[Vec<Matrix>], cap: usize) -> Result<usize, CyclotomicError> {
    let mut ech = SparseEchelon::new();
    ech.insert(flatten_blocks(&start));
    let mut queue = vec![start];
    while let Some(b) = queue.pop() {
        for g in gens {
            let prod: Vec<Matrix> = b.iter().zip(g).map(|(x, y)| x * y).collect();
            if ech.insert(flatten_blocks(&prod)) {
                if ech.rank() > cap {
                    return Err(CyclotomicError::ClosureDiverged);
                }
                queue.push(prod);
            }
        }
    }
    Ok(ech.rank())
}
