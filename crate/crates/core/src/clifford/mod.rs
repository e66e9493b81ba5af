//! The cyclic action `g(T_1) = ξT_1`, `g(T_i) = T_i` on `H(r,1,n)`, twisted
//! modules, intertwiners, factor sets and the decomposition of simple
//! modules on restriction to the fixed-point subalgebra.

pub mod algebra;
pub mod projective;

use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{
    a_generators, modules_inventory, tuple_text, CyclotomicError, HrpnSpec, RTuple, TransportedModule,
};
use crate::linalg::{column_basis, commutant_dimension, intertwiner_space, solve, LinalgError};
use crate::matrix::Matrix;
use crate::scalar::{CycRat, Scalar};
use crate::shapes::ShapeJson;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("g^{0} does not fix the shape")]
    NotInertial(usize),
    #[error("intertwiner space has dimension {0}")]
    NotSchur(usize),
    #[error("product of intertwiners for ({0}, {1}) is not a multiple of the intertwiner for their product")]
    NotProportional(usize, usize),
    #[error("generator {0} does not preserve piece {1}")]
    NotInvariant(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// The module `T_i ↦ ρ(g^{-k}(T_i))`: `T_1` is scaled by `ξ^{-k}`, the other
/// generators are unchanged.
pub fn twist(t: &[Matrix], xi: &CycRat, k: i64) -> Vec<Matrix> {
    let f = Scalar::from_cyc(xi.pow(-k).expect("root of unity"));
    let mut out = t.to_vec();
    out[0] = t[0].scale(&f);
    out
}

/// Permutation matrix `v_L ↦ v_{g^κ L}`. It satisfies `Φ T_1 = ξ^κ T_1 Φ` and
/// commutes with `T_2..T_n`.
pub fn tableau_intertwiner(tm: &TransportedModule, xi: &CycRat, kappa: usize) -> Result<Matrix, CliffordError> {
    let s = tm.module.shape();
    let (gs, perm) = s.apply_g(xi, kappa as i64);
    if gs != *s {
        return Err(CliffordError::NotInertial(kappa));
    }
    let basis = tm.module.basis();
    let d = basis.len();
    let mut phi = Matrix::zeros(d, d);
    for (j, l) in basis.iter().enumerate() {
        let gl = l.relabel(s, &gs, &perm);
        let i = basis.iter().position(|b| *b == gl).expect("relabeled tableau is standard");
        phi.set(i, j, Scalar::one());
    }
    Ok(phi)
}

/// `Φ T_1 = ξ^κ T_1 Φ` and `Φ T_i = T_i Φ`.
pub fn intertwines(phi: &Matrix, t: &[Matrix], xi: &CycRat, kappa: usize) -> bool {
    let f = Scalar::from_cyc(xi.pow(kappa as i64).expect("root of unity"));
    let first = phi * &t[0] == (&t[0] * phi).scale(&f);
    first && t[1..].iter().all(|m| phi * m == m * phi)
}

/// The unique (up to scalar) `Φ` with `Φ a = b Φ` for all generator pairs,
/// normalized so its first nonzero entry in row-major order is 1. `None` when
/// no invertible intertwiner exists.
pub fn solve_intertwiner(a: &[Matrix], b: &[Matrix]) -> Result<Option<Matrix>, CliffordError> {
    let da = a.first().map_or(0, Matrix::rows);
    let db = b.first().map_or(0, Matrix::rows);
    if da != db || a.len() != b.len() {
        return Ok(None);
    }
    let pairs: Vec<(&Matrix, &Matrix)> = a.iter().zip(b).collect();
    let space = intertwiner_space(&pairs, da, db)?;
    match space.len() {
        0 => Ok(None),
        1 => {
            let m = space.into_iter().next().expect("one");
            let lead = m.entries().iter().find(|x| !x.is_zero()).expect("nonzero").clone();
            let m = m.scale(&lead.inv().expect("nonzero"));
            Ok((crate::linalg::rank(&m) == da).then_some(m))
        }
        k => Err(CliffordError::NotSchur(k)),
    }
}

/// `α(g,h)` with `φ_g φ_h = α(g,h) φ_{gh}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    pub table: Vec<Vec<Scalar>>,
}

impl FactorSet {
    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(Scalar::is_one)
    }

    /// `α(g,h)α(gh,k) = α(h,k)α(g,hk)` for all triples.
    pub fn is_cocycle(&self, mult: &[Vec<usize>]) -> bool {
        let n = mult.len();
        let a = &self.table;
        (0..n).all(|g| {
            (0..n).all(|h| {
                (0..n).all(|k| a[g][h].mul(&a[mult[g][h]][k]) == a[h][k].mul(&a[g][mult[h][k]]))
            })
        })
    }
}

/// Reads off the factor set of a family of intertwiners indexed by a group
/// with multiplication table `mult`.
pub fn factor_set(mult: &[Vec<usize>], phis: &[Matrix]) -> Result<FactorSet, CliffordError> {
    let n = mult.len();
    let mut table = vec![vec![Scalar::zero(); n]; n];
    for g in 0..n {
        for h in 0..n {
            let prod = &phis[g] * &phis[h];
            let target = &phis[mult[g][h]];
            let pos = target
                .entries()
                .iter()
                .position(|x| !x.is_zero())
                .ok_or(CliffordError::NotProportional(g, h))?;
            let c = prod.entries()[pos].div(&target.entries()[pos]).expect("nonzero");
            if prod != target.scale(&c) || c.is_zero() {
                return Err(CliffordError::NotProportional(g, h));
            }
            table[g][h] = c;
        }
    }
    Ok(FactorSet { table })
}

/// Multiplication table of `Z/k`.
pub fn cyclic_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

/// Coefficients of `p_j = (1/|K|) Σ_ℓ ξ^{-jℓκ} g^{ℓκ}` on `g^{ℓκ}`,
/// `ℓ = 0..|K|-1`, for `j = 0..|K|-1`.
pub fn idempotents(kappa: usize, order: usize, xi: &CycRat) -> Vec<Vec<Scalar>> {
    let norm = Scalar::from_int(order as i64).inv().expect("nonzero");
    (0..order)
        .map(|j| {
            (0..order)
                .map(|l| {
                    let e = -((j * l * kappa) as i64);
                    Scalar::from_cyc(xi.pow(e).expect("root of unity")).mul(&norm)
                })
                .collect()
        })
        .collect()
}

/// `Σ_ℓ c_ℓ Φ^ℓ`.
pub fn realize(coeffs: &[Scalar], phi: &Matrix) -> Matrix {
    let d = phi.rows();
    let mut acc = Matrix::zeros(d, d);
    let mut power = Matrix::identity(d);
    for c in coeffs {
        acc = &acc + &power.scale(c);
        power = &power * phi;
    }
    acc
}

/// Idempotent, pairwise orthogonal, summing to the identity.
pub fn projectors_are_orthogonal(ps: &[Matrix]) -> bool {
    let Some(d) = ps.first().map(Matrix::rows) else {
        return false;
    };
    let zero = Matrix::zeros(d, d);
    let sum = ps.iter().fold(zero.clone(), |acc, p| &acc + p);
    sum.is_identity()
        && ps.iter().enumerate().all(|(j, p)| {
            ps.iter()
                .enumerate()
                .all(|(k, r)| (p * r) == if j == k { p.clone() } else { zero.clone() })
        })
}

/// Matrices of the generators on the column span of `basis`, which must be
/// invariant.
pub fn restrict(gens: &[Matrix], basis: &Matrix, piece: usize) -> Result<Vec<Matrix>, CliffordError> {
    let k = basis.cols();
    gens.iter()
        .enumerate()
        .map(|(gi, g)| {
            let image = g * basis;
            let cols = (0..k)
                .map(|c| solve(basis, &image.column(c))?.ok_or(CliffordError::NotInvariant(gi, piece)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_columns(k, &cols))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub j: usize,
    pub dim: usize,
    pub simple: bool,
    /// Restricted `a_0, a_1, a_2, …`.
    pub gens: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub shape: ShapeJson,
    pub kappa: usize,
    pub k: usize,
    pub intertwiner_ok: bool,
    pub factor_set_trivial: bool,
    pub projectors: Vec<Matrix>,
    pub projectors_ok: bool,
    pub pieces: Vec<Piece>,
}

impl DecompositionReport {
    pub fn all_ok(&self) -> bool {
        self.intertwiner_ok
            && self.factor_set_trivial
            && self.projectors_ok
            && self.pieces.iter().all(|p| p.dim == 0 || p.simple)
    }
}

/// Splits a simple `H(r,1,n)`-module into the pieces `p_j M` over `H(r,p,n)`.
pub fn decompose_fixed(tm: &TransportedModule, spec: &HrpnSpec) -> Result<DecompositionReport, CliffordError> {
    let s = tm.module.shape();
    let (kappa, k) = s.inertia(&spec.xi, spec.p);
    let phi = tableau_intertwiner(tm, &spec.xi, kappa)?;
    let intertwiner_ok = intertwines(&phi, &tm.t, &spec.xi, kappa);
    let powers: Vec<Matrix> = (0..k).map(|l| phi.pow(l as i64)).collect::<Result<_, _>>()?;
    let fs = factor_set(&cyclic_table(k), &powers)?;
    let factor_set_trivial = fs.is_trivial() && fs.is_cocycle(&cyclic_table(k));
    let projectors: Vec<Matrix> = idempotents(kappa, k, &spec.xi).iter().map(|c| realize(c, &phi)).collect();
    let projectors_ok = projectors_are_orthogonal(&projectors);
    let gens = a_generators(&tm.t, spec.p);
    let mut pieces = Vec::with_capacity(k);
    for (j, pj) in projectors.iter().enumerate() {
        let cols = column_basis(pj);
        let basis = Matrix::from_columns(pj.rows(), &cols.iter().map(|&c| pj.column(c)).collect::<Vec<_>>());
        if cols.is_empty() {
            pieces.push(Piece {
                j,
                dim: 0,
                simple: false,
                gens: Vec::new(),
            });
            continue;
        }
        let restricted = restrict(&gens, &basis, j)?;
        let simple = commutant_dimension(&restricted)? == 1;
        pieces.push(Piece {
            j,
            dim: cols.len(),
            simple,
            gens: restricted,
        });
    }
    Ok(DecompositionReport {
        shape: s.to_json(),
        kappa,
        k,
        intertwiner_ok,
        factor_set_trivial,
        projectors,
        projectors_ok,
        pieces,
    })
}

#[derive(Clone, Debug)]
pub struct OrbitClass {
    pub members: Vec<RTuple>,
    pub report: DecompositionReport,
    /// Every orbit mate restricts to pieces isomorphic to the representative's.
    pub mates_isomorphic: bool,
}

#[derive(Clone, Debug)]
pub struct FullDecomposition {
    pub classes: Vec<OrbitClass>,
    pub sum_dim_squared: usize,
    pub expected: usize,
    /// Pieces from distinct classes, or distinct pieces of one class, are
    /// never isomorphic.
    pub pieces_distinct: bool,
}

impl FullDecomposition {
    pub fn all_ok(&self) -> bool {
        self.sum_dim_squared == self.expected
            && self.pieces_distinct
            && self.classes.iter().all(|c| c.mates_isomorphic && c.report.all_ok())
    }
}

fn isomorphic(a: &Piece, b: &Piece) -> Result<bool, CliffordError> {
    if a.dim != b.dim || a.dim == 0 {
        return Ok(false);
    }
    Ok(solve_intertwiner(&a.gens, &b.gens)?.is_some())
}

/// Decomposes every simple `H(r,1,n)`-module, grouped into `g`-orbits.
pub fn decompose_all(spec: &HrpnSpec, n: usize) -> Result<FullDecomposition, CliffordError> {
    let inv = modules_inventory(&spec.cyclotomic(), n)?;
    let entries = &inv.entries;
    let mut class_of: Vec<Option<usize>> = vec![None; entries.len()];
    let mut classes = Vec::new();
    for i in 0..entries.len() {
        if class_of[i].is_some() {
            continue;
        }
        let s = entries[i].module.module.shape();
        let orbit: Vec<_> = (0..spec.p).map(|k| s.apply_g(&spec.xi, k as i64).0).collect();
        let mut members = Vec::new();
        for (j, e) in entries.iter().enumerate().skip(i) {
            if class_of[j].is_none() && orbit.contains(e.module.module.shape()) {
                class_of[j] = Some(classes.len());
                members.push(j);
            }
        }
        let report = decompose_fixed(&entries[i].module, spec)?;
        let mut mates_isomorphic = true;
        for &j in &members[1..] {
            let mate = decompose_fixed(&entries[j].module, spec)?;
            for p in report.pieces.iter().filter(|p| p.dim > 0) {
                let mut found = false;
                for m in &mate.pieces {
                    if isomorphic(p, m)? {
                        found = true;
                        break;
                    }
                }
                mates_isomorphic &= found;
            }
        }
        classes.push(OrbitClass {
            members: members.iter().map(|&j| entries[j].tuple.clone()).collect(),
            report,
            mates_isomorphic,
        });
    }
    let all: Vec<&Piece> = classes
        .iter()
        .flat_map(|c| c.report.pieces.iter().filter(|p| p.dim > 0))
        .collect();
    let mut pieces_distinct = true;
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if isomorphic(all[a], all[b])? {
                pieces_distinct = false;
            }
        }
    }
    let sum_dim_squared = all.iter().map(|p| p.dim * p.dim).sum();
    Ok(FullDecomposition {
        classes,
        sum_dim_squared,
        expected: inv.expected() / spec.p,
        pieces_distinct,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceJson {
    pub j: usize,
    pub dim: usize,
    pub simple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub shape: ShapeJson,
    pub members: Vec<String>,
    pub kappa: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub pieces: Vec<PieceJson>,
}

impl OrbitClass {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            shape: self.report.shape.clone(),
            members: self.members.iter().map(tuple_text).collect(),
            kappa: self.report.kappa,
            k: self.report.k,
            pieces: self
                .report
                .pieces
                .iter()
                .map(|p| PieceJson {
                    j: p.j,
                    dim: p.dim,
                    simple: p.simple,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{transport, tuple_shape, verify_cyclotomic, CyclotomicSpec};
    use crate::scalar::parse_scalar;
    use crate::seminormal::CalibratedModule;
    use crate::shapes::{Page, Partition, PlacedSkewShape, SkewShape};

    fn s(t: &str) -> Scalar {
        parse_scalar(t, 1).unwrap()
    }

    fn pm1_module() -> TransportedModule {
        let spec = CyclotomicSpec::new(vec![s("1"), s("-1")], None).unwrap();
        let shape = tuple_shape(&spec, &vec![Partition::new(vec![1]).unwrap(); 2]).unwrap();
        transport(&CalibratedModule::build(&shape).unwrap(), &spec).unwrap()
    }

    #[test]
    fn twisting() {
        let xi = CycRat::zeta(1, 2);
        let spec = CyclotomicSpec::new(vec![s("1"), s("-1")], None).unwrap();
        let shape = PlacedSkewShape::single(s("1"), &[2], &[]).unwrap();
        let tm = transport(&CalibratedModule::build(&shape).unwrap(), &spec).unwrap();
        assert_eq!(twist(&tm.t, &xi, 0), tm.t);
        assert_eq!(twist(&tm.t, &xi, 2), tm.t);
        let tw = twist(&tm.t, &xi, 1);
        let g = CalibratedModule::build(&shape.apply_g(&xi, 1).0).unwrap();
        let gm = transport(&g, &spec).unwrap();
        assert_eq!(tw, gm.t);
        assert!(verify_cyclotomic(&tw, &spec.u, &Scalar::q()).all_hold());
    }

    #[test]
    fn swap_intertwiner() {
        let xi = CycRat::zeta(1, 2);
        let tm = pm1_module();
        let phi = tableau_intertwiner(&tm, &xi, 1).unwrap();
        let swap = Matrix::from_rows(vec![vec![s("0"), s("1")], vec![s("1"), s("0")]]).unwrap();
        assert_eq!(phi, swap);
        assert_eq!(&(&phi * tm.ti(1)) * &phi, tm.ti(1).scale(&s("-1")));
        assert!(intertwines(&phi, &tm.t, &xi, 1));
        let tw = twist(&tm.t, &xi, 1);
        let solved = solve_intertwiner(&tw, &tm.t).unwrap().unwrap();
        assert_eq!(solved, swap);
        let single = PlacedSkewShape::single(s("1"), &[2], &[]).unwrap();
        let spec = CyclotomicSpec::new(vec![s("1"), s("-1")], None).unwrap();
        let one = transport(&CalibratedModule::build(&single).unwrap(), &spec).unwrap();
        assert!(matches!(
            tableau_intertwiner(&one, &xi, 1),
            Err(CliffordError::NotInertial(1))
        ));
        assert!(tableau_intertwiner(&one, &xi, 2).unwrap().is_identity());
    }

    #[test]
    fn intertwiner_solving() {
        let m = CalibratedModule::build(&PlacedSkewShape::single(s("1"), &[2, 1], &[]).unwrap()).unwrap();
        let id = solve_intertwiner(&m.generators(), &m.generators()).unwrap().unwrap();
        assert!(id.is_identity());
        let a = CalibratedModule::build(&PlacedSkewShape::single(s("1"), &[2], &[]).unwrap()).unwrap();
        let b = CalibratedModule::build(&PlacedSkewShape::single(s("1"), &[1, 1], &[]).unwrap()).unwrap();
        assert_eq!(solve_intertwiner(a.ts(), b.ts()).unwrap(), None);
        let i2 = vec![Matrix::identity(2)];
        assert_eq!(solve_intertwiner(&i2, &i2), Err(CliffordError::NotSchur(4)));
    }

    #[test]
    fn factor_sets() {
        let xi = CycRat::zeta(1, 2);
        let phi = tableau_intertwiner(&pm1_module(), &xi, 1).unwrap();
        let table = cyclic_table(2);
        let fs = factor_set(&table, &[Matrix::identity(2), phi.clone()]).unwrap();
        assert!(fs.is_trivial() && fs.is_cocycle(&table));
        // rescaling φ changes α by a coboundary
        let fs2 = factor_set(&table, &[Matrix::identity(2), phi.scale(&s("q"))]).unwrap();
        assert_eq!(fs2.table[1][1], s("q^2"));
        assert!(fs2.is_cocycle(&table));
        let one = factor_set(&cyclic_table(1), &[Matrix::identity(3)]).unwrap();
        assert!(one.is_trivial());
        let bad = factor_set(&table, &[Matrix::identity(2), Matrix::diag(&[s("1"), s("2")])]);
        assert!(matches!(bad, Err(CliffordError::NotProportional(1, 1))));
    }

    #[test]
    fn projectors() {
        let xi = CycRat::zeta(1, 2);
        let p = idempotents(1, 2, &xi);
        assert_eq!(p, vec![vec![s("1/2"), s("1/2")], vec![s("1/2"), s("-1/2")]]);
        assert_eq!(idempotents(1, 1, &xi), vec![vec![s("1")]]);
        let phi = tableau_intertwiner(&pm1_module(), &xi, 1).unwrap();
        let ps: Vec<Matrix> = p.iter().map(|c| realize(c, &phi)).collect();
        assert!(projectors_are_orthogonal(&ps));
        // p_j affords g^κ ↦ ξ^{jκ}
        assert_eq!(&phi * &ps[1], ps[1].scale(&s("-1")));
        let mut broken = ps.clone();
        broken[0].set(0, 0, s("1"));
        assert!(!projectors_are_orthogonal(&broken));
        let z3 = CycRat::zeta(1, 3);
        let c = idempotents(1, 3, &z3);
        let cyc = Matrix::from_rows(vec![
            vec![s("0"), s("0"), s("1")],
            vec![s("1"), s("0"), s("0")],
            vec![s("0"), s("1"), s("0")],
        ])
        .unwrap();
        let ps: Vec<Matrix> = c.iter().map(|v| realize(v, &cyc)).collect();
        assert!(projectors_are_orthogonal(&ps));
    }

    #[test]
    fn decompose_small() {
        let spec = HrpnSpec::generic(2, 2).unwrap();
        let rep = decompose_fixed(&pm1_module(), &spec).unwrap();
        assert_eq!((rep.kappa, rep.k), (1, 2));
        assert!(rep.all_ok());
        assert_eq!(rep.pieces.iter().map(|p| p.dim).collect::<Vec<_>>(), vec![1, 1]);

        let cspec = spec.cyclotomic();
        let page = Page {
            token: s("1"),
            shape: SkewShape::partition(Partition::new(vec![2]).unwrap()),
        };
        let shape = PlacedSkewShape::new(vec![page]).unwrap();
        let tm = transport(&CalibratedModule::build(&shape).unwrap(), &cspec).unwrap();
        let rep = decompose_fixed(&tm, &spec).unwrap();
        assert_eq!((rep.kappa, rep.k, rep.pieces.len(), rep.pieces[0].dim), (2, 1, 1, 1));
        assert!(rep.all_ok());

        let full = decompose_all(&spec, 2).unwrap();
        assert_eq!(full.classes.len(), 3);
        assert_eq!(full.sum_dim_squared, 4);
        assert!(full.all_ok());
    }
}
