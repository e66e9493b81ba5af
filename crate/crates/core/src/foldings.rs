//! Homomorphisms given on generators, checked relation by relation on
//! matrix images, and the `G_2` obstruction.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{commutant_basis, inverse};
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, Scalar};
use crate::seminormal::RelationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldingError {
    #[error("relation {relation} fails in context {context}")]
    RelationFails { relation: String, context: String },
    #[error("generator count mismatch: {0} images for {1} generators")]
    ImageCount(usize, usize),
    #[error("candidate {0} satisfies the relation")]
    UnexpectedHomomorphism(String),
}

/// `coeff · g_{i_1}^{e_1} g_{i_2}^{e_2} …`
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Scalar,
    pub word: Vec<(usize, i64)>,
}

impl Term {
    pub fn new(coeff: Scalar, word: &[(usize, i64)]) -> Self {
        Term {
            coeff,
            word: word.to_vec(),
        }
    }

    fn word(word: &[(usize, i64)]) -> Self {
        Self::new(Scalar::one(), word)
    }

    fn neg_word(word: &[(usize, i64)]) -> Self {
        Self::new(Scalar::from_int(-1), word)
    }
}

/// `Σ terms = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<Term>,
}

impl Relation {
    /// `lhs = rhs` for two plain words.
    pub fn equal(name: String, lhs: &[(usize, i64)], rhs: &[(usize, i64)]) -> Self {
        Relation {
            name,
            terms: vec![Term::word(lhs), Term::neg_word(rhs)],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

/// Images of the generators of a presentation in one evaluation context.
#[derive(Clone, Debug)]
pub struct GeneratorMap<'a> {
    pub presentation: &'a Presentation,
    pub images: Vec<Matrix>,
}

impl GeneratorMap<'_> {
    pub fn check(&self) -> Result<RelationReport, FoldingError> {
        let p = self.presentation;
        if self.images.len() != p.generators.len() {
            return Err(FoldingError::ImageCount(self.images.len(), p.generators.len()));
        }
        let d = self.images.first().map_or(0, Matrix::rows);
        let inverses: Vec<Option<Matrix>> = self.images.iter().map(|m| inverse(m).ok()).collect();
        let eval = |word: &[(usize, i64)]| -> Option<Matrix> {
            let mut acc = Matrix::identity(d);
            for &(g, e) in word {
                let base = if e < 0 { inverses[g].as_ref()? } else { &self.images[g] };
                for _ in 0..e.unsigned_abs() {
                    acc = &acc * base;
                }
            }
            Some(acc)
        };
        let mut report = RelationReport::default();
        let zero = Matrix::zeros(d, d);
        for rel in &p.relations {
            let mut sum = zero.clone();
            let mut ok = true;
            for t in &rel.terms {
                match eval(&t.word) {
                    Some(m) => sum = &sum + &m.scale(&t.coeff),
                    None => ok = false,
                }
            }
            if !ok {
                // a non-invertible image fails every relation that inverts it
                sum = Matrix::identity(d);
            }
            report.push(rel.name.clone(), &sum, &zero);
        }
        Ok(report)
    }

    /// Like [`GeneratorMap::check`] but fails on the first broken relation.
    pub fn require(&self, context: &str) -> Result<RelationReport, FoldingError> {
        let r = self.check()?;
        if let Some(bad) = r.failures().next() {
            return Err(FoldingError::RelationFails {
                relation: bad.name.clone(),
                context: context.to_string(),
            });
        }
        Ok(r)
    }
}

fn hecke_relations(first_t: usize, n: usize, rels: &mut Vec<Relation>) {
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let t = |i: usize| first_t + i - 2;
    for i in 2..=n {
        rels.push(Relation {
            name: format!("quadratic T{i}"),
            terms: vec![
                Term::word(&[(t(i), 2)]),
                Term::new(q.sub(&qi).neg(), &[(t(i), 1)]),
                Term::new(Scalar::from_int(-1), &[]),
            ],
        });
    }
    for i in 2..n {
        rels.push(Relation::equal(
            format!("braid T{i} T{}", i + 1),
            &[(t(i), 1), (t(i + 1), 1), (t(i), 1)],
            &[(t(i + 1), 1), (t(i), 1), (t(i + 1), 1)],
        ));
    }
    for i in 2..=n {
        for j in i + 2..=n {
            rels.push(Relation::equal(
                format!("far T{i} T{j}"),
                &[(t(i), 1), (t(j), 1)],
                &[(t(j), 1), (t(i), 1)],
            ));
        }
    }
}

/// Generators `X1, T2..Tn` of the affine Hecke algebra.
pub fn affine_presentation(n: usize) -> Presentation {
    let mut generators = vec!["X1".to_string()];
    generators.extend((2..=n).map(|i| format!("T{i}")));
    let mut relations = Vec::new();
    hecke_relations(1, n, &mut relations);
    if n >= 2 {
        relations.push(Relation::equal(
            "X1 T2 X1 T2 = T2 X1 T2 X1".into(),
            &[(0, 1), (1, 1), (0, 1), (1, 1)],
            &[(1, 1), (0, 1), (1, 1), (0, 1)],
        ));
    }
    for i in 3..=n {
        relations.push(Relation::equal(
            format!("X1 T{i} = T{i} X1"),
            &[(0, 1), (i - 1, 1)],
            &[(i - 1, 1), (0, 1)],
        ));
    }
    Presentation { generators, relations }
}

/// Generators `Y0 = X^{pε_1}`, `Y1 = X^{ε_2-ε_1}`, `T2..Tn` of the fixed-point
/// subalgebra of the affine Hecke algebra (for `n ≥ 2`).
pub fn fixed_affine_presentation(p: usize, n: usize) -> Presentation {
    assert!(n >= 2);
    let mut generators = vec!["Y0".to_string(), "Y1".to_string()];
    generators.extend((2..=n).map(|i| format!("T{i}")));
    let (y0, y1, t2) = (0, 1, 2);
    let mut relations = Vec::new();
    hecke_relations(2, n, &mut relations);
    relations.push(Relation::equal("Y0 Y1 = Y1 Y0".into(), &[(y0, 1), (y1, 1)], &[(y1, 1), (y0, 1)]));
    for i in 3..=n {
        relations.push(Relation::equal(
            format!("Y0 T{i} = T{i} Y0"),
            &[(y0, 1), (i, 1)],
            &[(i, 1), (y0, 1)],
        ));
    }
    for i in 4..=n {
        relations.push(Relation::equal(
            format!("Y1 T{i} = T{i} Y1"),
            &[(y1, 1), (i, 1)],
            &[(i, 1), (y1, 1)],
        ));
    }
    let gap = Scalar::q().sub(&Scalar::q_pow(-1));
    // Y1 T2 = T2 Y1^{-1} + (q - q^{-1})(Y1 + 1)
    relations.push(Relation {
        name: "Y1 T2 cross".into(),
        terms: vec![
            Term::word(&[(y1, 1), (t2, 1)]),
            Term::neg_word(&[(t2, 1), (y1, -1)]),
            Term::new(gap.neg(), &[(y1, 1)]),
            Term::new(gap.neg(), &[]),
        ],
    });
    // Y0 T2 = T2 Y1^p Y0 - (q - q^{-1}) Y0 (Y1 + … + Y1^p)
    let mut terms = vec![
        Term::word(&[(y0, 1), (t2, 1)]),
        Term::neg_word(&[(t2, 1), (y1, p as i64), (y0, 1)]),
    ];
    for k in 1..=p as i64 {
        terms.push(Term::new(gap.clone(), &[(y0, 1), (y1, k)]));
    }
    relations.push(Relation {
        name: "Y0 T2 cross".into(),
        terms,
    });
    Presentation { generators, relations }
}

/// `Y0 ↦ a_0`, `Y1 ↦ a_1 a_2`, `T_i ↦ a_i` from `[a_0, a_1, a_2, …, a_n]`.
pub fn fixed_images(a: &[Matrix]) -> Vec<Matrix> {
    let mut out = vec![a[0].clone(), &a[1] * &a[2]];
    out.extend(a[2..].iter().cloned());
    out
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub n: Matrix,
    pub residual: Matrix,
    /// `(N ρ(T2))^3 - (ρ(T2) N)^3`
    pub braid6_residual: Matrix,
}

#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub rho_t1: Matrix,
    pub rho_t2: Matrix,
    pub t2_quadratic: bool,
    pub commutant: Vec<Matrix>,
    pub commutant_is_diagonal: bool,
    pub quadratic_candidates: usize,
    pub candidates: Vec<Candidate>,
}

impl ObstructionCertificate {
    pub fn all_candidates_fail(&self) -> bool {
        !self.candidates.is_empty() && self.candidates.iter().all(|c| !c.residual.is_zero())
    }

    pub fn to_json(&self) -> ObstructionJson {
        ObstructionJson {
            rho_t1: self.rho_t1.to_text_rows(1),
            rho_t2: self.rho_t2.to_text_rows(1),
            t2_quadratic: self.t2_quadratic,
            commutant_dimension: self.commutant.len(),
            commutant_is_diagonal: self.commutant_is_diagonal,
            quadratic_candidates: self.quadratic_candidates,
            candidates: self
                .candidates
                .iter()
                .map(|c| CandidateJson {
                    n: c.n.to_text_rows(1),
                    residual: c.residual.to_text_rows(1),
                    residual_nonzero: !c.residual.is_zero(),
                    braid6_residual_nonzero: !c.braid6_residual.is_zero(),
                })
                .collect(),
            all_fail: self.all_candidates_fail(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateJson {
    #[serde(rename = "N")]
    pub n: Vec<Vec<String>>,
    pub residual: Vec<Vec<String>>,
    pub residual_nonzero: bool,
    pub braid6_residual_nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionJson {
    pub rho_t1: Vec<Vec<String>>,
    pub rho_t2: Vec<Vec<String>>,
    pub t2_quadratic: bool,
    pub commutant_dimension: usize,
    pub commutant_is_diagonal: bool,
    pub quadratic_candidates: usize,
    pub candidates: Vec<CandidateJson>,
    pub all_fail: bool,
}

/// The two-dimensional representation of the `G_2` Hecke algebra.
pub fn g2_representation() -> (Matrix, Matrix) {
    let s = |t: &str| parse_scalar(t, 1).expect("literal");
    let t1 = Matrix::diag(&[s("q"), s("-q^-1")]);
    let c = s("1/(q + q^-1)");
    let t2 = Matrix::from_rows(vec![
        vec![s("2 - q^-2"), s("q^2 - 1 + q^-2")],
        vec![s("3"), s("q^2 - 2")],
    ])
    .expect("2x2")
    .scale(&c);
    (t1, t2)
}

/// Searches for `N` commuting with `ρ(T1)`, satisfying the quadratic
/// relation, with the trace and determinant of `ρ(T2)`, and records
/// `N ρ(T2) N - ρ(T2) N ρ(T2)` for each.
pub fn g2_obstruction() -> Result<ObstructionCertificate, FoldingError> {
    let (t1, t2) = g2_representation();
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let id = Matrix::identity(2);
    let quad = |m: &Matrix| (&(m - &id.scale(&q)) * &(m + &id.scale(&qi))).is_zero();
    let t2_quadratic = quad(&t2);

    let commutant = commutant_basis(std::slice::from_ref(&t1)).expect("square");
    let commutant_is_diagonal = commutant.len() == 2 && commutant.iter().all(Matrix::is_diagonal);

    // a diagonal matrix satisfies the quadratic relation iff its entries are
    // roots of t^2 - (q - q^{-1}) t - 1
    let roots = [q.clone(), qi.neg()];
    let mut quadratic = Vec::new();
    for a in &roots {
        for b in &roots {
            let n = Matrix::diag(&[a.clone(), b.clone()]);
            if quad(&n) {
                quadratic.push(n);
            }
        }
    }
    let det = |m: &Matrix| m.get(0, 0).mul(m.get(1, 1)).sub(&m.get(0, 1).mul(m.get(1, 0)));
    let candidates: Vec<Candidate> = quadratic
        .iter()
        .filter(|n| n.trace() == t2.trace() && det(n) == det(&t2))
        .map(|n| {
            let residual = &(&(n * &t2) * n) - &(&(&t2 * n) * &t2);
            let a = n * &t2;
            let b = &t2 * n;
            let braid6_residual = &(&(&a * &a) * &a) - &(&(&b * &b) * &b);
            Candidate {
                n: n.clone(),
                residual,
                braid6_residual,
            }
        })
        .collect();
    if let Some(c) = candidates.iter().find(|c| c.residual.is_zero()) {
        return Err(FoldingError::UnexpectedHomomorphism(c.n.to_string()));
    }
    Ok(ObstructionCertificate {
        rho_t1: t1,
        rho_t2: t2,
        t2_quadratic,
        commutant,
        commutant_is_diagonal,
        quadratic_candidates: quadratic.len(),
        candidates,
    })
}
