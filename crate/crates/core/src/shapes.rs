//! Partitions, skew shapes, placed skew shapes and standard tableaux.
//!
//! A placed skew shape is a list of pages, each a skew shape carrying a
//! nonzero token. A box `b` on a page with token `t` has
//! `q^{2c(b)} = t·q^{2·diag(b)}` where `diag(b) = col - row`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{lcm, parse_scalar, CycRat, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("parts {0:?} are not a partition")]
    NotPartition(Vec<usize>),
    #[error("inner shape {inner:?} is not contained in {outer:?}")]
    NotContained { outer: Vec<usize>, inner: Vec<usize> },
    #[error("pages {0} and {1} have boxes with adjacent or equal contents")]
    PageCollision(usize, usize),
    #[error("page {0} has a zero token")]
    ZeroToken(usize),
    #[error("shape has no boxes")]
    EmptyShape,
    #[error("token: {0}")]
    Token(#[from] ScalarError),
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is an error.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, ShapeError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(ShapeError::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                go(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions fitting inside a `rows × cols` rectangle.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for k in 1..=max {
                cur.push(k);
                go(rows, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

/// `λ/μ`, stored in a canonical form determined by its box set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if !outer.contains(&inner) {
            return Err(ShapeError::NotContained {
                outer: outer.0,
                inner: inner.0,
            });
        }
        Ok(Self::from_rows(
            &(0..outer.len())
                .map(|i| (inner.part(i), outer.part(i)))
                .collect::<Vec<_>>(),
        ))
    }

    pub fn partition(p: Partition) -> Self {
        SkewShape {
            outer: p,
            inner: Partition::empty(),
        }
    }

    /// From per-row `(μ_i, λ_i)`, normalizing empty rows.
    fn from_rows(rows: &[(usize, usize)]) -> Self {
        let mut rows = rows.to_vec();
        while rows.last().is_some_and(|&(a, b)| a == b) {
            rows.pop();
        }
        for i in (0..rows.len()).rev() {
            if rows[i].0 == rows[i].1 {
                let below = rows[i + 1].1;
                rows[i] = (below, below);
            }
        }
        SkewShape {
            outer: Partition(rows.iter().map(|r| r.1).collect()),
            inner: Partition::new(rows.iter().map(|r| r.0).collect()).expect("inner shape"),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Boxes as 1-based `(row, col)`, row by row.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.outer.len() {
            for c in self.inner.part(i) + 1..=self.outer.part(i) {
                v.push((i + 1, c));
            }
        }
        v
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1 && col > self.inner.part(row - 1) && col <= self.outer.part(row - 1)
    }

    /// Every skew shape with `n` boxes whose first row and first column are
    /// occupied. Up to a diagonal translation, which leaves contents fixed,
    /// these are all skew shapes with `n` boxes.
    pub fn all_normalized(n: usize) -> Vec<SkewShape> {
        let mut seen = BTreeSet::new();
        let parts = Partition::in_box(n, n);
        for lam in &parts {
            for mu in &parts {
                if !lam.contains(mu) || lam.size() != mu.size() + n {
                    continue;
                }
                let s = SkewShape::new(lam.clone(), mu.clone()).expect("contained");
                let b = s.boxes();
                if b.iter().any(|&(r, _)| r == 1) && b.iter().any(|&(_, c)| c == 1) {
                    seen.insert(s);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// A box of a placed skew shape; `row` and `col` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub page: usize,
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn diag(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub token: Scalar,
    pub shape: SkewShape,
}

/// A validated placed skew shape with its box numbering.
#[derive(Clone, Debug)]
pub struct PlacedSkewShape {
    pages: Vec<Page>,
    cells: Vec<Cell>,
    order: u32,
}

impl PartialEq for PlacedSkewShape {
    fn eq(&self, other: &Self) -> bool {
        self.pages == other.pages
    }
}

impl Eq for PlacedSkewShape {}

fn page_cmp(a: &Page, b: &Page, order: u32) -> Ordering {
    a.token
        .to_text_at(order)
        .cmp(&b.token.to_text_at(order))
        .then_with(|| a.shape.cmp(&b.shape))
}

/// If `ratio = q^{2k}` for an integer `k`, returns `k`.
fn even_q_power(ratio: &Scalar) -> Option<i64> {
    let (c, e) = ratio.as_monomial()?;
    (c.is_one() && e % 2 == 0).then_some(e as i64 / 2)
}

impl PlacedSkewShape {
    /// Validates and canonicalizes. Pages are sorted; empty pages are dropped.
    pub fn new(pages: Vec<Page>) -> Result<Self, ShapeError> {
        Self::with_permutation(pages).map(|(s, _)| s)
    }

    /// Like [`PlacedSkewShape::new`], also returning where each input page
    /// went (`None` for dropped empty pages).
    pub fn with_permutation(pages: Vec<Page>) -> Result<(Self, Vec<Option<usize>>), ShapeError> {
        for (i, p) in pages.iter().enumerate() {
            if p.token.is_zero() {
                return Err(ShapeError::ZeroToken(i));
            }
        }
        let order = pages.iter().map(|p| p.token.cyc_order()).fold(1, lcm);
        let mut idx: Vec<usize> = (0..pages.len()).filter(|&i| pages[i].shape.size() > 0).collect();
        if idx.is_empty() {
            return Err(ShapeError::EmptyShape);
        }
        idx.sort_by(|&a, &b| page_cmp(&pages[a], &pages[b], order));
        let mut perm = vec![None; pages.len()];
        for (new, &old) in idx.iter().enumerate() {
            perm[old] = Some(new);
        }
        let sorted: Vec<Page> = idx.iter().map(|&i| pages[i].clone()).collect();

        // coset class and q^2-offset of each page relative to its class head
        let mut class: Vec<(usize, i64)> = Vec::with_capacity(sorted.len());
        for (i, p) in sorted.iter().enumerate() {
            let found = (0..i).find_map(|j| {
                let (head, off) = class[j];
                let r = p.token.div(&sorted[j].token).ok()?;
                even_q_power(&r).map(|k| (head, off + k))
            });
            class.push(found.unwrap_or((i, 0)));
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                if class[i].0 != class[j].0 {
                    continue;
                }
                let shift = class[i].1 - class[j].1;
                let bi = sorted[i].shape.boxes();
                let bj = sorted[j].shape.boxes();
                let collide = bi.iter().any(|&(r1, c1)| {
                    bj.iter().any(|&(r2, c2)| {
                        let d = shift + (c1 as i64 - r1 as i64) - (c2 as i64 - r2 as i64);
                        d.abs() <= 1
                    })
                });
                if collide {
                    let a = idx[i].min(idx[j]);
                    let b = idx[i].max(idx[j]);
                    return Err(ShapeError::PageCollision(a, b));
                }
            }
        }

        let mut keyed: Vec<((usize, i64, usize, usize), Cell)> = Vec::new();
        for (pi, p) in sorted.iter().enumerate() {
            for (row, col) in p.shape.boxes() {
                let cell = Cell { page: pi, row, col };
                keyed.push(((class[pi].0, class[pi].1 + cell.diag(), pi, row), cell));
            }
        }
        keyed.sort();
        Ok((
            PlacedSkewShape {
                pages: sorted,
                cells: keyed.into_iter().map(|(_, c)| c).collect(),
                order,
            },
            perm,
        ))
    }

    /// One page with token `token` and shape `outer/inner`.
    pub fn single(token: Scalar, outer: &[usize], inner: &[usize]) -> Result<Self, ShapeError> {
        Self::new(vec![Page {
            token,
            shape: SkewShape::new(Partition::new(outer.to_vec())?, Partition::new(inner.to_vec())?)?,
        }])
    }

    pub fn pages(&self) -> &[Page] {
        &self.pages
    }

    /// Boxes in numbering order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cyclotomic order needed to write the tokens.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cell_index(&self, c: &Cell) -> Option<usize> {
        self.cells.iter().position(|x| x == c)
    }

    fn has(&self, page: usize, row: usize, col: usize) -> bool {
        col >= 1 && self.pages[page].shape.contains_box(row, col)
    }

    /// `q^{2c(b)}`.
    pub fn content(&self, c: &Cell) -> Scalar {
        self.pages[c.page].token.mul(&Scalar::q_pow(2 * c.diag() as i32))
    }

    /// Boxes with no box directly above or to the left on the same page.
    pub fn nw_corners(&self) -> Vec<Cell> {
        self.cells
            .iter()
            .filter(|c| !self.has(c.page, c.row.wrapping_sub(1), c.col) && !self.has(c.page, c.row, c.col - 1))
            .copied()
            .collect()
    }

    /// All standard tableaux, in filling order of the search.
    pub fn standard_tableaux(&self) -> Vec<StandardTableau> {
        let n = self.size();
        let mut out = Vec::new();
        let mut filled = vec![false; n];
        let mut seq = Vec::with_capacity(n);
        self.fill(&mut filled, &mut seq, &mut out);
        out
    }

    fn fill(&self, filled: &mut [bool], seq: &mut Vec<usize>, out: &mut Vec<StandardTableau>) {
        if seq.len() == filled.len() {
            out.push(StandardTableau { cells: seq.clone() });
            return;
        }
        for i in 0..filled.len() {
            if filled[i] {
                continue;
            }
            let c = self.cells[i];
            let ready = |r: usize, col: usize| {
                !self.has(c.page, r, col)
                    || filled[self
                        .cell_index(&Cell { page: c.page, row: r, col })
                        .expect("box")]
            };
            if ready(c.row.wrapping_sub(1), c.col) && ready(c.row, c.col - 1) {
                filled[i] = true;
                seq.push(i);
                self.fill(filled, seq, out);
                seq.pop();
                filled[i] = false;
            }
        }
    }

    /// Multiplies every token by `xi^{-steps}`. Also returns the induced page
    /// permutation `old page -> new page`.
    pub fn apply_g(&self, xi: &CycRat, steps: i64) -> (PlacedSkewShape, Vec<usize>) {
        let f = Scalar::from_cyc(xi.pow(-steps).expect("root of unity"));
        let pages = self
            .pages
            .iter()
            .map(|p| Page {
                token: p.token.mul(&f),
                shape: p.shape.clone(),
            })
            .collect();
        let (s, perm) = PlacedSkewShape::with_permutation(pages).expect("g preserves validity");
        (s, perm.into_iter().map(|x| x.expect("nonempty")).collect())
    }

    /// Least `κ ≥ 1` with `g^κ` fixing the shape, and `|K| = p/κ`.
    pub fn inertia(&self, xi: &CycRat, p: usize) -> (usize, usize) {
        let kappa = (1..=p)
            .find(|&k| p.is_multiple_of(k) && self.apply_g(xi, k as i64).0 == *self)
            .unwrap_or(p);
        (kappa, p / kappa)
    }

    pub fn to_json(&self) -> ShapeJson {
        ShapeJson {
            pages: self
                .pages
                .iter()
                .map(|p| PageJson {
                    token: p.token.to_text_at(self.order),
                    outer: p.shape.outer.0.clone(),
                    inner: p.shape.inner.0.clone(),
                })
                .collect(),
        }
    }

    /// Parses tokens with `z` read as `ζ_order`.
    pub fn from_json(j: &ShapeJson, order: u32) -> Result<Self, ShapeError> {
        let pages = j
            .pages
            .iter()
            .map(|p| {
                Ok(Page {
                    token: parse_scalar(&p.token, order)?,
                    shape: SkewShape::new(Partition::new(p.outer.clone())?, Partition::new(p.inner.clone())?)?,
                })
            })
            .collect::<Result<Vec<_>, ShapeError>>()?;
        Self::new(pages)
    }
}

/// A bijective filling: `cells[v - 1]` is the index (in numbering order) of
/// the box containing `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    cells: Vec<usize>,
}

impl StandardTableau {
    pub fn from_cells(cells: Vec<usize>) -> Self {
        StandardTableau { cells }
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Box index holding value `v` (1-based).
    pub fn cell_of(&self, v: usize) -> usize {
        self.cells[v - 1]
    }

    pub fn is_standard(&self, s: &PlacedSkewShape) -> bool {
        let mut value = vec![0usize; s.size()];
        for (v, &c) in self.cells.iter().enumerate() {
            value[c] = v + 1;
        }
        s.cells().iter().enumerate().all(|(i, c)| {
            let ok = |r: usize, col: usize| {
                col == 0
                    || !s.has(c.page, r, col)
                    || value[s.cell_index(&Cell { page: c.page, row: r, col }).expect("box")] < value[i]
            };
            ok(c.row.wrapping_sub(1), c.col) && ok(c.row, c.col - 1)
        })
    }

    /// `(q^{2c(L(1))}, …, q^{2c(L(n))})`.
    pub fn contents(&self, s: &PlacedSkewShape) -> Vec<Scalar> {
        self.cells.iter().map(|&c| s.content(&s.cells()[c])).collect()
    }

    /// Swaps the entries `i - 1` and `i`.
    pub fn swapped(&self, i: usize) -> StandardTableau {
        let mut cells = self.cells.clone();
        cells.swap(i - 2, i - 1);
        StandardTableau { cells }
    }

    /// The same filling carried to `target` along a page permutation.
    pub fn relabel(&self, s: &PlacedSkewShape, target: &PlacedSkewShape, perm: &[usize]) -> StandardTableau {
        let cells = self
            .cells
            .iter()
            .map(|&i| {
                let c = s.cells()[i];
                let moved = Cell {
                    page: perm[c.page],
                    ..c
                };
                target.cell_index(&moved).expect("relabeled box")
            })
            .collect();
        StandardTableau { cells }
    }

    pub fn to_json(&self, s: &PlacedSkewShape) -> TableauJson {
        TableauJson {
            entries: self
                .cells
                .iter()
                .enumerate()
                .map(|(v, &i)| {
                    let c = s.cells()[i];
                    EntryJson {
                        page: c.page,
                        row: c.row,
                        col: c.col,
                        value: v + 1,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageJson {
    pub token: String,
    pub outer: Vec<usize>,
    #[serde(default)]
    pub inner: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub pages: Vec<PageJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub page: usize,
    pub row: usize,
    pub col: usize,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub entries: Vec<EntryJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(t: &str) -> Scalar {
        parse_scalar(t, 1).unwrap()
    }

    fn page(t: &str, outer: &[usize], inner: &[usize]) -> Page {
        Page {
            token: tok(t),
            shape: SkewShape::new(Partition::new(outer.to_vec()).unwrap(), Partition::new(inner.to_vec()).unwrap())
                .unwrap(),
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap().parts(), &[2, 1]);
        assert_eq!(Partition::all(4).len(), 5);
    }

    #[test]
    fn construction_errors() {
        let bad = SkewShape::new(Partition::new(vec![1]).unwrap(), Partition::new(vec![2]).unwrap());
        assert!(matches!(bad, Err(ShapeError::NotContained { .. })));
        let collide = PlacedSkewShape::new(vec![page("1", &[1], &[]), page("q^2", &[1], &[])]);
        assert!(matches!(collide, Err(ShapeError::PageCollision(0, 1))));
        let zero = PlacedSkewShape::new(vec![page("0", &[1], &[])]);
        assert!(matches!(zero, Err(ShapeError::ZeroToken(0))));
        assert!(matches!(
            PlacedSkewShape::new(vec![page("1", &[], &[])]),
            Err(ShapeError::EmptyShape)
        ));
        // same coset but far apart
        assert!(PlacedSkewShape::new(vec![page("1", &[1], &[]), page("q^6", &[1], &[])]).is_ok());
        assert!(PlacedSkewShape::new(vec![page("1", &[1], &[]), page("q^3", &[1], &[])]).is_ok());
    }

    #[test]
    fn big_partition() {
        let s = PlacedSkewShape::single(tok("1"), &[5, 5, 3, 3, 1, 1], &[]).unwrap();
        assert_eq!(s.size(), 18);
        let u = PlacedSkewShape::single(tok("q^3"), &[1], &[]).unwrap();
        assert_eq!(u.content(&u.cells()[0]), tok("q^3"));
    }

    #[test]
    fn tableaux_counts() {
        let s = PlacedSkewShape::single(tok("1"), &[2, 1], &[]).unwrap();
        assert_eq!(s.standard_tableaux().len(), 2);
        let row = PlacedSkewShape::single(tok("1"), &[4], &[]).unwrap();
        assert_eq!(row.standard_tableaux().len(), 1);
        let two = PlacedSkewShape::new(vec![page("1", &[1], &[]), page("-1", &[1], &[])]).unwrap();
        assert_eq!(two.standard_tableaux().len(), 2);
    }

    #[test]
    fn contents() {
        let row = PlacedSkewShape::single(tok("1"), &[2], &[]).unwrap();
        let t = &row.standard_tableaux()[0];
        assert_eq!(t.contents(&row), vec![tok("1"), tok("q^2")]);
        let col = PlacedSkewShape::single(tok("1"), &[1, 1], &[]).unwrap();
        let t = &col.standard_tableaux()[0];
        assert_eq!(t.contents(&col), vec![tok("1"), tok("q^-2")]);
    }

    #[test]
    fn corners() {
        let s = PlacedSkewShape::single(tok("1"), &[2, 1], &[]).unwrap();
        assert_eq!(s.nw_corners(), vec![Cell { page: 0, row: 1, col: 1 }]);
        let sk = PlacedSkewShape::single(tok("1"), &[2, 2], &[1]).unwrap();
        let mut nw: Vec<_> = sk.nw_corners().iter().map(|c| (c.row, c.col)).collect();
        nw.sort();
        assert_eq!(nw, vec![(1, 2), (2, 1)]);
        let two = PlacedSkewShape::new(vec![page("1", &[1], &[]), page("-1", &[1], &[])]).unwrap();
        assert_eq!(two.nw_corners().len(), 2);
    }

    #[test]
    fn g_action_and_inertia() {
        let xi = CycRat::zeta(1, 2);
        let s = PlacedSkewShape::single(tok("1"), &[2], &[]).unwrap();
        let (gs, _) = s.apply_g(&xi, 1);
        assert_eq!(gs, PlacedSkewShape::single(tok("-1"), &[2], &[]).unwrap());
        assert_eq!(s.apply_g(&xi, 2).0, s);
        assert_eq!(s.inertia(&xi, 2), (2, 1));
        let two = PlacedSkewShape::new(vec![page("1", &[1], &[]), page("-1", &[1], &[])]).unwrap();
        let (g2, perm) = two.apply_g(&xi, 1);
        assert_eq!(g2, two);
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(two.inertia(&xi, 2), (1, 2));
        assert_eq!(s.inertia(&CycRat::one(), 1), (1, 1));
    }

    #[test]
    fn empty_rows_normalize() {
        let a = SkewShape::new(Partition::new(vec![2, 1, 1]).unwrap(), Partition::new(vec![1, 1]).unwrap()).unwrap();
        let b = SkewShape::new(Partition::new(vec![2, 1, 1]).unwrap(), Partition::new(vec![1, 1, 0]).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = SkewShape::new(Partition::new(vec![3, 2, 1]).unwrap(), Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(c.outer().parts(), &[3, 1, 1]);
        assert_eq!(c.inner().parts(), &[2, 1]);
        assert_eq!(c.boxes(), vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn json_round_trip() {
        let s = PlacedSkewShape::new(vec![page("q^3", &[2, 1], &[1]), page("1", &[1], &[])]).unwrap();
        let j = s.to_json();
        let back = PlacedSkewShape::from_json(&j, 1).unwrap();
        assert_eq!(back, s);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"token\":\"1\""));
    }
}
