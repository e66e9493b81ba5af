//! Projective representations of finite groups and the pairing
//! `dim e_K (M ⊗ N*)`.

use crate::linalg::{inverse, rank};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::{factor_set, CliffordError, FactorSet};

/// `h ↦ ρ(h)` with `ρ(g)ρ(h) = α(g,h)ρ(gh)`; element 0 is the identity and
/// `ρ(0) = I`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    pub group: Vec<Vec<usize>>,
    pub mats: Vec<Matrix>,
}

impl ProjectiveRep {
    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn factor_set(&self) -> Result<FactorSet, CliffordError> {
        factor_set(&self.group, &self.mats)
    }

    fn inverse_of(&self, h: usize) -> usize {
        (0..self.group.len()).find(|&k| self.group[h][k] == 0).expect("group inverse")
    }

    /// `ρ*(h) = (ρ(h)^{-1})^t`.
    pub fn dual(&self) -> ProjectiveRep {
        ProjectiveRep {
            group: self.group.clone(),
            mats: self
                .mats
                .iter()
                .map(|m| inverse(m).expect("invertible").transpose())
                .collect(),
        }
    }

    /// The dual built from `ψ ↦ α(h,h^{-1})^{-1} ψ∘ρ(h^{-1})` agrees with
    /// [`ProjectiveRep::dual`].
    pub fn dual_rule_holds(&self) -> Result<bool, CliffordError> {
        let alpha = self.factor_set()?;
        let d = self.dual();
        Ok((0..self.group.len()).all(|h| {
            let hi = self.inverse_of(h);
            let c = alpha.table[h][hi].inv().expect("nonzero");
            d.mats[h] == self.mats[hi].transpose().scale(&c)
        }))
    }
}

/// Rank of `(1/|K|) Σ_h ρ_M(h) ⊗ ρ_{N*}(h)`.
pub fn schur_pairing(m: &ProjectiveRep, n: &ProjectiveRep) -> usize {
    let nd = n.dual();
    let k = m.group.len();
    let c = Scalar::from_int(k as i64).inv().expect("nonzero");
    let size = m.dim() * n.dim();
    let sum = (0..k).fold(Matrix::zeros(size, size), |acc, h| &acc + &m.mats[h].kron(&nd.mats[h]));
    rank(&sum.scale(&c))
}

/// The character `g^k ↦ ζ_order^{jk}` of `Z/order`.
pub fn cyclic_character(order: usize, j: i64) -> ProjectiveRep {
    ProjectiveRep {
        group: super::cyclic_table(order),
        mats: (0..order as i64)
            .map(|k| Matrix::diag(&[Scalar::zeta(j * k, order as u32)]))
            .collect(),
    }
}

/// `1, a, b, ab` of the Klein four group acting by `I, σ_x, σ_z, σ_x σ_z`;
/// the factor set is not trivial. `twist` multiplies by the character that
/// is `-1` on `a` and `ab`.
pub fn klein_pauli(twist: bool) -> ProjectiveRep {
    let i = |v: i64| Scalar::from_int(v);
    let m = |r: [[i64; 2]; 2]| Matrix::from_rows(r.iter().map(|row| row.iter().map(|&x| i(x)).collect()).collect()).expect("2x2");
    let sx = m([[0, 1], [1, 0]]);
    let sz = m([[1, 0], [0, -1]]);
    let sign = if twist { -1 } else { 1 };
    let group = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
    ProjectiveRep {
        group,
        mats: vec![Matrix::identity(2), sx.scale(&i(sign)), sz.clone(), (&sx * &sz).scale(&i(sign))],
    }
}
