//! Dense univariate polynomials in `q` over `Q(ζ_m)`.

use super::cyclo::CycRat;

/// Coefficients low degree first, no trailing zeros (the zero polynomial is
/// the empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<CycRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(CycRat::one())
    }

    pub fn constant(c: CycRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·q^k`
    pub fn monomial(c: CycRat, k: usize) -> Self {
        let mut v = vec![CycRat::from_int(0); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<CycRat>) -> Self {
        while coeffs.last().is_some_and(CycRat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[CycRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&CycRat> {
        self.coeffs.last()
    }

    /// Number of vanishing low-order coefficients (the power of `q` dividing
    /// the polynomial).
    pub fn low_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `q^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(CycRat::is_zero));
        Poly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![CycRat::from_int(0); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(CycRat::neg).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            v[i] = v[i].add(c);
        }
        Poly::from_coeffs(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycRat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut v = vec![CycRat::from_int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycRat::from_int(0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    if !dj.is_zero() {
                        rem[k + j] = rem[k + j].sub(&c.mul(dj));
                    }
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; debug-asserts that the remainder vanishes.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.coeffs.len() == 1 {
                return Poly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &CycRat) -> CycRat {
        let mut acc = CycRat::from_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().map(|c| c.weight() + 1).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&c| CycRat::from_int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (q^2 - 1) / (q - 1) = q + 1
        let (quo, rem) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(quo, p(&[1, 1]));
        assert!(rem.is_zero());
        // gcd(q^4 - 1, q^6 - 1) = q^2 - 1
        let g = p(&[-1, 0, 0, 0, 1]).gcd(&p(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(g, p(&[-1, 0, 1]));
        assert!(p(&[1, 1]).gcd(&p(&[2])).is_one());
    }

    #[test]
    fn gcd_over_gaussian_rationals() {
        // q^2 + 1 = (q - i)(q + i); gcd with (q - i)(q + 2) is q - i
        let i = CycRat::zeta(1, 4);
        let a = p(&[1, 0, 1]);
        let qi = Poly::from_coeffs(vec![i.neg(), CycRat::one()]);
        let b = qi.mul(&p(&[2, 1]));
        assert_eq!(a.gcd(&b), qi);
    }
}
