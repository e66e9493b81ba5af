//! Rational functions in `q` with coefficients in `Q(ζ_m)`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::cyclo::CycRat;
use super::poly::Poly;
use super::ScalarError;

/// `q^shift · num / den`, kept canonical: `num` and `den` have nonzero
/// constant terms, `den` is monic and coprime to `num`. Zero is `0/1` with
/// `shift = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
    shift: i32,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_cyc(CycRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_cyc(CycRat::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_cyc(CycRat::from_rational(r))
    }

    pub fn from_cyc(c: CycRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
            shift: 0,
        }
    }

    /// `ζ_m^k` as a constant.
    pub fn zeta(k: i64, m: u32) -> Self {
        Self::from_cyc(CycRat::zeta(k, m))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
            shift: k,
        }
    }

    /// `c · q^k`
    pub fn monomial(c: CycRat, k: i32) -> Self {
        Self::from_cyc(c).mul(&Self::q_pow(k))
    }

    /// Builds `q^shift · num / den` from arbitrary parts.
    pub fn from_parts(num: Poly, den: Poly, shift: i32) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den, shift))
    }

    /// A Laurent polynomial `Σ c_k q^{k + low}`.
    pub fn laurent(coeffs: Vec<CycRat>, low: i32) -> Self {
        Self::normalize(Poly::from_coeffs(coeffs), Poly::one(), low)
    }

    fn normalize(num: Poly, den: Poly, shift: i32) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let nz = num.low_zeros();
        let dz = den.low_zeros();
        let mut num = num.shift_down(nz);
        let mut den = den.shift_down(dz);
        let shift = shift + nz as i32 - dz as i32;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            let lead = den.leading().expect("nonzero").clone();
            if !lead.is_one() {
                let li = lead.inv().expect("nonzero");
                num = num.scale(&li);
                den = den.scale(&li);
            }
        }
        Scalar { num, den, shift }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn q_shift(&self) -> i32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// The value when the scalar does not depend on `q`.
    pub fn as_constant(&self) -> Option<&CycRat> {
        if self.is_zero() {
            return None;
        }
        if self.shift == 0 && self.num.coeffs().len() == 1 && self.den.is_one() {
            Some(&self.num.coeffs()[0])
        } else {
            None
        }
    }

    /// When the scalar equals `c·q^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(&CycRat, i32)> {
        if self.num.coeffs().len() == 1 && self.den.is_one() {
            Some((&self.num.coeffs()[0], self.shift))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
            shift: self.shift,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = other.num.shift_up((other.shift - s) as usize);
        if self.den == other.den {
            return Self::normalize(a.add(&b), self.den.clone(), s);
        }
        if self.den.is_one() {
            return Self::normalize(a.mul(&other.den).add(&b), other.den.clone(), s);
        }
        if other.den.is_one() {
            return Self::normalize(a.add(&b.mul(&self.den)), self.den.clone(), s);
        }
        let g = self.den.gcd(&other.den);
        let d1 = self.den.div_exact(&g);
        let d2 = other.den.div_exact(&g);
        let num = a.mul(&d2).add(&b.mul(&d1));
        Self::normalize(num, self.den.mul(&d2), s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
                shift,
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = other.den.div_exact(&g1);
        let n2 = other.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        Scalar {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
            shift,
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let lead = self.num.leading().expect("nonzero").inv().expect("nonzero");
        Ok(Scalar {
            num: self.den.scale(&lead),
            den: self.num.scale(&lead),
            shift: -self.shift,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    pub fn scale_cyc(&self, c: &CycRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
            shift: self.shift,
        }
    }

    /// Substitutes `q = value`; fails with [`ScalarError::Pole`] when the
    /// reduced denominator vanishes there.
    pub fn eval_at(&self, value: &CycRat) -> Result<CycRat, ScalarError> {
        if self.is_zero() {
            return Ok(CycRat::from_int(0));
        }
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        let qs = value
            .pow(self.shift as i64)
            .ok_or(ScalarError::Pole)?;
        Ok(self.num.eval(value).mul(&qs).div(&d).expect("nonzero"))
    }

    /// Pivot-selection weight: total degree plus coefficient size.
    pub fn weight(&self) -> usize {
        self.num.weight() + self.den.weight()
    }

    /// Largest cyclotomic order among the coefficients.
    pub fn cyc_order(&self) -> u32 {
        self.num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(CycRat::order)
            .fold(1, super::cyclo::lcm)
    }

    /// Canonical text, with `z` denoting `ζ_order`.
    pub fn to_text_at(&self, order: u32) -> String {
        let order = super::cyclo::lcm(order, self.cyc_order());
        if self.is_zero() {
            return "0".to_string();
        }
        let num = laurent_text(&self.num, self.shift, order);
        if self.den.is_one() {
            return num;
        }
        let den = laurent_text(&self.den, 0, order);
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{num}/({den})")
    }
}

/// Descending-degree text of `q^shift · p`.
fn laurent_text(p: &Poly, shift: i32, order: u32) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let exp = k as i32 + shift;
        let ctext = c.to_text_at(order);
        let multi = c.lift(super::cyclo::lcm(order, c.order())).term_count() > 1;
        let (neg, body) = if multi {
            (false, format!("({ctext})"))
        } else if let Some(stripped) = ctext.strip_prefix('-') {
            (true, stripped.to_string())
        } else {
            (false, ctext)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let qpart = match exp {
            0 => String::new(),
            1 => "q".to_string(),
            e => format!("q^{e}"),
        };
        if qpart.is_empty() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&qpart);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&qpart);
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_at(1))
    }
}

/// Orders scalars by their canonical text; used wherever a deterministic
/// order on multisets of scalars is needed.
pub fn text_cmp(a: &Scalar, b: &Scalar, order: u32) -> Ordering {
    a.to_text_at(order).cmp(&b.to_text_at(order))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<CycRat> for Scalar {
    fn from(c: CycRat) -> Self {
        Scalar::from_cyc(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn qi(k: i32) -> Scalar {
        Scalar::q_pow(k)
    }

    #[test]
    fn row_adjacent_eigenvalue() {
        // (q - q^-1) / (1 - q^-2) = q
        let a = q().sub(&qi(-1));
        let b = Scalar::one().sub(&qi(-2));
        assert_eq!(a.div(&b).unwrap(), q());
    }

    #[test]
    fn polynomial_quotient() {
        let a = qi(2).sub(&Scalar::one());
        let b = q().sub(&Scalar::one());
        assert_eq!(a.div(&b).unwrap(), q().add(&Scalar::one()));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        let x = q().sub(&q());
        assert!(x.is_zero());
        assert!(Scalar::one().div(&x).is_err());
    }

    #[test]
    fn q_minus_q_inverse_is_invertible() {
        let d = q().sub(&qi(-1));
        let i = d.inv().unwrap();
        assert!(d.mul(&i).is_one());
    }

    #[test]
    fn evaluation_and_poles() {
        // [2]_q = q + q^-1 vanishes at q = i
        let two_q = q().add(&qi(-1));
        assert!(two_q.eval_at(&CycRat::zeta(1, 4)).unwrap().is_zero());
        let f = Scalar::one().div(&Scalar::one().sub(&qi(2))).unwrap();
        assert_eq!(f.eval_at(&CycRat::one()), Err(ScalarError::Pole));
        // (q - q^-1)/(1 - q^4) is finite at q = 1 after cancellation
        let g = q().sub(&qi(-1)).div(&Scalar::one().sub(&qi(4))).unwrap();
        assert_eq!(
            g.eval_at(&CycRat::one()).unwrap(),
            CycRat::from_rational(BigRational::new((-1).into(), 2.into()))
        );
    }

    #[test]
    fn text_rendering() {
        assert_eq!(q().sub(&qi(-1)).to_string(), "q - q^-1");
        let f = q().div(&Scalar::one().add(&qi(2))).unwrap();
        assert_eq!(f.to_string(), "q/(q^2 + 1)");
        assert_eq!(Scalar::zeta(1, 3).mul(&qi(2)).to_text_at(3), "z*q^2");
        assert_eq!(Scalar::zeta(2, 3).to_text_at(3), "(-1 - z)");
        assert_eq!(Scalar::from_int(-2).mul(&qi(-3)).to_string(), "-2*q^-3");
    }
}
