//! Elements of the cyclotomic field `Q(ζ_m)`, stored as reduced coefficient
//! vectors of `Q[x]/(Φ_m(x))` with `x ↦ ζ_m`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer coefficients (low degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(m >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = int_exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn int_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Euler's totient of `m`, the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CycRat {
    order: u32,
    coeffs: Vec<BigRational>,
}

fn reduce_mod_cyclotomic(mut v: Vec<BigRational>, m: u32) -> Vec<BigRational> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if v.len() > deg {
        for top in (deg..v.len()).rev() {
            let c = std::mem::replace(&mut v[top], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            let base = top - deg;
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    v[base + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        v.truncate(deg);
    }
    v.resize(deg, BigRational::zero());
    v
}

impl CycRat {
    pub fn zero(order: u32) -> Self {
        CycRat {
            order,
            coeffs: vec![BigRational::zero(); totient(order)],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycRat {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// The canonical representative of `ζ_m^k`.
    pub fn zeta(k: i64, m: u32) -> Self {
        assert!(m >= 1, "cyclotomic order must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        v[e] = BigRational::one();
        CycRat {
            order: m,
            coeffs: reduce_mod_cyclotomic(v, m),
        }
    }

    /// Builds an element from a coefficient vector of any length, reducing
    /// modulo `Φ_m`.
    pub fn from_coeffs(coeffs: Vec<BigRational>, m: u32) -> Self {
        CycRat {
            order: m,
            coeffs: reduce_mod_cyclotomic(coeffs, m),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Returns the value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Re-expresses the element in `Q(ζ_target)`; `target` must be a multiple
    /// of the current order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            target
        );
        if self.is_rational() {
            let mut v = vec![BigRational::zero(); totient(target)];
            v[0] = self.coeffs[0].clone();
            return CycRat {
                order: target,
                coeffs: v,
            };
        }
        let step = (target / self.order) as usize;
        let mut v = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(k * step) % target as usize] += c;
            }
        }
        CycRat::from_coeffs(v, target)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn neg(&self) -> Self {
        CycRat {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return out;
        }
        if self.is_rational() {
            let mut out = other.clone();
            out.coeffs[0] += &self.coeffs[0];
            return out;
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        CycRat {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycRat {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let n = self.coeffs.len();
        let mut v = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CycRat {
            order: self.order,
            coeffs: reduce_mod_cyclotomic(v, self.order),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] = self.coeffs[0].recip();
            return Some(out);
        }
        // extended Euclid in Q[x] on (a, Φ_m): s·a + t·Φ_m = 1
        let phi: Vec<BigRational> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let (g, s) = qpoly_ext_gcd(trim_q(self.coeffs.clone()), phi);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &ginv).collect();
        Some(CycRat::from_coeffs(s, self.order))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycRat::one();
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
        Some(acc)
    }

    /// Crude size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
            .sum()
    }

    /// Number of nonzero terms in the power basis.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Canonical text with `z` denoting `ζ_order`.
    pub fn to_text_at(&self, order: u32) -> String {
        let order = lcm(order, self.order);
        let v = self.lift(order);
        let mut out = String::new();
        for (k, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match k {
                0 => out.push_str(&abs.to_string()),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&abs.to_string());
                        out.push('*');
                    }
                    out.push('z');
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn trim_q(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], trim_q(rem));
    }
    let lb = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lb;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    (trim_q(quot), trim_q(rem))
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim_q(v)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut v = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        v[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        v[i] -= y;
    }
    trim_q(v)
}

fn is_zero_q(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)` up to a unit.
fn qpoly_ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !is_zero_q(&r1) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycRat {}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_at(self.order))
    }
}
