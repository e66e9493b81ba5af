//! Exact arithmetic over `Q(ζ_m)(q)`.

mod cyclo;
mod poly;
mod ratfunc;
mod text;

use thiserror::Error;

pub use cyclo::{cyclotomic_poly, lcm, totient, CycRat};
pub use poly::Poly;
pub use ratfunc::{text_cmp, Scalar};
pub use text::parse_scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    Pole,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The cyclotomic `q`-integer `[k]_q = (q^k - q^-k)/(q - q^-1)`, written as the
/// Laurent polynomial `q^{1-k} + q^{3-k} + … + q^{k-1}` so that it also makes
/// sense at `q = ±1`.
pub fn q_integer(k: u32) -> Scalar {
    if k == 0 {
        return Scalar::zero();
    }
    let coeffs: Vec<CycRat> = (0..2 * k - 1)
        .map(|i| CycRat::from_int(if i % 2 == 0 { 1 } else { 0 }))
        .collect();
    Scalar::laurent(coeffs, 1 - k as i32)
}

/// Elementary symmetric polynomials `e_0..e_n` of `values`.
pub fn elementary_symmetric(values: &[Scalar]) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); values.len() + 1];
    e[0] = Scalar::one();
    for (i, v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k].add(&e[k - 1].mul(v));
        }
    }
    e
}
