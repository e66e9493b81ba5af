//! Exact seminormal representations of the affine Hecke algebra of type A,
//! its cyclotomic quotients `H(r,1,n)` and their fixed-point subalgebras
//! `H(r,p,n)`, together with the Clifford-theory machinery that relates them.

pub mod scalar;
pub mod linalg;
pub mod matrix;
pub mod shapes;
pub mod seminormal;
pub mod cyclotomic;
pub mod clifford;
pub mod foldings;
