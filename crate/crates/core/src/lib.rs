//! Exact verification engine for block representations of solvable matrix
//! groups: multivariate polynomial arithmetic over the rationals, Saito
//! coefficient matrices, free / free* divisor certificates, and numerical
//! complex Cholesky-type factorizations.

pub mod factor;
pub mod linalg;
pub mod poly;
pub mod saito;
pub mod spaces;
pub mod vfields;
