//! Matrix and vector containers over a `FieldSpec`, dense products and
//! powers, the core factorization, and the Gaussian elimination oracle.

mod dense;
mod factor;
mod gauss;
mod sparse;
mod vector;

pub use dense::DenseMatrix;
pub use factor::{factorize, CoreFactorization};
pub use gauss::{dense_gaussian_solve, kernel_basis, rank};
pub use sparse::SparseMatrix;
pub use vector::Vector;
