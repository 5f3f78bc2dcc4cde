//! Repeated solves of sparse linear systems over finite fields, driven by a
//! zero forcing set of the matrix pattern, plus a lights-out grid solver
//! that builds its core matrix from powers of the light-chasing step matrix.
//!
//! All vertex, row and column indices in this API are 0-based; the text
//! formats in [`format`] are 1-based.

pub mod bits;
pub mod error;
pub mod ff;
pub mod format;
pub mod grid;
pub mod la;
pub mod solver;
pub mod zf;

pub use error::{Error, Result};
pub use ff::{FieldElement, FieldKind, FieldSpec};
pub use grid::{
    find_grid_core, grid_matrix, lightsout_preprocess, n_matrix, random_solvable, solve_board, BoardState, GridSpec,
    LightsOutHandle,
};
pub use la::{dense_gaussian_solve, factorize, rank, CoreFactorization, DenseMatrix, SparseMatrix, Vector};
pub use solver::{find_core, forcing, preprocess, CoreMatrix, SolverHandle};
pub use zf::{closure, forcing_plan, greedy_find_zfs, is_zfs, random_instance, Closure, ForcingPlan, PatternGraph};
