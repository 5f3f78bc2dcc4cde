//! Factorize-once, solve-many kernel for the small square core system.
//!
//! Gaussian elimination with full pivoting gives `P B Q = L U`, where `L` is
//! unit lower triangular and only the first `rank` rows of `U` are nonzero.
//! Both factors share one `k x k` buffer, so storage is `k^2` residues and
//! each solve is one forward and one backward substitution.

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::la::{DenseMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreFactorization {
    spec: FieldSpec,
    k: usize,
    rank: usize,
    /// Row `i` of `P B Q` is row `row_perm[i]` of `B`.
    row_perm: Vec<usize>,
    /// Column `j` of `P B Q` is column `col_perm[j]` of `B`.
    col_perm: Vec<usize>,
    /// Multipliers of `L` strictly below the diagonal, `U` on and above it.
    lu: Vec<u32>,
    /// Inverses of the `rank` pivots.
    pivot_inv: Vec<u32>,
}

/// Factorizes a square, possibly singular, matrix.
pub fn factorize(b: &DenseMatrix) -> Result<CoreFactorization> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let spec = b.spec();
    let k = b.rows();
    let mut lu: Vec<u32> = (0..k).flat_map(|i| b.row(i)).collect();
    let mut row_perm: Vec<usize> = (0..k).collect();
    let mut col_perm: Vec<usize> = (0..k).collect();
    let mut pivot_inv = Vec::new();

    for s in 0..k {
        // First nonzero of the trailing block, scanning rows top-down and
        // each row left-to-right.
        let Some((pi, pj)) = (s..k).flat_map(|i| (s..k).map(move |j| (i, j))).find(|&(i, j)| lu[i * k + j] != 0) else {
            break;
        };
        if pi != s {
            for j in 0..k {
                lu.swap(s * k + j, pi * k + j);
            }
            row_perm.swap(s, pi);
        }
        if pj != s {
            for i in 0..k {
                lu.swap(i * k + s, i * k + pj);
            }
            col_perm.swap(s, pj);
        }
        let inv = spec.inv(lu[s * k + s])?;
        pivot_inv.push(inv);
        for i in s + 1..k {
            let lead = lu[i * k + s];
            if lead == 0 {
                continue;
            }
            let f = spec.mul(lead, inv);
            lu[i * k + s] = f;
            for j in s + 1..k {
                lu[i * k + j] = spec.sub_mul(lu[i * k + j], f, lu[s * k + j]);
            }
        }
    }
    let rank = pivot_inv.len();
    Ok(CoreFactorization { spec, k, rank, row_perm, col_perm, lu, pivot_inv })
}

impl CoreFactorization {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Order of the factorized matrix.
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Columns of the original matrix that carry a pivot.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols = self.col_perm[..self.rank].to_vec();
        cols.sort_unstable();
        cols
    }

    /// Field elements held by the factorization.
    pub fn stored_elements(&self) -> usize {
        self.lu.len() + self.pivot_inv.len()
    }

    /// Solves `B y = c`. Returns `None` when the system is inconsistent;
    /// otherwise the solution with every non-pivot variable set to zero.
    pub fn solve(&self, c: &Vector) -> Result<Option<Vector>> {
        if c.spec() != self.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: c.spec() });
        }
        if c.len() != self.k {
            return Err(Error::dims("fact_solve", format!("order {} vs length {}", self.k, c.len())));
        }
        let (spec, k, r) = (self.spec, self.k, self.rank);
        let lu = &self.lu;

        // L w = P c
        let mut w: Vec<u32> = self.row_perm.iter().map(|&i| c.get(i)).collect();
        for i in 1..k {
            let mut acc = w[i];
            for j in 0..i.min(r) {
                acc = spec.sub_mul(acc, lu[i * k + j], w[j]);
            }
            w[i] = acc;
        }
        if w[r..].iter().any(|&v| v != 0) {
            return Ok(None);
        }

        // U z = w with z[r..] = 0
        let mut z = vec![0u32; k];
        for i in (0..r).rev() {
            let mut acc = w[i];
            for j in i + 1..r {
                acc = spec.sub_mul(acc, lu[i * k + j], z[j]);
            }
            z[i] = spec.mul(acc, self.pivot_inv[i]);
        }

        let mut y = vec![0u32; k];
        for (j, &orig) in self.col_perm.iter().enumerate() {
            y[orig] = z[j];
        }
        Ok(Some(Vector::from_raw(spec, y)))
    }

    /// Rebuilds the factorized matrix from the stored factors.
    pub fn reconstruct(&self) -> DenseMatrix {
        let (spec, k, r) = (self.spec, self.k, self.rank);
        let lower = |i: usize, j: usize| -> u32 {
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater if j < r => self.lu[i * k + j],
                _ => 0,
            }
        };
        let upper = |i: usize, j: usize| -> u32 {
            if i < r && j >= i {
                self.lu[i * k + j]
            } else {
                0
            }
        };
        let mut out = DenseMatrix::zeros(spec, k, k);
        for i in 0..k {
            for j in 0..k {
                let v = (0..k).fold(0, |acc, t| spec.add(acc, spec.mul(lower(i, t), upper(t, j))));
                out.set_raw(self.row_perm[i], self.col_perm[j], v);
            }
        }
        out
    }
}
