//! Repeated solves of `A x = b` through a zero forcing set.
//!
//! Given a zero forcing set `Z` of size `k`, the forcing pass `L` recovers
//! the part of a solution outside `Z`, and the residual map
//! `R(b) = b - A L(b)` is supported on the terminals `T`. The `k x k` core
//! matrix `B = (R A)_{T,Z}` reduces every solve to one small system
//! `B y = R(b)_T` plus two forcing passes:
//!
//! ```text
//! z  = L(b)
//! b' = b_T - A_{T,*} z
//! y  = solution of B y = b'        (absent => no solution)
//! x' = y on Z, 0 elsewhere
//! x  = x' + L(b - A x')
//! return x if A x = b
//! ```
//!
//! Preprocessing costs `O(m k)` field operations plus the `O(k^3)`
//! factorization of `B`; each solve costs `O(k^2 + m)`.

use crate::error::{Error, Result};
use crate::la::{factorize, CoreFactorization, DenseMatrix, SparseMatrix, Vector};
use crate::zf::{forcing_plan, ForcingPlan, PatternGraph};

/// The core matrix with its row labels (terminals, ascending) and column
/// labels (`Z`, input order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreMatrix {
    matrix: DenseMatrix,
    terminals: Vec<usize>,
    zfs: Vec<usize>,
}

impl CoreMatrix {
    pub fn new(matrix: DenseMatrix, terminals: Vec<usize>, zfs: Vec<usize>) -> Result<Self> {
        if matrix.rows() != terminals.len() || matrix.cols() != zfs.len() {
            return Err(Error::dims(
                "core matrix",
                format!(
                    "{}x{} with {} row and {} column labels",
                    matrix.rows(),
                    matrix.cols(),
                    terminals.len(),
                    zfs.len()
                ),
            ));
        }
        Ok(Self { matrix, terminals, zfs })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn zfs(&self) -> &[usize] {
        &self.zfs
    }

    pub fn k(&self) -> usize {
        self.zfs.len()
    }
}

fn check_plan(a: &SparseMatrix, plan: &ForcingPlan) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    if plan.n() != a.n_rows() {
        return Err(Error::PlanMismatch(format!("plan covers {} vertices, matrix has {}", plan.n(), a.n_rows())));
    }
    Ok(())
}

/// Forcing pass: `x_Z = 0`, then for each forced `u` in order,
/// `x_u = (b_p - A_{p,*} x) / A_{p,u}` with `p` the parent of `u`.
///
/// Each parent row is read once, so the pass is linear in the nonzeros.
pub fn forcing(a: &SparseMatrix, plan: &ForcingPlan, b: &Vector) -> Result<Vector> {
    check_plan(a, plan)?;
    if b.spec() != a.spec() {
        return Err(Error::FieldMismatch { left: a.spec(), right: b.spec() });
    }
    if b.len() != a.n_rows() {
        return Err(Error::dims("forcing", format!("matrix order {} vs length {}", a.n_rows(), b.len())));
    }
    let spec = a.spec();
    let mut x = vec![0u32; a.n_rows()];
    for &u in plan.order() {
        let p = plan.parent(u).expect("forced vertices have a parent");
        let (cols, vals) = a.row(p);
        let mut acc = b.get(p);
        let mut pivot = 0;
        for (&j, &v) in cols.iter().zip(vals) {
            if j == u {
                pivot = v;
            } else {
                acc = spec.sub_mul(acc, v, x[j]);
            }
        }
        if pivot == 0 {
            return Err(Error::PlanMismatch(format!("A[{}][{}] is zero but {} forces {}", p + 1, u + 1, p + 1, u + 1)));
        }
        x[u] = spec.div(acc, pivot)?;
    }
    Ok(Vector::from_raw(spec, x))
}

/// `(b - A x)_T`, touching only the terminal rows.
fn residual_on(a: &SparseMatrix, rows: &[usize], b: &Vector, x: &Vector) -> Vector {
    let spec = a.spec();
    let entries = rows.iter().map(|&t| spec.sub(b.get(t), a.row_dot(t, x.entries()))).collect();
    Vector::from_raw(spec, entries)
}

/// Core matrix: for each `v` in `Z`, one forcing pass on `a_v` and one
/// product with the terminal rows.
pub fn find_core(a: &SparseMatrix, plan: &ForcingPlan) -> Result<CoreMatrix> {
    check_plan(a, plan)?;
    let spec = a.spec();
    let columns = a.transpose();
    let terminals = plan.terminals();
    let k = plan.k();
    let mut b = DenseMatrix::zeros(spec, terminals.len(), k);
    for (c, &v) in plan.zfs().iter().enumerate() {
        let mut a_v = Vector::zeros(spec, a.n_rows());
        let (rows, vals) = columns.row(v);
        for (&i, &val) in rows.iter().zip(vals) {
            a_v.entries_mut()[i] = val;
        }
        let z = forcing(a, plan, &a_v)?;
        let col = residual_on(a, terminals, &a_v, &z);
        for (r, &val) in col.entries().iter().enumerate() {
            b.set_raw(r, c, val);
        }
    }
    CoreMatrix::new(b, terminals.to_vec(), plan.zfs().to_vec())
}

/// Preprocessed solver: the matrix, its forcing plan, the core matrix and
/// the core factorization. Immutable; solves may run concurrently.
#[derive(Clone, Debug)]
pub struct SolverHandle {
    a: SparseMatrix,
    plan: ForcingPlan,
    core: CoreMatrix,
    fact: CoreFactorization,
}

/// Builds the solver for `a` from a zero forcing set `z` of its pattern.
pub fn preprocess(a: &SparseMatrix, z: &[usize]) -> Result<SolverHandle> {
    let g = PatternGraph::from_matrix(a)?;
    let plan = forcing_plan(&g, z)?;
    let core = find_core(a, &plan)?;
    SolverHandle::from_parts(a.clone(), plan, core)
}

impl SolverHandle {
    /// Assembles a handle from an externally computed core matrix (cached or
    /// built by a specialized routine). Labels must agree with the plan.
    pub fn from_parts(a: SparseMatrix, plan: ForcingPlan, core: CoreMatrix) -> Result<Self> {
        check_plan(&a, &plan)?;
        if core.terminals() != plan.terminals() || core.zfs() != plan.zfs() {
            return Err(Error::PlanMismatch("core matrix labels differ from the forcing plan".into()));
        }
        if core.matrix().spec() != a.spec() {
            return Err(Error::FieldMismatch { left: a.spec(), right: core.matrix().spec() });
        }
        let fact = factorize(core.matrix())?;
        Ok(Self { a, plan, core, fact })
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn plan(&self) -> &ForcingPlan {
        &self.plan
    }

    pub fn core(&self) -> &CoreMatrix {
        &self.core
    }

    pub fn factorization(&self) -> &CoreFactorization {
        &self.fact
    }

    pub fn n(&self) -> usize {
        self.a.n_rows()
    }

    pub fn k(&self) -> usize {
        self.plan.k()
    }

    /// Field elements stored beyond `A` itself.
    pub fn auxiliary_elements(&self) -> usize {
        let core = self.core.matrix();
        core.rows() * core.cols() + self.fact.stored_elements()
    }

    fn check_rhs(&self, b: &Vector) -> Result<()> {
        if b.spec() != self.a.spec() {
            return Err(Error::FieldMismatch { left: self.a.spec(), right: b.spec() });
        }
        if b.len() != self.n() {
            return Err(Error::dims("solve", format!("system order {} vs length {}", self.n(), b.len())));
        }
        Ok(())
    }

    /// `L(b)`: the forcing pass, supported outside `Z`.
    pub fn apply_l(&self, b: &Vector) -> Result<Vector> {
        self.check_rhs(b)?;
        forcing(&self.a, &self.plan, b)
    }

    /// `R(b) = b - A L(b)`, supported on the terminals.
    pub fn apply_r(&self, b: &Vector) -> Result<Vector> {
        let l = self.apply_l(b)?;
        b.sub(&self.a.spmv(&l)?)
    }

    /// `R(b)_T` in core row order, computed from the terminal rows only.
    pub fn r_on_terminals(&self, b: &Vector) -> Result<Vector> {
        let z = self.apply_l(b)?;
        Ok(residual_on(&self.a, self.plan.terminals(), b, &z))
    }

    /// Solves `A x = b`; `None` means no solution exists. A returned `x`
    /// satisfies `A x = b` exactly and agrees on `Z` with the
    /// free-variables-zero solution of the core system.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        let reduced = self.r_on_terminals(b)?;
        let Some(y) = self.fact.solve(&reduced)? else {
            return Ok(None);
        };
        let mut x_z = Vector::zeros(self.a.spec(), self.n());
        for (c, &v) in self.plan.zfs().iter().enumerate() {
            x_z.entries_mut()[v] = y.get(c);
        }
        let rest = b.sub(&self.a.spmv(&x_z)?)?;
        let x = x_z.add(&forcing(&self.a, &self.plan, &rest)?)?;
        if self.a.spmv(&x)? == *b {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    fn gf2() -> FieldSpec {
        FieldSpec::GF2
    }

    fn p3() -> SparseMatrix {
        SparseMatrix::from_triplets(gf2(), 3, 3, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)]).unwrap()
    }

    fn v(spec: FieldSpec, e: &[u32]) -> Vector {
        Vector::new(spec, e.to_vec()).unwrap()
    }

    fn p3_plan() -> ForcingPlan {
        forcing_plan(&PatternGraph::from_matrix(&p3()).unwrap(), &[0]).unwrap()
    }

    #[test]
    fn forcing_examples() {
        let plan = p3_plan();
        assert_eq!(forcing(&p3(), &plan, &v(gf2(), &[1, 0, 1])).unwrap().entries(), &[0, 1, 0]);
        assert_eq!(forcing(&p3(), &plan, &v(gf2(), &[0, 1, 0])).unwrap().entries(), &[0, 0, 1]);

        let gf5 = FieldSpec::prime(5).unwrap();
        let a = SparseMatrix::from_triplets(gf5, 2, 2, [(0, 1, 3), (1, 0, 4)]).unwrap();
        let plan = forcing_plan(&PatternGraph::from_matrix(&a).unwrap(), &[0, 1]).unwrap();
        assert!(forcing(&a, &plan, &v(gf5, &[2, 3])).unwrap().is_zero());
    }

    #[test]
    fn forcing_rejects_mismatched_plan() {
        let plan = p3_plan();
        let i3 = SparseMatrix::identity(gf2(), 3);
        assert!(matches!(forcing(&i3, &plan, &v(gf2(), &[1, 0, 1])), Err(Error::PlanMismatch(_))));
        let i2 = SparseMatrix::identity(gf2(), 2);
        assert!(matches!(forcing(&i2, &plan, &v(gf2(), &[1, 0])), Err(Error::PlanMismatch(_))));
        assert!(matches!(forcing(&p3(), &plan, &v(gf2(), &[1, 0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn operators() {
        let h = preprocess(&p3(), &[0]).unwrap();
        assert!(h.apply_r(&v(gf2(), &[1, 0, 1])).unwrap().is_zero());
        assert!(h.apply_r(&p3().column(1).unwrap()).unwrap().is_zero());
        let zero = Vector::zeros(gf2(), 3);
        assert!(h.apply_l(&zero).unwrap().is_zero());
        assert!(h.apply_r(&zero).unwrap().is_zero());
        assert_eq!(h.r_on_terminals(&v(gf2(), &[1, 0, 0])).unwrap().entries(), &[1]);
    }

    #[test]
    fn core_examples() {
        let i2 = SparseMatrix::identity(gf2(), 2);
        let plan = forcing_plan(&PatternGraph::from_matrix(&i2).unwrap(), &[0, 1]).unwrap();
        let core = find_core(&i2, &plan).unwrap();
        assert_eq!(core.matrix(), &DenseMatrix::identity(gf2(), 2));

        let core = find_core(&p3(), &p3_plan()).unwrap();
        assert_eq!(core.matrix().to_rows(), vec![vec![0]]);
        assert_eq!(core.terminals(), &[2]);
    }

    #[test]
    fn preprocess_examples() {
        let h = preprocess(&SparseMatrix::identity(gf2(), 2), &[0, 1]).unwrap();
        assert_eq!((h.k(), h.factorization().rank()), (2, 2));
        let h = preprocess(&p3(), &[0]).unwrap();
        assert_eq!((h.k(), h.factorization().rank()), (1, 0));
        let err = preprocess(&SparseMatrix::identity(gf2(), 2), &[0]).unwrap_err();
        assert!(matches!(err, Error::NotZeroForcingSet { .. }));
    }

    #[test]
    fn solve_examples() {
        let gf5 = FieldSpec::prime(5).unwrap();
        let h = preprocess(&SparseMatrix::identity(gf5, 2), &[0, 1]).unwrap();
        assert_eq!(h.solve(&v(gf5, &[1, 4])).unwrap().unwrap().entries(), &[1, 4]);

        let h = preprocess(&p3(), &[0]).unwrap();
        assert_eq!(h.solve(&v(gf2(), &[1, 0, 1])).unwrap().unwrap().entries(), &[0, 1, 0]);
        assert_eq!(h.solve(&v(gf2(), &[1, 0, 0])).unwrap(), None);
        assert!(h.solve(&v(gf2(), &[1, 0])).is_err());
        assert!(h.solve(&v(gf5, &[1, 0, 0])).is_err());
    }

    #[test]
    fn from_parts_checks_labels() {
        let h = preprocess(&p3(), &[0]).unwrap();
        let bad = CoreMatrix::new(DenseMatrix::zeros(gf2(), 1, 1), vec![1], vec![0]).unwrap();
        assert!(SolverHandle::from_parts(p3(), h.plan().clone(), bad).is_err());
    }
}
