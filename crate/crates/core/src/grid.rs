//! Lights out on rectangular grids.
//!
//! Cell `(r, c)` (0-based) is vertex `r * cols + c`. Pressing a cell flips
//! its closed 4-neighborhood, so the system matrix is the grid adjacency
//! matrix plus the identity over GF(2).
//!
//! With `Z` = the first row, forcing is light chasing: each cell of row
//! `i + 1` is pressed iff the cell above is still lit. One step of that
//! sweep maps the residual pair (row `i`, row `i + 1`) to (row `i + 1`,
//! row `i + 2`) through the block matrix
//!
//! ```text
//! N(k) = | N'(k)  I |      N'(k)[i][j] = 1  iff  |i - j| <= 1
//!        |   I    0 |
//! ```
//!
//! so the core matrix of an `r x k` grid is read off `N(k)^(r-1)` applied
//! to the first two rows of the `Z` columns. That costs `O(log r)` dense
//! products of order `2k` instead of `k` full forcing passes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::la::{DenseMatrix, SparseMatrix, Vector};
use crate::solver::{CoreMatrix, SolverHandle};
use crate::zf::{forcing_plan, PatternGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    rows: usize,
    cols: usize,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!("grid dimensions must be positive, got {rows}x{cols}")));
        }
        Ok(Self { rows, cols })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn rows(self) -> usize {
        self.rows
    }

    pub fn cols(self) -> usize {
        self.cols
    }

    pub fn cells(self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn index(self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn transposed(self) -> GridSpec {
        GridSpec { rows: self.cols, cols: self.rows }
    }

    fn check_cell(self, row: usize, col: usize) -> Result<()> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange { index: row, bound: self.rows });
        }
        if col >= self.cols {
            return Err(Error::IndexOutOfRange { index: col, bound: self.cols });
        }
        Ok(())
    }

    /// The cell itself and its 4-neighbors.
    fn closed_neighborhood(self, row: usize, col: usize) -> impl Iterator<Item = (usize, usize)> {
        let (rows, cols) = (self.rows, self.cols);
        [(0isize, 0isize), (-1, 0), (1, 0), (0, -1), (0, 1)].into_iter().filter_map(move |(dr, dc)| {
            let r = row.checked_add_signed(dr)?;
            let c = col.checked_add_signed(dc)?;
            (r < rows && c < cols).then_some((r, c))
        })
    }
}

/// Closed-neighborhood matrix of the grid over GF(2).
pub fn grid_matrix(g: GridSpec) -> SparseMatrix {
    let triplets = (0..g.rows)
        .flat_map(|r| (0..g.cols).map(move |c| (r, c)))
        .flat_map(|(r, c)| g.closed_neighborhood(r, c).map(move |(nr, nc)| (g.index(r, c), g.index(nr, nc), 1)));
    SparseMatrix::from_triplets(FieldSpec::GF2, g.cells(), g.cells(), triplets).expect("grid entries are unique")
}

/// `N'(k)`: ones where `|i - j| <= 1`.
fn tridiagonal_ones(k: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(k, k);
    for i in 0..k {
        for j in i.saturating_sub(1)..(i + 2).min(k) {
            m.set(i, j, true);
        }
    }
    m
}

/// The `2n x 2n` light-chasing step matrix `N(n)`.
pub fn n_matrix(n: usize) -> DenseMatrix {
    let tri = tridiagonal_ones(n);
    let mut m = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            if tri.get(i, j) {
                m.set(i, j, true);
            }
        }
        m.set(i, n + i, true);
        m.set(n + i, i, true);
    }
    DenseMatrix::from_bits(m)
}

/// Core matrix of the `rows x cols` grid with `Z` = first row, for
/// `cols <= rows`, via `N(cols)^(rows - 1)`.
fn oriented_grid_core(g: GridSpec) -> Result<CoreMatrix> {
    debug_assert!(g.cols <= g.rows);
    let k = g.cols;
    let step = n_matrix(k).pow(g.rows as u64 - 1)?;

    // Columns a_j for j in the first row, restricted to the first two rows.
    let mut heads = BitMatrix::zeros(2 * k, k);
    let tri = tridiagonal_ones(k);
    for i in 0..k {
        for j in 0..k {
            heads.set(i, j, tri.get(i, j));
        }
        if g.rows > 1 {
            heads.set(k + i, i, true);
        }
    }
    let swept = step.mul(&DenseMatrix::from_bits(heads))?;

    // The top block is the residual left on the last row.
    let top: Vec<usize> = (0..k).collect();
    let b = swept.select(&top, &top)?;
    let terminals = (0..k).map(|c| g.index(g.rows - 1, c)).collect();
    CoreMatrix::new(b, terminals, top)
}

/// Core matrix of the `n x n` grid with `Z` = first row and terminals = last
/// row, built from powers of `N(n)`.
pub fn find_grid_core(n: usize) -> Result<CoreMatrix> {
    oriented_grid_core(GridSpec::square(n)?)
}

/// Preprocessed lights-out solver for one grid size. Internally the grid is
/// stored with its shorter side as the row length; boards are transposed on
/// the way in and out.
#[derive(Clone, Debug)]
pub struct LightsOutHandle {
    grid: GridSpec,
    transposed: bool,
    solver: SolverHandle,
}

impl LightsOutHandle {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Whether the internal orientation is the transpose of `grid()`.
    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn solver(&self) -> &SolverHandle {
        &self.solver
    }

    fn oriented(&self) -> GridSpec {
        if self.transposed {
            self.grid.transposed()
        } else {
            self.grid
        }
    }
}

/// Builds the lights-out solver; `k = min(rows, cols)`.
pub fn lightsout_preprocess(g: GridSpec) -> Result<LightsOutHandle> {
    let transposed = g.cols > g.rows;
    let oriented = if transposed { g.transposed() } else { g };
    let a = grid_matrix(oriented);
    let z: Vec<usize> = (0..oriented.cols).collect();
    let plan = forcing_plan(&PatternGraph::from_matrix(&a)?, &z)?;
    let core = oriented_grid_core(oriented)?;
    let solver = SolverHandle::from_parts(a, plan, core)?;
    Ok(LightsOutHandle { grid: g, transposed, solver })
}

/// Lights state; `1` means lit. Also used for press patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoardState {
    grid: GridSpec,
    cells: Vector,
}

impl BoardState {
    pub fn new(grid: GridSpec, cells: Vector) -> Result<Self> {
        if !cells.spec().is_gf2() {
            return Err(Error::FieldMismatch { left: FieldSpec::GF2, right: cells.spec() });
        }
        if cells.len() != grid.cells() {
            return Err(Error::dims("board", format!("{}x{} grid vs {} cells", grid.rows, grid.cols, cells.len())));
        }
        Ok(Self { grid, cells })
    }

    pub fn off(grid: GridSpec) -> Self {
        Self { grid, cells: Vector::zeros(FieldSpec::GF2, grid.cells()) }
    }

    pub fn all_on(grid: GridSpec) -> Self {
        Self { grid, cells: Vector::from_raw(FieldSpec::GF2, vec![1; grid.cells()]) }
    }

    /// From row-major 0/1 rows.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let grid = GridSpec::new(rows.len(), rows.first().map_or(0, Vec::len))?;
        let mut cells = Vec::with_capacity(grid.cells());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != grid.cols {
                return Err(Error::dims(
                    "board",
                    format!("row {} has {} cells, expected {}", r + 1, row.len(), grid.cols),
                ));
            }
            for &v in row {
                if v > 1 {
                    return Err(Error::NonCanonical { value: u32::from(v), modulus: 2 });
                }
                cells.push(u32::from(v));
            }
        }
        Ok(Self { grid, cells: Vector::from_raw(FieldSpec::GF2, cells) })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.grid.rows)
            .map(|r| (0..self.grid.cols).map(|c| self.cells.get(self.grid.index(r, c)) as u8).collect())
            .collect()
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn cells(&self) -> &Vector {
        &self.cells
    }

    pub fn is_lit(&self, row: usize, col: usize) -> bool {
        self.cells.get(self.grid.index(row, col)) == 1
    }

    pub fn lit_count(&self) -> usize {
        self.cells.entries().iter().filter(|&&v| v == 1).count()
    }

    pub fn is_all_off(&self) -> bool {
        self.cells.is_zero()
    }

    /// First lit cell in row-major order.
    pub fn first_lit(&self) -> Option<(usize, usize)> {
        self.cells.entries().iter().position(|&v| v == 1).map(|i| (i / self.grid.cols, i % self.grid.cols))
    }

    /// Flips the closed neighborhood of `(row, col)`.
    pub fn press(&self, row: usize, col: usize) -> Result<BoardState> {
        self.grid.check_cell(row, col)?;
        let mut out = self.clone();
        out.flip_neighborhood(row, col);
        Ok(out)
    }

    fn flip_neighborhood(&mut self, row: usize, col: usize) {
        for (r, c) in self.grid.closed_neighborhood(row, col) {
            let i = self.grid.index(r, c);
            self.cells.entries_mut()[i] ^= 1;
        }
    }

    /// Presses every lit cell of `presses`, one at a time.
    pub fn apply_presses(&self, presses: &BoardState) -> Result<BoardState> {
        if presses.grid != self.grid {
            return Err(Error::dims("apply_presses", "press pattern has a different grid"));
        }
        let mut out = self.clone();
        for r in 0..self.grid.rows {
            for c in 0..self.grid.cols {
                if presses.is_lit(r, c) {
                    out.flip_neighborhood(r, c);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BoardState {
        let g = self.grid;
        let t = g.transposed();
        let mut cells = vec![0u32; g.cells()];
        for r in 0..g.rows {
            for c in 0..g.cols {
                cells[t.index(c, r)] = self.cells.get(g.index(r, c));
            }
        }
        BoardState { grid: t, cells: Vector::from_raw(FieldSpec::GF2, cells) }
    }
}

/// Press pattern that turns every light off, or `None` if the board cannot
/// be cleared. When several patterns work the canonical one is returned.
pub fn solve_board(h: &LightsOutHandle, board: &BoardState) -> Result<Option<BoardState>> {
    if board.grid != h.grid {
        return Err(Error::dims(
            "solve_board",
            format!("board is {}x{}, handle is {}x{}", board.grid.rows, board.grid.cols, h.grid.rows, h.grid.cols),
        ));
    }
    let oriented = if h.transposed { board.transpose() } else { board.clone() };
    let Some(x) = h.solver.solve(&oriented.cells)? else {
        return Ok(None);
    };
    let presses = BoardState { grid: h.oriented(), cells: x };
    Ok(Some(if h.transposed { presses.transpose() } else { presses }))
}

/// Board `A x` for a uniformly random press pattern `x`; always solvable.
pub fn random_solvable(g: GridSpec, seed: u64) -> BoardState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut board = BoardState::off(g);
    for r in 0..g.rows {
        for c in 0..g.cols {
            if rng.random::<bool>() {
                board.flip_neighborhood(r, c);
            }
        }
    }
    board
}
