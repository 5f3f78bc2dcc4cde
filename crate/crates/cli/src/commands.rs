use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use zfsolve::format::{
    parse_board, parse_core, parse_matrix, parse_vector, parse_zfs, write_board, write_core, write_vector, write_zfs,
};
use zfsolve::grid::random_solvable;
use zfsolve::{
    closure, find_grid_core, forcing_plan, greedy_find_zfs, lightsout_preprocess, preprocess, solve_board, BoardState,
    GridSpec, PatternGraph, SolverHandle, SparseMatrix,
};

use crate::{BoardSource, EXIT_NO_SOLUTION, EXIT_OK};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: zfsolve::Error },
    #[error(transparent)]
    Solver(#[from] zfsolve::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io { path: "<stdout>".into(), source: e }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), source: e })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io { path: path.to_owned(), source: e })
}

/// Runs a parser over a file, tagging errors with the path.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> zfsolve::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError::Input { path: path.to_owned(), source: e })
}

fn load_system(matrix: &Path, zfs: &Path) -> Result<(SparseMatrix, Vec<usize>), CliError> {
    let a = load(matrix, parse_matrix)?;
    if !a.is_square() {
        let source = zfsolve::Error::NotSquare { rows: a.n_rows(), cols: a.n_cols() };
        return Err(CliError::Input { path: matrix.to_owned(), source });
    }
    let z = load(zfs, |t| parse_zfs(t, a.n_rows()))?;
    Ok((a, z))
}

fn handle_from_cache(a: SparseMatrix, z: &[usize], cache: &Path) -> Result<SolverHandle, CliError> {
    let cached = load(cache, parse_core)?;
    if cached.n != a.n_rows() {
        return Err(CliError::Usage(format!(
            "{}: cached core is for n = {}, matrix has n = {}",
            cache.display(),
            cached.n,
            a.n_rows()
        )));
    }
    let plan = forcing_plan(&PatternGraph::from_matrix(&a)?, z)?;
    SolverHandle::from_parts(a, plan, cached.core).map_err(|e| CliError::Input { path: cache.to_owned(), source: e })
}

pub fn solve(
    matrix: &Path,
    rhs: &Path,
    zfs: &Path,
    cache: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (a, z) = load_system(matrix, zfs)?;
    let b = load(rhs, |t| parse_vector(t, a.spec()))?;
    let h = match cache {
        Some(cache) => handle_from_cache(a, &z, cache)?,
        None => preprocess(&a, &z)?,
    };
    match h.solve(&b)? {
        Some(x) => {
            out.write_all(write_vector(&x).as_bytes())?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "NO SOLUTION")?;
            Ok(EXIT_NO_SOLUTION)
        }
    }
}

pub fn core(matrix: &Path, zfs: &Path, output: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let (a, z) = load_system(matrix, zfs)?;
    let h = preprocess(&a, &z)?;
    write_file(output, &write_core(h.core(), h.n()))?;
    writeln!(out, "core k={} rank={} written to {}", h.k(), h.factorization().rank(), output.display())?;
    Ok(EXIT_OK)
}

fn load_board(rows: usize, cols: usize, source: &BoardSource, seed: Option<u64>) -> Result<BoardState, CliError> {
    let g = GridSpec::new(rows, cols)?;
    if let Some(path) = &source.state {
        let board = load(path, parse_board)?;
        if board.grid() != g {
            return Err(CliError::Usage(format!(
                "{}: board is {}x{}, expected {rows}x{cols}",
                path.display(),
                board.grid().rows(),
                board.grid().cols()
            )));
        }
        return Ok(board);
    }
    if source.all_on {
        return Ok(BoardState::all_on(g));
    }
    match (source.random, seed) {
        (true, Some(seed)) => Ok(random_solvable(g, seed)),
        _ => Err(CliError::Usage("one of --state, --all-on or --random --seed is required".into())),
    }
}

pub fn lightsout_solve(
    rows: usize,
    cols: usize,
    source: &BoardSource,
    seed: Option<u64>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let board = load_board(rows, cols, source, seed)?;
    let h = lightsout_preprocess(board.grid())?;
    match solve_board(&h, &board)? {
        Some(presses) => {
            out.write_all(write_board(&presses).as_bytes())?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "NO SOLUTION")?;
            Ok(EXIT_NO_SOLUTION)
        }
    }
}

pub fn lightsout_core(n: usize, output: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let core = find_grid_core(n)?;
    write_file(output, &write_core(&core, n * n))?;
    writeln!(out, "core k={} written to {}", core.k(), output.display())?;
    Ok(EXIT_OK)
}

pub fn zfs_verify(matrix: &Path, zfs: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let (a, z) = load_system(matrix, zfs)?;
    let cl = closure(&PatternGraph::from_matrix(&a)?, &z)?;
    if cl.is_complete() {
        writeln!(out, "zero forcing set: {} vertices force all {}", z.len(), a.n_rows())?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "NOT A ZERO FORCING SET: {} of {} vertices colored", cl.colored_count(), a.n_rows())?;
        Ok(EXIT_NO_SOLUTION)
    }
}

pub fn zfs_find(matrix: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = load(matrix, parse_matrix)?;
    let z = greedy_find_zfs(&PatternGraph::from_matrix(&a)?);
    out.write_all(write_zfs(&z).as_bytes())?;
    Ok(EXIT_OK)
}
