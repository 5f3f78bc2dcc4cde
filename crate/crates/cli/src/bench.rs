use std::io::Write;
use std::time::{Duration, Instant};

use zfsolve::grid::random_solvable;
use zfsolve::{dense_gaussian_solve, grid_matrix, lightsout_preprocess, solve_board, GridSpec};

use crate::{CliError, EXIT_OK};

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied().unwrap_or_default()
}

fn micros(d: Duration) -> String {
    format!("{:.1}", d.as_secs_f64() * 1e6)
}

pub fn grid(sizes: &[usize], solves: usize, dense_max: usize, seed: u64, out: &mut dyn Write) -> Result<i32, CliError> {
    if solves == 0 {
        return Err(CliError::Usage("--solves must be positive".into()));
    }
    writeln!(out, "{:>6} {:>6} {:>14} {:>14} {:>14}", "n", "k", "preprocess_ms", "solve_us", "dense_us")?;
    for &n in sizes {
        let g = GridSpec::square(n)?;
        let start = Instant::now();
        let h = lightsout_preprocess(g)?;
        let prep = start.elapsed();

        let boards: Vec<_> = (0..solves as u64).map(|i| random_solvable(g, seed.wrapping_add(i))).collect();
        let mut times = Vec::with_capacity(solves);
        for b in &boards {
            let t = Instant::now();
            let presses = solve_board(&h, b)?;
            times.push(t.elapsed());
            if presses.is_none() {
                return Err(CliError::Usage(format!("constructed board on n={n} reported unsolvable")));
            }
        }

        let dense = if n <= dense_max {
            let a = grid_matrix(g).to_dense();
            let runs = solves.min(10);
            let times = boards[..runs]
                .iter()
                .map(|b| {
                    let t = Instant::now();
                    dense_gaussian_solve(&a, b.cells()).map(|_| t.elapsed())
                })
                .collect::<Result<Vec<_>, _>>()?;
            micros(median(times))
        } else {
            "-".to_string()
        };
        writeln!(
            out,
            "{n:>6} {:>6} {:>14.1} {:>14} {dense:>14}",
            h.solver().k(),
            prep.as_secs_f64() * 1e3,
            micros(median(times))
        )?;
    }
    Ok(EXIT_OK)
}
