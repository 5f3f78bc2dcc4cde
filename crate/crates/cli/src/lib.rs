//! `zfsolve` command line. Every command writes its result to `out` and
//! returns the process exit status: 0 on success, 2 when the system has no
//! solution or a set is not zero forcing, 1 on usage, I/O or parse errors.

mod bench;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zfsolve", version, about = "Repeated sparse solves over finite fields via zero forcing sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve A x = b, printing x one value per line.
    Solve {
        #[arg(short = 'A', long = "matrix")]
        matrix: PathBuf,
        #[arg(short = 'b', long = "rhs")]
        rhs: PathBuf,
        #[arg(short = 'Z', long = "zfs")]
        zfs: PathBuf,
        /// Core matrix cache written by `core`.
        #[arg(long)]
        core: Option<PathBuf>,
    },
    /// Preprocess A and write its core matrix cache.
    Core {
        #[arg(short = 'A', long = "matrix")]
        matrix: PathBuf,
        #[arg(short = 'Z', long = "zfs")]
        zfs: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Lights-out grids.
    #[command(subcommand)]
    Lightsout(LightsoutCommand),
    /// Zero forcing sets.
    #[command(subcommand)]
    Zfs(ZfsCommand),
    /// Timing tables.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Start the HTTP service.
    Serve {
        #[arg(long, env = "ZFSOLVE_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "ZFSOLVE_BIND", default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
        /// Allowed CORS origin; any origin when omitted.
        #[arg(long, env = "ZFSOLVE_ALLOW_ORIGIN")]
        allow_origin: Option<String>,
        #[arg(long, env = "ZFSOLVE_MAX_CELLS", default_value_t = zfsolve_svc::DEFAULT_MAX_CELLS)]
        max_cells: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum LightsoutCommand {
    /// Print the canonical press pattern that clears a board.
    Solve {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[command(flatten)]
        board: BoardSource,
        /// Seed for --random.
        #[arg(long, requires = "random")]
        seed: Option<u64>,
    },
    /// Build the n x n grid core with the light-chasing fast path.
    Core {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BoardSource {
    /// Board file: `rows cols`, then rows of 0/1 characters.
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long)]
    pub all_on: bool,
    /// Random solvable board; requires --seed.
    #[arg(long, requires = "seed")]
    pub random: bool,
}

#[derive(Subcommand, Debug)]
pub enum ZfsCommand {
    /// Check that Z forces the whole pattern graph of A.
    Verify {
        #[arg(short = 'A', long = "matrix")]
        matrix: PathBuf,
        #[arg(short = 'Z', long = "zfs")]
        zfs: PathBuf,
    },
    /// Print a zero forcing set found greedily.
    Find {
        #[arg(short = 'A', long = "matrix")]
        matrix: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BenchCommand {
    /// Square lights-out grids.
    Grid {
        #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        solves: usize,
        /// Largest n that also times the dense Gaussian oracle.
        #[arg(long, default_value_t = 32)]
        dense_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Solve { matrix, rhs, zfs, core } => commands::solve(&matrix, &rhs, &zfs, core.as_deref(), out),
        Command::Core { matrix, zfs, output } => commands::core(&matrix, &zfs, &output, out),
        Command::Lightsout(LightsoutCommand::Solve { rows, cols, board, seed }) => {
            commands::lightsout_solve(rows, cols, &board, seed, out)
        }
        Command::Lightsout(LightsoutCommand::Core { n, output }) => commands::lightsout_core(n, &output, out),
        Command::Zfs(ZfsCommand::Verify { matrix, zfs }) => commands::zfs_verify(&matrix, &zfs, out),
        Command::Zfs(ZfsCommand::Find { matrix }) => commands::zfs_find(&matrix, out),
        Command::Bench(BenchCommand::Grid { sizes, solves, dense_max, seed }) => {
            bench::grid(&sizes, solves, dense_max, seed, out)
        }
        Command::Serve { port, bind, allow_origin, max_cells } => {
            let config = zfsolve_svc::Config { max_cells, allow_origin };
            zfsolve_svc::serve_blocking((bind, port).into(), config)
                .map_err(|source| CliError::Io { path: "server".into(), source })?;
            Ok(EXIT_OK)
        }
    }
}
