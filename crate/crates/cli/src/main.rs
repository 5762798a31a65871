//! `isodrum`: enumeration, isospectral search, FEM spectra and the conformal
//! disk demo from the command line.
//!
//! Exit codes: 0 success, 2 bad input or guard violation, 3 I/O, 4 numerical
//! failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "isodrum", version, about = "Isospectral drums from triangle copies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output directory, created if missing
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Restrict written files to these formats (default: all)
    #[arg(long, global = true, value_delimiter = ',')]
    pub format: Vec<Format>,
    /// Leave run times out of JSON so repeated runs are byte-identical
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads (default: DRUM_THREADS, then all cores)
    #[arg(long, global = true, env = "DRUM_THREADS")]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Txt,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify all volumes of n copies of a tile
    Enumerate {
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Side lengths alpha,beta,gamma
        #[arg(long, default_value = "1,1,1")]
        tile: String,
    },
    /// Enumerate, filter by features and auxiliary spectra, verify Sunada
    /// triples and build transplantations
    IsospectralSearch {
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value = "1,1,1")]
        tile: String,
        /// Spectral agreement needed to keep a candidate pair
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Dirichlet eigenvalues of a volume given as JSON
    Spectrum {
        /// Volume file with `tile` and `gluing`
        dv: PathBuf,
        #[arg(long, default_value_t = 4)]
        refine: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Transplant the unit-square fundamental onto the disk, expand it in
    /// Bessel functions and correct it
    ConformalDemo {
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.common.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // only fails if a pool exists already, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let result = match cli.command {
        Command::Enumerate { n, tile } => commands::enumerate(&cli.common, n, &tile),
        Command::IsospectralSearch { n, tile, tol } => commands::isospectral_search(&cli.common, n, &tile, tol),
        Command::Spectrum { dv, refine, k } => commands::spectrum(&cli.common, &dv, refine, k),
        Command::ConformalDemo { terms } => commands::conformal_demo(&cli.common, terms),
    };
    match result {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
