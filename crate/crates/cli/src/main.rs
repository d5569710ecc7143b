use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polysym_cli::commands::{self, CliError, ConvertOptions, Report, Status};

#[derive(Parser)]
#[command(name = "polysym", version, about = "Polyhedral computations up to symmetry")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "POLYSYM_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Affine symmetry group of a V-file, or the restricted symmetries of an H-file.
    Automorphisms { input: PathBuf },
    /// Converts H to V or V to H up to symmetry, one row per orbit.
    Convert {
        input: PathBuf,
        /// Incidence decomposition below depth L1, adjacency decomposition below L2.
        #[arg(long, num_args = 2, value_names = ["L1", "L2"], default_values_t = [0, 1])]
        idm_adm_level: Vec<usize>,
        /// Also write the facet adjacency graph up to symmetry in DOT format.
        #[arg(long)]
        adjacencies: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// DOT path (default: the input path with extension `dot`).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Use the set stabilizer of these 1-based rows instead of the full group.
        #[arg(long, value_name = "ROWS")]
        restrict_to_stabilizer: Option<String>,
    },
    /// Number of integer points.
    Count {
        input: PathBuf,
        /// Count through the slice decomposition of the `blocks:` header.
        #[arg(long)]
        symmetric: bool,
    },
    /// Ehrhart quasi-polynomial, coefficients constant term first.
    Ehrhart {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        period_bound: u64,
    },
    /// Exact volume relative to the lattice of the affine hull.
    Volume {
        input: PathBuf,
        /// Fan from random interior points drawn with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Integer feasibility, or optimisation when a `maximize` row is present.
    Ilp { input: PathBuf },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Automorphisms { input } => commands::automorphisms(&commands::read_polyfile(&input)?),
        Command::Convert { input, idm_adm_level, adjacencies, output, dot, restrict_to_stabilizer } => {
            let file = commands::read_polyfile(&input)?;
            let opts = ConvertOptions {
                levels: (idm_adm_level[0], idm_adm_level[1]),
                adjacencies,
                output,
                dot,
                stabilizer_of: restrict_to_stabilizer,
            };
            let (report, summary) = commands::convert(&file, &input, &opts)?;
            eprint!("{summary}");
            Ok(report)
        }
        Command::Count { input, symmetric } => commands::count(&commands::read_polyfile(&input)?, symmetric),
        Command::Ehrhart { input, period_bound } => {
            commands::ehrhart_cmd(&commands::read_polyfile(&input)?, period_bound)
        }
        Command::Volume { input, seed } => commands::volume_cmd(&commands::read_polyfile(&input)?, seed),
        Command::Ilp { input } => {
            let (report, warning) = commands::ilp(&commands::read_polyfile(&input)?)?;
            if let Some(w) = warning {
                eprintln!("{w}");
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(report) => {
            print!("{}", report.stdout);
            match report.status {
                Status::Success => ExitCode::SUCCESS,
                Status::Empty => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
