use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncinvert::inversion::Engine;
use ncinvert::suite::SuiteConfig;
use ncinvert_cli::commands::{self, BenchPlan, DegreeRange, Format, Options, Report, TreesMode};
use ncinvert_cli::error::CliError;
use ncinvert_cli::source::{split_names, RingSpec};

/// Exact inversion of formal maps z - H(z) in noncommuting variables.
#[derive(Parser)]
#[command(name = "ncinvert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Coefficient ring: `rational` or `gfp:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    ring: RingSpec,
    /// Variable names in order, e.g. `x,y`.
    #[arg(long, global = true)]
    vars: Option<String>,
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Leave wall-clock times out of reports, making them byte-identical
    /// across runs.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invert the map in MAPFILE (`-` for stdin) and verify the result.
    Invert {
        mapfile: Option<PathBuf>,
        /// Map text given inline instead of a file.
        #[arg(long, conflicts_with = "mapfile")]
        map: Option<String>,
        #[arg(short, long, default_value_t = 6)]
        degree: usize,
        /// fixed-point, recurrent, tree, charp-direct or charp-lift.
        #[arg(long)]
        engine: Option<Engine>,
    },
    /// Check that INVERSE inverts MAPFILE up to the degree.
    Verify {
        mapfile: PathBuf,
        inverse: PathBuf,
        #[arg(short, long, default_value_t = 6)]
        degree: usize,
    },
    /// Planar binary trees with a given number of leaves.
    Trees {
        #[arg(long)]
        leaves: usize,
        /// One tree per line with its reduced factorial.
        #[arg(long, group = "mode")]
        list: bool,
        /// Check that 1/T! sums to 1 for every leaf count up to LEAVES.
        #[arg(long, group = "mode")]
        identity: bool,
        /// Print the tree-expansion term N_[LEAVES] of a map.
        #[arg(long, group = "mode", value_name = "MAPFILE")]
        invert: Option<PathBuf>,
        #[arg(short, long, default_value_t = 6)]
        degree: usize,
    },
    /// Run the randomized identity suite.
    #[command(alias = "check-identities")]
    Identities {
        /// Largest number of variables.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(short, long, default_value_t = 6)]
        degree: usize,
        /// Largest t-order.
        #[arg(long, default_value_t = 5)]
        torder: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Run only these identities.
        #[arg(long)]
        only: Vec<String>,
    },
    /// Time every applicable engine and print CSV rows.
    Bench {
        mapfiles: Vec<PathBuf>,
        /// A degree or an inclusive range such as 4..8.
        #[arg(short, long, default_value = "6")]
        degree: DegreeRange,
        /// Restrict to these engines.
        #[arg(long)]
        engine: Vec<Engine>,
        /// Seed for random maps, used when no map file is given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random maps.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Variables in random maps.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn options(global: &Global, degree: usize) -> Options {
    Options {
        ring: global.ring,
        degree,
        vars: global.vars.as_deref().map(split_names),
        format: global.format,
        timings: !global.no_timings,
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Other(e.to_string()))?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Invert {
            mapfile,
            map,
            degree,
            engine,
        } => {
            let text = match (map, mapfile) {
                (Some(t), _) => t,
                (None, Some(p)) => read_input(&p)?,
                (None, None) => read_input(Path::new("-"))?,
            };
            commands::invert(&text, engine, &options(g, degree))
        }
        Command::Verify {
            mapfile,
            inverse,
            degree,
        } => commands::verify(
            &read_input(&mapfile)?,
            &read_input(&inverse)?,
            &options(g, degree),
        ),
        Command::Trees {
            leaves,
            list,
            identity,
            invert,
            degree,
        } => {
            let mode = match (list, identity, invert) {
                (_, _, Some(p)) => TreesMode::Invert(read_input(&p)?),
                (_, true, _) => TreesMode::Identity,
                _ => TreesMode::List,
            };
            commands::trees(leaves, &mode, &options(g, degree))
        }
        Command::Identities {
            n,
            degree,
            torder,
            seed,
            trials,
            only,
        } => {
            if n == 0 || degree < 2 || torder == 0 || trials == 0 {
                return Err(CliError::Precondition(
                    "identities need --n >= 1, --degree >= 2, --torder >= 1 and --trials >= 1"
                        .into(),
                ));
            }
            let config = SuiteConfig {
                seed,
                trials,
                max_arity: n,
                degree,
                t_order: torder,
            };
            commands::identities(&config, &only, &options(g, degree))
        }
        Command::Bench {
            mapfiles,
            degree,
            engine,
            seed,
            trials,
            n,
        } => {
            let maps = mapfiles
                .iter()
                .map(|p| Ok((p.display().to_string(), read_input(p)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let plan = BenchPlan {
                maps,
                degrees: degree,
                engines: engine,
                seed,
                random_maps: trials,
                arity: n.max(1),
            };
            commands::bench(&plan, &options(g, degree.to))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(report) => {
            let written = match &output {
                Some(path) => fs::write(path, &report.body),
                None => io::stdout().write_all(report.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
