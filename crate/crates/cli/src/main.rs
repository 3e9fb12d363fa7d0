use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qtilt_cli::{cmd_basis, cmd_cover, cmd_endo, cmd_hasse, cmd_verify, CliError, Options, Output, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "qtilt", version, about = "Tilting modules, Hasse diagrams and Galois coverings over bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap on projective resolutions.
    #[arg(long, global = true)]
    cap_pd: Option<usize>,
    /// Cap on Hasse diagram vertices.
    #[arg(long, global = true)]
    cap_vertices: Option<usize>,
    /// Path length cap used when building presentations.
    #[arg(long, global = true)]
    cap_length: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the command's document (DOT, algebra or module file) here.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Report,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and path basis.
    Basis { algebra: String },
    /// Hasse diagram of tilting modules from A, DA, or the given modules.
    Hasse { algebra: String, start: Vec<String> },
    /// End(T) for T = apr:<sink>, A, DA, or module files.
    Endo {
        algebra: String,
        #[arg(required = true)]
        t: Vec<String>,
    },
    /// thm45, lemma41, prop43 or prop46 for the given T.
    Verify {
        algebra: String,
        check: String,
        #[arg(required = true)]
        t: Vec<String>,
    },
    /// build, verify, pushdown, pullup, first-kind, pullup-tilting or endo-cover.
    Cover {
        algebra: String,
        grading: String,
        action: String,
        modules: Vec<String>,
        /// Group orders replacing those of the grading file, e.g. `--group 2,3`.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u64>>,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = Options {
        cap_pd: cli.cap_pd,
        cap_vertices: cli.cap_vertices,
        cap_length: cli.cap_length,
        seed: cli.seed,
        group: match &cli.command {
            Command::Cover { group, .. } => group.clone(),
            _ => None,
        },
    };
    match &cli.command {
        Command::Basis { algebra } => cmd_basis(algebra, &opts),
        Command::Hasse { algebra, start } => cmd_hasse(algebra, start, &opts),
        Command::Endo { algebra, t } => cmd_endo(algebra, t, &opts),
        Command::Verify { algebra, check, t } => cmd_verify(algebra, check, t, &opts),
        Command::Cover {
            algebra,
            grading,
            action,
            modules,
            ..
        } => cmd_cover(algebra, grading, action, modules, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qtilt: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if cli.format == Format::Dot && !matches!(cli.command, Command::Hasse { .. }) {
        eprintln!("qtilt: --format=dot applies to hasse only");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    match (&cli.out, &out.artifact) {
        (Some(path), Some(doc)) => {
            if let Err(e) = fs::write(path, doc) {
                eprintln!("qtilt: {path}: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        (Some(_), None) => {
            eprintln!("qtilt: this command writes no document; --out ignored");
        }
        _ => {}
    }
    let text = if cli.format == Format::Dot && cli.out.is_none() {
        out.artifact.clone().unwrap_or_default()
    } else {
        out.report.to_json() + "\n"
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(out.report.exit_code() as u8)
}
