use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use filiform_cli::commands::{self, load_algebra, read_json, write_json, Output, Status};
use filiform_cli::doc::GradingDoc;
use filiform_cli::CliError;

#[derive(Parser)]
#[command(
    name = "filiform",
    version,
    about = "Filiform Lie algebras, their gradings and deformations"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Index of the first basis vector in documents and reports.
    #[arg(long, global = true, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    basis_origin: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog model (L, Q, A, B) or a named algebra (n74, dixmier-lister).
    Make {
        kind: String,
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        /// Comma-separated rationals, e.g. 1,-1/2.
        #[arg(long, allow_hyphen_values = true)]
        alphas: Option<String>,
        /// Write the algebra document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the companion grading document here.
        #[arg(long)]
        grading_out: Option<PathBuf>,
    },
    /// Representatives of the grading classes against the exhaustive enumeration.
    Classify {
        kind: String,
        n: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alphas: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a grading document against an algebra document.
    Check { algebra: PathBuf, grading: PathBuf },
    /// Filiform type, rank, derivation dimension and characteristic nilpotency.
    Cn { algebra: PathBuf },
    /// Build mu_0 + sum of coeff * psi_{k,s} on e_0..e_n.
    Deform {
        n: usize,
        /// k,s,coeff (repeatable).
        #[arg(long = "term", required = true, allow_hyphen_values = true)]
        terms: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Z_k grading of a deformation mu_0 + psi.
    Zk {
        algebra: PathBuf,
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All factor-gradings of the standard grading.
    Enumerate {
        kind: String,
        n: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alphas: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let origin = usize::from(cli.basis_origin);
    match &cli.command {
        Command::Make {
            kind,
            n,
            p,
            alphas,
            out,
            grading_out,
        } => {
            let (made, output) = commands::make(kind, *n, *p, alphas.as_deref(), origin)?;
            if let Some(path) = out {
                write_json(path, &made.algebra)?;
            }
            if let Some(path) = grading_out {
                let g = made
                    .grading
                    .ok_or_else(|| CliError::invalid(format!("{kind} has no companion grading")))?;
                write_json(path, &g)?;
            }
            Ok(output)
        }
        Command::Classify {
            kind,
            n,
            p,
            alphas,
            out,
        } => {
            let spec = commands::model_spec(kind, *n, *p, alphas.as_deref())?;
            let output = commands::classify_cmd(&spec)?;
            if let Some(path) = out {
                write_json(path, &output.json)?;
            }
            Ok(output)
        }
        Command::Check { algebra, grading } => {
            let a = load_algebra(algebra, origin)?;
            let g: GradingDoc = read_json(grading)?;
            commands::check(a, &g, origin)
        }
        Command::Cn { algebra } => Ok(commands::cn(&load_algebra(algebra, origin)?)),
        Command::Deform { n, terms, out } => {
            let terms = terms
                .iter()
                .map(|t| commands::parse_term(t))
                .collect::<Result<Vec<_>, _>>()?;
            let (doc, output) = commands::deform(*n, &terms, origin)?;
            if let Some(path) = out {
                write_json(path, &doc)?;
            }
            Ok(output)
        }
        Command::Zk { algebra, k, out } => {
            let (doc, output) = commands::zk(load_algebra(algebra, origin)?, *k)?;
            if let (Some(path), Some(doc)) = (out, doc) {
                write_json(path, &doc)?;
            }
            Ok(output)
        }
        Command::Enumerate {
            kind,
            n,
            p,
            alphas,
            out,
        } => {
            let spec = commands::model_spec(kind, *n, *p, alphas.as_deref())?;
            let output = commands::enumerate(&spec)?;
            if let Some(path) = out {
                write_json(path, &output.json)?;
            }
            Ok(output)
        }
    }
}

fn report_error(e: &CliError, origin: usize) {
    eprintln!("error: {e}");
    if let CliError::Library(filiform::Error::JacobiViolation(triples)) = e {
        for v in triples {
            eprintln!(
                "  Jacobi fails at ({}, {}, {})",
                v.i + origin,
                v.j + origin,
                v.k + origin
            );
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            match cli.format {
                Format::Json => print!("{}", commands::to_json_string(&output.json)),
                Format::Text => print!("{}", output.text),
            }
            match output.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            report_error(&e, usize::from(cli.basis_origin));
            ExitCode::from(2)
        }
    }
}
