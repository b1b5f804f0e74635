//! `jordan`: batch front end for the structure engines.
//!
//! Exit status is 0 on success, 1 when a verifier or a hypothesis rejects
//! the input, and 2 for usage and parse errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jordan_core::bider::{biderivation_space, reduction_pipeline};
use jordan_core::io::{self, AlgebraFile, CatalogTag};
use jordan_core::report::{self, Format, Report};
use jordan_core::triple::{self, budget_from_env};
use jordan_core::{catalog, Error, FieldSpec, JModule, Result, Symmetry};

#[derive(Parser)]
#[command(name = "jordan", version, about = "Exact structure computations for Jordan algebras")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Let analysis commands run on commutative tables that fail the Jordan identity.
    #[arg(long, global = true)]
    allow_non_jordan: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check commutativity and the Jordan identity, or the module axioms with --module.
    Verify {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Center, derived algebras, unit, centroid and derivation dimensions.
    Analyze { algebra: PathBuf },
    /// Solve for biderivations into the regular module or --module.
    Bider {
        algebra: PathBuf,
        #[arg(long, conflicts_with = "skew")]
        symmetric: bool,
        #[arg(long)]
        skew: bool,
        /// Require d(w, u o v) = w . d(u, v).
        #[arg(long)]
        condition1: bool,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Run the center-quotient / derived-restriction reduction.
    Reduce {
        algebra: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_depth: usize,
    },
    /// Analyze a linear map J1 -> J2 as a triple homomorphism.
    TripleCheck {
        map: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// List every triple homomorphism between two algebras over GF(p).
    TripleEnumerate {
        source: PathBuf,
        target: PathBuf,
        /// Maximum number of candidate maps (default from JORDAN_ENUM_BUDGET or 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print a catalog algebra as an algebra file.
    Catalog {
        name: String,
        /// Size for the matrix families, form entries or alpha values for spin factors.
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Work over GF(p) instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
}

fn load_algebra(path: &Path, allow_non_jordan: bool) -> Result<AlgebraFile> {
    let file = io::load(path, io::parse_algebra)?;
    if !allow_non_jordan {
        let check = file.algebra.verify_jordan();
        if let Some(w) = check.identity_witness {
            return Err(Error::Hypothesis {
                name: "Jordan identity",
                detail: format!(
                    "{} fails it at monomial {w:?}; pass --allow-non-jordan to analyze anyway",
                    path.display()
                ),
            });
        }
    }
    Ok(file)
}

enum Output {
    Report(Report),
    File(String),
}

fn run(cli: &Cli, command_line: &str) -> Result<Output> {
    let allow = cli.allow_non_jordan;
    let report = match &cli.command {
        Command::Verify { algebra, module } => {
            let file = io::load(algebra, io::parse_algebra_unchecked)?;
            match module {
                None => report::verify_report(command_line, &file.algebra, &file.algebra.verify_jordan()),
                Some(m) => {
                    let m = io::load(m, io::parse_module)?;
                    let check = m.verify(&file.algebra)?;
                    report::verify_module_report(command_line, &file.algebra, &m, &check)
                }
            }
        }
        Command::Analyze { algebra } => {
            let file = load_algebra(algebra, allow)?;
            report::analyze_report(command_line, &file.algebra, file.catalog.as_ref())?
        }
        Command::Bider {
            algebra,
            symmetric,
            skew,
            condition1,
            module,
        } => {
            let file = load_algebra(algebra, allow)?;
            let j = &file.algebra;
            let m = match module {
                Some(p) => io::load(p, io::parse_module)?,
                None => JModule::regular(j),
            };
            let symmetry = match (symmetric, skew) {
                (true, _) => Symmetry::Symmetric,
                (_, true) => Symmetry::Skew,
                _ => Symmetry::General,
            };
            let space = biderivation_space(j, &m, symmetry, *condition1)?;
            report::bider_report(command_line, j, &space, module.is_none(), file.catalog.as_ref())
        }
        Command::Reduce { algebra, max_depth } => {
            let file = load_algebra(algebra, allow)?;
            let r = reduction_pipeline(&file.algebra, *max_depth)?;
            report::reduce_report(command_line, &r, file.catalog.as_ref())
        }
        Command::TripleCheck { map, source, target } => {
            let j1 = load_algebra(source, allow)?;
            let j2 = load_algebra(target, allow)?;
            let f = io::load(map, io::parse_linear_map)?;
            let r = triple::analyze(&j1.algebra, &j2.algebra, &f)?;
            report::triple_report(command_line, &j1.algebra, &j2.algebra, &f, &r, j1.catalog.as_ref())?
        }
        Command::TripleEnumerate { source, target, budget } => {
            let j1 = load_algebra(source, allow)?.algebra;
            let j2 = load_algebra(target, allow)?.algebra;
            let maps = triple::enumerate_triple_homs(&j1, &j2, budget.unwrap_or_else(budget_from_env))?;
            let reports = maps
                .iter()
                .map(|f| triple::analyze(&j1, &j2, f))
                .collect::<Result<Vec<_>>>()?;
            report::enumerate_report(command_line, &j1, &j2, &maps, &reports)
        }
        Command::Catalog { name, params, prime } => {
            let field = match prime {
                Some(p) => FieldSpec::prime(*p)?,
                None => FieldSpec::rational(),
            };
            let j = catalog::build(name, field, params)?;
            let tag = CatalogTag {
                name: name.clone(),
                params: params.clone(),
            };
            return Ok(Output::File(io::to_pretty(&io::algebra_to_json(&j, Some(&tag)))));
        }
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match run(&cli, &command_line) {
        Ok(Output::File(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.render(format));
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
