mod commands;
mod render;
mod session;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use session::{Failure, Session};

#[derive(Parser, Debug)]
#[command(name = "nilvec", version, about = "Exact Lie algebras of vector fields in up to three variables")]
struct Cli {
    #[command(flatten)]
    session: SessionArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
pub struct SessionArgs {
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y,z")]
    pub vars: String,
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_dim: u64,
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_rounds: u64,
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub degree_cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// A vector field such as "y*Dx + x^2*exp(y)*Dz"; repeatable.
    #[arg(long = "gen", global = true)]
    pub generators: Vec<String>,
    /// File with one vector field per line; '#' starts a comment.
    #[arg(long, global = true)]
    pub file: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct IdealArgs {
    /// Basis indices (0-based, comma-separated), "kernel" or "center".
    #[arg(long)]
    pub ideal: String,
    /// Kept variables for "--ideal kernel"; defaults to all but the last.
    #[arg(long)]
    pub kept: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of exactly two fields.
    Bracket,
    /// Lie closure with structure constants and basic invariants.
    Closure,
    /// Classification by the rank and dimension of the center.
    Classify,
    Center,
    /// Lower central and derived series dimensions.
    Series,
    /// Generic rank of the given fields.
    Rank,
    /// Projection onto a subset of the variables.
    Project {
        #[arg(long)]
        kept: String,
    },
    /// Jordan chains of ad(op) on an invariant subspace.
    Jordan {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Whether the algebra splits over an abelian ideal.
    Split {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Generators from a recipe with known structure.
    Generate {
        #[arg(long)]
        recipe: String,
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
    },
    /// Checks the closure against normal-form templates.
    Match {
        /// One template; all of them when omitted.
        #[arg(long)]
        template: Option<String>,
    },
}

fn run(cli: Cli) -> Result<serde_json::Value, Failure> {
    let s = Session::new(&cli.session)?;
    match cli.command {
        Command::Bracket => commands::bracket(&s),
        Command::Closure => commands::closure(&s),
        Command::Classify => commands::classify(&s),
        Command::Center => commands::center(&s),
        Command::Series => commands::series(&s),
        Command::Rank => commands::rank(&s),
        Command::Project { kept } => commands::project(&s, &kept),
        Command::Jordan { op, ideal } => commands::jordan(&s, &op, &ideal),
        Command::Split { ideal } => commands::split(&s, &ideal),
        Command::Generate { recipe, degree_bound } => commands::generate(&s, &recipe, degree_bound),
        Command::Match { template } => commands::match_templates(&s, template.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.session.format;
    match run(cli) {
        Ok(report) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                Format::Text => render::text(&report),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let body = serde_json::to_string_pretty(&failure.body).expect("errors serialize");
            eprintln!("{body}");
            ExitCode::from(failure.code)
        }
    }
}
