use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kclosure::campaigns::{cmd_closure, cmd_verify_lemmas, cmd_verify_product, cmd_verify_thm2, cmd_witness, self_test};
use kclosure::{AbelianSpec, Error, GroupFile, Limits, PermGroup, Permutation, VerificationReport};

const EXIT_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Wielandt k-closures of permutation groups and total closure of abelian groups.
#[derive(Parser)]
#[command(name = "kclosure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest degree^k for a tuple orbit index.
    #[arg(long, global = true)]
    cap_tuples: Option<usize>,
    /// Largest degree at which Sym(degree) is filtered directly.
    #[arg(long, global = true)]
    cap_brute: Option<usize>,
    /// Largest group enumerated element by element.
    #[arg(long, global = true)]
    cap_elements: Option<usize>,
    /// Largest degree for a 2-closure search.
    #[arg(long, global = true)]
    cap_degree_k2: Option<usize>,
    /// Largest degree for a k-closure search with k >= 3.
    #[arg(long, global = true)]
    cap_degree_k3: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            tuple_cap: self.cap_tuples.unwrap_or(d.tuple_cap),
            element_cap: self.cap_elements.unwrap_or(d.element_cap),
            brute_degree: self.cap_brute.unwrap_or(d.brute_degree),
            degree_cap_k2: self.cap_degree_k2.unwrap_or(d.degree_cap_k2),
            degree_cap_k3: self.cap_degree_k3.unwrap_or(d.degree_cap_k3),
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    /// Number of points.
    #[arg(long, requires = "gens", conflicts_with = "group")]
    degree: Option<usize>,
    /// Generator in 1-based cycle notation; repeat for several.
    #[arg(long = "gens", num_args = 1.., requires = "degree")]
    gens: Vec<String>,
    /// JSON file with "degree" and "generators".
    #[arg(long)]
    group: Option<PathBuf>,
}

impl GroupArgs {
    fn load(&self) -> Result<PermGroup, Error> {
        if let Some(path) = &self.group {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            return GroupFile::from_json(&text)?.to_group();
        }
        let degree = self
            .degree
            .ok_or_else(|| Error::InvalidInput("give --degree and --gens, or --group".into()))?;
        let gens = self
            .gens
            .iter()
            .map(|g| Permutation::parse(g, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }
}

#[derive(Subcommand)]
enum Command {
    /// k-closure of a group.
    Closure {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
    /// Faithful abelian action that is not n(G)-closed.
    Witness {
        /// Cyclic factor orders, e.g. 2,4,3.
        #[arg(long)]
        orders: AbelianSpec,
    },
    /// (n+1)-closure of every faithful action, and the witness at n.
    VerifyThm2 {
        #[arg(long)]
        orders: AbelianSpec,
        #[arg(long, default_value_t = 12)]
        max_points: usize,
    },
    /// k-closure of an abelian group against the product of Sylow k-closures.
    VerifyProduct {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
    /// Setwise-stabilizer restriction and Hall orbit properties.
    VerifyLemmas {
        #[arg(long)]
        orders: AbelianSpec,
        #[arg(long, default_value_t = 12)]
        max_points: usize,
        #[arg(long)]
        seed: u64,
        /// Orbit subsets examined per prime before sampling.
        #[arg(long, default_value_t = 4096)]
        max_subsets: usize,
    },
    /// Quick regression over small worked examples.
    SelfTest,
}

fn run(cli: &Cli) -> Result<VerificationReport, Error> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Closure { group, k } => cmd_closure(&group.load()?, *k, &limits),
        Command::Witness { orders } => cmd_witness(orders, &limits),
        Command::VerifyThm2 { orders, max_points } => cmd_verify_thm2(orders, *max_points, &limits),
        Command::VerifyProduct { group, k } => cmd_verify_product(&group.load()?, *k, &limits),
        Command::VerifyLemmas {
            orders,
            max_points,
            seed,
            max_subsets,
        } => cmd_verify_lemmas(orders, *max_points, *seed, *max_subsets, &limits),
        Command::SelfTest => self_test(&limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_string(),
                Format::Json => report.to_json() + "\n",
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { EXIT_CAP } else { EXIT_BAD_INPUT })
        }
    }
}
