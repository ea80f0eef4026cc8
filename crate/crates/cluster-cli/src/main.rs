//! `cluster`: command-line driver for cluster-core.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_core::Error;

#[derive(Parser, Debug)]
#[command(name = "cluster", version, about = "Exact computations with cluster algebras and their coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exactly one input source.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Named type: A1..A4, B2, B3, C3, D4, G2 and the other finite types,
    /// `rank2:b,c`, or an affine cycle `A<k>(1)`.
    #[arg(long = "type", value_name = "NAME")]
    pub r#type: Option<String>,
    /// JSON file with {"B": rows}, {"Btilde": rows, "n": k} or {"A": rows}.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<String>,
    /// JSON file with an extended matrix {"Btilde": rows, "n": k}.
    #[arg(long, value_name = "FILE")]
    pub btilde: Option<String>,
    /// Rank-2 Cartan matrix [[2, -b], [-c, 2]].
    #[arg(long, value_name = "B,C")]
    pub rank2: Option<String>,
    /// JSON file with a Cartan matrix {"A": rows}.
    #[arg(long, value_name = "FILE")]
    pub cartan: Option<String>,
}

impl Source {
    fn validate(&self) -> Result<(), String> {
        let given = [&self.r#type, &self.matrix, &self.btilde, &self.rank2, &self.cartan]
            .iter()
            .filter(|o| o.is_some())
            .count();
        match given {
            1 => Ok(()),
            0 => Err("one of --type, --matrix, --btilde, --rank2, --cartan is required".into()),
            _ => Err("--type, --matrix, --btilde, --rank2 and --cartan are mutually exclusive".into()),
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeffs {
    Principal,
    Trivial,
    Universal,
    Custom,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemifieldChoice {
    Trop,
    Universal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Seeds,
    Degrees,
    Vectors,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate an (extended) exchange matrix along a path.
    Mutate {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Principal-coefficient seeds along a path, with F, F(ŷ), g and d.
    Walk {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
        #[arg(long, value_enum, default_value = "all")]
        view: View,
        #[command(flatten)]
        out: Output,
    },
    /// F-polynomials at the end of a path.
    FPoly {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// g-vectors at the end of a path.
    GVector {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Denominator vectors at the end of a path.
    DVector {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',')]
        path: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Exchange graph enumeration.
    Graph {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "trivial")]
        coeffs: Coeffs,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Bipartite belt over a range, with its verification.
    Belt {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_parser = input::parse_range, default_value = "0:4", allow_hyphen_values = true)]
        range: (i64, i64),
        #[arg(long, value_enum, default_value = "principal")]
        coeffs: Coeffs,
        #[command(flatten)]
        out: Output,
    },
    /// Y-system iteration.
    Ysystem {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "universal")]
        semifield: SemifieldChoice,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// `u` or `y` for generators, `u=1,2,...` or `y=...` for numbers.
        #[arg(long, default_value = "u")]
        initial: String,
        #[command(flatten)]
        out: Output,
    },
    /// Universal coefficients of a finite type.
    Universal {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Coefficient specialization from universal coefficients.
    Specialize {
        #[command(flatten)]
        src: Source,
        /// `principal`, `trivial`, or a JSON file with an extended matrix.
        #[arg(long, default_value = "principal")]
        target: String,
        /// Verify along the belt instead of the whole exchange graph.
        #[arg(long)]
        belt: bool,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Fibonacci polynomials of a finite type.
    Fibonacci {
        #[command(flatten)]
        src: Source,
        /// Only term counts, by modular evaluation.
        #[arg(long)]
        sizes: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Audit of the F-polynomial, g-vector and d-vector properties.
    Check {
        #[command(flatten)]
        src: Source,
        /// Explore the exchange graph up to this many seeds.
        #[arg(long, alias = "cap", default_value_t = 1000)]
        max_seeds: usize,
        /// Explore the belt this many steps each way instead.
        #[arg(long)]
        belt: Option<usize>,
        /// Write the JSON report to FILE.
        #[arg(long, value_name = "FILE")]
        report: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

/// Exit status: 0 success, 1 failed verification, 2 usage error.
enum Failure {
    Usage(String),
    Compute(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CLUSTER_THREADS") {
        let n: usize = v.parse().map_err(|_| Failure::Usage(format!("CLUSTER_THREADS: bad value {v:?}")))?;
        if n == 0 {
            return Err(Failure::Usage("CLUSTER_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("CLUSTER_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    use commands as c;
    let check = |s: &Source| s.validate().map_err(Failure::Usage);
    match cli.command {
        Command::Mutate { src, path, out } => {
            check(&src)?;
            c::mutate(&src, &path, &out)
        }
        Command::Walk { src, path, view, out } => {
            check(&src)?;
            c::walk(&src, &path, view, &out)
        }
        Command::FPoly { src, path, out } => {
            check(&src)?;
            c::f_poly(&src, &path, &out)
        }
        Command::GVector { src, path, out } => {
            check(&src)?;
            c::g_vector(&src, &path, &out)
        }
        Command::DVector { src, path, out } => {
            check(&src)?;
            c::d_vector_cmd(&src, &path, &out)
        }
        Command::Graph { src, coeffs, cap, out } => {
            check(&src)?;
            if cap == 0 {
                return Err(Failure::Usage("--cap must be positive".into()));
            }
            c::graph(&src, coeffs, cap, &out)
        }
        Command::Belt { src, range, coeffs, out } => {
            check(&src)?;
            c::belt(&src, range, coeffs, &out)
        }
        Command::Ysystem { src, semifield, steps, initial, out } => {
            check(&src)?;
            c::ysystem(&src, semifield, steps, &initial, &out)
        }
        Command::Universal { src, out } => {
            check(&src)?;
            c::universal(&src, &out)
        }
        Command::Specialize { src, target, belt, cap, out } => {
            check(&src)?;
            c::specialize(&src, &target, belt, cap, &out)
        }
        Command::Fibonacci { src, sizes, out } => {
            check(&src)?;
            c::fibonacci(&src, sizes, &out)
        }
        Command::Check { src, max_seeds, belt, report, out } => {
            check(&src)?;
            if max_seeds == 0 {
                return Err(Failure::Usage("--max-seeds must be positive".into()));
            }
            c::check(&src, max_seeds, belt, report.as_deref(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            let usage = matches!(e, Error::InvalidInput(_) | Error::Parse(_) | Error::IncompatibleInputs(_));
            ExitCode::from(if usage { 2 } else { 1 })
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
