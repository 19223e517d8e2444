use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

/// Euler forms, admissibility and dimensions of poset varieties.
#[derive(Debug, Parser)]
#[command(name = "posetdim", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Poset file.
    file: PathBuf,
    /// Name of the `dim` line to use (default: the first one).
    #[arg(long)]
    vector: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Peel {
    First,
    Last,
    Rotating,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the file and summarize it.
    Validate(Input),
    /// Level partition T_h, ..., T_1.
    Levels(Input),
    /// Incidence matrix in level order.
    Incidence(Input),
    /// Inverse of the incidence matrix via Frobenius factors.
    Inverse(Input),
    /// Möbius matrix by the classical recursion.
    Mobius(Input),
    /// Frobenius factors F_1, ..., F_{h-1} and their inverses.
    Factors(Input),
    /// Euler form Q.
    Euler(Input),
    /// Tits matrix and the Tits form.
    Tits {
        #[command(flatten)]
        input: Input,
        /// Evaluate at the vector as written instead of (alpha0; c).
        #[arg(long)]
        raw: bool,
    },
    /// Coordinate vector c.
    Coordinate(Input),
    /// Admissible cone membership.
    Admissible(Input),
    /// Iterates of the level-wise coordinate computation.
    Iterate(Input),
    /// Dimension of the variety.
    Dim {
        #[command(flatten)]
        input: Input,
        /// Peel maximal elements one at a time.
        #[arg(long)]
        recursive: bool,
        /// Print each peeling step.
        #[arg(long, requires = "recursive")]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Peel::First, requires = "recursive")]
        peel: Peel,
    },
    /// Generic dimension of the sum of the subspaces at maximal elements.
    SumDim {
        #[command(flatten)]
        input: Input,
        /// Use the down-set of this element.
        #[arg(long)]
        below: Option<String>,
        /// Maximize over all points over F_q instead.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check the peeling identity for Q at a maximal element.
    #[command(name = "lemma2-check")]
    PeelCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: String,
    },
    /// Check Q >= 1 on the vector and all its summands.
    SummandScan {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = posetdim::DEFAULT_SUMMAND_BUDGET)]
        budget: u128,
    },
    /// Count points over F_q.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: u64,
    },
    /// Fit point counts to a polynomial of the claimed degree.
    FitDim {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Expected degree (default: alpha0^2 - Q).
        #[arg(long)]
        claimed: Option<usize>,
    },
    /// Graphviz DOT of the Hasse diagram.
    Dot {
        #[command(flatten)]
        input: Input,
        /// Omit dimensions from node labels.
        #[arg(long)]
        no_dims: bool,
    },
}

fn run(cmd: Command) -> Result<Output, CliError> {
    use commands as c;
    match cmd {
        Command::Validate(i) => c::validate(&c::load(&i.file)?),
        Command::Levels(i) => c::levels(&c::load(&i.file)?),
        Command::Incidence(i) => c::incidence(&c::load(&i.file)?),
        Command::Inverse(i) => c::inverse(&c::load(&i.file)?),
        Command::Mobius(i) => c::mobius(&c::load(&i.file)?),
        Command::Factors(i) => c::factors(&c::load(&i.file)?),
        Command::Euler(i) => c::euler(&c::load_with(&i.file, i.vector.as_deref())?),
        Command::Tits { input, raw } => {
            c::tits(&c::load_with(&input.file, input.vector.as_deref())?, raw)
        }
        Command::Coordinate(i) => c::coordinate(&c::load_with(&i.file, i.vector.as_deref())?),
        Command::Admissible(i) => c::admissible(&c::load_with(&i.file, i.vector.as_deref())?),
        Command::Iterate(i) => c::iterate(&c::load_with(&i.file, i.vector.as_deref())?),
        Command::Dim {
            input,
            recursive,
            trace,
            peel,
        } => {
            let order = match peel {
                Peel::First => posetdim::PeelOrder::First,
                Peel::Last => posetdim::PeelOrder::Last,
                Peel::Rotating => posetdim::PeelOrder::Rotating,
            };
            let w = c::load_with(&input.file, input.vector.as_deref())?;
            c::dim(&w, recursive.then_some(order), trace)
        }
        Command::SumDim { input, below, q } => c::sum_dim(
            &c::load_with(&input.file, input.vector.as_deref())?,
            below.as_deref(),
            q,
        ),
        Command::PeelCheck { input, x } => {
            c::peel_check(&c::load_with(&input.file, input.vector.as_deref())?, &x)
        }
        Command::SummandScan { input, budget } => {
            c::summand_scan(&c::load_with(&input.file, input.vector.as_deref())?, budget)
        }
        Command::Count { input, q } => {
            c::count(&c::load_with(&input.file, input.vector.as_deref())?, q)
        }
        Command::FitDim {
            input,
            primes,
            claimed,
        } => c::fit_dim(
            &c::load_with(&input.file, input.vector.as_deref())?,
            &primes,
            claimed,
        ),
        Command::Dot { input, no_dims } => {
            let file = c::load(&input.file)?;
            let alpha = if no_dims || file.vectors.is_empty() {
                None
            } else {
                Some(c::select(&file, input.vector.as_deref())?.clone())
            };
            c::dot(&file, alpha.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let json = cli.json;
    let mut stdout = std::io::stdout().lock();
    match run(cli.command) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let text = if json { out.json_text() } else { out.text };
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("error: {e}");
            if json {
                let _ = stdout.write_all(e.json_text().as_bytes());
            }
            ExitCode::from(code)
        }
    }
}
