use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_richardson_cli::{run, FamilyKind, Mode, Output, RunConfig, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "torich",
    version,
    about = "Toric Bruhat intervals and their moment polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide toricity of one interval, or of every interval in S_n.
    Classify {
        #[command(flatten)]
        pair: OptionalPair,
        /// Enumerate all comparable pairs of S_n (n <= 5).
        #[arg(long, requires = "sn", conflicts_with_all = ["v", "w"])]
        enumerate: bool,
        #[arg(long)]
        sn: Option<usize>,
        /// Report each of the four toricity predicates.
        #[arg(long)]
        all_tests: bool,
        /// Shorthand for --output json.
        #[arg(long, conflicts_with = "output")]
        json: bool,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
    },
    /// Moment polytope of a toric interval (dot prints the Hasse diagram).
    Polytope {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
    },
    /// Summand vertex labels and flag minors (dot prints the wiring graph).
    Summands {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "json")]
        output: Format,
    },
    /// Plabic forests realizing the family constituents.
    Plabic {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "dot")]
        output: Format,
    },
    /// Describe or verify one of the two infinite families.
    Family {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Restrict hypercube checks to a single rank.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: Format,
    },
    /// Classify S_n and run every structural check on its toric intervals.
    VerifyAll {
        #[arg(long)]
        sn: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        output: Format,
    },
}

#[derive(Args)]
struct Pair {
    /// Bottom permutation in one-line notation, e.g. 2,1,4,3.
    #[arg(long)]
    v: String,
    #[arg(long)]
    w: String,
    /// Reduced word for w as comma-separated letters.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct OptionalPair {
    #[arg(long, required_unless_present = "enumerate")]
    v: Option<String>,
    #[arg(long, required_unless_present = "enumerate")]
    w: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Off,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Even,
    Hypercube,
}

impl From<Format> for Output {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => Output::Json,
            Format::Dot => Output::Dot,
            Format::Off => Output::Off,
            Format::Text => Output::Text,
        }
    }
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Even => FamilyKind::Even,
            Family::Hypercube => FamilyKind::Hypercube,
        }
    }
}

fn config(cli: Cli) -> RunConfig {
    let base = |mode, output: Format| RunConfig {
        mode,
        n: None,
        v: None,
        w: None,
        word: None,
        output: output.into(),
        seed: 0,
    };
    match cli.command {
        Command::Classify {
            pair,
            enumerate,
            sn,
            all_tests,
            json,
            output,
        } => {
            let output = if json { Format::Json } else { output };
            if enumerate {
                RunConfig {
                    n: sn,
                    ..base(Mode::ClassifyAll { all_tests }, output)
                }
            } else {
                RunConfig {
                    v: pair.v,
                    w: pair.w,
                    ..base(Mode::Classify { all_tests }, output)
                }
            }
        }
        Command::Polytope { pair, output } => RunConfig {
            v: Some(pair.v),
            w: Some(pair.w),
            word: pair.word,
            ..base(Mode::Polytope, output)
        },
        Command::Summands { pair, output } => RunConfig {
            v: Some(pair.v),
            w: Some(pair.w),
            word: pair.word,
            ..base(Mode::Summands, output)
        },
        Command::Plabic {
            family,
            n,
            k,
            output,
        } => RunConfig {
            n: Some(n),
            ..base(
                Mode::Plabic {
                    family: family.into(),
                    k,
                },
                output,
            )
        },
        Command::Family {
            family,
            n,
            k,
            verify,
            seed,
            output,
        } => RunConfig {
            n: Some(n),
            seed,
            ..base(
                Mode::Family {
                    family: family.into(),
                    k,
                    verify,
                },
                output,
            )
        },
        Command::VerifyAll { sn, seed, output } => RunConfig {
            n: Some(sn),
            seed,
            ..base(Mode::VerifyAll, output)
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = run(&config(cli), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    ExitCode::from(status as u8)
}
