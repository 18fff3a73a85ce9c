//! `ppsym`: exact counts of symmetric plane partitions, matrix dumps,
//! invariant sweeps and lozenge-tiling renders.

mod count;
mod matrix;
mod render;
mod verify;

use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ppsym_core::oracle::DEFAULT_VOLUME_BUDGET;
use ppsym_core::{BoxDims, Error, Mode, Route, SymmetryClass};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ppsym",
    version,
    about = "Exact enumeration of symmetric plane partitions in a box"
)]
struct Cli {
    /// Largest box volume the brute-force oracle may enumerate.
    #[arg(long, global = true, env = "PPSYM_BUDGET", default_value_t = DEFAULT_VOLUME_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count plane partitions of a symmetry class in an a × b × c box.
    Count {
        /// pp, tcpp, cspp or cstcpp.
        class: SymmetryClass,
        #[command(flatten)]
        dims: DimsArgs,
        #[command(flatten)]
        out: CountArgs,
    },
    /// q-count of all plane partitions in an a × b × c box (q per cube).
    Qcount {
        #[command(flatten)]
        dims: DimsArgs,
        #[command(flatten)]
        out: CountArgs,
    },
    /// Dump the matching matrix of a class, or one block of a tensor product.
    Matrix(matrix::MatrixArgs),
    /// Run the invariant suite over every box up to a size.
    Verify(verify::VerifyArgs),
    /// Draw a lozenge tiling of the hexagon as SVG.
    Render(render::RenderArgs),
}

#[derive(Args, Clone, Copy)]
pub struct DimsArgs {
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    a: u32,
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    b: u32,
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
}

impl DimsArgs {
    pub fn dims(self) -> Result<BoxDims, Error> {
        BoxDims::new(self.a, self.b, self.c)
    }
}

#[derive(Args)]
pub struct CountArgs {
    /// det, formula, oracle or all.
    #[arg(long, default_value = "det", value_parser = parse_routes)]
    route: Routes,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Debug)]
pub struct Routes(pub Vec<Route>);

fn parse_routes(s: &str) -> Result<Routes, Error> {
    if s == "all" {
        Ok(Routes(Route::ALL.to_vec()))
    } else {
        Ok(Routes(vec![s.parse()?]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classical,
    Quantum,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Quantum => Mode::Quantum,
        }
    }
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(Error::Invariant(format!("serialisation failed: {e}")))
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::BudgetExceeded(_)) => EXIT_BUDGET,
            Failure::Core(Error::Invariant(_)) => EXIT_INVARIANT,
            Failure::Core(_) | Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// Writes to stdout; a reader that hangs up early (`| head`) is not an error.
pub fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        r => r.map_err(Failure::Io),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count { class, dims, out } => count::run(
            class,
            dims.dims()?,
            Mode::Classical,
            &out.route.0,
            out.format,
            cli.budget,
        ),
        Command::Qcount { dims, out } => count::run(
            SymmetryClass::Pp,
            dims.dims()?,
            Mode::Quantum,
            &out.route.0,
            out.format,
            cli.budget,
        ),
        Command::Matrix(args) => matrix::run(&args),
        Command::Verify(args) => verify::run(&args, cli.budget),
        Command::Render(args) => render::run(&args, cli.budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ppsym: {e}");
            ExitCode::from(e.code())
        }
    }
}
