mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "twistq", version, about = "Twisted quandle homology, cocycles and state-sum invariants")]
pub struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Twisted homology group with its T-action.
    Homology(HomologyArgs),
    /// Twisted cohomology group, generators and cocycle basis.
    Cohomology(HomologyArgs),
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// State-sum invariant of a PD diagram.
    Invariant(InvariantArgs),
    /// State-sum invariant of a surface triple-point presentation.
    InvariantSurface(SurfaceArgs),
    /// Runs the verification catalog (the bundled one by default).
    VerifySuite(SuiteArgs),
}

#[derive(Args, Debug)]
pub struct Space {
    /// `T(n)`, `R(n)`, `A(n;h)` or a table file.
    #[arg(long)]
    pub quandle: String,
    /// Coefficient ring such as `Z3[T]/(T+1)`.
    #[arg(long)]
    pub coeff: String,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value = "TQ")]
    pub variant: String,
    #[arg(long)]
    pub degree: usize,
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    #[command(subcommand)]
    Construct(Construct),
    /// Cocycle and coboundary test for a cochain file.
    Verify {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value = "TQ")]
        variant: String,
    },
    /// Evaluates a cochain on a chain.
    Pair {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        chain: String,
        #[arg(long, default_value = "TQ")]
        variant: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Carry cocycle of Z_{p^m} over Z_p.
    Modular {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        h: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// h-adic carry cocycle of Z_p[T]/(h^m) over Z_p[T]/(h).
    Polynomial {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<String>,
    },
    /// Integral 2-cocycle of R(n).
    Dihedral {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Z0[T]/(T+1)")]
        coeff: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Lift of a cocycle with H1 coefficients; seeds read `tuple@z=value`.
    Lift {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        degree: usize,
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuandleCmd {
    /// Operation table and basic facts.
    Info {
        #[arg(long)]
        quandle: String,
    },
    /// Searches for an isomorphism.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[arg(long)]
    pub pd: String,
    #[arg(long, required_unless_present = "list_faces")]
    pub quandle: Option<String>,
    #[arg(long, required_unless_present = "list_faces")]
    pub coeff: Option<String>,
    #[arg(long, required_unless_present = "list_faces")]
    pub cocycle: Option<String>,
    /// Base face: a label or an edge side such as `2R`.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Only report the traced faces and the numbering.
    #[arg(long)]
    pub list_faces: bool,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub surface: String,
    #[command(flatten)]
    pub space: Space,
    #[arg(long)]
    pub cocycle: String,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    pub catalog: Option<String>,
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok(out) => {
            let wall = cli.timing.then(|| start.elapsed());
            let rep = report::RunReport::new(&argv[1..], &out.inputs, out.result, wall);
            let text = if cli.pretty { rep.pretty() } else { rep.to_json() + "\n" };
            // a closed pipe is not an error here
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
