mod commands;
mod csv;
mod error;
mod nodespec;
mod verify;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{cmd_eval, cmd_expand, parse_geometry, EvalJob, ExpandJob, FunctionArgs, QuadArgs, TOL_ENV};
use error::CliError;
use verify::{cmd_verify, Suite};

/// Newton-type interpolation series of holomorphic functions on discs and annuli.
#[derive(Parser)]
#[command(name = "newton-holo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FunctionFlags {
    /// Expression in z, e.g. "exp(z)/(z-3)"
    #[arg(long = "fn")]
    function: Option<String>,
    /// Catalog function: exp, sin, cos, log, recip, id, const(c), poly([a0,a1,...])
    #[arg(long)]
    builtin: Option<String>,
    /// Extra singularities, comma separated complex literals
    #[arg(long, allow_hyphen_values = true)]
    sing: Option<String>,
}

impl FunctionFlags {
    fn to_args(&self) -> FunctionArgs {
        FunctionArgs {
            text: self.function.clone(),
            builtin: self.builtin.clone(),
            sing: self.sing.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute expansion coefficients and write them as JSON
    Expand {
        #[command(flatten)]
        function: FunctionFlags,
        /// <center>,<radius>
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<String>,
        /// <center>,<r1>,<r2> or <c1>,<r1>,<c2>,<r2>
        #[arg(long, allow_hyphen_values = true)]
        annulus: Option<String>,
        /// Regular nodes: const:<c>, geom:<limit>,<offset>,<ratio> or list:<c1;c2;...>
        #[arg(long, visible_alias = "nodes", allow_hyphen_values = true)]
        cnodes: Option<String>,
        /// Principal nodes, same forms as --cnodes
        #[arg(long, allow_hyphen_values = true)]
        dnodes: Option<String>,
        /// Highest regular index
        #[arg(long = "N")]
        n: usize,
        /// Number of principal terms (annulus only; defaults to N)
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long, default_value = "expansion.json")]
        out: String,
        #[arg(long)]
        n_start: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// Evaluate a stored expansion at points
    Eval {
        #[arg(long)]
        expansion: String,
        /// Comma or semicolon separated complex literals
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long = "N-use")]
        n_use: Option<usize>,
        #[arg(long = "M-use")]
        m_use: Option<usize>,
        #[command(flatten)]
        function: FunctionFlags,
    },
    /// Run a randomized identity check
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr().lock());
    match cli.command {
        Command::Expand {
            function,
            disc,
            annulus,
            cnodes,
            dnodes,
            n,
            m,
            out,
            n_start,
            n_max,
            rel_tol,
            abs_tol,
        } => {
            let quad = QuadArgs {
                n_start,
                n_max,
                rel_tol,
                abs_tol,
            };
            let env_tol = std::env::var(TOL_ENV).ok();
            let job = ExpandJob {
                function: function.to_args(),
                geometry: parse_geometry(disc.as_deref(), annulus.as_deref())?,
                cnodes,
                dnodes,
                n,
                m,
                out,
                quad: quad.resolve(env_tol.as_deref())?,
            };
            cmd_expand(&job, &mut stdout, &mut stderr)?;
            Ok(true)
        }
        Command::Eval {
            expansion,
            points,
            n_use,
            m_use,
            function,
        } => {
            let job = EvalJob {
                expansion,
                points,
                n_use,
                m_use,
                function: function.to_args(),
            };
            cmd_eval(&job, &mut stdout)?;
            Ok(true)
        }
        Command::Verify { suite, seed, trials } => cmd_verify(suite, seed, trials, &mut stdout, &mut stderr),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
