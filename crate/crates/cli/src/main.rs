use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nonclassical_cli::{critical, evolve, thermal, verify, CliError, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "nonclassical", version, about = "Closed-form non-classicality of a driven two-photon mode")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time sweep of the evolved coherent state (CSV)
    Evolve {
        #[command(flatten)]
        common: Common,
        /// Add D1/D2 columns computed on the truncated-Fock oracle
        #[arg(long)]
        with_oracle: bool,
    },
    /// Temperature sweep of the thermal state (CSV)
    Thermal {
        #[command(flatten)]
        common: Common,
    },
    /// Critical temperatures (JSON)
    Critical {
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check the closed forms against the oracle at one point
    Verify {
        #[command(flatten)]
        common: Common,
        /// Evolution time
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Temperature
        #[arg(long, default_value_t = 0.2)]
        theta: f64,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// JSON config file
    config: Option<PathBuf>,
    /// Mode frequency ω
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Re Ω₁, two-photon coupling
    #[arg(long, allow_hyphen_values = true)]
    omega1_re: Option<f64>,
    /// Im Ω₁
    #[arg(long, allow_hyphen_values = true)]
    omega1_im: Option<f64>,
    /// Re Ω₂, linear drive
    #[arg(long, allow_hyphen_values = true)]
    omega2_re: Option<f64>,
    /// Im Ω₂
    #[arg(long, allow_hyphen_values = true)]
    omega2_im: Option<f64>,
    /// Re λ, initial coherent amplitude
    #[arg(long, allow_hyphen_values = true)]
    lambda_re: Option<f64>,
    /// Im λ
    #[arg(long, allow_hyphen_values = true)]
    lambda_im: Option<f64>,
    /// First sweep point
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    /// Last sweep point
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    points: Option<usize>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, CliError> {
        let o = Overrides {
            omega: self.omega,
            omega1_re: self.omega1_re,
            omega1_im: self.omega1_im,
            omega2_re: self.omega2_re,
            omega2_im: self.omega2_im,
            lambda_re: self.lambda_re,
            lambda_im: self.lambda_im,
            start: self.start,
            stop: self.stop,
            points: self.points,
        };
        RunConfig::load(self.config.as_deref(), &o)
    }
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Evolve { common, with_oracle } => Ok((evolve(&common.load()?, with_oracle)?, 0)),
        Command::Thermal { common } => Ok((thermal(&common.load()?)?, 0)),
        Command::Critical { common } => {
            let report = critical(&common.load()?)?;
            Ok((serde_json::to_string_pretty(&report).expect("plain struct") + "\n", 0))
        }
        Command::Verify { common, t, theta, json } => {
            let report = verify(&common.load()?, t, theta)?;
            let text = if json {
                serde_json::to_string_pretty(&report).expect("plain struct") + "\n"
            } else {
                report.to_text()
            };
            Ok((text, if report.passed { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
