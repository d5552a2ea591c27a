//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error (clap reports its own parse failures with 2).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use berger_eta::{
    eta_generating_series, norlund_bernoulli, reference_tables, verify_against, Rational,
    SquashingParameter,
};
use berger_eta_cli::{
    document, parse_golden_tables, render_anomaly_csv, render_anomaly_markdown, render_csv,
    render_json, render_markdown, render_verify_report, table_rows, JsonAnomalyDocument,
    JsonAnomalyRow,
};

#[derive(Parser)]
#[command(
    name = "berger-eta",
    version,
    about = "Exact Dirac eta invariants on Berger spheres, four ways"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient table: dim, n, c_n, eta_n(rho), zeta(0)
    Table(TableArgs),
    /// Run the verification sweep; exit 0 only if every check passes
    Verify(VerifyArgs),
    /// Print the z^0..z^order coefficients of the rho = 1 generating function
    Series {
        /// Highest retained power, at least 2
        order: usize,
    },
    /// Print the conformal-anomaly column zeta(0) = 2^(n/2) c_n, from n = 4
    Anomaly(AnomalyArgs),
    /// Print the generalized Bernoulli value B^(n)_nu(x)
    Bernoulli {
        /// Order of the generating-function power, at least 1
        n: u32,
        /// Coefficient index
        nu: u32,
        /// Evaluation point as p/q
        x: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Largest order n, an even integer >= 2
    #[arg(long = "max-n", default_value_t = 40)]
    max_n: u32,
    /// Squashing parameter as p/q, at least -1
    #[arg(long, default_value = "1/1", allow_hyphen_values = true)]
    rho: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
    format: OutputFormat,
    /// Also print odd orders, whose coefficients vanish
    #[arg(long = "include-odd")]
    include_odd: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest order n, an even integer >= 2
    #[arg(long = "max-n", default_value_t = 40)]
    max_n: u32,
    /// Extra homogeneity sample as p/q, at least -1
    #[arg(long, default_value = "1/1", allow_hyphen_values = true)]
    rho: String,
    /// md and csv print the plain report; json prints the table document
    #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
    format: OutputFormat,
    /// JSON fixture replacing the embedded reference tables
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Args)]
struct AnomalyArgs {
    /// Largest order n, an even integer >= 2
    #[arg(long = "max-n", default_value_t = 40)]
    max_n: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
    format: OutputFormat,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Series { order } => cmd_series(order),
        Command::Anomaly(args) => cmd_anomaly(args),
        Command::Bernoulli { n, nu, x } => cmd_bernoulli(n, nu, &x),
    }
}

fn checked_max_n(max_n: u32) -> Result<u32, Failure> {
    if max_n < 2 || !max_n.is_multiple_of(2) {
        return Err(Failure::usage(format!(
            "--max-n must be an even integer >= 2, got {max_n}"
        )));
    }
    Ok(max_n)
}

fn checked_rho(text: &str) -> Result<Rational, Failure> {
    let rho: Rational = text
        .parse()
        .map_err(|e| Failure::usage(format!("invalid --rho {text:?}: {e}")))?;
    SquashingParameter::new(rho.clone()).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(rho)
}

fn require_success(report: &berger_eta::VerificationReport) -> Result<(), Failure> {
    if report.is_success() {
        Ok(())
    } else {
        Err(Failure::verification(
            report
                .first_failure
                .clone()
                .unwrap_or_else(|| "verification failed".into()),
        ))
    }
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let max_n = checked_max_n(args.max_n)?;
    let rho = checked_rho(&args.rho)?;
    let report = verify_against(max_n, std::slice::from_ref(&rho), &reference_tables());
    let rows = table_rows(&report, &rho, args.include_odd);
    match args.format {
        OutputFormat::Md => print!("{}", render_markdown(&rows)),
        OutputFormat::Csv => print!("{}", render_csv(&rows)),
        OutputFormat::Json => println!("{}", render_json(&document(max_n, &rho, &rows, &report))),
    }
    require_success(&report)
}

/// The fixed homogeneity samples; the --rho value joins them when new.
fn verify_samples(rho: &Rational) -> Vec<Rational> {
    let mut samples: Vec<Rational> = [(1, 1), (-1, 1), (1, 2), (2, 1), (-3, 7)]
        .iter()
        .map(|&(p, q)| Rational::new(p, q).expect("nonzero denominator"))
        .collect();
    if !samples.contains(rho) {
        samples.insert(0, rho.clone());
    }
    samples
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let max_n = checked_max_n(args.max_n)?;
    let rho = checked_rho(&args.rho)?;
    let golden = match &args.golden {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Failure::usage(format!("cannot read golden file {}: {e}", path.display()))
            })?;
            parse_golden_tables(&text).map_err(Failure::usage)?
        }
        None => reference_tables(),
    };
    let report = verify_against(max_n, &verify_samples(&rho), &golden);
    match args.format {
        OutputFormat::Json => {
            let rows = table_rows(&report, &rho, false);
            println!("{}", render_json(&document(max_n, &rho, &rows, &report)));
        }
        _ => print!("{}", render_verify_report(&report)),
    }
    require_success(&report)
}

fn cmd_series(order: usize) -> Result<(), Failure> {
    if order < 2 {
        return Err(Failure::usage(format!(
            "series order must be at least 2, got {order}"
        )));
    }
    let g = eta_generating_series(&Rational::one(), order).expect("rho = 1 is nonzero");
    let parts: Vec<String> = g.coefficients().iter().map(Rational::to_string).collect();
    println!("{}", parts.join(", "));
    Ok(())
}

fn cmd_anomaly(args: AnomalyArgs) -> Result<(), Failure> {
    let max_n = checked_max_n(args.max_n)?;
    let one = Rational::one();
    let report = verify_against(max_n, std::slice::from_ref(&one), &reference_tables());
    let rows: Vec<(u32, Rational)> = report
        .coefficients
        .iter()
        .filter_map(|c| c.anomaly.clone().map(|zeta| (c.n, zeta)))
        .collect();
    match args.format {
        OutputFormat::Md => print!("{}", render_anomaly_markdown(&rows)),
        OutputFormat::Csv => print!("{}", render_anomaly_csv(&rows)),
        OutputFormat::Json => {
            let document = JsonAnomalyDocument {
                max_n,
                rows: rows
                    .iter()
                    .map(|(n, zeta)| JsonAnomalyRow {
                        n: *n,
                        zeta: zeta.to_string(),
                    })
                    .collect(),
            };
            println!("{}", render_json(&document));
        }
    }
    require_success(&report)
}

fn cmd_bernoulli(n: u32, nu: u32, x: &str) -> Result<(), Failure> {
    if n < 1 {
        return Err(Failure::usage("the order n must be at least 1"));
    }
    let x: Rational = x
        .parse()
        .map_err(|e| Failure::usage(format!("invalid x {x:?}: {e}")))?;
    println!("{}", norlund_bernoulli(n, nu, &x));
    Ok(())
}
