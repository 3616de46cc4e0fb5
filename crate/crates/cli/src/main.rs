mod commands;
mod law;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use commands::{Density, Failure, Mode, Op, Which};
use law::{parse_rat, LawExpr};
use table::Format;

#[derive(Parser, Debug)]
#[command(name = "freeprob", version, about = "Free probability transforms, convolutions and limit laws")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Truncation order.
    #[arg(long, global = true, default_value_t = freeprob::DEFAULT_ORDER)]
    order: usize,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of a transform of a law.
    Transform {
        #[arg(long)]
        law: LawExpr,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Moments of the convolution of two laws.
    Convolve {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        a: LawExpr,
        #[arg(long)]
        b: LawExpr,
    },
    /// Finite-n moments against the limit law.
    Limit {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        law: LawExpr,
        /// Comma-separated n values (default 1,2,4,...,256).
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
    },
    /// Plot-ready density samples.
    Density {
        #[arg(long, value_enum)]
        which: Density,
        #[arg(long, default_value = "1", value_parser = parse_positive)]
        alpha: f64,
        #[arg(long, default_value = "1", value_parser = parse_positive)]
        t: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Principal branch of Lambert W.
    Lambertw {
        /// Real argument.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "z", required_unless_present = "z")]
        x: Option<f64>,
        /// Complex argument as `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Option<Complex64>,
        /// Also evaluate the integral representation of W0(z)/z.
        #[arg(long)]
        check_integral: bool,
    },
    /// Runs the invariant checks of every module.
    Verify {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = match parse_rat(s) {
        Ok(r) => freeprob::Scalar::to_f64(&r),
        Err(_) => s.parse::<f64>().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be > 0, got {s}"))
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected 're,im', got '{s}'"))?;
    let re = re.trim().parse::<f64>().map_err(|e| format!("real part: {e}"))?;
    let im = im.trim().parse::<f64>().map_err(|e| format!("imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let p = cli.order;
    let (table, ok) = match &cli.command {
        Command::Transform { law, which } => (commands::transform(law, *which, p)?, true),
        Command::Convolve { op, a, b } => (commands::convolve(*op, a, b, p)?, true),
        Command::Limit { mode, law, n } => {
            let ns = if n.is_empty() { freeprob::limits::default_ns() } else { n.clone() };
            (commands::limit(*mode, law, &ns, p)?, true)
        }
        Command::Density { which, alpha, t, grid } => (commands::density(*which, *alpha, *t, *grid)?, true),
        Command::Lambertw { x, z, check_integral } => {
            let (z, real) = match (x, z) {
                (Some(x), _) => (Complex64::new(*x, 0.0), true),
                (None, Some(z)) => (*z, false),
                (None, None) => return Err(commands::usage("one of --x or --z is required")),
            };
            (commands::lambertw(z, real, *check_integral)?, true)
        }
        Command::Verify { inject_fault } => commands::verify(p, cli.seed, *inject_fault)?,
    };
    Ok((table.render(cli.format), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
