//! Command-line front end: one-shot approximate GCD on polynomial files and
//! the randomized benchmark driver.
//!
//! Exit codes: 0 success, 2 input or parameter error, 3 non-convergence,
//! 4 rank-deficiency or recovery failure. Every failure prints a one-line
//! JSON object on stderr with `error` and `detail` fields.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gpgcd::harness::{run_batch, InstanceParams};
use gpgcd::io::{parse_poly_file, GcdDocument};
use gpgcd::optimizer::OptimizerConfig;
use gpgcd::UnivariatePoly;

#[derive(Parser)]
#[command(name = "gpgcd", version, about = "Approximate GCD of univariate complex polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an approximate GCD of two polynomial files.
    Gcd {
        /// Path to the higher-degree polynomial (JSON document).
        #[arg(long)]
        f: PathBuf,
        /// Path to the lower-degree polynomial (JSON document).
        #[arg(long)]
        g: PathBuf,
        /// Target GCD degree.
        #[arg(long)]
        d: usize,
        /// Stop threshold on the 2-norm of the Newton update.
        #[arg(long, default_value_t = 1e-8)]
        epsilon: f64,
        /// Iteration cap.
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = GcdFormat::Json)]
        format: GcdFormat,
    },
    /// Benchmark randomized instances and report aggregate statistics.
    Bench {
        /// Degree of the first polynomial.
        #[arg(long)]
        m: usize,
        /// Degree of the second polynomial.
        #[arg(long)]
        n: usize,
        /// Planted GCD degree.
        #[arg(long)]
        d: usize,
        /// Number of random instances.
        #[arg(long)]
        trials: usize,
        /// Noise 2-norm added to both polynomials.
        #[arg(long)]
        noise: f64,
        /// Master seed; trials derive their own seeds from it.
        #[arg(long)]
        seed: u64,
        /// Range of the uniform coefficient distribution.
        #[arg(long, default_value_t = 10.0)]
        coeff_range: f64,
        /// Draw real coefficients only.
        #[arg(long)]
        real_only: bool,
        /// Stop threshold on the 2-norm of the Newton update.
        #[arg(long, default_value_t = 1e-8)]
        epsilon: f64,
        /// Iteration cap per trial.
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
        format: BenchFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GcdFormat {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Csv,
    Json,
}

const EXIT_INPUT: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

fn fail(code: u8, kind: &str, detail: &str) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": kind, "detail": detail }));
    ExitCode::from(code)
}

fn fail_for(err: &gpgcd::Error) -> ExitCode {
    use gpgcd::Error::*;
    let (code, kind) = match err {
        InvalidArgument(_) => (EXIT_INPUT, "invalid_argument"),
        NonConvergence { .. } => (EXIT_NON_CONVERGENCE, "non_convergence"),
        JacobianRankDeficient { .. } | RankDeficient { .. } => (EXIT_NUMERIC, "rank_deficient"),
        RecoveryFailed { .. } => (EXIT_NUMERIC, "recovery_failed"),
        SvdFailed | Numeric(_) => (EXIT_NUMERIC, "numeric"),
    };
    fail(code, kind, &err.to_string())
}

fn read_poly(path: &PathBuf) -> Result<UnivariatePoly, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_INPUT, "io", &format!("{}: {e}", path.display())))?;
    parse_poly_file(&text)
        .map_err(|e| fail(EXIT_INPUT, "parse_error", &format!("{}: {e}", path.display())))
}

fn cmd_gcd(
    f: PathBuf,
    g: PathBuf,
    d: usize,
    epsilon: f64,
    max_iter: usize,
    format: GcdFormat,
) -> ExitCode {
    let f_poly = match read_poly(&f) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let g_poly = match read_poly(&g) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let (m, n) = (f_poly.nominal_degree(), g_poly.nominal_degree());
    if !(m >= n && n > d && d > 0) {
        return fail(
            EXIT_INPUT,
            "degree_constraint",
            &format!("degree constraint violated: need deg(f) >= deg(g) > d > 0, got {m}, {n}, {d}"),
        );
    }
    if epsilon <= 0.0 || epsilon.is_nan() || max_iter == 0 {
        return fail(EXIT_INPUT, "invalid_argument", "epsilon must be positive and max-iter >= 1");
    }
    let config = OptimizerConfig { epsilon, max_iterations: max_iter, ..Default::default() };
    match gpgcd::approximate_gcd(f_poly, g_poly, d, &config) {
        Ok(result) => {
            let doc = GcdDocument::from_result(&result);
            match format {
                GcdFormat::Json => println!("{}", doc.to_json()),
                GcdFormat::Pretty => println!("{}", doc.to_json_pretty()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail_for(&e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    m: usize,
    n: usize,
    d: usize,
    trials: usize,
    noise: f64,
    seed: u64,
    coeff_range: f64,
    real_only: bool,
    epsilon: f64,
    max_iter: usize,
    format: BenchFormat,
) -> ExitCode {
    let params = match InstanceParams::new(m, n, d, noise, noise, seed) {
        Ok(mut p) => {
            p.coeff_range = coeff_range;
            p.real_only = real_only;
            if let Err(e) = p.validate() {
                return fail(EXIT_INPUT, "invalid_argument", &e.to_string());
            }
            p
        }
        Err(e) => return fail(EXIT_INPUT, "invalid_argument", &e.to_string()),
    };
    if trials == 0 {
        return fail(EXIT_INPUT, "invalid_argument", "trials must be at least 1");
    }
    if epsilon <= 0.0 || epsilon.is_nan() || max_iter == 0 {
        return fail(EXIT_INPUT, "invalid_argument", "epsilon must be positive and max-iter >= 1");
    }
    let config = OptimizerConfig { epsilon, max_iterations: max_iter, ..Default::default() };
    match run_batch(&params, trials, &config) {
        Ok(record) => {
            match format {
                BenchFormat::Csv => print!("{}", record.to_csv()),
                BenchFormat::Json => println!("{}", record.to_json()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail_for(&e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Gcd { f, g, d, epsilon, max_iter, format } => {
            cmd_gcd(f, g, d, epsilon, max_iter, format)
        }
        Command::Bench {
            m,
            n,
            d,
            trials,
            noise,
            seed,
            coeff_range,
            real_only,
            epsilon,
            max_iter,
            format,
        } => cmd_bench(m, n, d, trials, noise, seed, coeff_range, real_only, epsilon, max_iter, format),
    }
}
