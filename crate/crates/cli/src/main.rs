//! Command-line front end: point evaluation of the generalized Bessel
//! function and the Dunkl kernel, density grids for plotting, and the
//! cross-representation validation suite.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 non-convergence,
//! 3 validation failures.

use clap::{Args, Parser, Subcommand};
use dunkl_b2::dunkl::{dunkl_kernel, dunkl_kernel_prop2, density_l, FDControl};
use dunkl_b2::gbf::{
    convex_hull_polygon, density_h, dh_density, gbf, gbf_laplace, Multiplicity,
};
use dunkl_b2::validate::{report::render_report, run_suite, Suite, SuiteConfig};
use dunkl_b2::{EvalResult, PlanarPoint};
use std::io::Write;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NON_CONVERGENCE: u8 = 2;
const EXIT_VALIDATION_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dunkl-b2",
    about = "Generalized Bessel function and Dunkl kernel of type B2",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the generalized Bessel function D_k^W(x, y)
    Gbf(GbfArgs),
    /// Evaluate the Dunkl kernel D_k(x, y)
    Kernel(KernelArgs),
    /// Write a density grid as CSV
    Density(DensityArgs),
    /// Run the cross-representation validation suite
    Validate(ValidateArgs),
}

#[derive(Args)]
struct GbfArgs {
    /// First argument, comma-separated pair a,b
    #[arg(long, value_parser = parse_point)]
    x: PlanarPoint,
    /// Second argument, comma-separated pair a,b
    #[arg(long, value_parser = parse_point)]
    y: PlanarPoint,
    /// Multiplicity pair k1,k2
    #[arg(long, value_parser = parse_pair)]
    k: (f64, f64),
    /// Evaluation route
    #[arg(long, default_value = "quadrature", value_parser = ["quadrature", "laplace"])]
    method: String,
    /// Relative tolerance
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_parser = parse_point)]
    x: PlanarPoint,
    #[arg(long, value_parser = parse_point)]
    y: PlanarPoint,
    #[arg(long, value_parser = parse_pair)]
    k: (f64, f64),
    /// Evaluation route: the Laplace integral or the shift recursion
    #[arg(long, default_value = "corollary", value_parser = ["corollary", "shift"])]
    method: String,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct DensityArgs {
    /// Density kind: H (Bessel), L (kernel), DH (Duistermaat-Heckman)
    #[arg(long, value_parser = ["H", "L", "DH"])]
    kind: String,
    #[arg(long, value_parser = parse_point)]
    y: PlanarPoint,
    /// Multiplicity pair k1,k2 (fixed at 1,1 for --kind DH)
    #[arg(long, value_parser = parse_pair)]
    k: Option<(f64, f64)>,
    /// Odd number of grid points per axis
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Explicit bounds z1lo,z1hi,z2lo,z2hi (default: hull box inflated 5%)
    #[arg(long, value_parser = parse_bounds)]
    bounds: Option<[f64; 4]>,
    /// Output CSV path (default: stdout)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct ValidateArgs {
    /// Suite selection
    #[arg(long, default_value = "all", value_parser = ["all", "bessel", "gbf", "laplace", "kernel", "dh"])]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report to this path (default: stdout)
    #[arg(long)]
    report: Option<std::path::PathBuf>,
}

fn parse_point(s: &str) -> Result<PlanarPoint, String> {
    let (a, b) = parse_pair(s)?;
    Ok(PlanarPoint::new(a, b))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected a,b but got {s:?}"));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|e| format!("bad number {:?}: {e}", parts[0]))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|e| format!("bad number {:?}: {e}", parts[1]))?;
    Ok((a, b))
}

fn parse_bounds(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 4];
    for (slot, p) in out.iter_mut().zip(parts.iter()) {
        *slot = p.parse().map_err(|e| format!("bad number {p:?}: {e}"))?;
    }
    Ok(out)
}

fn print_eval(result: &EvalResult, method: &str) {
    println!(
        "{{\"value\": {:.16e}, \"err_estimate\": {:.16e}, \"method\": \"{method}\"}}",
        result.value, result.err_estimate
    );
}

fn cmd_gbf(args: &GbfArgs) -> u8 {
    let k = match Multiplicity::new(args.k.0, args.k.1) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match args.method.as_str() {
        "quadrature" => gbf(args.x, args.y, &k, args.tol),
        _ => gbf_laplace(args.x, args.y, &k, args.tol),
    };
    match result {
        Ok(r) => {
            print_eval(&r, &args.method);
            if r.converged {
                EXIT_OK
            } else {
                EXIT_NON_CONVERGENCE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_kernel(args: &KernelArgs) -> u8 {
    let k = match Multiplicity::new(args.k.0, args.k.1) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match args.method.as_str() {
        "shift" => dunkl_kernel_prop2(args.x, args.y, &k, args.tol, &FDControl::for_point(args.x))
            .map(|value| EvalResult {
                value,
                err_estimate: args.tol,
                converged: true,
                evaluations: 0,
            }),
        _ => dunkl_kernel(args.x, args.y, &k, args.tol),
    };
    match result {
        Ok(r) => {
            print_eval(&r, &args.method);
            if r.converged {
                EXIT_OK
            } else {
                EXIT_NON_CONVERGENCE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_density(args: &DensityArgs) -> u8 {
    if args.grid < 3 || args.grid % 2 == 0 {
        eprintln!("error: --grid must be an odd integer >= 3, got {}", args.grid);
        return EXIT_USAGE;
    }
    let k = match args.kind.as_str() {
        "DH" => Multiplicity::new(1.0, 1.0).unwrap(),
        _ => match args.k {
            Some((a, b)) => match Multiplicity::new(a, b) {
                Ok(k) => k,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            },
            None => {
                eprintln!("error: --k is required for --kind {}", args.kind);
                return EXIT_USAGE;
            }
        },
    };
    if args.kind == "DH" && !(args.y.c1 > args.y.c2 && args.y.c2 > 0.0) {
        eprintln!(
            "error: --kind DH requires y1 > y2 > 0, got ({}, {})",
            args.y.c1, args.y.c2
        );
        return EXIT_USAGE;
    }
    let bounds = match args.bounds {
        Some(b) => b,
        None => match convex_hull_polygon(args.y) {
            Ok(hull) => {
                let s = 1.05;
                [-s * hull.m, s * hull.m, -s * hull.m, s * hull.m]
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
    };
    let mut rows = String::with_capacity(args.grid * args.grid * 64);
    rows.push_str("z1,z2,value\n");
    let n = args.grid;
    for i in 0..n {
        let z1 = bounds[0] + (bounds[1] - bounds[0]) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let z2 = bounds[2] + (bounds[3] - bounds[2]) * j as f64 / (n - 1) as f64;
            let z = PlanarPoint::new(z1, z2);
            let value = match args.kind.as_str() {
                "H" => density_h(args.y, z, &k, args.tol),
                "L" => density_l(args.y, z, &k, args.tol),
                _ => dh_density(args.y, z, args.tol),
            };
            match value {
                Ok(r) => rows.push_str(&format!("{z1:.16e},{z2:.16e},{:.16e}\n", r.value)),
                Err(e) => {
                    eprintln!("error at z = ({z1}, {z2}): {e}");
                    return EXIT_USAGE;
                }
            }
        }
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rows) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            print!("{rows}");
        }
    }
    EXIT_OK
}

fn cmd_validate(args: &ValidateArgs) -> u8 {
    let config = match args.suite.as_str() {
        "all" => SuiteConfig::all(args.seed),
        name => SuiteConfig::new(args.seed, &[Suite::parse(name).expect("validated by clap")]),
    };
    let records = run_suite(&config);
    let text = render_report(args.seed, &records);
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else if std::io::stdout().write_all(text.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    let failed = records.iter().filter(|r| !r.passed).count();
    for r in records.iter().filter(|r| !r.passed) {
        eprintln!(
            "FAIL {}: |{:.6e} - {:.6e}| rel {:.3e} > tol {:.3e}",
            r.name, r.lhs, r.rhs, r.rel_err, r.tolerance
        );
    }
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_VALIDATION_FAILED
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; exit 1 for every usage problem
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return ExitCode::from(if is_help { EXIT_OK } else { EXIT_USAGE });
        }
    };
    let code = match &cli.command {
        Command::Gbf(args) => cmd_gbf(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Density(args) => cmd_density(args),
        Command::Validate(args) => cmd_validate(args),
    };
    ExitCode::from(code)
}
