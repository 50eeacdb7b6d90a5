//! Batch CLI: evaluate disk polynomials, tabulate values, run verification
//! suites, emit series reports and orthogonality checks.
//!
//! Exit codes: 0 every executed check passed, 1 a check failed (or an output
//! could not be written), 2 usage or domain error.

use clap::{Parser, Subcommand, ValueEnum};
use diskpoly::disk::{zernike_2f1, zernike_exact, zernike_explicit, zernike_jacobi, DiskIndex};
use diskpoly::recurrence::eval_by_recurrence;
use diskpoly::series::{
    genfct_double, genfct_single, summation_check, SummationKind, SummationParams,
    TruncationPolicy,
};
use diskpoly::suites;
use diskpoly::{quadrature, ComplexValue};
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "diskpoly", version, about = "Generalized Zernike (disk) polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z_{m,n}^gamma(z, zbar) with a chosen engine.
    Eval {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        gamma: f64,
        /// Complex point, e.g. `0.5`, `0.4i`, `0.3-0.4i`.
        #[arg(long, value_parser = parse_complex)]
        z: ComplexValue,
        #[arg(long, value_enum, default_value = "explicit")]
        engine: EngineArg,
    },
    /// Tabulate values over a cartesian z-grid for all m + n <= cap.
    Table {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        cap: u32,
        /// Grid spec `re0:re1:nre,im0:im1:nim` (inclusive endpoints).
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, value_enum, default_value = "explicit")]
        engine: EngineArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Run a verification suite; exit 0 iff no case failed.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Index cap override (per-suite default otherwise).
        #[arg(long)]
        cap: Option<u32>,
        /// m-cap override for the Chu-Vandermonde suite.
        #[arg(long)]
        max_m: Option<u32>,
        /// Numeric tolerance override (runge).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 20260515)]
        seed: u64,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Check one generating function or summation formula.
    Series {
        #[arg(long, value_enum)]
        which: SeriesWhich,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        z: ComplexValue,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        u: ComplexValue,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        v: ComplexValue,
        #[arg(long)]
        tol: Option<f64>,
        /// Term cap; the DISKPOLY_MAX_TERMS environment variable overrides
        /// the default when this flag is absent.
        #[arg(long)]
        max_terms: Option<usize>,
        #[arg(long)]
        consecutive_small: Option<u32>,
    },
    /// Gram-matrix orthogonality check on the weighted disk.
    Ortho {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        cap: u32,
        /// Radial Gauss order; defaults to 2·cap + 2.
        #[arg(long)]
        radial_order: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Explicit,
    Jacobi,
    Hyp2f1,
    Recurrence,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Burchnall,
    Nielsen,
    Recurrences,
    Runge,
    Chu,
    Hermite,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Burchnall => "burchnall",
            SuiteArg::Nielsen => "nielsen",
            SuiteArg::Recurrences => "recurrences",
            SuiteArg::Runge => "runge",
            SuiteArg::Chu => "chu",
            SuiteArg::Hermite => "hermite",
            SuiteArg::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesWhich {
    Gz1,
    Gz2,
    Gz4,
    Confluent,
    HermiteMixed,
    Monomial,
    Exponential,
    GenfctSingle,
    GenfctDouble,
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<ComplexValue> for ComplexOut {
    fn from(z: ComplexValue) -> Self {
        ComplexOut { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct EvalOut {
    m: u32,
    n: u32,
    gamma: f64,
    z: ComplexOut,
    engine: &'static str,
    value: ComplexOut,
    condition: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
}

/// Parse `re`, `imi`, `re+imi`, `re-imi` (e.g. `0.5`, `-0.4i`, `0.3-0.4i`).
fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // split into re and im on the last +/- that is not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(|e| format!("bad real part: {e}"))?;
                let im = parse_signed_coeff(&body[k..])?;
                Ok(ComplexValue::new(re, im))
            }
            None => Ok(ComplexValue::new(0.0, parse_signed_coeff(body)?)),
        }
    } else {
        let re: f64 = t.parse().map_err(|e| format!("bad real literal: {e}"))?;
        Ok(ComplexValue::new(re, 0.0))
    }
}

fn parse_signed_coeff(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s.parse().map_err(|e| format!("bad imaginary part: {e}")),
    }
}

fn policy_from(
    tol: Option<f64>,
    max_terms: Option<usize>,
    consecutive_small: Option<u32>,
) -> TruncationPolicy {
    let mut p = TruncationPolicy::default();
    if let Some(t) = tol {
        p.tol = t;
    }
    match max_terms {
        Some(mt) => p.max_terms = mt,
        None => {
            if let Ok(env) = std::env::var("DISKPOLY_MAX_TERMS") {
                if let Ok(mt) = env.parse::<usize>() {
                    p.max_terms = mt;
                }
            }
        }
    }
    if let Some(cs) = consecutive_small {
        p.consecutive_small = cs;
    }
    p
}

fn cmd_eval(m: u32, n: u32, gamma: f64, z: ComplexValue, engine: EngineArg) -> ExitCode {
    if z.norm() >= 1.0 {
        eprintln!(
            "warning: |z| = {} lies outside the open unit disk; the polynomial \
             is still evaluated but weight semantics do not apply",
            z.norm()
        );
    }
    let idx = DiskIndex::new(m, n);
    let (value, engine_name, condition, polynomial) = match engine {
        EngineArg::Explicit => {
            let v = zernike_explicit(idx, gamma, z);
            (v.value, "explicit", v.condition_estimate, None)
        }
        EngineArg::Jacobi => {
            let v = zernike_jacobi(idx, gamma, z);
            (v.value, "jacobi", v.condition_estimate, None)
        }
        EngineArg::Hyp2f1 => {
            let v = zernike_2f1(idx, gamma, z);
            (v.value, v.engine.name(), v.condition_estimate, None)
        }
        EngineArg::Recurrence => match eval_by_recurrence(idx, gamma, z) {
            Ok(v) => (v.value, "recurrence", v.condition_estimate, None),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        EngineArg::Exact => {
            let poly = zernike_exact(idx);
            let value = poly.eval_f64(gamma, z);
            (value, "exact", 1.0, Some(poly.to_string()))
        }
    };
    let out = EvalOut {
        m,
        n,
        gamma,
        z: z.into(),
        engine: engine_name,
        value: value.into(),
        condition,
        polynomial,
    };
    println!("{}", serde_json::to_string(&out).expect("serializable"));
    ExitCode::SUCCESS
}

fn parse_grid(spec: &str) -> Result<Vec<ComplexValue>, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err("grid spec must be `re0:re1:nre,im0:im1:nim`".into());
    }
    let axis = |s: &str| -> Result<Vec<f64>, String> {
        let f: Vec<&str> = s.split(':').collect();
        if f.len() != 3 {
            return Err(format!("bad axis '{s}': need start:end:count"));
        }
        let (a, b): (f64, f64) = (
            f[0].parse().map_err(|e| format!("{e}"))?,
            f[1].parse().map_err(|e| format!("{e}"))?,
        );
        let count: usize = f[2].parse().map_err(|e| format!("{e}"))?;
        if count == 0 {
            return Err("axis count must be >= 1".into());
        }
        Ok((0..count)
            .map(|i| {
                if count == 1 {
                    a
                } else {
                    a + (b - a) * i as f64 / (count - 1) as f64
                }
            })
            .collect())
    };
    let re = axis(parts[0])?;
    let im = axis(parts[1])?;
    let mut out = Vec::with_capacity(re.len() * im.len());
    for &x in &re {
        for &y in &im {
            out.push(ComplexValue::new(x, y));
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct TableRow {
    m: u32,
    n: u32,
    gamma: f64,
    re_z: f64,
    im_z: f64,
    re_val: f64,
    im_val: f64,
    engine: &'static str,
    cond: f64,
}

fn cmd_table(
    gamma: f64,
    cap: u32,
    grid: &str,
    format: TableFormat,
    engine: EngineArg,
    output: Option<&std::path::Path>,
) -> ExitCode {
    let points = match parse_grid(grid) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut rows = Vec::new();
    for m in 0..=cap {
        for n in 0..=(cap - m) {
            for &z in &points {
                let idx = DiskIndex::new(m, n);
                let (v, name, cond) = match engine {
                    EngineArg::Explicit => {
                        let v = zernike_explicit(idx, gamma, z);
                        (v.value, "explicit", v.condition_estimate)
                    }
                    EngineArg::Jacobi => {
                        let v = zernike_jacobi(idx, gamma, z);
                        (v.value, "jacobi", v.condition_estimate)
                    }
                    EngineArg::Hyp2f1 => {
                        let v = zernike_2f1(idx, gamma, z);
                        (v.value, v.engine.name(), v.condition_estimate)
                    }
                    EngineArg::Recurrence => match eval_by_recurrence(idx, gamma, z) {
                        Ok(v) => (v.value, "recurrence", v.condition_estimate),
                        Err(e) => {
                            eprintln!("error: {e}");
                            return ExitCode::from(2);
                        }
                    },
                    EngineArg::Exact => {
                        let v = zernike_exact(idx).eval_f64(gamma, z);
                        (v, "exact", 1.0)
                    }
                };
                rows.push(TableRow {
                    m,
                    n,
                    gamma,
                    re_z: z.re,
                    im_z: z.im,
                    re_val: v.re,
                    im_val: v.im,
                    engine: name,
                    cond,
                });
            }
        }
    }
    let body = match format {
        TableFormat::Csv => {
            let mut s = String::from("m,n,gamma,re_z,im_z,re_val,im_val,engine,cond\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.m, r.n, r.gamma, r.re_z, r.im_z, r.re_val, r.im_val, r.engine, r.cond
                ));
            }
            s
        }
        TableFormat::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
    };
    match output {
        None => {
            print!("{body}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(1)
            }
        },
    }
}

fn cmd_verify(
    suite: SuiteArg,
    cap: Option<u32>,
    max_m: Option<u32>,
    tol: Option<f64>,
    seed: u64,
    json: bool,
) -> ExitCode {
    match suites::run_named_suite(suite.name(), cap, max_m, tol, seed) {
        Ok(results) => {
            let mut failed = 0usize;
            for r in &results {
                failed += r.cases_failed;
                eprintln!(
                    "suite {:<12} cases {:>5} failed {:>3} worst_residual {:.3e} elapsed {:.2}s",
                    r.suite_name, r.cases_run, r.cases_failed, r.worst_residual, r.elapsed_seconds
                );
            }
            if json {
                println!("{}", serde_json::to_string(&results).expect("serializable"));
            }
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    which: SeriesWhich,
    gamma: f64,
    z: ComplexValue,
    m: u32,
    n: u32,
    r: u32,
    u: ComplexValue,
    v: ComplexValue,
    policy: TruncationPolicy,
) -> ExitCode {
    let params = SummationParams { m, n, r };
    let report = match which {
        SeriesWhich::Gz1 => summation_check(SummationKind::Gz1, params, gamma, z, &policy),
        SeriesWhich::Gz2 => summation_check(SummationKind::Gz2, params, gamma, z, &policy),
        SeriesWhich::Gz4 => summation_check(SummationKind::Gz4, params, gamma, z, &policy),
        SeriesWhich::Confluent => {
            summation_check(SummationKind::Confluent, params, gamma, z, &policy)
        }
        SeriesWhich::HermiteMixed => {
            summation_check(SummationKind::HermiteMixed, params, gamma, z, &policy)
        }
        SeriesWhich::Monomial => {
            summation_check(SummationKind::Monomial, params, gamma, z, &policy)
        }
        SeriesWhich::Exponential => {
            summation_check(SummationKind::Exponential, params, gamma, z, &policy)
        }
        SeriesWhich::GenfctSingle => genfct_single(m, gamma, v, z, &policy),
        SeriesWhich::GenfctDouble => genfct_double(gamma, u, v, z, &policy),
    };
    match report {
        Ok(rep) => {
            println!("{}", serde_json::to_string(&rep).expect("serializable"));
            if rep.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct OrthoOut {
    gamma: f64,
    degree_cap: u32,
    radial_order: usize,
    angular_count: usize,
    weight_mass: f64,
    weight_mass_expected: f64,
    worst_offdiag_ratio: f64,
    tol: f64,
    passed: bool,
}

fn cmd_ortho(gamma: f64, cap: u32, radial_order: Option<usize>, tol: f64, json: bool) -> ExitCode {
    let radial_order = radial_order.unwrap_or(2 * cap as usize + 2);
    let angular_count = 4 * cap as usize + 1;
    let rule = match quadrature::build_rule(gamma, radial_order, angular_count) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let gram = quadrature::gram_matrix(cap, gamma, &rule);
    let out = OrthoOut {
        gamma,
        degree_cap: cap,
        radial_order,
        angular_count,
        weight_mass: rule.weight_mass(),
        weight_mass_expected: std::f64::consts::PI / (gamma + 1.0),
        worst_offdiag_ratio: gram.worst_offdiag_ratio(),
        tol,
        passed: gram.worst_offdiag_ratio() <= tol,
    };
    if json {
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!(
            "gamma {} cap {} worst_offdiag_ratio {:.3e} mass {:.12} (expected {:.12})",
            out.gamma, out.degree_cap, out.worst_offdiag_ratio, out.weight_mass, out.weight_mass_expected
        );
    }
    let _ = std::io::stdout().flush();
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { m, n, gamma, z, engine } => cmd_eval(m, n, gamma, z, engine),
        Command::Table { gamma, cap, grid, format, engine, output } => {
            cmd_table(gamma, cap, &grid, format, engine, output.as_deref())
        }
        Command::Verify { suite, cap, max_m, tol, seed, json } => {
            cmd_verify(suite, cap, max_m, tol, seed, json)
        }
        Command::Series {
            which,
            gamma,
            z,
            m,
            n,
            r,
            u,
            v,
            tol,
            max_terms,
            consecutive_small,
        } => cmd_series(
            which,
            gamma,
            z,
            m,
            n,
            r,
            u,
            v,
            policy_from(tol, max_terms, consecutive_small),
        ),
        Command::Ortho { gamma, cap, radial_order, tol, json } => {
            cmd_ortho(gamma, cap, radial_order, tol, json)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5").unwrap(), ComplexValue::new(0.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), ComplexValue::new(-2.0, 0.0));
        assert_eq!(parse_complex("0.4i").unwrap(), ComplexValue::new(0.0, 0.4));
        assert_eq!(parse_complex("-0.4i").unwrap(), ComplexValue::new(0.0, -0.4));
        assert_eq!(parse_complex("i").unwrap(), ComplexValue::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), ComplexValue::new(0.0, -1.0));
        assert_eq!(parse_complex("0.3-0.4i").unwrap(), ComplexValue::new(0.3, -0.4));
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), ComplexValue::new(0.3, 0.4));
        assert_eq!(parse_complex("1e-2+3i").unwrap(), ComplexValue::new(0.01, 3.0));
        assert_eq!(parse_complex("1.5e-2i").unwrap(), ComplexValue::new(0.0, 0.015));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.5:0.5:1,0:0:1").unwrap();
        assert_eq!(g, vec![ComplexValue::new(0.5, 0.0)]);
        let g = parse_grid("0:1:3,0:0:1").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[1], ComplexValue::new(0.5, 0.0));
        assert!(parse_grid("0:1:0,0:0:1").is_err());
        assert!(parse_grid("nonsense").is_err());
    }
}
