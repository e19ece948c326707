//! Command-line front end. [`execute`] does the work and returns the text to
//! print; the binary only parses arguments and routes output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::gf::{eval_singular_as_function, format_gf, Sign, SingularTerm};
use crate::inversion::{invert, invert_with_report, Family, LaplaceExpr};
use crate::roundtrip;
use crate::special::{ml_eval_with, rabotnov_eval, MLParams, MlConfig};

#[derive(Debug, Parser)]
#[command(name = "fraclaplace", version, about = "Inverse Laplace transforms of irrational power-law functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accuracy target (ML evaluation) or pass threshold (verify).
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub tol: f64,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invert one expression and print its generalized function.
    Invert(InvertArgs),
    /// Evaluate E_{α,β}(z) at a point or over a z grid (CSV).
    EvalMl(EvalMlArgs),
    /// Write the CSV data behind figure 1, 2 or 3.
    Fig(FigArgs),
    /// Random round-trip check of the inversion formulas.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    /// s^q
    Mono,
    /// s^q/(s∓λ)^α
    Shifted,
    /// s^q/(s^α∓λ)
    Binomial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sign of λ in the time domain; `minus` means a denominator s + λ.
    #[arg(long, value_enum, default_value = "minus")]
    pub sign: SignArg,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
}

#[derive(Debug, Args)]
pub struct EvalMlArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// Single argument; omit to sweep `--z-min..--z-max`.
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = -10.0)]
    pub z_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub z_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Args)]
pub struct FigArgs {
    /// Figure number: 1, 2 or 3.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    /// First grid point (t, or λt for figure 3).
    #[arg(long, default_value_t = 0.025)]
    pub t_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
    /// Orders q (figures 1 and 3), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub q_values: Option<Vec<f64>>,
    /// Orders α (figure 2), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha_values: Option<Vec<f64>>,
    /// λ for figure 2.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
}

pub const FIG1_Q: [f64; 6] = [0.1, 0.3, 0.5, 0.7, 0.9, 1.5];
pub const FIG2_ALPHA: [f64; 7] = [0.3, 0.5, 0.7, 1.0, 1.3, 1.5, 1.8];
pub const FIG3_Q: [f64; 8] = [1.3, 1.7, 1.9, 1.99, 2.01, 2.1, 2.3, 2.7];

/// What a command produced: text for the output sink and an exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// Bad flags; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// Evaluation failed; exit status 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

/// Shortest round-trip representation is for humans; CSV cells carry 17
/// significant digits.
pub fn csv_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn grid(t_min: f64, t_max: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
    }
    if !(t_min > 0.0) || !(t_min < t_max) || !t_max.is_finite() {
        return Err(CliError::Usage(format!(
            "the grid needs 0 < t_min < t_max, got t_min = {t_min}, t_max = {t_max}"
        )));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / last;
            match spacing {
                Spacing::Linear => t_min + (t_max - t_min) * f,
                Spacing::Log => t_min * (t_max / t_min).powf(f),
            }
        })
        .collect())
}

fn build_expr(a: &InvertArgs) -> Result<LaplaceExpr, CliError> {
    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this family")))
    };
    let sign = Sign::from(a.sign);
    let expr = match a.family {
        FamilyArg::Mono => LaplaceExpr::monomial(a.q),
        FamilyArg::Shifted => LaplaceExpr::shifted(a.q, need("alpha", a.alpha)?, sign, need("lambda", a.lambda)?),
        FamilyArg::Binomial => LaplaceExpr::binomial(a.q, need("alpha", a.alpha)?, sign, need("lambda", a.lambda)?),
    };
    expr.map(|e| e.with_mu(a.mu)).and_then(|e| e.validate().map(|_| e)).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Serialize)]
struct InvertDump<'a> {
    expr: &'a LaplaceExpr,
    report: crate::inversion::InversionReport,
    result: &'a crate::gf::GeneralizedFunction,
}

fn cmd_invert(a: &InvertArgs) -> Result<String, CliError> {
    let expr = build_expr(a)?;
    let (f, report) = invert_with_report(&expr).map_err(|e| CliError::Failed(e.to_string()))?;
    let json = serde_json::to_string_pretty(&InvertDump {
        expr: &expr,
        report,
        result: &f,
    })
    .map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(format!("{}\n{json}\n", format_gf(&f)))
}

fn cmd_eval_ml(a: &EvalMlArgs, tol: f64) -> Result<String, CliError> {
    if !(a.alpha > 0.0) {
        return Err(CliError::Usage(format!("--alpha must be > 0, got {}", a.alpha)));
    }
    let cfg = MlConfig { tol, ..MlConfig::default() };
    let eval = |z: f64| {
        ml_eval_with(MLParams::new(a.alpha, a.beta, z), &cfg).map_err(|e| CliError::Failed(format!("z = {z}: {e}")))
    };
    if let Some(z) = a.z {
        let (r, scheme) = eval(z)?;
        return Ok(format!(
            "{}\n",
            serde_json::json!({
                "alpha": a.alpha, "beta": a.beta, "z": z,
                "value": r.value, "abs_err": r.abs_err, "scheme": format!("{scheme:?}").to_lowercase(),
            })
        ));
    }
    if a.points < 2 || !(a.z_min < a.z_max) {
        return Err(CliError::Usage("a z sweep needs --z-min < --z-max and --points >= 2".into()));
    }
    let zs: Vec<f64> = (0..a.points)
        .map(|i| a.z_min + (a.z_max - a.z_min) * i as f64 / (a.points - 1) as f64)
        .collect();
    let rows = zs.par_iter().map(|&z| eval(z)).collect::<Result<Vec<_>, _>>()?;
    let mut out = String::from("z,value,abs_err\n");
    for (z, (r, _)) in zs.iter().zip(rows) {
        let _ = writeln!(out, "{},{},{}", csv_num(*z), csv_num(r.value), csv_num(r.abs_err));
    }
    Ok(out)
}

fn col_label(prefix: &str, v: f64) -> String {
    format!("{prefix}{v}")
}

/// Header, x values, and one row of cells per x.
type FigTable = (Vec<String>, Vec<f64>, Vec<Vec<f64>>);

fn fig_table(a: &FigArgs, tol: f64) -> Result<FigTable, CliError> {
    let xs = grid(a.t_min, a.t_max, a.points, a.spacing)?;
    let cfg = MlConfig { tol, ..MlConfig::default() };
    let failed = |what: &str, x: f64, e: crate::Error| CliError::Failed(format!("{what} at {x}: {e}"));
    let (header, rows): (Vec<String>, Vec<Result<Vec<f64>, CliError>>) = match a.id {
        1 => {
            let qs = a.q_values.clone().unwrap_or_else(|| FIG1_Q.to_vec());
            if let Some(q) = qs.iter().find(|q| !(**q >= 0.0)) {
                return Err(CliError::Usage(format!("orders must be >= 0, got {q}")));
            }
            let mut header = vec!["t".to_string()];
            header.extend(qs.iter().map(|&q| col_label("q=", q)));
            let rows = xs
                .par_iter()
                .map(|&t| {
                    qs.iter()
                        .map(|&q| eval_singular_as_function(&SingularTerm::new(1.0, q), t).map_err(|e| failed("fig 1", t, e)))
                        .collect()
                })
                .collect();
            (header, rows)
        }
        2 => {
            let alphas = a.alpha_values.clone().unwrap_or_else(|| FIG2_ALPHA.to_vec());
            if let Some(al) = alphas.iter().find(|a| !(**a > 0.0)) {
                return Err(CliError::Usage(format!("alpha values must be > 0, got {al}")));
            }
            if !(a.lambda > 0.0) {
                return Err(CliError::Usage(format!("--lambda must be > 0, got {}", a.lambda)));
            }
            let lambda = a.lambda;
            let mut header = vec!["t".to_string()];
            header.extend(alphas.iter().map(|&al| col_label("ml_alpha=", al)));
            header.extend(alphas.iter().map(|&al| col_label("rabotnov_alpha=", al)));
            header.push("exp".into());
            let rows = xs
                .par_iter()
                .map(|&t| {
                    let mut row = Vec::with_capacity(2 * alphas.len() + 1);
                    for &al in &alphas {
                        let z = -lambda * t.powf(al);
                        let (r, _) = ml_eval_with(MLParams::new(al, 1.0, z), &cfg).map_err(|e| failed("E_alpha", t, e))?;
                        row.push(r.value);
                    }
                    for &al in &alphas {
                        let r = rabotnov_eval(al, Sign::Minus, lambda, t).map_err(|e| failed("Rabotnov", t, e))?;
                        row.push(r.value);
                    }
                    row.push((-lambda * t).exp());
                    Ok(row)
                })
                .collect();
            (header, rows)
        }
        _ => {
            let qs = a.q_values.clone().unwrap_or_else(|| FIG3_Q.to_vec());
            let curves = qs
                .iter()
                .map(|&q| {
                    LaplaceExpr::binomial(q, 1.0, Sign::Minus, 1.0)
                        .and_then(|e| invert(&e))
                        .map_err(|e| CliError::Usage(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut header = vec!["lambda_t".to_string()];
            header.extend(qs.iter().map(|&q| col_label("q=", q)));
            header.push("exp".into());
            let rows = xs
                .par_iter()
                .map(|&x| {
                    let mut row = curves
                        .iter()
                        .map(|f| f.eval_pointwise(x).map(|r| r.value).map_err(|e| failed("fig 3", x, e)))
                        .collect::<Result<Vec<_>, _>>()?;
                    row.push((-x).exp());
                    Ok(row)
                })
                .collect();
            (header, rows)
        }
    };
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok((header, xs, rows))
}

/// CSV data for one figure. Figure 3 columns are `λ^{-q} L^{-1}{s^q/(s+λ)}`
/// as functions of `λt`, which do not depend on `λ`.
pub fn fig_csv(a: &FigArgs, tol: f64) -> Result<String, CliError> {
    let (header, xs, rows) = fig_table(a, tol)?;
    let mut out = header.join(",");
    out.push('\n');
    for (x, row) in xs.iter().zip(rows) {
        out.push_str(&csv_num(*x));
        for v in row {
            out.push(',');
            out.push_str(&csv_num(v));
        }
        out.push('\n');
    }
    Ok(out)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::PureMonomial => "mono",
        Family::ShiftedPower => "shifted",
        Family::BinomialAlpha => "binomial",
    }
}

fn cmd_verify(a: &VerifyArgs, seed: u64, tol: f64) -> Output {
    let n = a.cases as usize;
    let outcomes = roundtrip::run(seed, n);
    let mut text = String::new();
    let _ = writeln!(text, "round-trip verification: seed {seed}, {n} cases, tolerance {tol:e}");
    let mut max_err: f64 = 0.0;
    let mut failures = 0;
    for o in &outcomes {
        max_err = max_err.max(o.max_rel_err());
        if o.passed(tol) {
            continue;
        }
        failures += 1;
        let e = &o.expr;
        let sign = if e.sign == Sign::Plus { "plus" } else { "minus" };
        let _ = write!(
            text,
            "FAIL case {} family={} mu={} q={} alpha={} sign={} lambda={}:",
            o.index,
            family_name(e.family),
            e.mu,
            e.q,
            e.alpha,
            sign,
            e.lambda
        );
        match &o.error {
            Some(msg) => {
                let _ = writeln!(text, " {msg}");
            }
            None => {
                let _ = writeln!(text, " max rel err {:.3e}", o.max_rel_err());
            }
        }
    }
    let _ = writeln!(text, "max relative error: {max_err:.3e}");
    let _ = writeln!(text, "passed {}/{}", n - failures, n);
    Output {
        text,
        code: if failures == 0 { 0 } else { 1 },
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be > 0, got {}", cli.tol)));
    }
    let ok = |text| Ok(Output { text, code: 0 });
    match &cli.command {
        Command::Invert(a) => ok(cmd_invert(a)?),
        Command::EvalMl(a) => ok(cmd_eval_ml(a, cli.tol.clamp(1e-14, 1e-10))?),
        Command::Fig(a) => ok(fig_csv(a, 1e-10)?),
        Command::Verify(a) => Ok(cmd_verify(a, cli.seed, cli.tol)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("fraclaplace").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn invert_prints_formula_then_json() {
        let out = execute(&parse(&["invert", "--family", "mono", "--q", "0"])).unwrap();
        assert!(out.text.starts_with("δ(t)\n{"));
        let json: serde_json::Value = serde_json::from_str(out.text.split_once('\n').unwrap().1).unwrap();
        assert_eq!(json["result"]["singular"][0]["order"], 0.0);
    }

    #[test]
    fn invert_validation_is_a_usage_error() {
        let err = execute(&parse(&["invert", "--family", "binomial", "--q", "1"])).unwrap_err();
        assert_eq!(err.code(), 2);
        let err = execute(&parse(&["invert", "--family", "binomial", "--q", "1", "--alpha", "0", "--lambda", "1"]))
            .unwrap_err();
        assert!(err.to_string().contains("alpha"));
    }

    #[test]
    fn zero_cases_is_rejected_by_the_parser() {
        let e = Cli::try_parse_from(["fraclaplace", "verify", "--cases", "0"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn grid_endpoints() {
        let g = grid(0.025, 10.0, 400, Spacing::Linear).unwrap();
        assert_eq!(g.len(), 400);
        assert_eq!(g[0], 0.025);
        assert_eq!(g[399], 10.0);
        assert!(grid(0.0, 1.0, 10, Spacing::Linear).is_err());
        let g = grid(0.01, 100.0, 5, Spacing::Log).unwrap();
        assert!((g[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn csv_cells_have_17_significant_digits() {
        assert_eq!(csv_num(0.1), "1.0000000000000001e-1");
        assert_eq!(csv_num(-2.0), "-2.0000000000000000e0");
    }
}
