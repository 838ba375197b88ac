//! Command line front end for the `lifsh-core` evaluators.
//!
//! Four subcommands cover the artifact surface: `eval` computes one function
//! at one point, `table` sweeps a single `start:stop:step` grid axis,
//! `verify` runs the named cross-validation suites, and `oracle-compare`
//! puts a closed form side by side with its brute-force quadrature.
//!
//! Output is deterministic: numbers are rendered with 17 significant digits
//! (`{:.16e}`, round-trip exact for binary64), rows keep their grid order,
//! and `--out` writes through a temp file plus rename so rerunning the same
//! configuration yields byte-identical artifacts and never a partial table.
//!
//! Exit codes: 0 success, 1 usage, 2 no convergence, 3 domain or pole,
//! 4 verification failure.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lifsh_core::appell::{
    eval_f1, eval_f2, eval_f4, eval_h4, h4_single_series, h4_via_f2, h4_via_f4,
};
use lifsh_core::cxexp::{
    h4_gamma_half, h4_gamma_three_half, im_2f1_3f2_series, im_2f1_b1_h4, im_2f1_gauss_series,
    im_2f1_laplace, re_2f1_3f2_series, re_2f1_b1_h4, re_2f1_gauss_series, re_2f1_laplace,
    re_im_polar, re_za_2f1_h4,
};
use lifsh_core::feynman::{
    c1_constant, i14_closed, i1m_detail, i1m_hat, i1m_hat_detail, i1m_p_axis, i1m_q_axis,
    i1m_via_h4, i21_closed, i31_closed, i3m, inner_j1, inner_j2, inner_j3, inner_jd_f1,
    inner_jd_kss, inner_jd_zero_mass, special_m2, special_m3, special_m4, special_m5, special_m6,
};
use lifsh_core::oracle::{quad_i1m, quad_idm_m1, quad_jd};
use lifsh_core::verify::{run_suite, suite_names, VerifyReport};
use lifsh_core::{CartesianArg, Complex64, EvalError, IntegralPoint, MassPair, QuadratureSpec};

const REGISTRY_HELP: &str = "\
Function registry:
  two-loop integral    i1m, i1m_hat, i1m_via_h4, i1m_q_axis, i1m_p_axis
  integer dimensions   special_m2, special_m3, special_m4, special_m5, special_m6
  mixed-line family    i3m, i21_closed, i31_closed, i14_closed
  one-loop bubbles     inner_j1, inner_j2, inner_j3, inner_jd_f1,
                       inner_jd_zero_mass, inner_jd_kss
  hypergeometric       eval_2f1, eval_f1, eval_f2, eval_f4, eval_h4,
                       h4_single_series, h4_via_f2, h4_via_f4
  expansion routes     re_2f1_polar, im_2f1_polar, re_2f1_gauss_series,
                       im_2f1_gauss_series, re_2f1_3f2_series, im_2f1_3f2_series,
                       re_2f1_laplace, im_2f1_laplace, re_2f1_b1_h4,
                       im_2f1_b1_h4, re_za_2f1_h4, h4_gamma_half,
                       h4_gamma_three_half
  quadrature oracles   quad_jd, quad_i1m, quad_idm_m1

Parameter flags: --m --p --q (integral point), --a --b --bp --c --cp
(series parameters; --c is H4's gamma and --cp its delta), --zre --zim
(complex argument), --x --y (real two-variable arguments), --d (bubble
dimension), --k1 --k2 (bubble masses), --sign (folded-form branch).";

#[derive(Parser)]
#[command(
    name = "lifsh",
    version,
    about = "Closed-form evaluation of an anisotropic two-loop integral and its special-function tower"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one registry function at a single point.
    #[command(after_help = REGISTRY_HELP)]
    Eval(EvalArgs),
    /// Sweep one grid axis (--m, --p or --q as start:stop:step) into a table.
    #[command(after_help = REGISTRY_HELP)]
    Table(TableArgs),
    /// Run named cross-validation suites and report every check.
    Verify(VerifyArgs),
    /// Compare a closed form against its brute-force quadrature oracle.
    #[command(name = "oracle-compare", after_help = REGISTRY_HELP)]
    OracleCompare(OracleArgs),
}

/// Parameter flags shared by the function-evaluating subcommands. The
/// momentum-like flags stay strings so `table` can accept grid syntax.
#[derive(Args, Clone)]
struct FnParams {
    /// Registry id of the function to evaluate.
    #[arg(long = "fn")]
    function: String,
    /// Dimension of the quartic momentum line (grid syntax allowed in table).
    #[arg(long)]
    m: Option<String>,
    /// Momentum along the quadratic direction (grid syntax allowed in table).
    #[arg(long)]
    p: Option<String>,
    /// Momentum along the quartic directions (grid syntax allowed in table).
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Second upper parameter of the Appell series.
    #[arg(long)]
    bp: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Second lower parameter (F2/F4's c', H4's delta).
    #[arg(long)]
    cp: Option<f64>,
    /// Bubble dimension for the inner_jd and quad_jd entries.
    #[arg(long)]
    d: Option<f64>,
    /// First propagator mass.
    #[arg(long)]
    k1: Option<f64>,
    /// Second propagator mass.
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    /// Real part of the complex argument.
    #[arg(long)]
    zre: Option<f64>,
    /// Imaginary part of the complex argument.
    #[arg(long)]
    zim: Option<f64>,
    /// Branch selector for the folded Horn forms, +1 or -1.
    #[arg(long)]
    sign: Option<f64>,
    /// Accuracy target; series stop at this relative size and the quadrature
    /// oracles derive their tolerances from it.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: FnParams,
    /// Output format; omit for a short human-readable block.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output to this path atomically instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: FnParams,
    /// Output format, csv when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output to this path atomically instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; all suites run when omitted.
    #[arg(long)]
    suite: Option<String>,
    /// Override every check's pass threshold with this tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output format, json when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output to this path atomically instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    params: FnParams,
    /// Output format, csv when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output to this path atomically instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Usage problems exit with 1; evaluation failures keep the library's
/// classification (2 for convergence, 3 for domain and pole).
enum CliError {
    Usage(String),
    Eval(EvalError),
    Io(String),
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Eval(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Eval(EvalError::Domain(_)) | CliError::Eval(EvalError::Pole(_)) => 3,
            CliError::Eval(EvalError::NoConvergence { .. })
            | CliError::Eval(EvalError::Quadrature(_)) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Eval(e) => e.to_string(),
        }
    }
}

fn usage(message: String) -> CliError {
    CliError::Usage(message)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if informational {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::OracleCompare(args) => cmd_oracle_compare(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

// ---------------------------------------------------------------------------
// Flag resolution and grids.

/// A momentum-like flag: either a single value or a `start:stop:step` sweep.
enum Axis {
    Scalar(f64),
    Grid { start: f64, stop: f64, step: f64 },
}

fn parse_f64(flag: &str, text: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| usage(format!("--{flag}: '{text}' is not a number")))
}

fn parse_axis(flag: &str, text: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => Ok(Axis::Scalar(parse_f64(flag, parts[0])?)),
        3 => {
            let start = parse_f64(flag, parts[0])?;
            let stop = parse_f64(flag, parts[1])?;
            let step = parse_f64(flag, parts[2])?;
            if !(step > 0.0) {
                return Err(usage(format!("--{flag}: grid step must be positive")));
            }
            Ok(Axis::Grid { start, stop, step })
        }
        _ => Err(usage(format!(
            "--{flag}: expected a number or start:stop:step, got '{text}'"
        ))),
    }
}

/// Grid points `start + i*step` up to and including `stop` (with a small
/// slack so binary rounding does not drop the last row). An inverted range
/// is empty, not an error.
fn expand_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if stop < start {
        return Vec::new();
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + step * i as f64).collect()
}

/// All point-like parameters a registry function may consume.
#[derive(Clone, Copy, Default)]
struct Point {
    m: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    bp: Option<f64>,
    c: Option<f64>,
    cp: Option<f64>,
    d: Option<f64>,
    k1: Option<f64>,
    k2: Option<f64>,
    x: Option<f64>,
    y: Option<f64>,
    zre: Option<f64>,
    zim: Option<f64>,
    sign: Option<f64>,
    tol: f64,
}

impl Point {
    /// Scalar resolution for `eval`; grid syntax on --m/--p/--q is rejected.
    fn from_scalars(params: &FnParams) -> Result<Point, CliError> {
        let mut pt = Point::from_side_flags(params);
        for (flag, text, slot) in [
            ("m", &params.m, 0usize),
            ("p", &params.p, 1),
            ("q", &params.q, 2),
        ] {
            if let Some(text) = text {
                match parse_axis(flag, text)? {
                    Axis::Scalar(v) => match slot {
                        0 => pt.m = Some(v),
                        1 => pt.p = Some(v),
                        _ => pt.q = Some(v),
                    },
                    Axis::Grid { .. } => {
                        return Err(usage(format!(
                            "--{flag}: grids are only accepted by the table subcommand"
                        )))
                    }
                }
            }
        }
        Ok(pt)
    }

    fn from_side_flags(params: &FnParams) -> Point {
        Point {
            a: params.a,
            b: params.b,
            bp: params.bp,
            c: params.c,
            cp: params.cp,
            d: params.d,
            k1: params.k1,
            k2: params.k2,
            x: params.x,
            y: params.y,
            zre: params.zre,
            zim: params.zim,
            sign: params.sign,
            tol: params.tol,
            ..Point::default()
        }
    }
}

fn need(value: Option<f64>, flag: &str, id: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| usage(format!("function '{id}' needs --{flag}")))
}

// ---------------------------------------------------------------------------
// The registry.

/// A rendered evaluation: real part, imaginary part (zero for the real
/// routes), an absolute error estimate and the route label.
struct Evaluation {
    value: f64,
    imag: f64,
    abs_err: f64,
    route: String,
}

impl Evaluation {
    fn real(value: f64, abs_err: f64, route: &str) -> Evaluation {
        Evaluation {
            value,
            imag: 0.0,
            abs_err,
            route: route.to_string(),
        }
    }

    /// Closed forms built from elementary operations are accurate to a few
    /// units in the last place.
    fn closed(value: f64, route: &str) -> Evaluation {
        Evaluation::real(value, 4.0 * f64::EPSILON * value.abs(), route)
    }

    /// Series-backed scalar routes resolve their internal tolerance, not
    /// machine precision.
    fn series_backed(value: f64, tol: f64, route: &str) -> Evaluation {
        Evaluation::real(value, value.abs() * tol.max(1e-13), route)
    }

    fn from_series(s: lifsh_core::SeriesResult, route: &str) -> Evaluation {
        Evaluation {
            value: s.value.re,
            imag: s.value.im,
            abs_err: s.abs_err,
            route: route.to_string(),
        }
    }
}

/// Quadrature tolerances derived from --tol. The bubble oracle is one or two
/// nested levels, so it can honor the target directly; the three-level
/// two-loop and mixed oracles run at a validated coarser floor.
fn bubble_spec(tol: f64) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: tol.max(1e-13),
        rel_tol: (tol * 1e2).max(1e-11),
        max_subdivisions: 4000,
    }
}

fn nested_oracle_spec(tol: f64) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: (tol * 1e2).max(1e-10),
        rel_tol: (tol * 1e4).max(1e-8),
        max_subdivisions: 2000,
    }
}

fn evaluate(id: &str, pt: &Point) -> Result<Evaluation, CliError> {
    let tol = pt.tol;
    let integral_point = |pt: &Point| -> Result<IntegralPoint, CliError> {
        Ok(IntegralPoint::new(
            need(pt.m, "m", id)?,
            need(pt.p, "p", id)?,
            need(pt.q, "q", id)?,
        ))
    };
    let masses = |pt: &Point| -> Result<MassPair, CliError> {
        Ok(MassPair::new(need(pt.k1, "k1", id)?, need(pt.k2, "k2", id)?))
    };
    let cartesian = |pt: &Point| -> Result<CartesianArg, CliError> {
        Ok(CartesianArg::new(
            need(pt.zre, "zre", id)?,
            pt.zim.unwrap_or(0.0),
        ))
    };
    let ev = match id {
        "i1m" => {
            let r = i1m_detail(integral_point(pt)?, tol)?;
            Evaluation::real(r.value, r.abs_err, r.route)
        }
        "i1m_hat" => {
            let r = i1m_hat_detail(integral_point(pt)?, tol)?;
            Evaluation::real(r.value, r.abs_err, r.route)
        }
        "i1m_via_h4" => {
            let v = i1m_via_h4(integral_point(pt)?, tol)?;
            Evaluation::series_backed(v, tol, "horn-series")
        }
        "i1m_q_axis" => {
            let v = i1m_q_axis(need(pt.m, "m", id)?, need(pt.q, "q", id)?)?;
            Evaluation::series_backed(v, 1e-14, "q-axis")
        }
        "i1m_p_axis" => {
            let v = i1m_p_axis(need(pt.m, "m", id)?, need(pt.p, "p", id)?)?;
            Evaluation::closed(v, "p-axis")
        }
        "special_m2" | "special_m3" | "special_m4" | "special_m5" | "special_m6" => {
            let f = match id {
                "special_m2" => special_m2,
                "special_m3" => special_m3,
                "special_m4" => special_m4,
                "special_m5" => special_m5,
                _ => special_m6,
            };
            Evaluation::closed(f(need(pt.p, "p", id)?, need(pt.q, "q", id)?)?, "integer-dimension")
        }
        "i3m" => {
            let v = i3m(
                need(pt.m, "m", id)?,
                need(pt.p, "p", id)?,
                need(pt.q, "q", id)?,
            )?;
            Evaluation::series_backed(v, 1e-13, "gauss-2f1")
        }
        "i21_closed" => {
            Evaluation::series_backed(i21_closed(need(pt.q, "q", id)?)?, 1e-13, "closed-form")
        }
        "i31_closed" => Evaluation::closed(i31_closed(need(pt.q, "q", id)?)?, "closed-form"),
        "i14_closed" => Evaluation::closed(i14_closed(need(pt.q, "q", id)?)?, "closed-form"),
        "inner_j1" | "inner_j2" | "inner_j3" => {
            let f = match id {
                "inner_j1" => inner_j1,
                "inner_j2" => inner_j2,
                _ => inner_j3,
            };
            Evaluation::closed(f(need(pt.p, "p", id)?, masses(pt)?)?, "elementary")
        }
        "inner_jd_f1" => {
            let v = inner_jd_f1(need(pt.d, "d", id)?, need(pt.p, "p", id)?, masses(pt)?)?;
            Evaluation::series_backed(v, 1e-12, "hypergeometric")
        }
        "inner_jd_zero_mass" => {
            let v = inner_jd_zero_mass(
                need(pt.d, "d", id)?,
                need(pt.p, "p", id)?,
                need(pt.k1, "k1", id)?,
            )?;
            Evaluation::series_backed(v, 1e-13, "zero-mass")
        }
        "inner_jd_kss" => {
            let v = inner_jd_kss(need(pt.d, "d", id)?, need(pt.p, "p", id)?, masses(pt)?)?;
            Evaluation::series_backed(v, 1e-12, "root-based")
        }
        "eval_2f1" => {
            let z = Complex64::new(need(pt.zre, "zre", id)?, pt.zim.unwrap_or(0.0));
            let s = lifsh_core::series::eval_2f1(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                z,
                tol,
            )?;
            Evaluation::from_series(s, "series-ladder")
        }
        "eval_f1" => {
            let s = eval_f1(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.bp, "bp", id)?,
                need(pt.c, "c", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                tol,
            )?;
            Evaluation::from_series(s, "appell-f1")
        }
        "eval_f2" => {
            let s = eval_f2(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.bp, "bp", id)?,
                need(pt.c, "c", id)?,
                need(pt.cp, "cp", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                tol,
            )?;
            Evaluation::from_series(s, "appell-f2")
        }
        "eval_f4" => {
            let s = eval_f4(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                need(pt.cp, "cp", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                tol,
            )?;
            Evaluation::from_series(s, "appell-f4")
        }
        "eval_h4" | "h4_single_series" | "h4_via_f2" => {
            let f = match id {
                "eval_h4" => eval_h4,
                "h4_single_series" => h4_single_series,
                _ => h4_via_f2,
            };
            let s = f(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                need(pt.cp, "cp", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                tol,
            )?;
            Evaluation::from_series(s, id)
        }
        "h4_via_f4" => {
            let s = h4_via_f4(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.cp, "cp", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                tol,
            )?;
            Evaluation::from_series(s, id)
        }
        "h4_gamma_half" | "h4_gamma_three_half" => {
            let f = match id {
                "h4_gamma_half" => h4_gamma_half,
                _ => h4_gamma_three_half,
            };
            let s = f(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.cp, "cp", id)?,
                need(pt.x, "x", id)?,
                need(pt.y, "y", id)?,
                pt.sign.unwrap_or(1.0),
                tol,
            )?;
            Evaluation::from_series(s, "folded-gauss")
        }
        "re_2f1_polar" | "im_2f1_polar" => {
            let (re, im) = re_im_polar(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                cartesian(pt)?,
                tol,
            )?;
            let part = if id == "re_2f1_polar" { re } else { im };
            Evaluation::from_series(part, "polar-split")
        }
        "re_2f1_gauss_series" | "im_2f1_gauss_series" | "re_2f1_3f2_series"
        | "im_2f1_3f2_series" | "re_2f1_laplace" | "im_2f1_laplace" => {
            let f = match id {
                "re_2f1_gauss_series" => re_2f1_gauss_series,
                "im_2f1_gauss_series" => im_2f1_gauss_series,
                "re_2f1_3f2_series" => re_2f1_3f2_series,
                "im_2f1_3f2_series" => im_2f1_3f2_series,
                "re_2f1_laplace" => re_2f1_laplace,
                _ => im_2f1_laplace,
            };
            let s = f(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                cartesian(pt)?,
                tol,
            )?;
            Evaluation::from_series(s, id)
        }
        "re_2f1_b1_h4" | "im_2f1_b1_h4" => {
            let f = match id {
                "re_2f1_b1_h4" => re_2f1_b1_h4,
                _ => im_2f1_b1_h4,
            };
            let s = f(need(pt.a, "a", id)?, need(pt.c, "c", id)?, cartesian(pt)?, tol)?;
            Evaluation::from_series(s, "h4-bridge")
        }
        "re_za_2f1_h4" => {
            let s = re_za_2f1_h4(
                need(pt.a, "a", id)?,
                need(pt.b, "b", id)?,
                need(pt.c, "c", id)?,
                cartesian(pt)?,
                tol,
            )?;
            Evaluation::from_series(s, "h4-bridge")
        }
        "quad_jd" => {
            let s = quad_jd(
                need(pt.d, "d", id)?,
                need(pt.p, "p", id)?,
                masses(pt)?,
                &bubble_spec(tol),
            )?;
            Evaluation::from_series(s, "quadrature")
        }
        "quad_i1m" => {
            let s = quad_i1m(
                need(pt.m, "m", id)?,
                need(pt.p, "p", id)?,
                need(pt.q, "q", id)?,
                &nested_oracle_spec(tol),
            )?;
            Evaluation::from_series(s, "quadrature")
        }
        "quad_idm_m1" => {
            let s = quad_idm_m1(
                need(pt.d, "d", id)?,
                need(pt.p, "p", id)?,
                need(pt.q, "q", id)?,
                &nested_oracle_spec(tol),
            )?;
            Evaluation::from_series(s, "quadrature")
        }
        other => {
            return Err(usage(format!(
                "unknown function id '{other}'; see 'lifsh eval --help' for the registry"
            )))
        }
    };
    Ok(ev)
}

// ---------------------------------------------------------------------------
// Rendering.

/// 17 significant digits, round-trip exact for binary64.
fn num17(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON has no literal for non-finite numbers; they become null.
fn json_num(v: f64) -> String {
    if v.is_finite() {
        num17(v)
    } else {
        "null".to_string()
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// stdout or an atomic file write: the content lands in a temp file in the
/// destination directory and is renamed into place, so interrupted runs
/// never leave a partial artifact.
fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or_else(|| Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .map_err(|e| CliError::Io(format!("cannot create temp file in {dir:?}: {e}")))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write {path:?}: {e}")))?;
            tmp.persist(path)
                .map_err(|e| CliError::Io(format!("cannot rename into {path:?}: {e}")))?;
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, CliError> {
    let pt = Point::from_scalars(&args.params)?;
    let clock = Instant::now();
    let ev = evaluate(&args.params.function, &pt)?;
    let elapsed = clock.elapsed().as_secs_f64();
    let content = match args.format {
        None => {
            let mut text = format!("value    {}\n", num17(ev.value));
            if ev.imag != 0.0 {
                let _ = writeln!(text, "imag     {}", num17(ev.imag));
            }
            let _ = writeln!(text, "abs_err  {}", num17(ev.abs_err));
            let _ = writeln!(text, "route    {}", ev.route);
            text
        }
        Some(Format::Json) => format!(
            "{{\"schema\":\"1\",\"command\":\"eval\",\"fn\":{},\"value\":{},\"imag\":{},\"abs_err\":{},\"route\":{}}}\n",
            json_str(&args.params.function),
            json_num(ev.value),
            json_num(ev.imag),
            json_num(ev.abs_err),
            json_str(&ev.route)
        ),
        Some(Format::Csv) => format!(
            "value,imag,abs_err,route\n{},{},{},{}\n",
            num17(ev.value),
            num17(ev.imag),
            num17(ev.abs_err),
            csv_field(&ev.route)
        ),
    };
    write_output(&args.out, &content)?;
    eprintln!("wall time {:.3} ms", elapsed * 1e3);
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    let mut grid: Option<(&'static str, Vec<f64>)> = None;
    let mut pt = Point::from_side_flags(&args.params);
    for (flag, text) in [
        ("m", &args.params.m),
        ("p", &args.params.p),
        ("q", &args.params.q),
    ] {
        let Some(text) = text else { continue };
        match parse_axis(flag, text)? {
            Axis::Scalar(v) => match flag {
                "m" => pt.m = Some(v),
                "p" => pt.p = Some(v),
                _ => pt.q = Some(v),
            },
            Axis::Grid { start, stop, step } => {
                if grid.is_some() {
                    return Err(usage("table takes exactly one grid axis".to_string()));
                }
                grid = Some((
                    match flag {
                        "m" => "m",
                        "p" => "p",
                        _ => "q",
                    },
                    expand_grid(start, stop, step),
                ));
            }
        }
    }
    let Some((axis, values)) = grid else {
        return Err(usage(
            "table needs one grid axis, e.g. --q 0.1:3:0.1".to_string(),
        ));
    };
    let mut rows: Vec<(f64, Evaluation)> = Vec::with_capacity(values.len());
    for v in values {
        let mut row_pt = pt;
        match axis {
            "m" => row_pt.m = Some(v),
            "p" => row_pt.p = Some(v),
            _ => row_pt.q = Some(v),
        }
        rows.push((v, evaluate(&args.params.function, &row_pt)?));
    }
    let content = match args.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = format!("{axis},value,abs_err\n");
            for (v, ev) in &rows {
                let _ = writeln!(text, "{},{},{}", num17(*v), num17(ev.value), num17(ev.abs_err));
            }
            text
        }
        Format::Json => {
            let mut text = format!(
                "{{\"schema\":\"1\",\"command\":\"table\",\"fn\":{},\"axis\":{},\"rows\":[",
                json_str(&args.params.function),
                json_str(axis)
            );
            for (i, (v, ev)) in rows.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                let _ = write!(
                    text,
                    "{{{}:{},\"value\":{},\"abs_err\":{}}}",
                    json_str(axis),
                    json_num(*v),
                    json_num(ev.value),
                    json_num(ev.abs_err)
                );
            }
            text.push_str("]}\n");
            text
        }
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let chosen: Vec<&str> = match &args.suite {
        Some(name) => {
            if suite_names().contains(&name.as_str()) {
                vec![suite_names()
                    .iter()
                    .copied()
                    .find(|s| s == name)
                    .expect("name checked above")]
            } else {
                return Err(usage(format!(
                    "unknown suite '{name}'; available: {}",
                    suite_names().join(", ")
                )));
            }
        }
        None => suite_names().to_vec(),
    };
    let mut suites: Vec<(&str, Vec<VerifyReport>)> = Vec::new();
    for name in chosen {
        let mut reports = run_suite(name).map_err(CliError::Eval)?;
        if let Some(t) = args.tol {
            for r in &mut reports {
                r.tol = t;
                r.pass = r.abs_dev.is_finite() && (r.abs_dev <= t || r.rel_dev <= t);
            }
        }
        suites.push((name, reports));
    }
    let all_pass = suites.iter().all(|(_, rs)| rs.iter().all(|r| r.pass));
    let content = match args.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut text = format!(
                "{{\"schema\":\"1\",\"command\":\"verify\",\"pass\":{},\"suites\":[",
                all_pass
            );
            for (i, (name, reports)) in suites.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                let suite_pass = reports.iter().all(|r| r.pass);
                let _ = write!(
                    text,
                    "{{\"suite\":{},\"pass\":{},\"checks\":[",
                    json_str(name),
                    suite_pass
                );
                for (j, r) in reports.iter().enumerate() {
                    if j > 0 {
                        text.push(',');
                    }
                    let _ = write!(
                        text,
                        "{{\"name\":{},\"routes\":[{},{}],\"lhs\":{},\"rhs\":{},\"abs_dev\":{},\"rel_dev\":{},\"tol\":{},\"pass\":{}}}",
                        json_str(&r.name),
                        json_str(&r.route_labels.0),
                        json_str(&r.route_labels.1),
                        json_num(r.lhs),
                        json_num(r.rhs),
                        json_num(r.abs_dev),
                        json_num(r.rel_dev),
                        json_num(r.tol),
                        r.pass
                    );
                }
                text.push_str("]}");
            }
            text.push_str("]}\n");
            text
        }
        Format::Csv => {
            let mut text = "suite,check,lhs,rhs,abs_dev,rel_dev,tol,pass\n".to_string();
            for (name, reports) in &suites {
                for r in reports {
                    let _ = writeln!(
                        text,
                        "{},{},{},{},{},{},{},{}",
                        csv_field(name),
                        csv_field(&r.name),
                        num17(r.lhs),
                        num17(r.rhs),
                        num17(r.abs_dev),
                        num17(r.rel_dev),
                        num17(r.tol),
                        csv_bool(r.pass)
                    );
                }
            }
            text
        }
    };
    write_output(&args.out, &content)?;
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        for (name, reports) in &suites {
            for r in reports.iter().filter(|r| !r.pass).take(5) {
                eprintln!("verification failed in suite {name}: {}", r.name);
            }
        }
        Ok(ExitCode::from(4))
    }
}

/// One closed-form-vs-oracle line of the comparison table.
struct CompareRow {
    point: String,
    closed: f64,
    oracle: f64,
    deviation: f64,
    bound: f64,
    flagged: bool,
}

fn compare_row(
    point: String,
    closed: f64,
    closed_err: f64,
    oracle: &lifsh_core::SeriesResult,
    family_tol: f64,
) -> CompareRow {
    let o = oracle.value.re;
    let deviation = (closed - o).abs();
    let bound = oracle.abs_err + closed_err;
    let scale = closed.abs().max(o.abs()).max(f64::MIN_POSITIVE);
    // Out of bounds only when the deviation beats both the reported error
    // budget and the tolerance the oracle was validated at.
    let flagged = !(deviation <= bound || deviation / scale <= family_tol);
    CompareRow {
        point,
        closed,
        oracle: o,
        deviation,
        bound,
        flagged,
    }
}

fn axis_values(flag: &str, text: &Option<String>, default: &[f64]) -> Result<Vec<f64>, CliError> {
    match text {
        None => Ok(default.to_vec()),
        Some(t) => match parse_axis(flag, t)? {
            Axis::Scalar(v) => Ok(vec![v]),
            Axis::Grid { start, stop, step } => Ok(expand_grid(start, stop, step)),
        },
    }
}

fn cmd_oracle_compare(args: OracleArgs) -> Result<ExitCode, CliError> {
    let id = args.params.function.as_str();
    let tol = args.params.tol;
    let mut rows: Vec<CompareRow> = Vec::new();
    match id {
        "i1m" | "i1m_hat" | "special_m3" | "special_m4" | "special_m5" => {
            let default_m = match id {
                "special_m3" => vec![3.0],
                "special_m4" => vec![4.0],
                "special_m5" => vec![5.0],
                _ => vec![3.0, 4.0, 5.0],
            };
            let ms = match id {
                "i1m" | "i1m_hat" => axis_values("m", &args.params.m, &default_m)?,
                _ => default_m,
            };
            let ps = axis_values("p", &args.params.p, &[0.5, 1.0, 2.0])?;
            let qs = axis_values("q", &args.params.q, &[0.5, 1.0, 2.0])?;
            let spec = nested_oracle_spec(tol);
            for &m in &ms {
                if !(m == 3.0 || m == 4.0 || m == 5.0) {
                    return Err(usage(format!(
                        "the two-loop oracle integrates odd kernels only at m in {{3, 4, 5}}, got {m}"
                    )));
                }
                for &p in &ps {
                    for &q in &qs {
                        let lead = c1_constant(0.5 * m - 1.0)?;
                        let closed = lead * i1m_hat(IntegralPoint::new(m, p, q), 1e-13)?;
                        let oracle = quad_i1m(m, p, q, &spec)?;
                        rows.push(compare_row(
                            format!("m={m} p={p} q={q}"),
                            closed,
                            closed.abs() * 1e-12,
                            &oracle,
                            1e-6,
                        ));
                    }
                }
            }
        }
        "inner_j1" | "inner_j2" | "inner_j3" | "inner_jd_f1" | "inner_jd_kss" => {
            let d = match id {
                "inner_j1" => 1.0,
                "inner_j2" => 2.0,
                "inner_j3" => 3.0,
                _ => args.params.d.unwrap_or(2.0),
            };
            if !(d == 1.0 || d == 2.0 || d == 3.0) {
                return Err(usage(format!(
                    "the bubble oracle covers d in {{1, 2, 3}}, got {d}"
                )));
            }
            let spec = bubble_spec(tol);
            let mut rng = ChaCha8Rng::seed_from_u64(0x11f5_0c0c);
            for i in 0..5 {
                let masses = MassPair::new(rng.gen_range(0.45..1.5), rng.gen_range(0.45..1.5));
                let p = match &args.params.p {
                    Some(text) => parse_f64("p", text)?,
                    None => rng.gen_range(0.2..0.9 * masses.sum()),
                };
                let closed = match id {
                    "inner_j1" => inner_j1(p, masses)?,
                    "inner_j2" => inner_j2(p, masses)?,
                    "inner_j3" => inner_j3(p, masses)?,
                    "inner_jd_f1" => inner_jd_f1(d, p, masses)?,
                    _ => inner_jd_kss(d, p, masses)?,
                };
                let oracle = quad_jd(d, p, masses, &spec)?;
                rows.push(compare_row(
                    format!(
                        "config {i}: d={d} p={p:.6} masses=({:.6},{:.6})",
                        masses.kappa1, masses.kappa2
                    ),
                    closed,
                    closed.abs() * 1e-12,
                    &oracle,
                    1e-8,
                ));
            }
        }
        "i3m" => {
            // Only the m = 1 member of this family has a convergent defining
            // integral, so the comparison is pinned there.
            let ps = axis_values("p", &args.params.p, &[0.7, 1.0, 1.4])?;
            let qs = axis_values("q", &args.params.q, &[1.1])?;
            let spec = nested_oracle_spec(tol);
            for &p in &ps {
                for &q in &qs {
                    let closed = i3m(1.0, p, q)?;
                    let oracle = quad_idm_m1(3.0, p, q, &spec)?;
                    rows.push(compare_row(
                        format!("m=1 p={p} q={q}"),
                        closed,
                        closed.abs() * 1e-12,
                        &oracle,
                        1e-6,
                    ));
                }
            }
        }
        "i21_closed" | "i31_closed" | "i14_closed" => {
            let qs = axis_values("q", &args.params.q, &[0.5, 1.0, 2.0])?;
            let spec = nested_oracle_spec(tol);
            for &q in &qs {
                let (closed, oracle) = match id {
                    "i21_closed" => (i21_closed(q)?, quad_idm_m1(2.0, 1.0, q, &spec)?),
                    "i31_closed" => (i31_closed(q)?, quad_idm_m1(3.0, 1.0, q, &spec)?),
                    _ => (i14_closed(q)?, quad_i1m(4.0, 1.0, q, &spec)?),
                };
                rows.push(compare_row(
                    format!("p=1 q={q}"),
                    closed,
                    closed.abs() * 1e-12,
                    &oracle,
                    1e-6,
                ));
            }
        }
        other => {
            return Err(usage(format!(
                "'{other}' has no oracle counterpart; supported: i1m, i1m_hat, special_m3, \
                 special_m4, special_m5, inner_j1, inner_j2, inner_j3, inner_jd_f1, \
                 inner_jd_kss, i3m, i21_closed, i31_closed, i14_closed"
            )))
        }
    }
    let any_flagged = rows.iter().any(|r| r.flagged);
    let content = match args.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = "point,closed_form,oracle,deviation,oracle_error_bound,flagged\n"
                .to_string();
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    csv_field(&r.point),
                    num17(r.closed),
                    num17(r.oracle),
                    num17(r.deviation),
                    num17(r.bound),
                    csv_bool(r.flagged)
                );
            }
            text
        }
        Format::Json => {
            let mut text = format!(
                "{{\"schema\":\"1\",\"command\":\"oracle-compare\",\"fn\":{},\"pass\":{},\"rows\":[",
                json_str(id),
                !any_flagged
            );
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                let _ = write!(
                    text,
                    "{{\"point\":{},\"closed_form\":{},\"oracle\":{},\"deviation\":{},\"oracle_error_bound\":{},\"flagged\":{}}}",
                    json_str(&r.point),
                    json_num(r.closed),
                    json_num(r.oracle),
                    json_num(r.deviation),
                    json_num(r.bound),
                    r.flagged
                );
            }
            text.push_str("]}\n");
            text
        }
    };
    write_output(&args.out, &content)?;
    if any_flagged {
        for r in rows.iter().filter(|r| r.flagged) {
            eprintln!(
                "deviation out of bounds at {}: {} vs {}",
                r.point,
                num17(r.closed),
                num17(r.oracle)
            );
        }
        Ok(ExitCode::from(4))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
