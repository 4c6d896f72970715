//! The `li` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::li::{li_arithmetic_with_error, li_norm, li_verify, li_zero_sum, LiReport};
use crate::modelspace::{m_n_truncated, BasisFunction, HnContext};
use crate::quad::{QuadConfig, QuadResult};
use crate::special::theta_fn;
use crate::stieltjes::{eta_from_powerseries, eta_from_vonmangoldt};
use crate::zeros::{load_or_compute, ZeroTable};
use crate::Complex64;

const EXIT_CODES: &str = "\
Exit codes:
  0  success, all verdicts pass
  1  a verification verdict failed
  2  invalid argument or precondition
  3  cache or I/O error
  4  zero finder missed zeros / empty table
  5  quadrature budget exceeded
  6  tail fit failed (span too small)
  7  pole, zero or overflow in a special function
  8  series or estimator did not converge
  9  coefficient table too short";

#[derive(Debug, Parser)]
#[command(name = "li", version, about = "Li coefficients by zero sums, Stieltjes data and ‖G_n‖²")]
#[command(after_help = EXIT_CODES)]
pub struct Cli {
    /// Directory holding zeros_v1.csv (overridden by LI_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cached zero table and rebuild it.
    #[arg(long, global = true)]
    pub recompute: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Locate zeros up to a height and print them in cache format.
    Zeros {
        #[arg(long)]
        upto: f64,
    },
    /// η_k as CSV rows k,eta,err_est.
    Eta {
        #[arg(long)]
        max_k: usize,
        /// Append the von Mangoldt estimate (k ≤ 6) and its difference.
        #[arg(long)]
        cross_check: bool,
    },
    /// λ_n by one route or all of them.
    Li {
        #[arg(long, value_parser = parse_n_range)]
        n: NRange,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Evaluate a function on a grid, printing x, Re, Im.
    Eval {
        #[arg(long = "fn", value_enum)]
        function: EvalFn,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// start:stop:step
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        /// Real part σ for Hn and Mn, evaluated at s = σ + i·x.
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        /// 1-based ordinate index for Fgamma.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Zero table height for Mn and Fgamma.
        #[arg(long = "T", default_value_t = 1000.0)]
        height: f64,
        /// Comma-separated output with an x,re,im header.
        #[arg(long)]
        csv: bool,
    },
    /// ‖G_n‖² over ℝ as JSON.
    Norm {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 500.0)]
        span: f64,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// All three routes with verdicts, as a JSON array of reports.
    Verify {
        #[arg(long, value_parser = parse_n_range, default_value = "1..5")]
        n: NRange,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Height of the zero table.
    #[arg(long = "T", default_value_t = 1000.0)]
    pub height: f64,
    /// Quadrature core half-width.
    #[arg(long, default_value_t = 500.0)]
    pub span: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Zeros,
    Arith,
    Norm,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    #[value(name = "Hn")]
    Hn,
    #[value(name = "Gn")]
    Gn,
    #[value(name = "Mn")]
    Mn,
    #[value(name = "Fgamma")]
    Fgamma,
    #[value(name = "Theta")]
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NRange {
    pub first: u32,
    pub last: u32,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.first..=self.last
    }
}

pub fn parse_n_range(text: &str) -> std::result::Result<NRange, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad n {s:?}: {e}"))
    };
    let (first, last) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if first == 0 || last < first {
        return Err(format!("n range {text:?} must be non-empty and start at 1 or above"));
    }
    Ok(NRange { first, last })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

pub fn parse_grid(text: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid {text:?} must be start:stop:step"));
    }
    let v: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad grid value {p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if !(v[2] > 0.0) || !(v[1] >= v[0]) || !v.iter().all(|x| x.is_finite()) {
        return Err(format!("grid {text:?} needs start <= stop and step > 0"));
    }
    Ok(Grid {
        start: v[0],
        stop: v[1],
        step: v[2],
    })
}

fn cache_dir(cli: &Cli) -> PathBuf {
    if let Some(dir) = std::env::var_os("LI_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    cli.cache_dir.clone().unwrap_or_else(|| PathBuf::from("li-cache"))
}

fn zeros_for(cli: &Cli, height: f64) -> Result<ZeroTable> {
    if !(height > 0.0) {
        return Err(Error::Precondition(format!("T must be positive, got {height}")));
    }
    load_or_compute(&cache_dir(cli), height, cli.recompute)
}

fn quad_config(common: &Common) -> QuadConfig {
    QuadConfig {
        span: common.span,
        rel_tol: common.rel_tol,
        ..QuadConfig::default()
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Zeros { upto } => {
            let table = zeros_for(cli, *upto)?;
            out.write_all(table.to_cache_string().as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Eta { max_k, cross_check } => {
            let t = eta_from_powerseries(*max_k)?;
            if *cross_check {
                writeln!(out, "k,eta,err_est,eta_vonmangoldt,diff").map_err(io)?;
            } else {
                writeln!(out, "k,eta,err_est").map_err(io)?;
            }
            for k in 0..=*max_k {
                write!(out, "{k},{},{}", t.eta[k], t.err_est[k]).map_err(io)?;
                if *cross_check {
                    if k <= 6 {
                        let v = eta_from_vonmangoldt(k, 1e7)?;
                        write!(out, ",{v},{}", (v - t.eta[k]).abs()).map_err(io)?;
                    } else {
                        write!(out, ",,").map_err(io)?;
                    }
                }
                writeln!(out).map_err(io)?;
            }
            Ok(0)
        }
        Command::Li {
            n,
            method,
            common,
            json,
            csv: _,
        } => cmd_li(cli, *n, *method, common, *json, out),
        Command::Eval {
            function,
            n,
            grid,
            sigma,
            k,
            height,
            csv,
        } => cmd_eval(cli, *function, *n, grid, *sigma, *k, *height, *csv, out),
        Command::Norm { n, span, rel_tol } => {
            let cfg = QuadConfig {
                span: *span,
                rel_tol: *rel_tol,
                ..QuadConfig::default()
            };
            let ctx = HnContext::new(*n)?;
            let r = ctx.norm_sq(&cfg)?;
            let report = NormOutput::new(*n, *span, &r);
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes")).map_err(io)?;
            Ok(0)
        }
        Command::Verify { n, common } => {
            let cfg = quad_config(common);
            cfg.validate()?;
            let zeros = zeros_for(cli, common.height)?;
            let reports: Vec<LiReport> = n
                .iter()
                .map(|k| li_verify(k, &zeros, Some(&cfg)))
                .collect::<Result<_>>()?;
            writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("serializes")).map_err(io)?;
            let mut ok = true;
            for r in &reports {
                for v in r.verdicts.iter().filter(|v| !v.pass) {
                    ok = false;
                    writeln!(
                        err,
                        "FAIL n={} {}: |difference| = {:e} > tolerance {:e} \
                         (zero-sum tail {:e}, arithmetic err {:e}, norm err {:e})",
                        r.n,
                        v.pair,
                        v.difference,
                        v.tolerance,
                        r.zero_sum.tail,
                        r.arithmetic.err,
                        r.norm.map_or(f64::NAN, |x| x.err)
                    )
                    .map_err(io)?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

#[derive(Debug, Serialize)]
struct NormOutput {
    n: u32,
    span: f64,
    value: f64,
    core_err: f64,
    tail_value: f64,
    tail_err: f64,
    nodes_used: usize,
    lambda: f64,
}

impl NormOutput {
    fn new(n: u32, span: f64, r: &QuadResult) -> Self {
        NormOutput {
            n,
            span,
            value: r.value.re,
            core_err: r.core_err,
            tail_value: r.tail_value.re,
            tail_err: r.tail_err,
            nodes_used: r.nodes_used,
            lambda: r.total().re / (2.0 * std::f64::consts::PI),
        }
    }
}

#[derive(Debug, Serialize)]
struct LiOutput {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    zero_sum: Option<crate::li::ZeroSum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arithmetic: Option<crate::li::Arithmetic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<crate::li::Norm>,
}

fn cmd_li(cli: &Cli, range: NRange, method: Method, common: &Common, json: bool, out: &mut dyn Write) -> Result<i32> {
    let want = |m: Method| method == m || method == Method::All;
    let zeros = if want(Method::Zeros) {
        Some(zeros_for(cli, common.height)?)
    } else {
        None
    };
    let cfg = quad_config(common);
    if want(Method::Norm) {
        cfg.validate()?;
    }
    let rows: Vec<LiOutput> = range
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let zero_sum = zeros.as_ref().map(|z| li_zero_sum(n, z)).transpose()?;
            let needs_ctx = want(Method::Arith) || want(Method::Norm);
            let ctx = if needs_ctx { Some(HnContext::new(n)?) } else { None };
            let arithmetic = if want(Method::Arith) {
                let (value, err) = li_arithmetic_with_error(n, ctx.as_ref().unwrap().eta())?;
                Some(crate::li::Arithmetic { value, err })
            } else {
                None
            };
            let norm = if want(Method::Norm) {
                Some(li_norm(ctx.as_ref().unwrap(), &cfg)?)
            } else {
                None
            };
            Ok(LiOutput {
                n,
                zero_sum,
                arithmetic,
                norm,
            })
        })
        .collect::<Result<_>>()?;
    if json {
        let text = if rows.len() == 1 {
            serde_json::to_string_pretty(&rows[0])
        } else {
            serde_json::to_string_pretty(&rows)
        };
        writeln!(out, "{}", text.expect("serializes")).map_err(io)?;
    } else {
        writeln!(out, "n,method,value,err").map_err(io)?;
        for r in &rows {
            if let Some(z) = &r.zero_sum {
                writeln!(out, "{},zeros,{},{}", r.n, z.value, z.tail).map_err(io)?;
            }
            if let Some(a) = &r.arithmetic {
                writeln!(out, "{},arith,{},{}", r.n, a.value, a.err).map_err(io)?;
            }
            if let Some(m) = &r.norm {
                writeln!(out, "{},norm,{},{}", r.n, m.value, m.err).map_err(io)?;
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    cli: &Cli,
    function: EvalFn,
    n: u32,
    grid: &Grid,
    sigma: f64,
    k: usize,
    height: f64,
    csv: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let xs = grid.points();
    let ctx = match function {
        EvalFn::Hn | EvalFn::Gn => Some(HnContext::new(n)?),
        _ => None,
    };
    let zeros = match function {
        EvalFn::Mn | EvalFn::Fgamma => Some(zeros_for(cli, height)?),
        _ => None,
    };
    if function == EvalFn::Mn && n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let basis = match function {
        EvalFn::Fgamma => {
            if k == 0 {
                return Err(Error::Precondition("--k is 1-based".into()));
            }
            Some(BasisFunction::from_table(zeros.as_ref().unwrap(), k - 1)?)
        }
        _ => None,
    };
    let values: Vec<Complex64> = xs
        .par_iter()
        .map(|&x| match function {
            EvalFn::Hn => ctx.as_ref().unwrap().h(Complex64::new(sigma, x)),
            EvalFn::Gn => ctx.as_ref().unwrap().g_real(x),
            EvalFn::Mn => m_n_truncated(n, zeros.as_ref().unwrap(), Complex64::new(sigma, x)).map(|r| r.0),
            EvalFn::Fgamma => basis.as_ref().unwrap().eval_real(x),
            EvalFn::Theta => theta_fn(Complex64::new(x, 0.0)),
        })
        .collect::<Result<_>>()?;
    if csv {
        writeln!(out, "x,re,im").map_err(io)?;
    }
    for (x, v) in xs.iter().zip(&values) {
        if csv {
            writeln!(out, "{x},{},{}", v.re, v.im).map_err(io)?;
        } else {
            writeln!(out, "{x} {} {}", v.re, v.im).map_err(io)?;
        }
    }
    Ok(0)
}
