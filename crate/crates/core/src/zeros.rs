//! Nontrivial zeros on the critical line: Hardy's Z function, a parallel
//! sign-change scan with bracket refinement, the Riemann–von Mangoldt
//! count, and the `zeros_v1.csv` cache.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use log::{debug, warn};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{log_gamma, zeta, EvalOptions};

/// Largest height at which Z is evaluated.
pub const MAX_HEIGHT: f64 = 1e4;
/// Default scan step; the mean zero gap near t = 1000 is about 1.2.
pub const GRID_STEP: f64 = 0.05;
/// Allowed |count - N(T)| before the scan is considered incomplete.
pub const COUNT_TOLERANCE: f64 = 2.0;
const MAX_HALVINGS: usize = 4;
const REFINE_WIDTH: f64 = 1e-12;

pub const CACHE_FILE: &str = "zeros_v1.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ZeroSource {
    Computed,
    Loaded,
}

/// Positive ordinates γ of the zeros ρ = 1/2 ± iγ up to a height bound.
/// The mirrored ordinates −γ are implied by the storage convention.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    height_bound: f64,
    ordinates: Vec<f64>,
    multiplicities: Vec<u32>,
    source: ZeroSource,
}

impl ZeroTable {
    pub fn new(
        height_bound: f64,
        ordinates: Vec<f64>,
        multiplicities: Vec<u32>,
        source: ZeroSource,
    ) -> Result<Self> {
        if ordinates.len() != multiplicities.len() {
            return Err(Error::Precondition(
                "ordinates and multiplicities differ in length".into(),
            ));
        }
        if multiplicities.iter().any(|&m| m == 0) {
            return Err(Error::Precondition("multiplicity must be positive".into()));
        }
        if ordinates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("ordinates must be strictly increasing".into()));
        }
        if let (Some(&first), Some(&last)) = (ordinates.first(), ordinates.last()) {
            if first <= 0.0 || last > height_bound {
                return Err(Error::Precondition(format!(
                    "ordinates must lie in (0, {height_bound}]"
                )));
            }
        }
        Ok(ZeroTable {
            height_bound,
            ordinates,
            multiplicities,
            source,
        })
    }

    pub fn height_bound(&self) -> f64 {
        self.height_bound
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// (γ, m_γ) pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, u32)> + '_ {
        self.ordinates
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
    }

    /// Number of zeros counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    /// The same table cut down to ordinates ≤ `height`.
    pub fn truncated(&self, height: f64) -> ZeroTable {
        let end = self.ordinates.partition_point(|&g| g <= height);
        ZeroTable {
            height_bound: height.min(self.height_bound),
            ordinates: self.ordinates[..end].to_vec(),
            multiplicities: self.multiplicities[..end].to_vec(),
            source: self.source,
        }
    }

    /// |count − N(T)| for the smooth count including the 7/8 constant.
    pub fn count_discrepancy(&self) -> f64 {
        (self.count_with_multiplicity() as f64 - smooth_count(self.height_bound)).abs()
    }

    pub fn passes_count_gate(&self) -> bool {
        self.count_discrepancy() <= COUNT_TOLERANCE
    }

    /// Serialized `zeros_v1` text.
    pub fn to_cache_string(&self) -> String {
        let mut out = format!(
            "# zeros_v1 T={} count={}\n",
            self.height_bound,
            self.ordinates.len()
        );
        let simple = self.multiplicities.iter().all(|&m| m == 1);
        for (g, m) in self.iter() {
            out.push_str(&format_significant(g, 12));
            if !simple {
                let _ = write!(out, ",{m}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_cache_str(text: &str, origin: &Path) -> Result<Self> {
        let bad = |message: String| Error::Cache {
            path: origin.to_path_buf(),
            message,
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
        let rest = header
            .strip_prefix("# zeros_v1 ")
            .ok_or_else(|| bad(format!("bad header {header:?}")))?;
        let mut height = None;
        let mut count = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("T", v)) => height = v.parse::<f64>().ok(),
                Some(("count", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(bad(format!("unknown header field {field:?}"))),
            }
        }
        let height = height.ok_or_else(|| bad("header lacks T".into()))?;
        let count = count.ok_or_else(|| bad("header lacks count".into()))?;
        let mut ordinates = Vec::with_capacity(count);
        let mut multiplicities = Vec::with_capacity(count);
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (g, m) = match line.split_once(',') {
                Some((g, m)) => (g, m.trim().parse::<u32>().ok()),
                None => (line, Some(1)),
            };
            let g = g
                .trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("line {}: {e}", lineno + 2)))?;
            let m = m.ok_or_else(|| bad(format!("line {}: bad multiplicity", lineno + 2)))?;
            ordinates.push(g);
            multiplicities.push(m);
        }
        if ordinates.len() != count {
            return Err(bad(format!(
                "header says {count} ordinates, found {}",
                ordinates.len()
            )));
        }
        ZeroTable::new(height, ordinates, multiplicities, ZeroSource::Loaded)
            .map_err(|e| bad(e.to_string()))
    }

    pub fn write_cache(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("csv.tmp");
        fs::write(&tmp, self.to_cache_string())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read_cache(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_cache_str(&text, path)
    }
}

/// `x` as a plain decimal with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let int_digits = x.abs().log10().floor() as i64 + 1;
    let decimals = (digits as i64 - int_digits).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Riemann–Siegel theta θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// Hardy's function Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> Result<f64> {
    hardy_z_complex(t).map(|z| z.re)
}

/// e^{iθ(t)} ζ(1/2 + it) before taking the real part.
pub fn hardy_z_complex(t: f64) -> Result<Complex64> {
    if !(t >= 0.0) {
        return Err(Error::Precondition(format!("hardy_z needs t >= 0, got {t}")));
    }
    if t > MAX_HEIGHT {
        return Err(Error::AccuracyNotReached {
            function: "hardy_z",
            terms: 0,
        });
    }
    let theta = riemann_siegel_theta(t)?;
    let z = zeta(Complex64::new(0.5, t), &EvalOptions::default())?;
    Ok(Complex64::from_polar(1.0, theta) * z)
}

/// Main term (T/2π) log(T/2π) − T/2π of the zero count.
pub fn zero_count_estimate(height: f64) -> Result<f64> {
    if !(height > 2.0 * PI * std::f64::consts::E) {
        return Err(Error::Precondition(format!(
            "zero_count_estimate needs T > 2πe, got {height}"
        )));
    }
    Ok(main_term(height))
}

fn main_term(height: f64) -> f64 {
    let x = height / (2.0 * PI);
    x * x.ln() - x
}

/// Main term plus the 7/8 constant.
pub fn smooth_count(height: f64) -> f64 {
    if height <= 0.0 {
        return 0.0;
    }
    main_term(height) + 7.0 / 8.0
}

/// Locate every zero 0 < γ ≤ `height` by sign changes of Z.
pub fn find_zeros(height: f64) -> Result<ZeroTable> {
    if !(height >= 10.0) {
        return Err(Error::Precondition(format!("find_zeros needs T >= 10, got {height}")));
    }
    if height > MAX_HEIGHT {
        return Err(Error::Range {
            what: "T",
            value: height,
            range: "[10, 1e4]",
        });
    }
    let mut step = GRID_STEP;
    let mut last = None;
    for attempt in 0..=MAX_HALVINGS {
        let table = scan(height, step)?;
        debug!(
            "scan T={height} step={step}: {} zeros, N(T)={:.3}",
            table.len(),
            smooth_count(height)
        );
        if table.passes_count_gate() {
            return Ok(table);
        }
        if attempt < MAX_HALVINGS {
            warn!(
                "zero count {} far from N({height}) = {:.2}; halving grid step to {}",
                table.len(),
                smooth_count(height),
                step / 2.0
            );
        }
        last = Some(table.len());
        step /= 2.0;
    }
    Err(Error::MissedZero {
        height,
        found: last.unwrap_or(0),
        expected: smooth_count(height),
    })
}

fn scan(height: f64, step: f64) -> Result<ZeroTable> {
    let n = (height / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(height)).collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| hardy_z(t))
        .collect::<Result<_>>()?;
    let brackets: Vec<(f64, f64, f64, f64)> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| (v[0] < 0.0) != (v[1] < 0.0))
        .map(|(t, v)| (t[0], t[1], v[0], v[1]))
        .collect();
    let ordinates: Vec<f64> = brackets
        .par_iter()
        .map(|&(a, b, za, zb)| refine(a, b, za, zb))
        .collect::<Result<_>>()?;
    for &g in &ordinates {
        flag_possible_multiple_zero(g);
    }
    let ones = vec![1; ordinates.len()];
    ZeroTable::new(height, ordinates, ones, ZeroSource::Computed)
}

/// Illinois-modified regula falsi on a sign-change bracket.
fn refine(mut a: f64, mut b: f64, mut za: f64, mut zb: f64) -> Result<f64> {
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= REFINE_WIDTH * b.max(1.0) {
            break;
        }
        let mut c = (a * zb - b * za) / (zb - za);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let zc = hardy_z(c)?;
        if zc == 0.0 {
            return Ok(c);
        }
        if (zc < 0.0) == (za < 0.0) {
            a = c;
            za = zc;
            if side == -1 {
                zb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            zb = zc;
            if side == 1 {
                za *= 0.5;
            }
            side = 1;
        }
    }
    Ok(if za.abs() < zb.abs() { a } else { b })
}

fn flag_possible_multiple_zero(gamma: f64) {
    let h = 1e-4;
    if let (Ok(p), Ok(m)) = (hardy_z(gamma + h), hardy_z(gamma - h)) {
        let slope = (p - m) / (2.0 * h);
        if slope.abs() < 1e-6 {
            warn!("|Z'({gamma})| = {slope:.2e}: possible multiple zero");
        }
    }
}

/// Load `zeros_v1.csv` from `dir` if it reaches `height`, otherwise compute
/// and rewrite it. `recompute` forces regeneration.
pub fn load_or_compute(dir: &Path, height: f64, recompute: bool) -> Result<ZeroTable> {
    let path = dir.join(CACHE_FILE);
    if !recompute && path.exists() {
        let cached = ZeroTable::read_cache(&path)?;
        if cached.height_bound() >= height {
            return Ok(cached.truncated(height));
        }
    }
    let table = find_zeros(height)?;
    let lock = CacheLock::acquire(dir)?;
    table.write_cache(&path)?;
    drop(lock);
    Ok(table)
}

/// Exclusive lock file guarding writes to the cache directory.
struct CacheLock {
    path: std::path::PathBuf,
}

impl CacheLock {
    fn acquire(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join("zeros_v1.lock");
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(CacheLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(Error::Cache {
                path,
                message: "another process holds the cache lock".into(),
            }),
            Err(e) => Err(e.into()),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}
