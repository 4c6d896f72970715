//! Adaptive Gauss–Kronrod quadrature on the real line with an optional
//! fitted log²t/t² tail.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::ComplexKahanSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Seed panel width; below the mean zero gap at the heights in use.
pub const SEED_WIDTH: f64 = 0.5;
/// Bins in the tail-fit window.
pub const FIT_BINS: usize = 64;
/// Minimum span for the tail-fit window [span/2, span].
pub const MIN_FIT_SPAN: f64 = 50.0;
const FIT_RESIDUAL_LIMIT: f64 = 0.3;
const TAIL_MARGIN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// C·log²t/t² fitted on [span/2, span].
    Log2OverT,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub span: f64,
    pub rel_tol: f64,
    /// Panels whose error is below `abs_tol × width/total width` are
    /// accepted regardless of `rel_tol`.
    pub abs_tol: f64,
    pub tail_model: TailModel,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            span: 500.0,
            rel_tol: 1e-6,
            abs_tol: 1e-13,
            tail_model: TailModel::Log2OverT,
            max_subdivisions: 1_000_000,
        }
    }
}

impl QuadConfig {
    pub fn with_span(span: f64) -> Self {
        QuadConfig {
            span,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.span > 0.0 && self.span.is_finite()) {
            return Err(Error::Precondition(format!("span must be positive, got {}", self.span)));
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Precondition("tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Precondition("max_subdivisions must be positive".into()));
        }
        if self.tail_model == TailModel::Log2OverT && self.span < MIN_FIT_SPAN {
            return Err(Error::FitFailure(format!(
                "span {} too small: the log²t/t² tail fit needs span >= {MIN_FIT_SPAN} \
                 so the window [span/2, span] lies in the decay region",
                self.span
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub core_err: f64,
    pub tail_value: Complex64,
    pub tail_err: f64,
    pub nodes_used: usize,
}

impl QuadResult {
    pub fn total(&self) -> Complex64 {
        self.value + self.tail_value
    }

    pub fn total_err(&self) -> f64 {
        self.core_err + self.tail_err
    }

    fn scaled(self, k: f64) -> QuadResult {
        QuadResult {
            value: self.value * k,
            core_err: self.core_err * k.abs(),
            tail_value: self.tail_value * k,
            tail_err: self.tail_err * k.abs(),
            nodes_used: self.nodes_used,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        kronrod += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kronrod * h;
    let err = ((kronrod - gauss) * h).norm() + 50.0 * f64::EPSILON * abs_sum * h.abs();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Precondition(format!("integrand not finite on [{a}, {b}]")));
    }
    Ok(Panel { a, b, value, err })
}

/// Adaptive integral over each segment of `breaks`, returned per segment.
fn integrate_segments<F>(f: &F, breaks: &[f64], cfg: &QuadConfig) -> Result<(Vec<Panel>, usize)>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let total_width = breaks.last().unwrap() - breaks[0];
    let mut seeds = Vec::new();
    for (seg, w) in breaks.windows(2).enumerate() {
        let pieces = ((w[1] - w[0]) / SEED_WIDTH).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / pieces as f64;
        for i in 0..pieces {
            let a = w[0] + i as f64 * h;
            let b = if i + 1 == pieces { w[1] } else { a + h };
            seeds.push((seg, a, b));
        }
    }
    let mut accepted: Vec<(usize, Panel)> = Vec::new();
    let mut pending = seeds;
    let mut evaluated = 0usize;
    while !pending.is_empty() {
        evaluated += pending.len();
        let panels: Vec<(usize, Panel)> = pending
            .par_iter()
            .map(|&(seg, a, b)| gk15(f, a, b).map(|p| (seg, p)))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        let over_budget = evaluated > cfg.max_subdivisions;
        for (seg, p) in panels {
            let width = p.b - p.a;
            let floor = cfg.abs_tol * width / total_width;
            let done = p.err <= cfg.rel_tol * p.value.norm()
                || p.err <= floor
                || width < 1e-9 * total_width.max(1.0);
            if done || over_budget {
                accepted.push((seg, p));
            } else {
                let m = 0.5 * (p.a + p.b);
                next.push((seg, p.a, m));
                next.push((seg, m, p.b));
            }
        }
        if over_budget {
            let (partial, error) = merge(&accepted);
            return Err(Error::BudgetExceeded {
                subdivisions: evaluated,
                partial: partial.re,
                error,
            });
        }
        pending = next;
    }
    accepted.sort_by(|x, y| x.1.a.partial_cmp(&y.1.a).unwrap());
    let mut out: Vec<Panel> = breaks
        .windows(2)
        .map(|w| Panel {
            a: w[0],
            b: w[1],
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
        })
        .collect();
    let mut sums: Vec<ComplexKahanSum> = vec![ComplexKahanSum::new(); out.len()];
    for (seg, p) in &accepted {
        sums[*seg].add(p.value);
        out[*seg].err += p.err;
    }
    for (o, s) in out.iter_mut().zip(sums) {
        o.value = s.value();
    }
    Ok((out, evaluated * 15))
}

fn merge(panels: &[(usize, Panel)]) -> (Complex64, f64) {
    let mut s = ComplexKahanSum::new();
    let mut e = 0.0;
    for (_, p) in panels {
        s.add(p.value);
        e += p.err;
    }
    (s.value(), e)
}

/// ∫_{span}^{∞} log²t/t² dt = (log²S + 2 log S + 2)/S.
pub fn log2_tail(span: f64) -> f64 {
    let l = span.ln();
    (l * l + 2.0 * l + 2.0) / span
}

fn log2_primitive(t: f64) -> f64 {
    -log2_tail(t)
}

/// Least-squares C for bin integrals ≈ C ∫_bin log²t/t² dt, with the
/// relative residual of the fit.
pub fn fit_log2_constant(bins: &[(f64, f64, Complex64)]) -> (Complex64, f64) {
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    let models: Vec<f64> = bins
        .iter()
        .map(|&(a, b, _)| log2_primitive(b) - log2_primitive(a))
        .collect();
    for (m, &(_, _, v)) in models.iter().zip(bins) {
        num += v * *m;
        den += m * m;
    }
    let c = num / den;
    let mut res = 0.0;
    let mut norm = 0.0;
    for (m, &(_, _, v)) in models.iter().zip(bins) {
        res += (v - c * *m).norm_sqr();
        norm += v.norm_sqr();
    }
    let rel = if norm > 0.0 { (res / norm).sqrt() } else { 0.0 };
    (c, rel)
}

struct Window {
    lo: usize,
    hi: usize,
}

fn window_breaks(span: f64, breaks: &mut Vec<f64>) -> Window {
    let lo = breaks.len() - 1;
    for j in 1..=FIT_BINS {
        breaks.push(0.5 * span + 0.5 * span * j as f64 / FIT_BINS as f64);
    }
    Window {
        lo,
        hi: breaks.len() - 1,
    }
}

fn fitted_tail(panels: &[Panel], w: &Window, span: f64) -> Result<(Complex64, f64)> {
    let bins: Vec<(f64, f64, Complex64)> =
        panels[w.lo..w.hi].iter().map(|p| (p.a, p.b, p.value)).collect();
    let (c, residual) = fit_log2_constant(&bins);
    if residual > FIT_RESIDUAL_LIMIT {
        return Err(Error::FitFailure(format!(
            "log²t/t² fit on the window [{}, {span}] left relative residual {residual:.3} \
             (limit {FIT_RESIDUAL_LIMIT}); increase span",
            span / 2.0
        )));
    }
    let tail = c * log2_tail(span);
    Ok((tail, TAIL_MARGIN * tail.norm()))
}

/// ∫_{−span}^{span} f, plus fitted tails on both sides when requested.
pub fn integrate_line<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    cfg.validate()?;
    let s = cfg.span;
    match cfg.tail_model {
        TailModel::None => {
            let (panels, nodes) = integrate_segments(&f, &[-s, s], cfg)?;
            Ok(QuadResult {
                value: panels[0].value,
                core_err: panels[0].err,
                tail_value: Complex64::new(0.0, 0.0),
                tail_err: 0.0,
                nodes_used: nodes,
            })
        }
        TailModel::Log2OverT => {
            // left window mirrored: integrate g(t) = f(−t) on [span/2, span]
            let g = |t: f64| f(-t);
            let mut breaks = vec![-0.5 * s, 0.5 * s];
            let wr = window_breaks(s, &mut breaks);
            let (right, n1) = integrate_segments(&f, &breaks, cfg)?;
            let mut lbreaks = vec![0.5 * s];
            let wl = window_breaks(s, &mut lbreaks);
            let (left, n2) = integrate_segments(&g, &lbreaks, cfg)?;
            let (tr, er) = fitted_tail(&right, &wr, s)?;
            let (tl, el) = fitted_tail(&left, &wl, s)?;
            let value = sum_panels(&right) + sum_panels(&left);
            let core_err = right.iter().chain(&left).map(|p| p.err).sum();
            Ok(QuadResult {
                value,
                core_err,
                tail_value: tr + tl,
                tail_err: er + el,
                nodes_used: n1 + n2,
            })
        }
    }
}

/// ∫_0^{span} f plus a fitted tail beyond span (one side only).
pub fn integrate_half_line<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    cfg.validate()?;
    let s = cfg.span;
    match cfg.tail_model {
        TailModel::None => {
            let (p, nodes) = integrate_segments(&f, &[0.0, s], cfg)?;
            Ok(QuadResult {
                value: p[0].value,
                core_err: p[0].err,
                tail_value: Complex64::new(0.0, 0.0),
                tail_err: 0.0,
                nodes_used: nodes,
            })
        }
        TailModel::Log2OverT => {
            let mut breaks = vec![0.0, 0.5 * s];
            let w = window_breaks(s, &mut breaks);
            let (panels, nodes) = integrate_segments(&f, &breaks, cfg)?;
            let (tail, tail_err) = fitted_tail(&panels, &w, s)?;
            Ok(QuadResult {
                value: sum_panels(&panels),
                core_err: panels.iter().map(|p| p.err).sum(),
                tail_value: tail,
                tail_err,
                nodes_used: nodes,
            })
        }
    }
}

fn sum_panels(p: &[Panel]) -> Complex64 {
    let mut s = ComplexKahanSum::new();
    p.iter().for_each(|x| s.add(x.value));
    s.value()
}

/// Fitted ∫_{|t|>span} |f|² summed over both sides.
pub fn tail_sq(f: impl Fn(f64) -> Result<Complex64> + Sync, cfg: &QuadConfig) -> Result<f64> {
    let cfg = QuadConfig {
        tail_model: TailModel::Log2OverT,
        ..*cfg
    };
    cfg.validate()?;
    let s = cfg.span;
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let g = |t: f64| Ok(Complex64::new(f(sign * t)?.norm_sqr(), 0.0));
        let mut breaks = vec![0.5 * s];
        let w = window_breaks(s, &mut breaks);
        let (panels, _) = integrate_segments(&g, &breaks, &cfg)?;
        total += fitted_tail(&panels, &w, s)?.0.re;
    }
    Ok(total)
}

/// ⟨f, g⟩ over [−span, span] with no extrapolated tail; the omitted part
/// is bounded by Cauchy–Schwarz from the fitted tails of |f|² and |g|².
/// Suited to oscillating products whose bins do not follow one model.
pub fn inner_product_bounded<F, G>(f: F, g: G, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
    G: Fn(f64) -> Result<Complex64> + Sync,
{
    cfg.validate()?;
    let core_cfg = QuadConfig {
        tail_model: TailModel::None,
        ..*cfg
    };
    let core = integrate_line(|t| Ok(f(t)? * g(t)?.conj()), &core_cfg)?;
    let bound = (tail_sq(&f, cfg)? * tail_sq(&g, cfg)?).sqrt();
    Ok(QuadResult {
        tail_err: bound,
        ..core
    })
}

/// ⟨f, g⟩ = ∫ f·conj(g) over the line.
pub fn inner_product_line<F, G>(f: F, g: G, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
    G: Fn(f64) -> Result<Complex64> + Sync,
{
    integrate_line(|t| Ok(f(t)? * g(t)?.conj()), cfg)
}

/// ∫ |f|² over the line for f with |f(−t)| = |f(t)|: twice the half line.
pub fn norm_sq_symmetric<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let half = integrate_half_line(|t| Ok(Complex64::new(f(t)?.norm_sqr(), 0.0)), cfg)?;
    Ok(half.scaled(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<F: Fn(f64) -> f64 + Sync>(f: F) -> impl Fn(f64) -> Result<Complex64> + Sync {
        move |t| Ok(Complex64::new(f(t), 0.0))
    }

    fn no_tail(span: f64) -> QuadConfig {
        QuadConfig {
            span,
            rel_tol: 1e-10,
            tail_model: TailModel::None,
            ..Default::default()
        }
    }

    #[test]
    fn gk15_is_exact_for_polynomials() {
        let f = real(|t| t.powi(20) - 3.0 * t.powi(7));
        let p = gk15(&f, -1.0, 1.0).unwrap();
        assert!((p.value.re - 2.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = integrate_line(real(|x| x * (-x * x).exp()), &no_tail(50.0)).unwrap();
        assert!(r.total().norm() < 1e-12);
    }

    #[test]
    fn lorentzian_core() {
        let span = 1e4;
        let r = integrate_line(real(|x| 1.0 / (1.0 + x * x)), &no_tail(span)).unwrap();
        let exact = 2.0 * span.atan();
        assert!((r.value.re - exact).abs() < 1e-9);
        assert!(r.core_err >= (r.value.re - exact).abs());
    }

    #[test]
    fn closed_form_tail_from_one() {
        assert!((log2_tail(1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_model_is_fitted_exactly() {
        let cfg = QuadConfig::with_span(200.0);
        let r = integrate_half_line(
            real(|t: f64| {
                let l = t.max(1.0).ln();
                3.0 * l * l / (t * t).max(1.0)
            }),
            &cfg,
        )
        .unwrap();
        assert!((r.tail_value.re - 3.0 * log2_tail(200.0)).abs() < 1e-9);
    }

    #[test]
    fn small_span_is_fit_failure() {
        let r = integrate_line(real(|x| 1.0 / (1.0 + x * x)), &QuadConfig::with_span(10.0));
        match r {
            Err(Error::FitFailure(m)) => assert!(m.contains("window")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exceeded_carries_partial() {
        let cfg = QuadConfig {
            max_subdivisions: 10,
            ..no_tail(50.0)
        };
        let r = integrate_line(real(|x| (x * x).sin()), &cfg);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn conjugate_symmetry() {
        let f = |t: f64| Ok(Complex64::new(0.0, t).exp() / (1.0 + t * t));
        let g = |t: f64| Ok(Complex64::new(1.0, 0.5 * t) / (2.0 + t * t));
        let cfg = no_tail(60.0);
        let a = inner_product_line(f, g, &cfg).unwrap().total();
        let b = inner_product_line(g, f, &cfg).unwrap().total();
        assert!((a - b.conj()).norm() < 1e-10);
    }

    #[test]
    fn deterministic() {
        let f = real(|x: f64| x.cos() / (1.0 + x * x));
        let a = integrate_line(&f, &no_tail(80.0)).unwrap();
        let b = integrate_line(&f, &no_tail(80.0)).unwrap();
        assert_eq!(a.value, b.value);
    }
}
