//! Verifiers that evaluate both sides of an inequality on a grid of `t`, at two resolutions, and
//! turn the ratios into a verdict.
//!
//! "LHS ≲ RHS" is operationalized as a bounded ratio whose maximum moves by at most 50% when the
//! resolution doubles. A ratio "tends to 0 / ∞" when it is strictly monotone as `t` decreases over
//! at least three decades and changes by a factor of at least two.

mod bmo;
mod derivatives;
mod devore;
mod extrapolation;
mod kolyada;

pub use bmo::{
    beta_interval, staircase_separation, verify_bds_log, verify_equivalence, verify_fs_limiting, verify_gj, verify_herz, BdsConfig, BdsProbe, BetaProfile,
    EquivalenceConfig, FsConfig, GjConfig, HerzConfig, SeparationConfig,
};
pub use derivatives::{compare_i_j, der_gate, der_terms, gradient_rearrangement, verify_devore_der, CompareConfig, DerConfig};
pub use devore::{verify_devore_lorentz, verify_devore_sharpness, verify_moduli_coefficients, DevoreConfig, ModuliConfig, SharpnessConfig};
pub use extrapolation::{extrapolation_fit, ExtrapolationConfig};
pub use kolyada::{verify_kolyada_lerner, KolyadaConfig};

use crate::error::{Error, Result};
use crate::gmfourier::{gm_certify, synthesize, PowerSvCoefficients, SeriesKind, SlowlyVarying};
use crate::grid::{make_grid_function, GridFunction, PeriodicGridFunction};
use crate::norms::LzParams;
use crate::radial::RadialProfile;
use crate::rearrange::RearrangementProfile;
use crate::smoothness::{shift_norms, Shiftable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const REPORT_SCHEMA: u32 = 1;
/// Largest relative change of a band constant under one resolution doubling.
pub const STABILITY_TOLERANCE: f64 = 0.5;
/// Minimum span, in decades of `t`, for a trend verdict.
pub const TREND_DECADES: f64 = 3.0;
/// Minimum total change of the ratio for a trend verdict.
pub const TREND_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsWithStableConstant,
    RatioVanishes,
    RatioDiverges,
    Inconclusive,
}

/// What the statement under test predicts for `lhs/rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Bounded,
    TwoSided,
    Vanishes,
    Diverges,
}

/// Behaviour of the ratio as `t` decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Flat,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    /// least-squares slope of `log ratio` against `log t`
    pub slope: f64,
    pub monotonicity: Monotonicity,
    pub decades: f64,
    /// ratio at the smallest `t` over the ratio at the largest
    pub total_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub schema: u32,
    pub theorem_id: String,
    pub t_grid: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `lhs/rhs`, `None` where `rhs = 0`
    pub ratio: Vec<Option<f64>>,
    pub excluded_points: usize,
    /// largest ratio at the base resolution
    pub band_constant: f64,
    /// smallest ratio at the base resolution
    pub band_lower: f64,
    pub trend: Trend,
    /// `band_constant` at `N` and `2N`
    pub resolution_pair: Option<[f64; 2]>,
    pub expectation: Expectation,
    pub verdict: Verdict,
    /// every left-hand side vanished
    pub trivial: bool,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub companions: Vec<InequalityReport>,
    pub config: serde_json::Value,
}

impl InequalityReport {
    /// Whether the verdict is the one the statement predicts.
    pub fn consistent(&self) -> bool {
        match self.expectation {
            Expectation::Bounded | Expectation::TwoSided => self.verdict == Verdict::HoldsWithStableConstant,
            Expectation::Vanishes => self.verdict == Verdict::RatioVanishes,
            Expectation::Diverges => self.verdict == Verdict::RatioDiverges,
        }
    }

    /// `consistent` for this report and all companions.
    pub fn all_consistent(&self) -> bool {
        self.consistent() && self.companions.iter().all(|c| c.all_consistent())
    }

    /// Rows `t,lhs,rhs`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,lhs,rhs\n");
        for ((t, l), r) in self.t_grid.iter().zip(&self.lhs).zip(&self.rhs) {
            s.push_str(&format!("{t},{l},{r}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }
}

/// Both sides of an inequality on a grid of `t`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sides {
    pub t: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl Sides {
    pub fn new(t: Vec<f64>, lhs: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if t.len() != lhs.len() || t.len() != rhs.len() {
            return Err(Error::LengthMismatch { expected: t.len(), got: lhs.len().min(rhs.len()) });
        }
        for (i, v) in lhs.iter().chain(&rhs).enumerate() {
            if !(v.is_finite() && *v >= 0.0) {
                return Err(Error::NonFinite { index: i % t.len().max(1), value: *v });
            }
        }
        Ok(Sides { t, lhs, rhs })
    }

    pub fn ratios(&self) -> Vec<Option<f64>> {
        self.lhs.iter().zip(&self.rhs).map(|(l, r)| (*r > 0.0).then(|| l / r)).collect()
    }

    fn band(&self) -> (f64, f64) {
        let rs: Vec<f64> = self.ratios().into_iter().flatten().collect();
        let hi = rs.iter().cloned().fold(0.0, f64::max);
        let lo = rs.iter().cloned().fold(f64::INFINITY, f64::min);
        (hi, if lo.is_finite() { lo } else { 0.0 })
    }

    fn trivial(&self) -> bool {
        self.lhs.iter().all(|&l| l == 0.0)
    }
}

/// Trend of `ratio` as `t` decreases; points without a ratio are skipped.
pub fn trend(t: &[f64], ratio: &[Option<f64>]) -> Trend {
    let mut pts: Vec<(f64, f64)> = t.iter().zip(ratio).filter_map(|(&t, r)| r.filter(|r| *r > 0.0).map(|r| (t, r))).collect();
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    if pts.len() < 2 {
        return Trend { slope: 0.0, monotonicity: Monotonicity::Flat, decades: 0.0, total_factor: 1.0 };
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.iter().map(|(t, r)| (t.ln(), r.ln())).unzip();
    let slope = least_squares_slope(&xs, &ys);
    let inc = pts.windows(2).all(|w| w[1].1 > w[0].1);
    let dec = pts.windows(2).all(|w| w[1].1 < w[0].1);
    let flat = pts.windows(2).all(|w| (w[1].1 - w[0].1).abs() <= 1e-12 * w[0].1);
    let monotonicity = if flat {
        Monotonicity::Flat
    } else if inc {
        Monotonicity::Increasing
    } else if dec {
        Monotonicity::Decreasing
    } else {
        Monotonicity::Mixed
    };
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    Trend { slope, monotonicity, decades: (first.0 / last.0).log10(), total_factor: last.1 / first.1 }
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

fn trend_direction(tr: &Trend) -> Option<Verdict> {
    if tr.decades + 1e-9 < TREND_DECADES {
        return None;
    }
    match tr.monotonicity {
        Monotonicity::Increasing if tr.total_factor >= TREND_FACTOR => Some(Verdict::RatioDiverges),
        Monotonicity::Decreasing if tr.total_factor <= 1.0 / TREND_FACTOR => Some(Verdict::RatioVanishes),
        _ => None,
    }
}

fn within(a: f64, b: f64) -> bool {
    (b - a).abs() <= STABILITY_TOLERANCE * a.abs()
}

/// Assembles a report from the base sides and, when available, the sides at twice the resolution.
pub fn build_report<C: Serialize>(theorem_id: &str, expectation: Expectation, base: &Sides, refined: Option<&Sides>, config: &C) -> InequalityReport {
    let ratio = base.ratios();
    let excluded_points = ratio.iter().filter(|r| r.is_none()).count();
    let (band_constant, band_lower) = base.band();
    let tr = trend(&base.t, &ratio);
    let trivial = base.trivial() && refined.is_none_or(|r| r.trivial());
    let mut notes = Vec::new();
    if base.lhs.iter().zip(&base.rhs).any(|(l, r)| *r == 0.0 && *l > 0.0) {
        notes.push("left-hand side is positive where the right-hand side vanishes".to_string());
    }
    let resolution_pair = refined.map(|r| [band_constant, r.band().0]);
    let direction = trend_direction(&tr);
    let verdict = if trivial {
        notes.push("trivial: the left-hand side vanishes identically".to_string());
        Verdict::HoldsWithStableConstant
    } else {
        match expectation {
            Expectation::Bounded | Expectation::TwoSided => {
                let wrong_way = match (expectation, direction) {
                    (_, Some(Verdict::RatioDiverges)) => direction,
                    (Expectation::TwoSided, Some(Verdict::RatioVanishes)) => direction,
                    _ => None,
                };
                if let Some(v) = wrong_way {
                    v
                } else if ratio.iter().all(|r| r.is_none()) {
                    Verdict::Inconclusive
                } else {
                    match refined {
                        Some(r) => {
                            let (hi2, lo2) = r.band();
                            let upper_ok = within(band_constant, hi2);
                            let lower_ok = expectation == Expectation::Bounded || (band_lower > 0.0 && within(band_lower, lo2));
                            if upper_ok && lower_ok {
                                Verdict::HoldsWithStableConstant
                            } else {
                                notes.push("band constant moved by more than 50% under refinement".to_string());
                                Verdict::Inconclusive
                            }
                        }
                        None => {
                            notes.push("resolution-free evaluation: no refinement check".to_string());
                            Verdict::HoldsWithStableConstant
                        }
                    }
                }
            }
            Expectation::Vanishes | Expectation::Diverges => direction.unwrap_or(Verdict::Inconclusive),
        }
    };
    InequalityReport {
        schema: REPORT_SCHEMA,
        theorem_id: theorem_id.to_string(),
        t_grid: base.t.clone(),
        lhs: base.lhs.clone(),
        rhs: base.rhs.clone(),
        ratio,
        excluded_points,
        band_constant,
        band_lower,
        trend: tr,
        resolution_pair,
        expectation,
        verdict,
        trivial,
        metrics: BTreeMap::new(),
        notes,
        companions: Vec::new(),
        config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    }
}

/// Coefficients of a Fourier test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CoefficientFamily {
    /// `a_n = n^{-1+1/p} b(c·n)`
    PowerSv { p: f64, sv: SlowlyVarying },
    /// `a_n = n^{-κ}`
    Power { kappa: f64 },
}

impl CoefficientFamily {
    pub fn coefficients(&self, n: usize) -> Vec<f64> {
        match self {
            CoefficientFamily::PowerSv { p, sv } => PowerSvCoefficients::new(*p, *sv, 0).to_vec(n),
            CoefficientFamily::Power { kappa } => (1..=n).map(|k| (k as f64).powf(-kappa)).collect(),
        }
    }
}

/// Closed-form test functions; each can be sampled at any resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Zero,
    Constant {
        c: f64,
    },
    /// `|log |x||`
    LogAbs,
    /// `|x|^α`
    Power {
        alpha: f64,
    },
    /// indicator of `|x| ≤ radius`
    Ball {
        radius: f64,
    },
    /// `cos(freq · x_1)`
    Cosine {
        freq: f64,
    },
    /// piecewise constant on `pieces^d` equal blocks with seeded uniform values in `[-1, 1]`
    RandomSteps {
        seed: u64,
        pieces: usize,
    },
    /// `g(|x|)` for a radial profile
    Radial {
        profile: RadialProfile,
    },
    /// Decreasing staircase on the domain, parametrized by `u = (x − a)/(b − a)`: `log(1/t)` on
    /// `(0, t/2]`, linear down to 1 on `(t/2, t)`, zero afterwards.
    Staircase {
        t: f64,
    },
    /// Cosine or sine series on `[0, 2π)` with `N/4` terms at `N` samples.
    Fourier {
        coefficients: CoefficientFamily,
        #[serde(default = "cosine")]
        series: SeriesKind,
    },
}

fn cosine() -> SeriesKind {
    SeriesKind::Cosine
}
fn one() -> usize {
    1
}
fn unit_domain() -> (f64, f64) {
    (-1.0, 1.0)
}

/// A test function with its dimension and domain `[a, b]^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(default = "one")]
    pub dim: usize,
    #[serde(default = "unit_domain")]
    pub domain: (f64, f64),
}

impl FunctionSpec {
    pub fn new(shape: Shape, dim: usize) -> Self {
        FunctionSpec { shape, dim, domain: unit_domain() }
    }

    pub fn on(shape: Shape, dim: usize, domain: (f64, f64)) -> Self {
        FunctionSpec { shape, dim, domain }
    }

    pub fn default_n(&self) -> usize {
        if self.is_periodic() {
            8192
        } else if self.dim == 2 {
            256
        } else {
            1024
        }
    }

    /// Samples on `n^d` cells; Fourier shapes live on `[0, 2π)` whatever the domain says.
    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        if let Shape::Fourier { .. } = self.shape {
            return Ok(self.periodic(n)?.to_grid());
        }
        if let Shape::Radial { profile } = &self.shape {
            if profile.dim() != self.dim {
                return Err(Error::BadDimension(profile.dim()));
            }
            return crate::radial::radial_to_grid(profile, n, self.domain);
        }
        let (a, b) = self.domain;
        let dim = self.dim;
        let radius = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
        match &self.shape {
            Shape::Zero => make_grid_function(dim, n, self.domain, |_| 0.0),
            Shape::Constant { c } => make_grid_function(dim, n, self.domain, |_| *c),
            Shape::LogAbs => make_grid_function(dim, n, self.domain, |x| radius(x).ln().abs()),
            Shape::Power { alpha } => make_grid_function(dim, n, self.domain, |x| radius(x).powf(*alpha)),
            Shape::Ball { radius: r } => make_grid_function(dim, n, self.domain, |x| if radius(x) <= *r { 1.0 } else { 0.0 }),
            Shape::Cosine { freq } => make_grid_function(dim, n, self.domain, |x| (freq * x[0]).cos()),
            Shape::RandomSteps { seed, pieces } => {
                let pieces = (*pieces).max(1);
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let table: Vec<f64> = (0..pieces.pow(dim as u32)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                let block = |v: f64| (((v - a) / (b - a) * pieces as f64) as usize).min(pieces - 1);
                make_grid_function(dim, n, self.domain, |x| {
                    let i = block(x[0]) + if dim == 2 { block(x[1]) * pieces } else { 0 };
                    table[i]
                })
            }
            Shape::Staircase { t } => {
                let t = *t;
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::OutOfRange(format!("staircase parameter must lie in (0,1), got {t}")));
                }
                let l = -t.ln();
                make_grid_function(dim, n, self.domain, |x| {
                    let u = (x[0] - a) / (b - a);
                    if u <= t / 2.0 {
                        l
                    } else if u < t {
                        (1.0 - 2.0 * (1.0 - 1.0 / l) * (u - t / 2.0) / t) * l
                    } else {
                        0.0
                    }
                })
            }
            Shape::Radial { .. } | Shape::Fourier { .. } => unreachable!(),
        }
    }

    /// The torus samples of a Fourier shape.
    pub fn periodic(&self, m: usize) -> Result<PeriodicGridFunction> {
        match &self.shape {
            Shape::Fourier { coefficients, series } => {
                let seq = gm_certify(&coefficients.coefficients((m / 4).max(1)), *series)?;
                synthesize(&seq, m)
            }
            _ => Err(Error::Other("only Fourier shapes live on the torus".into())),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.shape, Shape::Fourier { .. })
    }

    pub fn domain_measure(&self) -> f64 {
        if self.is_periodic() {
            2.0 * std::f64::consts::PI
        } else {
            (self.domain.1 - self.domain.0).powi(self.dim as i32)
        }
    }
}

/// The standing one-dimensional test set on `[-1, 1]`: singular, smooth, discontinuous and
/// `random` seeded step functions.
pub fn standard_test_set(random: usize, seed: u64) -> Vec<FunctionSpec> {
    let mut set = vec![
        FunctionSpec::new(Shape::LogAbs, 1),
        FunctionSpec::new(Shape::Power { alpha: -0.25 }, 1),
        FunctionSpec::new(Shape::Power { alpha: 0.5 }, 1),
        FunctionSpec::new(Shape::Ball { radius: 0.5 }, 1),
        FunctionSpec::new(Shape::Cosine { freq: 3.0 }, 1),
    ];
    set.extend((0..random as u64).map(|i| FunctionSpec::new(Shape::RandomSteps { seed: seed.wrapping_add(i), pieces: 16 }, 1)));
    set
}

/// The two-dimensional counterpart on `[-1, 1]^2`.
pub fn standard_test_set_2d(random: usize, seed: u64) -> Vec<FunctionSpec> {
    let mut set = vec![FunctionSpec::new(Shape::LogAbs, 2), FunctionSpec::new(Shape::Ball { radius: 0.5 }, 2)];
    set.extend((0..random as u64).map(|i| FunctionSpec::new(Shape::RandomSteps { seed: seed.wrapping_add(i), pieces: 8 }, 2)));
    set
}

/// Dyadic measures `2^{-j}` in `[4 · cell_measure, measure/4]`, largest first.
pub fn default_measure_grid(dim: usize, n: usize, measure: f64) -> Vec<f64> {
    let cell = measure / (n.pow(dim as u32)) as f64;
    let (lo, hi) = (4.0 * cell * (1.0 - 1e-12), measure / 4.0 * (1.0 + 1e-12));
    (-60..60).rev().map(|j| 2f64.powi(j)).filter(|&t| t >= lo && t <= hi).collect()
}

/// The rearrangement rescaled to a domain of unit measure.
pub(crate) fn normalized(rp: &RearrangementProfile, measure: f64) -> RearrangementProfile {
    let bp: Vec<f64> = rp.breakpoints().iter().map(|b| b / measure).collect();
    RearrangementProfile::new(bp, rp.values().to_vec()).expect("scaling keeps a profile valid")
}

pub(crate) fn centered(f: &GridFunction) -> GridFunction {
    let m = f.mean();
    f.map(|v| v - m)
}

/// `ω_k(f, ·)` as the step function it is on a grid: it jumps only at shift lengths.
pub(crate) struct StepModulus {
    jumps: Vec<(f64, f64)>,
}

impl StepModulus {
    pub(crate) fn new(f: &dyn Shiftable, max_t: f64, params: &LzParams, k: usize) -> Result<Self> {
        let mut best = 0.0f64;
        let jumps = shift_norms(f, max_t, params, k)?
            .into_iter()
            .map(|(len, v)| {
                best = best.max(v);
                (len, best)
            })
            .collect();
        Ok(StepModulus { jumps })
    }

    pub(crate) fn at(&self, u: f64) -> f64 {
        let j = self.jumps.partition_point(|(len, _)| *len <= u * (1.0 + 1e-12));
        if j == 0 {
            0.0
        } else {
            self.jumps[j - 1].1
        }
    }

    /// `sup_{t ≤ u < hi} u^{-a} ω(u)`, attained at `t` or at a jump.
    pub(crate) fn sup_weighted(&self, t: f64, hi: f64, a: f64) -> f64 {
        let mut best = t.powf(-a) * self.at(t);
        for &(len, w) in &self.jumps {
            if len > t && len < hi {
                best = best.max(len.powf(-a) * w);
            }
        }
        best
    }
}

/// Runs `eval` at `n` and `2n`.
pub(crate) fn at_two_resolutions<T, F>(n: usize, eval: F) -> Result<(T, T)>
where
    F: Fn(usize) -> Result<T>,
{
    Ok((eval(n)?, eval(2 * n)?))
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n.is_power_of_two() && n >= 4 {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}
