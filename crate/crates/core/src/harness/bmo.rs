//! Rearrangement inequalities for the sharp maximal function: the Herz bound, the equivalence
//! with the Strömberg–Jawerth–Torchinsky function, and the logarithmic refinements near BMO.

use super::devore::lorentz_piece;
use super::{
    at_two_resolutions, build_report, centered, check_n, default_measure_grid, least_squares_slope, normalized, Expectation, FunctionSpec, InequalityReport,
    Sides,
};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::maximal::{sharp_maximal, sjt_maximal, sjt_modified};
use crate::norms::{weighted_integral, weighted_sup, LzParams};
use crate::quad::simpson;
use crate::rearrange::{rearrange_exact, ClosedForm, Rearranged, RearrangementProfile};
use serde::{Deserialize, Serialize};

fn yes() -> bool {
    true
}

fn default_s() -> f64 {
    0.01
}

fn measure_grid(f: &FunctionSpec, n: usize) -> Vec<f64> {
    default_measure_grid(f.dim, n, f.domain_measure())
}

/// Measure fractions `t/|Q0|` of the default grid.
fn fraction_grid(f: &FunctionSpec, n: usize) -> Vec<f64> {
    let m = f.domain_measure();
    measure_grid(f, n).into_iter().map(|t| t / m).collect()
}

fn sharp_star(g: &GridFunction) -> RearrangementProfile {
    rearrange_exact(&sharp_maximal(g, true))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerzConfig {
    pub f: FunctionSpec,
    #[serde(default)]
    pub n: Option<usize>,
    /// measures `t`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    /// use the half-shifted cubes as well
    #[serde(default = "yes")]
    pub shifted: bool,
}

/// `(f#)*(t) ≲ f**(t)`.
pub fn verify_herz(cfg: &HerzConfig) -> Result<InequalityReport> {
    let n = cfg.n.unwrap_or_else(|| cfg.f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(|| measure_grid(&cfg.f, n));
    let (base, refined) = at_two_resolutions(n, |n| {
        let g = cfg.f.sample(n)?;
        let sharp = rearrange_exact(&sharp_maximal(&g, cfg.shifted));
        let fstar = rearrange_exact(&g);
        let lhs = ts.iter().map(|&t| sharp.eval(t)).collect();
        let rhs = ts.iter().map(|&t| fstar.integral(t) / t).collect();
        Sides::new(ts.clone(), lhs, rhs)
    })?;
    Ok(build_report("herz", Expectation::Bounded, &base, Some(&refined), cfg))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceConfig {
    pub f: FunctionSpec,
    #[serde(default = "default_s")]
    pub s: f64,
    #[serde(default)]
    pub n: Option<usize>,
    /// measures `t`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
}

/// `(f#)*(t) ≍ (M#_s f)**(t)` for small `s`.
pub fn verify_equivalence(cfg: &EquivalenceConfig) -> Result<InequalityReport> {
    let n = cfg.n.unwrap_or_else(|| cfg.f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(|| measure_grid(&cfg.f, n));
    let (base, refined) = at_two_resolutions(n, |n| {
        let g = cfg.f.sample(n)?;
        let sharp = sharp_star(&g);
        let sjt = rearrange_exact(&sjt_maximal(&g, cfg.s, true)?);
        let lhs = ts.iter().map(|&t| sharp.eval(t)).collect();
        let rhs = ts.iter().map(|&t| sjt.integral(t) / t).collect();
        Sides::new(ts.clone(), lhs, rhs)
    })?;
    Ok(build_report("sharp_vs_sjt", Expectation::TwoSided, &base, Some(&refined), cfg))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BdsProbe {
    /// exponent of the logarithm in the upper limit; defaults to `p/2`
    #[serde(default)]
    pub lambda: Option<f64>,
    /// `f*(t) = t^{-1/p}(1 − log t)^{-ε}`, `ε > 1/r`; defaults to `2/r`
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default = "probe_ts")]
    pub t: Vec<f64>,
}

fn probe_ts() -> Vec<f64> {
    (1..=20).map(|i| 10f64.powi(-3 * i)).collect()
}

impl Default for BdsProbe {
    fn default() -> Self {
        BdsProbe { lambda: None, epsilon: None, t: probe_ts() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BdsConfig {
    pub f: FunctionSpec,
    pub p: f64,
    pub r: f64,
    #[serde(default = "default_s")]
    pub s: f64,
    #[serde(default)]
    pub n: Option<usize>,
    /// measure fractions `t ∈ (0,1)`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub probe: Option<BdsProbe>,
}

/// `(∫_0^{t(1−log t)^{-p}} (u^{1/p}(f − f_Q)*(u))^r du/u)^{1/r} ≲ (∫_0^t (u^{1/p}(f#)*(u))^r du/u)^{1/r}`
/// with measures taken relative to `|Q0|`. Companions: the same with `M#_s f` on the right, and
/// two closed-form probes with the logarithm raised to `λ < p` (see [`bds_probe`]).
pub fn verify_bds_log(cfg: &BdsConfig) -> Result<InequalityReport> {
    let (p, r) = (cfg.p, cfg.r);
    if !(p > 0.0 && p.is_finite()) || !(r > 0.0) {
        return Err(Error::OutOfRange(format!("need 0 < p < ∞ and r > 0, got p={p} r={r}")));
    }
    let n = cfg.n.unwrap_or_else(|| cfg.f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(|| fraction_grid(&cfg.f, n));
    if ts.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::OutOfRange("t must lie in (0,1)".into()));
    }
    let measure = cfg.f.domain_measure();
    let eval = |n: usize| -> Result<(Sides, Sides)> {
        let g = cfg.f.sample(n)?;
        let osc = normalized(&rearrange_exact(&centered(&g)), measure);
        let sharp = normalized(&sharp_star(&g), measure);
        let sjt = normalized(&rearrange_exact(&sjt_maximal(&g, cfg.s, true)?), measure);
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        let mut rhs_s = Vec::new();
        for &t in &ts {
            let top = t * (1.0 - t.ln()).powf(-p);
            lhs.push(lorentz_piece(&osc, 1.0 / p, r, 0.0, top)?);
            rhs.push(lorentz_piece(&sharp, 1.0 / p, r, 0.0, t)?);
            rhs_s.push(lorentz_piece(&sjt, 1.0 / p, r, 0.0, t)?);
        }
        Ok((Sides::new(ts.clone(), lhs.clone(), rhs)?, Sides::new(ts.clone(), lhs, rhs_s)?))
    };
    let (base, refined) = at_two_resolutions(n, eval)?;
    let mut report = build_report("bds_log", Expectation::Bounded, &base.0, Some(&refined.0), cfg);
    report.companions.push(build_report("bds_log_sjt", Expectation::Bounded, &base.1, Some(&refined.1), cfg));
    if r.is_finite() {
        report.companions.extend(bds_probe(p, r, &cfg.probe.clone().unwrap_or_default(), cfg)?);
    }
    Ok(report)
}

/// For `g(u) = u^{-1/p}(1 − log u)^{-ε}`: `∫_0^s (u^{1/p} g(u))^r du/u = (1 − log s)^{1−εr}/(εr − 1)`.
fn probe_integral(s: f64, eps: f64, r: f64) -> f64 {
    ((1.0 - s.ln()).powf(1.0 - eps * r) / (eps * r - 1.0)).powf(1.0 / r)
}

fn loglog_slope(s: &Sides) -> f64 {
    let xs: Vec<f64> = s.t.iter().map(|t| (1.0 - t.ln()).ln()).collect();
    let ys: Vec<f64> = s.ratios().iter().map(|v| v.unwrap_or(f64::NAN).ln()).collect();
    least_squares_slope(&xs, &ys)
}

fn strictly_increasing(s: &Sides) -> bool {
    let mut ordered: Vec<(f64, f64)> = s.t.iter().cloned().zip(s.ratios().into_iter().flatten()).collect();
    ordered.sort_by(|a, b| b.0.total_cmp(&a.0));
    ordered.windows(2).all(|w| w[1].1 > w[0].1)
}

/// Two closed-form probes of the upper limit `t(1 − log t)^{-λ}` with `λ < p`.
///
/// On `(f − f_Q)* = u^{-1/p}(1 − log u)^{-ε}` both sides are of order `(1 − log t)^{1/r − ε}`, and
/// `(f#)* ≍ f**` there, so the ratio only creeps up to its limit. On `f = log(1/|x|)`, where
/// `(f − f_Q)* ≍ 1 − log u` and `(f#)* ≤ ‖f‖_BMO`, replacing `(f#)*` by the constant 1 only rescales
/// the right-hand side, and the ratio grows like `(1 − log t)^{1−λ/p}`.
fn bds_probe(p: f64, r: f64, probe: &BdsProbe, cfg: &BdsConfig) -> Result<Vec<InequalityReport>> {
    let lambda = probe.lambda.unwrap_or(p / 2.0);
    let eps = probe.epsilon.unwrap_or(2.0 / r);
    if !(eps * r > 1.0) {
        return Err(Error::OutOfRange(format!("the probe family needs ε > 1/r, got ε = {eps}")));
    }
    let top = |t: f64, lam: f64| t * (1.0 - t.ln()).powf(-lam);
    let power_log = |lam: f64| -> Result<Sides> {
        let lhs = probe.t.iter().map(|&t| probe_integral(top(t, lam), eps, r)).collect();
        let rhs = probe.t.iter().map(|&t| probe_integral(t, eps, r)).collect();
        Sides::new(probe.t.clone(), lhs, rhs)
    };
    let one = ClosedForm::new(1.0, |_| 1.0);
    let log_family = |lam: f64| -> Result<Sides> {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for &t in &probe.t {
            lhs.push(weighted_integral(&one, 1.0 / p, 1.0, r, 0.0, top(t, lam))?.powf(1.0 / r));
            rhs.push(lorentz_piece(&one, 1.0 / p, r, 0.0, t)?);
        }
        Sides::new(probe.t.clone(), lhs, rhs)
    };
    let mut out = Vec::new();
    for (id, sides, baseline, expect) in [
        ("bds_log_probe_power_log", power_log(lambda)?, power_log(p)?, Expectation::Bounded),
        ("bds_log_optimality_probe", log_family(lambda)?, log_family(p)?, Expectation::Diverges),
    ] {
        let mut report = build_report(id, expect, &sides, None, cfg);
        report.metrics.insert("lambda".into(), lambda);
        report.metrics.insert("loglog_slope".into(), loglog_slope(&sides));
        report.metrics.insert("strictly_increasing".into(), if strictly_increasing(&sides) { 1.0 } else { 0.0 });
        report.metrics.insert("loglog_slope_at_lambda_p".into(), loglog_slope(&baseline));
        if expect == Expectation::Bounded {
            report.metrics.insert("epsilon".into(), eps);
        }
        out.push(report);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationConfig {
    #[serde(default = "separation_t")]
    pub t: f64,
    #[serde(default = "separation_n")]
    pub n: usize,
}

fn separation_t() -> f64 {
    2f64.powi(-8)
}
fn separation_n() -> usize {
    4096
}

impl Default for SeparationConfig {
    fn default() -> Self {
        SeparationConfig { t: separation_t(), n: separation_n() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GjConfig {
    pub f: FunctionSpec,
    #[serde(default)]
    pub n: Option<usize>,
    /// measure fractions `t ∈ (0,1)`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    /// run the staircase separation experiment
    #[serde(default)]
    pub separation: Option<SeparationConfig>,
}

fn gj_ts() -> Vec<f64> {
    (2..=10).map(|j| 2f64.powi(-j)).collect()
}

/// `sup_{0<u<t} (1 − log u)^{-1} g**(u)` for a unit-measure step profile, sampled at every
/// breakpoint below `t` and at `t`.
fn log_damped_sup(g: &RearrangementProfile, t: f64) -> f64 {
    let mut best = 0.0f64;
    for &u in g.breakpoints().iter().skip(1).take_while(|&&u| u < t).chain(std::iter::once(&t)) {
        best = best.max(g.integral(u) / u / (1.0 - u.ln()));
    }
    best
}

/// `sup_{0<u<t} (1 − log u)^{-1}(f − f_Q)**(u) ≍ (1 − log t)^{-1} ‖M̄#_t f‖_∞`.
pub fn verify_gj(cfg: &GjConfig) -> Result<InequalityReport> {
    let n = cfg.n.unwrap_or_else(|| cfg.f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(gj_ts);
    if ts.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::OutOfRange("t must lie in (0,1)".into()));
    }
    let measure = cfg.f.domain_measure();
    let (base, refined) = at_two_resolutions(n, |n| {
        let g = cfg.f.sample(n)?;
        let osc = normalized(&rearrange_exact(&centered(&g)), measure);
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for &t in &ts {
            lhs.push(log_damped_sup(&osc, t));
            rhs.push(sjt_modified(&g, t, true)?.sup_norm() / (1.0 - t.ln()));
        }
        Sides::new(ts.clone(), lhs, rhs)
    })?;
    let mut report = build_report("gj", Expectation::TwoSided, &base, Some(&refined), cfg);
    if let Some(sep) = &cfg.separation {
        let (factor, gj_ratio) = staircase_separation(sep)?;
        report.metrics.insert("separation_factor".into(), factor);
        report.metrics.insert("separation_gj_ratio".into(), gj_ratio);
    }
    Ok(report)
}

/// On the staircase `f_0` at `t`: `(f − f_Q)**(t)` over `sup_{u<t} (1 − log u)^{-1}(f − f_Q)**(u)`,
/// and the ratio of the two sides of the log-damped inequality at `t`.
pub fn staircase_separation(sep: &SeparationConfig) -> Result<(f64, f64)> {
    let f = FunctionSpec::on(super::Shape::Staircase { t: sep.t }, 1, (0.0, 1.0));
    let g = f.sample(sep.n)?;
    let osc = rearrange_exact(&centered(&g));
    let plain = osc.integral(sep.t) / sep.t;
    let damped = log_damped_sup(&osc, sep.t);
    let rhs = sjt_modified(&g, sep.t, true)?.sup_norm() / (1.0 - sep.t.ln());
    Ok((plain / damped, damped / rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaProfile {
    /// defaults to three quarters of the way into the admissible interval
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default = "beta_ts")]
    pub t: Vec<f64>,
}

fn beta_ts() -> Vec<f64> {
    (4..=12).map(|e| 10f64.powi(-e)).collect()
}

impl Default for BetaProfile {
    fn default() -> Self {
        BetaProfile { beta: None, t: beta_ts() }
    }
}

fn minus_one() -> f64 {
    -1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FsConfig {
    pub f: FunctionSpec,
    pub q: f64,
    pub b: f64,
    /// exponent of `(1 − log u)` inside the supremum
    #[serde(default = "minus_one")]
    pub xi: f64,
    #[serde(default)]
    pub n: Option<usize>,
    /// lower truncation points `t ∈ (0,1)` of the outer integral
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub beta_profile: Option<BetaProfile>,
}

/// `∫_a^c (1 − log s)^{m} ds/s` for `m ≠ −1`, with `a = 0` allowed when `m < −1`.
fn log_power_integral(m: f64, a: f64, c: f64) -> f64 {
    let prim = |s: f64| if s == 0.0 { 0.0 } else { (1.0 - s.ln()).powf(m + 1.0) / (m + 1.0) };
    prim(a) - prim(c)
}

/// `(∫_t^1 (1 − log s)^{bq} G(s)^q ds/s)^{1/q}` with `G(s) = sup_{s<u<1} (1 − log u)^ξ g(u)`,
/// exact for a unit-measure step profile and `ξ ≤ 0`.
fn fs_functional(g: &RearrangementProfile, q: f64, b: f64, xi: f64, t: f64) -> f64 {
    let bp = g.breakpoints();
    // G is constant on every step: the weight is non-decreasing, so each step peaks at its right end
    let mut pieces: Vec<(f64, f64, f64)> = Vec::new();
    let mut running = 0.0f64;
    for j in (0..g.values().len()).rev() {
        let (lo, hi) = (bp[j], bp[j + 1].min(1.0));
        if lo >= 1.0 {
            continue;
        }
        running = running.max(g.values()[j] * (1.0 - hi.ln()).powf(xi));
        pieces.push((lo, hi, running));
    }
    let mut acc = 0.0f64;
    for (lo, hi, v) in pieces {
        let (lo, hi) = (lo.max(t), hi);
        if hi <= lo || v == 0.0 {
            continue;
        }
        if q.is_infinite() {
            acc = acc.max(v * (1.0 - hi.ln()).powf(b));
        } else {
            acc += v.powf(q) * log_power_integral(b * q, lo, hi);
        }
    }
    if q.is_infinite() {
        acc
    } else {
        acc.powf(1.0 / q)
    }
}

/// `(∫_t^1 ((1 − log u)^b g(u))^q du/u)^{1/q}`, the truncated `L_{∞,q}(log L)_b` norm.
fn lz_infinity_truncated(g: &dyn Rearranged, q: f64, b: f64, t: f64) -> Result<f64> {
    if q.is_infinite() {
        weighted_sup(g, 0.0, b, t, 1.0)
    } else {
        Ok(weighted_integral(g, 0.0, b, q, t, 1.0)?.powf(1.0 / q))
    }
}

/// `inf_c (∫_0^1 (1 − log t)^{bq} (sup_{t<u<1} (1 − log u)^{-1}(f − c)*(u))^q dt/t)^{1/q}
/// ≲ ‖f#‖_{L_{∞,q}(log L)_b}`, with `c = f_Q`, evaluated with the outer integral truncated at each
/// `t`. The companion evaluates the counterexample `f_0(x) = ∫_{|x|}^1 (1 − log u)^β du/u` for
/// `ξ = 0`, whose left side diverges while the right side stays finite.
pub fn verify_fs_limiting(cfg: &FsConfig) -> Result<InequalityReport> {
    let (q, b) = (cfg.q, cfg.b);
    LzParams::new(f64::INFINITY, q, b, 1.0)?;
    if cfg.xi > 0.0 {
        return Err(Error::OutOfRange(format!("grid evaluation needs ξ ≤ 0, got {}", cfg.xi)));
    }
    let n = cfg.n.unwrap_or_else(|| cfg.f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(|| fraction_grid(&cfg.f, n));
    let measure = cfg.f.domain_measure();
    let (base, refined) = at_two_resolutions(n, |n| {
        let g = cfg.f.sample(n)?;
        let osc = normalized(&rearrange_exact(&centered(&g)), measure);
        let sharp = normalized(&sharp_star(&g), measure);
        let lhs = ts.iter().map(|&t| fs_functional(&osc, q, b, cfg.xi, t)).collect();
        let rhs = ts.iter().map(|&t| lz_infinity_truncated(&sharp, q, b, t)).collect::<Result<Vec<_>>>()?;
        Sides::new(ts.clone(), lhs, rhs)
    })?;
    let mut report = build_report("fs_limiting", Expectation::Bounded, &base, Some(&refined), cfg);
    if q.is_finite() {
        report.companions.push(beta_counterexample(q, b, &cfg.beta_profile.clone().unwrap_or_default(), cfg)?);
    }
    Ok(report)
}

/// Admissible interval `(max{−b − 1/q − 1, 0}, −b − 1/q)` for `β` at `ξ = 0`.
pub fn beta_interval(q: f64, b: f64) -> (f64, f64) {
    ((-b - 1.0 / q - 1.0).max(0.0), -b - 1.0 / q)
}

fn beta_counterexample(q: f64, b: f64, prof: &BetaProfile, cfg: &FsConfig) -> Result<InequalityReport> {
    let (lo, hi) = beta_interval(q, b);
    let beta = prof.beta.unwrap_or(lo + 0.75 * (hi - lo));
    if !(beta > lo && beta < hi) {
        return Err(Error::OutOfRange(format!("β must lie in ({lo}, {hi}), got {beta}")));
    }
    let ln2 = std::f64::consts::LN_2;
    // on Q0 = [−1/2, 1/2]: f*(u) = f_0(u/2) and u |∇f|*(u) = 2 (1 − log(u/2))^β, for u < 1
    let fstar = move |sigma: f64| ((1.0 + sigma + ln2).powf(beta + 1.0) - 1.0) / (beta + 1.0);
    let grad = move |sigma: f64| 2.0 * (1.0 + sigma + ln2).powf(beta);
    // u f*(u) rises from 0 and falls again before u = 1; locate the peak in σ
    let u_fstar = move |sigma: f64| (-sigma).exp() * fstar(sigma);
    let sigma_peak = golden_max(u_fstar, 0.0, 50.0);
    let peak = u_fstar(sigma_peak);
    let quad = |h: &dyn Fn(f64) -> f64, a: f64, c: f64| -> Result<f64> {
        let r = simpson(h, a, c, 1e-10);
        if r.converged {
            Ok(r.value)
        } else {
            Err(Error::Divergent("counterexample quadrature did not converge".into()))
        }
    };
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut lhs_sums = Vec::new();
    let mut rhs_sums = Vec::new();
    for &t in &prof.t {
        let big = -t.ln();
        // ξ = 0: sup_{s<u<1} f*(u) = f*(s)
        let l = quad(&|s: f64| (1.0 + s).powf(b * q) * fstar(s).powf(q), 0.0, big)?;
        let h0 = |s: f64| ((1.0 + s).powf(b) * if s < sigma_peak { u_fstar(s) } else { peak }).powf(q);
        let r0 = if big <= sigma_peak { quad(&h0, 0.0, big)? } else { quad(&h0, 0.0, sigma_peak)? + quad(&h0, sigma_peak, big)? };
        let r1 = quad(&|s: f64| ((1.0 + s).powf(b) * grad(s)).powf(q), 0.0, big)?;
        lhs_sums.push(l);
        rhs_sums.push(r1);
        lhs.push(l.powf(1.0 / q));
        rhs.push(r0.powf(1.0 / q) + r1.powf(1.0 / q));
    }
    let sides = Sides::new(prof.t.clone(), lhs, rhs.clone())?;
    let mut report = build_report("fs_limiting_counterexample", Expectation::Diverges, &sides, None, cfg);
    report.metrics.insert("beta".into(), beta);
    let (first, last) = (0, prof.t.len().saturating_sub(1));
    if !prof.t.is_empty() {
        report.metrics.insert("lhs_partial_sum_growth".into(), lhs_sums[last] / lhs_sums[first]);
        report.metrics.insert("rhs_relative_change".into(), (rhs[last] - rhs[first]) / rhs[last]);
    }
    Ok(report)
}

/// Maximizer of a unimodal function on `[a, c]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut c: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let x1 = c - g * (c - a);
        let x2 = a + g * (c - a);
        if f(x1) < f(x2) {
            a = x1;
        } else {
            c = x2;
        }
    }
    0.5 * (a + c)
}
