//! Sharp maximal function against the modulus of smoothness in Lorentz spaces, its sharpness on
//! general monotone series, and the coefficient-side formula for the modulus.

use super::{
    at_two_resolutions, build_report, check_n, default_measure_grid, CoefficientFamily, Expectation, FunctionSpec, InequalityReport, Sides, StepModulus,
};
use crate::error::{Error, Result};
use crate::gmfourier::{
    gm_certify, modulus_from_coeffs, sharp_upper_from_coeffs, synthesize, tail_share, Coefficients, GmSequence, PowerSvCoefficients, SeriesKind, SlowlyVarying,
};
use crate::grid::{GridFunction, PeriodicGridFunction};
use crate::maximal::sharp_maximal;
use crate::norms::{lz_norm, weighted_integral, weighted_sup, LzParams};
use crate::rearrange::{rearrange_exact, Rearranged};
use crate::smoothness::Shiftable;
use serde::{Deserialize, Serialize};

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevoreConfig {
    pub f: FunctionSpec,
    pub p: f64,
    pub q: f64,
    pub k: usize,
    #[serde(default)]
    pub n: Option<usize>,
    /// lengths `t`; the inequality integrates `(f#)*` up to `t^d`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    /// include the `‖f‖_{L_{p,q}}` terms of the cube version
    #[serde(default = "yes")]
    pub cube: bool,
    /// upper end of the supremum over `u` (default half the side)
    #[serde(default)]
    pub u_max: Option<f64>,
    /// assert a two-sided band instead of an upper bound
    #[serde(default)]
    pub two_sided: bool,
}

/// `(∫_0^a (u^{α} g(u))^q du/u)^{1/q}`, a supremum for `q = ∞`.
pub(crate) fn lorentz_piece(g: &dyn Rearranged, alpha: f64, q: f64, lo: f64, hi: f64) -> Result<f64> {
    if q.is_infinite() {
        weighted_sup(g, alpha, 0.0, lo, hi)
    } else {
        Ok(weighted_integral(g, alpha, 0.0, q, lo, hi)?.powf(1.0 / q))
    }
}

pub(crate) enum Sampled {
    Cube(GridFunction),
    Torus(PeriodicGridFunction),
}

impl Sampled {
    pub(crate) fn new(f: &FunctionSpec, n: usize) -> Result<Self> {
        Ok(if f.is_periodic() { Sampled::Torus(f.periodic(n)?) } else { Sampled::Cube(f.sample(n)?) })
    }
    pub(crate) fn grid(&self) -> GridFunction {
        match self {
            Sampled::Cube(g) => g.clone(),
            Sampled::Torus(p) => p.to_grid(),
        }
    }
    pub(crate) fn shiftable(&self) -> &dyn Shiftable {
        match self {
            Sampled::Cube(g) => g,
            Sampled::Torus(p) => p,
        }
    }
}

fn default_lengths(f: &FunctionSpec, n: usize) -> Vec<f64> {
    let d = f.dim as f64;
    let side = f.domain_measure().powf(1.0 / d);
    default_measure_grid(f.dim, n, f.domain_measure())
        .into_iter()
        .map(|m| m.powf(1.0 / d))
        // two-dimensional moduli cost one difference per lattice point in the disc
        .filter(|&t| f.dim == 1 || t <= side / 8.0 * (1.0 + 1e-12))
        .collect()
}

/// `(f#)*` against `ω_k(f,t)_{p,q}`: with `k > d/p`,
/// `t^{-d/p}(∫_0^{t^d} (u^{1/p}(f#)*(u))^q du/u)^{1/q} ≲ sup_{t<u} u^{-d/p} ω_k(f,u)_{p,q}`;
/// with `k ≤ d/p` the prefactor goes and the right-hand side is `ω_k(f,t)_{p,q}`. The cube version
/// adds `‖f‖_{L_{p,q}}` (times `t^k` in the second case). For `k < d/p` a companion report checks
/// the stronger two-term bound on `f*` itself.
pub fn verify_devore_lorentz(cfg: &DevoreConfig) -> Result<InequalityReport> {
    let f = &cfg.f;
    let (p, q, k) = (cfg.p, cfg.q, cfg.k);
    if !(p > 1.0 && p.is_finite()) || !(q > 0.0) || k == 0 {
        return Err(Error::OutOfRange(format!("need 1 < p < ∞, q > 0, k ≥ 1; got p={p} q={q} k={k}")));
    }
    let n = cfg.n.unwrap_or_else(|| f.default_n());
    check_n(n)?;
    let d = f.dim as f64;
    let kf = k as f64;
    let high = kf > d / p;
    let measure = f.domain_measure();
    let side = measure.powf(1.0 / d);
    let ts = cfg.t_grid.clone().unwrap_or_else(|| default_lengths(f, n));
    let u_hi = cfg.u_max.unwrap_or(side / 2.0);
    let params = LzParams::new(p, q, 0.0, measure)?;

    let eval = |n: usize| -> Result<(Sides, Option<Sides>)> {
        let s = Sampled::new(f, n)?;
        let grid = s.grid();
        let sharp = rearrange_exact(&sharp_maximal(&grid, true));
        let fstar = rearrange_exact(&grid);
        let norm_f = if cfg.cube { lz_norm(&fstar, &params)? } else { 0.0 };
        let t_top = ts.iter().cloned().fold(0.0, f64::max);
        let om = StepModulus::new(s.shiftable(), if high { u_hi.max(t_top) } else { t_top }, &params, k)?;
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        let mut lhs2 = Vec::new();
        let mut rhs2 = Vec::new();
        for &t in &ts {
            let a = t.powf(d);
            let inner = lorentz_piece(&sharp, 1.0 / p, q, 0.0, a)?;
            if high {
                lhs.push(a.powf(-1.0 / p) * inner);
                rhs.push(norm_f + om.sup_weighted(t, u_hi, d / p));
            } else {
                lhs.push(inner);
                let r = om.at(t) + t.powf(kf) * norm_f;
                rhs.push(r);
                if kf < d / p {
                    let head = lorentz_piece(&fstar, 1.0 / p, q, 0.0, a)?;
                    let tail = lorentz_piece(&fstar, 1.0 / p - kf / d, q, a, measure)?;
                    lhs2.push(head + t.powf(kf) * tail);
                    rhs2.push(r);
                }
            }
        }
        let main = Sides::new(ts.clone(), lhs, rhs)?;
        let strong = if lhs2.is_empty() { None } else { Some(Sides::new(ts.clone(), lhs2, rhs2)?) };
        Ok((main, strong))
    };
    let (base, refined) = (eval(n)?, eval(2 * n)?);
    let expect = if cfg.two_sided { Expectation::TwoSided } else { Expectation::Bounded };
    let id = if high { "devore_lorentz_above_critical" } else { "devore_lorentz_at_or_below_critical" };
    let mut report = build_report(id, expect, &base.0, Some(&refined.0), cfg);
    if let (Some(b), Some(r)) = (&base.1, &refined.1) {
        report.companions.push(build_report("devore_lorentz_two_term", Expectation::Bounded, b, Some(r), cfg));
    }
    Ok(report)
}

fn default_top() -> usize {
    60
}
fn default_j_min() -> usize {
    4
}
fn default_j_max() -> usize {
    14
}
fn default_spots() -> Vec<usize> {
    vec![4, 6, 8]
}
fn default_samples() -> usize {
    8192
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessConfig {
    pub sv: SlowlyVarying,
    pub p: f64,
    pub q: f64,
    pub k: usize,
    #[serde(default = "default_j_min")]
    pub j_min: usize,
    #[serde(default = "default_j_max")]
    pub j_max: usize,
    /// largest dyadic block of the coefficient-side sums
    #[serde(default = "default_top")]
    pub top: usize,
    /// `j` at which the grid pipeline is compared; empty skips it
    #[serde(default = "default_spots")]
    pub spot_j: Vec<usize>,
    /// torus samples of the spot check
    #[serde(default = "default_samples")]
    pub samples: usize,
}

/// Rejects slowly varying functions whose tail integral diverges or whose tail ratio
/// `b̃_q(t)/b̃_q(t (log t)^p)` grows, sampled at `log t = 10 · 2^i`.
fn check_sharpness_assumptions(sv: &SlowlyVarying, p: f64) -> Result<()> {
    sv.ln_tail(sv.coefficient_shift_ln().max(1.0) + 1.0).map_err(|e| Error::Gate(format!("tail integral of b must be finite: {e}")))?;
    for i in 0..8 {
        let l = 10.0 * 2f64.powi(i);
        let r = sv.tail_ratio(l, p)?;
        if !(r <= 2.0) {
            return Err(Error::Gate(format!("tail ratio b̃(t)/b̃(t (log t)^p) must stay bounded; it is {r:.3} at log t = {l}")));
        }
    }
    Ok(())
}

/// `max_{ν ≤ j} 2^{ν/p} ω_k(f, 2^{-ν})`, the dyadic form of `sup_{2^{-j}<u<1} u^{-1/p} ω_k(f,u)`.
fn coefficient_sup(src: &dyn Coefficients, p: f64, q: f64, k: usize, j: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for nu in 0..=j {
        best = best.max(2f64.powf(nu as f64 / p) * modulus_from_coeffs(src, p, q, k, nu)?);
    }
    Ok(best)
}

fn torus_params(p: f64, q: f64) -> Result<LzParams> {
    LzParams::new(p, q, 0.0, 2.0 * std::f64::consts::PI)
}

/// `(f#)*(2^{-j}) / sup_{2^{-j}<u<1} u^{-1/p} ω_k(f,u)_{p,q}` for `a_n = n^{-1+1/p} b(n)`, which
/// should tend to zero; coefficient side over `j_min..=j_max`, grid side at `spot_j`.
pub fn verify_devore_sharpness(cfg: &SharpnessConfig) -> Result<InequalityReport> {
    let (p, q, k) = (cfg.p, cfg.q, cfg.k);
    if !(p > 1.0 && p.is_finite()) || k == 0 {
        return Err(Error::OutOfRange(format!("need 1 < p < ∞ and k ≥ 1; got p={p} k={k}")));
    }
    check_sharpness_assumptions(&cfg.sv, p)?;
    let src = PowerSvCoefficients::new(p, cfg.sv, cfg.top);
    let js: Vec<usize> = (cfg.j_min..=cfg.j_max).collect();
    let mut t = Vec::new();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for &j in &js {
        t.push(2f64.powi(-(j as i32)));
        lhs.push(sharp_upper_from_coeffs(&src, j));
        rhs.push(coefficient_sup(&src, p, q, k, j)?);
    }
    let base = Sides::new(t, lhs, rhs)?;
    let mut report = build_report("devore_sharpness", Expectation::Vanishes, &base, None, cfg);
    if let Some(&j) = js.last() {
        report.metrics.insert("tail_share_at_j_max".into(), tail_share(&src, p, q, j));
    }
    if !cfg.spot_j.is_empty() {
        let spot = sharpness_spot_check(cfg)?;
        report.metrics.insert("spot_agreement".into(), spot.band_constant / spot.band_lower.max(f64::MIN_POSITIVE));
        report.companions.push(spot);
    }
    Ok(report)
}

/// Grid ratio against coefficient ratio for the same truncated series, at `M` and `2M` samples.
fn sharpness_spot_check(cfg: &SharpnessConfig) -> Result<InequalityReport> {
    let (p, q, k) = (cfg.p, cfg.q, cfg.k);
    let params = torus_params(p, q)?;
    let family = CoefficientFamily::PowerSv { p, sv: cfg.sv };
    let eval = |m: usize| -> Result<Sides> {
        let seq = gm_certify(&family.coefficients(m / 4), SeriesKind::Cosine)?;
        let f = synthesize(&seq, m)?;
        let sharp = rearrange_exact(&sharp_maximal(&f.to_grid(), true));
        let om = StepModulus::new(&f, 1.0, &params, k)?;
        let mut t = Vec::new();
        let mut grid_ratio = Vec::new();
        let mut coef_ratio = Vec::new();
        for &j in &cfg.spot_j {
            let u = 2f64.powi(-(j as i32));
            t.push(u);
            grid_ratio.push(sharp.eval(u) / om.sup_weighted(u, 1.0, 1.0 / p));
            coef_ratio.push(sharp_upper_from_coeffs(&seq, j) / coefficient_sup(&seq, p, q, k, j)?);
        }
        Sides::new(t, grid_ratio, coef_ratio)
    };
    let (base, refined) = at_two_resolutions(cfg.samples, eval)?;
    Ok(build_report("devore_sharpness_grid_vs_coefficients", Expectation::TwoSided, &base, Some(&refined), cfg))
}

fn default_moduli_js() -> Vec<usize> {
    (2..=8).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliConfig {
    pub coefficients: CoefficientFamily,
    pub p: f64,
    pub q: f64,
    pub k: usize,
    #[serde(default = "default_moduli_js")]
    pub j: Vec<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

/// Grid `ω_k(f, 2^{-j})_{p,q}` of a synthesized cosine series against the coefficient formula
/// for the same coefficients, at `M` and `2M` samples (`M/4` terms).
pub fn verify_moduli_coefficients(cfg: &ModuliConfig) -> Result<InequalityReport> {
    let params = torus_params(cfg.p, cfg.q)?;
    check_n(cfg.samples)?;
    let eval = |m: usize| -> Result<Sides> {
        let seq: GmSequence = gm_certify(&cfg.coefficients.coefficients(m / 4), SeriesKind::Cosine)?;
        let f = synthesize(&seq, m)?;
        let ts: Vec<f64> = cfg.j.iter().map(|&j| 2f64.powi(-(j as i32))).collect();
        let om = StepModulus::new(&f, ts.iter().cloned().fold(0.0, f64::max), &params, cfg.k)?;
        let grid: Vec<f64> = ts.iter().map(|&t| om.at(t)).collect();
        let coef = cfg.j.iter().map(|&j| modulus_from_coeffs(&seq, cfg.p, cfg.q, cfg.k, j)).collect::<Result<Vec<_>>>()?;
        Sides::new(ts, grid, coef)
    };
    let (base, refined) = at_two_resolutions(cfg.samples, eval)?;
    Ok(build_report("moduli_from_coefficients", Expectation::TwoSided, &base, Some(&refined), cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{Shape, Verdict};

    #[test]
    fn constant_function_is_trivial() {
        let cfg = DevoreConfig {
            f: FunctionSpec::new(Shape::Constant { c: 2.0 }, 1),
            p: 2.0,
            q: 2.0,
            k: 2,
            n: Some(64),
            t_grid: None,
            cube: true,
            u_max: None,
            two_sided: false,
        };
        let r = verify_devore_lorentz(&cfg).unwrap();
        assert!(r.trivial);
        assert_eq!(r.verdict, Verdict::HoldsWithStableConstant);
    }

    #[test]
    fn sqrt_log_family_is_rejected() {
        let cfg = SharpnessConfig {
            sv: SlowlyVarying::appendix_a(4.0, 2.0).unwrap(),
            p: 2.0,
            q: 2.0,
            k: 1,
            j_min: 4,
            j_max: 14,
            top: 60,
            spot_j: vec![],
            samples: 1024,
        };
        assert!(matches!(verify_devore_sharpness(&cfg), Err(Error::Gate(_))));
    }

    #[test]
    fn short_j_range_is_inconclusive() {
        let cfg =
            SharpnessConfig { sv: SlowlyVarying::log_power(1.0, 0.0, 2.0), p: 2.0, q: 2.0, k: 1, j_min: 4, j_max: 5, top: 60, spot_j: vec![], samples: 1024 };
        assert_eq!(verify_devore_sharpness(&cfg).unwrap().verdict, Verdict::Inconclusive);
    }
}
