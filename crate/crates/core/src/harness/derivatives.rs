//! Sharp maximal function against the rearrangement of the gradient, and the comparison of the
//! gradient bound with the modulus bound.

use super::devore::{lorentz_piece, Sampled};
use super::{at_two_resolutions, build_report, check_n, default_measure_grid, Expectation, FunctionSpec, InequalityReport, Shape, Sides, StepModulus};
use crate::error::{Error, Result};
use crate::maximal::sharp_maximal;
use crate::norms::{weighted_sup, LzParams};
use crate::radial::{RadialExpr, RadialProfile};
use crate::rearrange::{rearrange_exact, unit_ball_volume, ClosedForm, Rearranged};
use serde::{Deserialize, Serialize};

fn one() -> usize {
    1
}

fn unit_cube() -> (f64, f64) {
    (-1.0, 1.0)
}

/// Checks `k < d(1 − 1/p)` with `q ≥ 1`, or `k = d(1 − 1/p)` with `q = 1`, and returns `r = dp/(d + kp)`.
pub fn der_gate(p: f64, q: f64, k: usize, d: usize) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) || k == 0 {
        return Err(Error::OutOfRange(format!("need 1 < p < ∞ and k ≥ 1, got p={p} k={k}")));
    }
    let (kf, df) = (k as f64, d as f64);
    let crit = df * (1.0 - 1.0 / p);
    let ok = (kf < crit - 1e-12 && q >= 1.0) || ((kf - crit).abs() <= 1e-12 && q == 1.0);
    if !ok {
        return Err(Error::Gate(format!("need k < d(1−1/p) with q ≥ 1, or k = d(1−1/p) with q = 1; got k={k} d={d} p={p} q={q}")));
    }
    Ok(df * p / (df + kf * p))
}

/// `|∇f|*` of `f(x) = g(|x|)` for a radial profile with non-increasing `|g'|`.
pub fn gradient_rearrangement(profile: &RadialProfile) -> Result<ClosedForm> {
    let d = profile.dim() as f64;
    let ln_omega = unit_ball_volume(profile.dim()).ln();
    let support = unit_ball_volume(profile.dim()) * profile.t_max().powf(d);
    // measure t = e^{-s}  <=>  radius e^{-(s + ln ω_d)/d}
    match profile.expr().clone() {
        RadialExpr::Integral { p, b } => Ok(ClosedForm::from_log(support, move |s| {
            let sigma = (s + ln_omega) / d;
            (d / p + 1.0) * sigma + b.ln_eval_neg_log(sigma)
        })),
        RadialExpr::Sum(_) => {
            let g = profile.clone();
            Ok(ClosedForm::from_log(support, move |s| {
                let rho = (-(s + ln_omega) / d).exp();
                g.derivative(rho).abs().ln()
            }))
        }
    }
}

/// `I(t) = t^{-1/p}(∫_0^t (u^{1/r} g*(u))^q du/u)^{1/q}` and `J(t) = sup_{u>t} u^{k/d} g*(u)` for
/// measures `t`, with `r = dp/(d + kp)`.
pub fn der_terms(g: &dyn Rearranged, p: f64, q: f64, k: usize, d: usize, t: f64) -> Result<(f64, f64)> {
    let (kf, df) = (k as f64, d as f64);
    let r = df * p / (df + kf * p);
    let i = t.powf(-1.0 / p) * lorentz_piece(g, 1.0 / r, q, 0.0, t)?;
    let j = weighted_sup(g, kf / df, 0.0, t, g.support())?;
    Ok((i, j))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerConfig {
    pub profile: RadialProfile,
    pub p: f64,
    pub q: f64,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default)]
    pub n: Option<usize>,
    /// measures `t`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default = "unit_cube")]
    pub domain: (f64, f64),
    /// assert the two-sided band of the extremal family
    #[serde(default)]
    pub two_sided: bool,
}

/// `t^{-1/p}(∫_0^t (u^{1/p}(f#)*(u))^q du/u)^{1/q} ≲ I(t) + J(t)` with `g = |∇f|`, for a radial `f`
/// discretized on the cube while the gradient side stays in closed form (`k = 1`).
pub fn verify_devore_der(cfg: &DerConfig) -> Result<InequalityReport> {
    let d = cfg.profile.dim();
    let (p, q) = (cfg.p, cfg.q);
    der_gate(p, q, cfg.k, d)?;
    if cfg.k != 1 {
        return Err(Error::OutOfRange("closed-form gradients are available for k = 1 only".into()));
    }
    let f = FunctionSpec::on(Shape::Radial { profile: cfg.profile.clone() }, d, cfg.domain);
    let n = cfg.n.unwrap_or_else(|| f.default_n());
    check_n(n)?;
    let ts = cfg.t_grid.clone().unwrap_or_else(|| default_measure_grid(d, n, f.domain_measure()));
    let grad = gradient_rearrangement(&cfg.profile)?;
    let mut rhs = Vec::with_capacity(ts.len());
    for &t in &ts {
        let (i, j) = der_terms(&grad, p, q, cfg.k, d, t)?;
        rhs.push(i + j);
    }
    let (base, refined) = at_two_resolutions(n, |n| {
        let g = f.sample(n)?;
        let sharp = rearrange_exact(&sharp_maximal(&g, true));
        let lhs = ts.iter().map(|&t| Ok(t.powf(-1.0 / p) * lorentz_piece(&sharp, 1.0 / p, q, 0.0, t)?)).collect::<Result<Vec<_>>>()?;
        Sides::new(ts.clone(), lhs, rhs.clone())
    })?;
    let expect = if cfg.two_sided { Expectation::TwoSided } else { Expectation::Bounded };
    Ok(build_report("devore_gradient", expect, &base, Some(&refined), cfg))
}

fn caps() -> Vec<f64> {
    (1..=6).map(|e| 10f64.powi(-e)).collect()
}

fn one_f() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    /// radial `f` for the comparison on the grid; skipped when absent
    #[serde(default)]
    pub profile: Option<RadialProfile>,
    pub p: f64,
    #[serde(default = "one_f")]
    pub q: f64,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default)]
    pub n: Option<usize>,
    /// lengths `t` for the grid comparison
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default = "unit_cube")]
    pub domain: (f64, f64),
    /// truncation levels of the two limiting families
    #[serde(default = "caps")]
    pub caps: Vec<f64>,
}

/// Compares the modulus bound `sup_{u>t} u^{-d/p} ω_k(f,u)_{p,q}` with the gradient bound
/// `t^{-d/p}(∫_0^{t^d} (u^{1/r}|∇f|*(u))^q du/u)^{1/q} + sup_{u>t^d} u^{k/d}|∇f|*(u)`.
///
/// For `d/p < k < d(1 − 1/p)` the first is dominated by the second (main report, on the grid).
/// For `k = d/p` the two are incomparable; the companions follow the two limits the comparison
/// reduces to, `‖g‖_{p,q}/‖g‖_{p,∞}` as `t → 0` and `‖g‖_{r,∞}/‖g‖_{r,q}` as `t → ∞`, over truncated
/// power profiles whose ratios diverge and vanish.
pub fn compare_i_j(cfg: &CompareConfig) -> Result<InequalityReport> {
    let (p, q) = (cfg.p, cfg.q);
    if !(p > 1.0 && p.is_finite()) || !(q >= 1.0 && q.is_finite()) {
        return Err(Error::OutOfRange(format!("need 1 < p < ∞ and 1 ≤ q < ∞, got p={p} q={q}")));
    }
    let (small, large) = limit_separations(p, q, &cfg.caps)?;
    let small = build_report("compare_limit_small_t", Expectation::Diverges, &small, None, cfg);
    let large = build_report("compare_limit_large_t", Expectation::Vanishes, &large, None, cfg);
    // without a profile the small-t limit leads the report
    let mut report = match &cfg.profile {
        Some(profile) => {
            let mut r = compare_on_grid(profile, cfg)?;
            r.companions.push(small);
            r
        }
        None => small,
    };
    report.companions.push(large);
    Ok(report)
}

fn compare_on_grid(profile: &RadialProfile, cfg: &CompareConfig) -> Result<InequalityReport> {
    let (p, q, k) = (cfg.p, cfg.q, cfg.k);
    let d = profile.dim();
    let (kf, df) = (k as f64, d as f64);
    if !(kf > df / p && kf < df * (1.0 - 1.0 / p)) {
        return Err(Error::Gate(format!("the grid comparison needs d/p < k < d(1−1/p); got k={k} d={d} p={p}")));
    }
    let f = FunctionSpec::on(Shape::Radial { profile: profile.clone() }, d, cfg.domain);
    // every shift up to half the side is scanned, which grows like N^{2d}
    let n = cfg.n.unwrap_or(if d == 1 { 1024 } else { 64 });
    check_n(n)?;
    let measure = f.domain_measure();
    let side = measure.powf(1.0 / df);
    let ts = cfg.t_grid.clone().unwrap_or_else(|| {
        default_measure_grid(d, n, measure).into_iter().map(|m| m.powf(1.0 / df)).filter(|&t| d == 1 || t <= side / 8.0 * (1.0 + 1e-12)).collect()
    });
    let grad = gradient_rearrangement(profile)?;
    let mut rhs = Vec::with_capacity(ts.len());
    for &t in &ts {
        let a = t.powi(d as i32);
        let (i, j) = der_terms(&grad, p, q, k, d, a)?;
        rhs.push(i + j);
    }
    let params = LzParams::new(p, q, 0.0, measure)?;
    let u_hi = side / 2.0;
    let (base, refined) = at_two_resolutions(n, |n| {
        let s = Sampled::new(&f, n)?;
        let om = StepModulus::new(s.shiftable(), u_hi, &params, k)?;
        let lhs = ts.iter().map(|&t| om.sup_weighted(t, u_hi, df / p)).collect();
        Sides::new(ts.clone(), lhs, rhs.clone())
    })?;
    Ok(build_report("compare_modulus_gradient", Expectation::Bounded, &base, Some(&refined), cfg))
}

/// `(‖g_c‖_{p,q}, ‖g_c‖_{p,∞})` for `g_c* = u^{-1/p}χ_(c,1)` and `(‖h_c‖_{r,∞}, ‖h_c‖_{r,q})` for
/// `h_c* = u^{-1/r}χ_(1,1/c)`, `r = p/2`, indexed by the truncation `c`.
fn limit_separations(p: f64, q: f64, caps: &[f64]) -> Result<(Sides, Sides)> {
    let r = p / 2.0;
    let g = ClosedForm::from_log(1.0, move |s| s / p);
    let mut small = (Vec::new(), Vec::new());
    let mut large = (Vec::new(), Vec::new());
    for &c in caps {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::OutOfRange(format!("truncation levels must lie in (0,1), got {c}")));
        }
        small.0.push(lorentz_piece(&g, 1.0 / p, q, c, 1.0)?);
        small.1.push(weighted_sup(&g, 1.0 / p, 0.0, c, 1.0)?);
        let h = ClosedForm::from_log(1.0 / c, move |s| s / r);
        large.0.push(weighted_sup(&h, 1.0 / r, 0.0, 1.0, 1.0 / c)?);
        large.1.push(lorentz_piece(&h, 1.0 / r, q, 1.0, 1.0 / c)?);
    }
    Ok((Sides::new(caps.to_vec(), small.0, small.1)?, Sides::new(caps.to_vec(), large.0, large.1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Verdict;
    use crate::radial::PowerLogTerm;

    #[test]
    fn gate_arithmetic() {
        assert!(matches!(der_gate(2.0, 2.0, 1, 1), Err(Error::Gate(_))));
        assert!((der_gate(4.0, 2.0, 1, 2).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!(der_gate(2.0, 1.0, 1, 2).is_ok());
        assert!(matches!(der_gate(2.0, 2.0, 1, 2), Err(Error::Gate(_))));
    }

    #[test]
    fn indicator_terms() {
        let g = ClosedForm::new(1.0, |_| 1.0);
        let (p, q, k, d) = (4.0, 2.0, 1, 2);
        let r = 4.0 / 3.0;
        for t in [1e-2, 1e-3, 1e-4] {
            let (i, j) = der_terms(&g, p, q, k, d, t).unwrap();
            let expect = (r / q).powf(1.0 / q) * t.powf(0.5);
            assert!((i / expect - 1.0).abs() < 1e-6, "{i} vs {expect}");
            assert!((j - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gradient_of_a_power_profile() {
        // g(ρ) = ρ^{-1/2} in the plane: |∇f|(x) = |x|^{-3/2}/2, so |∇f|*(t) = (t/π)^{-3/4}/2
        let prof = RadialProfile::term(PowerLogTerm::new(1.0, -0.5, 0.0, 0.0), 2, 1.0).unwrap();
        let g = gradient_rearrangement(&prof).unwrap();
        let t: f64 = 0.01;
        let expect = 0.5 * (t / std::f64::consts::PI).powf(-0.75);
        assert!((g.eval(t) / expect - 1.0).abs() < 1e-9);
    }

    #[test]
    fn extremal_gradient_matches_its_closed_form() {
        let b = PowerLogTerm::new(1.0, 0.0, -2.0, 0.0);
        let prof = RadialProfile::integral(4.0, 2, b).unwrap();
        let g = gradient_rearrangement(&prof).unwrap();
        let t: f64 = 1e-3;
        let rho = (t / std::f64::consts::PI).sqrt();
        let expect = rho.powf(-0.5) * b.eval(rho) / rho;
        assert!((g.eval(t) / expect - 1.0).abs() < 1e-9);
    }

    #[test]
    fn limits_separate_in_opposite_directions() {
        let r = compare_i_j(&CompareConfig { profile: None, p: 4.0, q: 1.0, k: 1, n: None, t_grid: None, domain: unit_cube(), caps: caps() }).unwrap();
        assert_eq!(r.verdict, Verdict::RatioDiverges);
        assert_eq!(r.companions[0].verdict, Verdict::RatioVanishes);
        // ‖g_c‖_{4,1} = log(1/c)
        let ratio = r.ratio[2].unwrap();
        assert!((ratio - 1000f64.ln()).abs() < 1e-6);
    }
}
