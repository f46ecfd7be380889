//! `t^d f**(t^d)` against the `L_1` modulus of order `d`, and its converse for convex coefficients.

use super::devore::Sampled;
use super::{at_two_resolutions, build_report, check_n, default_measure_grid, Expectation, FunctionSpec, InequalityReport, Shape, Sides, StepModulus};
use crate::error::{Error, Result};
use crate::gmfourier::aljancic_bound;
use crate::harness::CoefficientFamily;
use crate::norms::LzParams;
use crate::rearrange::rearrange_exact;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KolyadaConfig {
    pub f: FunctionSpec,
    /// order of the converse modulus; the forward inequality always uses order `d`
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default)]
    pub n: Option<usize>,
    /// lengths `t`
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    /// also check `ω_k(f,t)_1 ≲ t f**(t)` and assert the two-sided band
    #[serde(default)]
    pub converse: bool,
}

fn one() -> usize {
    1
}

/// `t^d f**(t^d) ≲ ω_d(f,t)_1` (plus `t^d ‖f‖_1` on cubes). With `converse`, a companion report
/// checks `ω_k(f,t)_1 ≲ t f**(t)` (one dimension) and the main report asserts both directions.
pub fn verify_kolyada_lerner(cfg: &KolyadaConfig) -> Result<InequalityReport> {
    let f = &cfg.f;
    let n = cfg.n.unwrap_or_else(|| f.default_n());
    check_n(n)?;
    if cfg.converse && f.dim != 1 {
        return Err(Error::BadDimension(f.dim));
    }
    let d = f.dim;
    let measure = f.domain_measure();
    let ts = cfg.t_grid.clone().unwrap_or_else(|| {
        let side = measure.powf(1.0 / d as f64);
        default_measure_grid(d, n, measure).into_iter().map(|m| m.powf(1.0 / d as f64)).filter(|&t| d == 1 || t <= side / 8.0 * (1.0 + 1e-12)).collect()
    });
    let l1 = LzParams::new(1.0, 1.0, 0.0, measure)?;
    let t_top = ts.iter().cloned().fold(0.0, f64::max);
    let cube_term = !f.is_periodic();

    let eval = |n: usize| -> Result<(Sides, Sides)> {
        let s = Sampled::new(f, n)?;
        let grid = s.grid();
        let fstar = rearrange_exact(&grid);
        let norm1 = grid.l1_norm();
        let om_d = StepModulus::new(s.shiftable(), t_top, &l1, d)?;
        let om_k = if cfg.converse { Some(StepModulus::new(s.shiftable(), t_top, &l1, cfg.k)?) } else { None };
        let mut fwd = (Vec::new(), Vec::new());
        let mut conv = (Vec::new(), Vec::new());
        for &t in &ts {
            let a = t.powi(d as i32);
            let k_val = fstar.integral(a);
            fwd.0.push(k_val);
            fwd.1.push(om_d.at(t) + if cube_term { a * norm1 } else { 0.0 });
            if let Some(om) = &om_k {
                conv.0.push(om.at(t));
                conv.1.push(k_val);
            }
        }
        Ok((Sides::new(ts.clone(), fwd.0, fwd.1)?, Sides::new(ts[..conv.0.len()].to_vec(), conv.0, conv.1)?))
    };
    let (base, refined) = at_two_resolutions(n, eval)?;
    let expect = if cfg.converse { Expectation::TwoSided } else { Expectation::Bounded };
    let mut report = build_report("kolyada_lerner", expect, &base.0, Some(&refined.0), cfg);
    if cfg.converse {
        report.companions.push(build_report("kolyada_lerner_converse", Expectation::Bounded, &base.1, Some(&refined.1), cfg));
        if let Some(band) = aljancic_band(f, n, &ts, &base.1)? {
            report.metrics.insert("aljancic_band".into(), band);
        }
    }
    Ok(report)
}

/// Spread `max/min` of `ω_k(f,1/m)_1 / (m^{-k} Σ_{ν≤m} ν^{k−1} a_ν)` over the grid of `t`, for convex
/// coefficient families.
fn aljancic_band(f: &FunctionSpec, n: usize, ts: &[f64], conv: &Sides) -> Result<Option<f64>> {
    let Shape::Fourier { coefficients: fam @ CoefficientFamily::Power { .. }, .. } = &f.shape else {
        return Ok(None);
    };
    let a = fam.coefficients(n / 4);
    let mut ratios = Vec::new();
    for (i, &t) in ts.iter().enumerate() {
        let m = (1.0 / t).round() as usize;
        if m >= 1 && m <= a.len() && conv.lhs[i] > 0.0 {
            ratios.push(conv.lhs[i] / aljancic_bound(&a, 1, m)?);
        }
    }
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((!ratios.is_empty()).then(|| hi / lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Verdict;

    #[test]
    fn constant_function_is_trivial_beyond_the_mean() {
        let cfg = KolyadaConfig { f: FunctionSpec::new(Shape::Zero, 1), k: 1, n: Some(64), t_grid: None, converse: false };
        let r = verify_kolyada_lerner(&cfg).unwrap();
        assert!(r.trivial);
        assert_eq!(r.verdict, Verdict::HoldsWithStableConstant);
    }
}
