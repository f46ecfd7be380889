//! Lorentz–Zygmund quasi-norms, K-functionals of concrete couples and limiting interpolation norms.
//!
//! Every integral has the form `∫ (t^a (1 + |log t|)^b g(t))^q dt/t`. Step profiles are integrated
//! step by step, in closed form whenever `b = 0` or `a = 0`; everything else goes through the
//! substitution `t = e^{-σ}` and Simpson quadrature with breakpoints as panel boundaries.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::maximal::sharp_maximal;
use crate::quad::{simpson, simpson_to_infinity, Quad};
use crate::rearrange::{rearrange_exact, Rearranged, RearrangementProfile};

const REL_TOL: f64 = 1e-10;
const LOG_FLOOR: f64 = 700.0;
/// Values beyond this are reported as divergent.
pub const DIVERGENCE_CAP: f64 = 1e12;

/// `(p, q, b)` of `L_{p,q}(log L)_b` over a domain of the given measure (`f64::INFINITY` for `R^d`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzParams {
    pub p: f64,
    pub q: f64,
    pub b: f64,
    pub domain_measure: f64,
}

impl LzParams {
    pub fn new(p: f64, q: f64, b: f64, domain_measure: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) || !b.is_finite() || !(domain_measure > 0.0) {
            return Err(Error::OutOfRange(format!("need p, q, domain measure > 0 and finite b; got p={p} q={q} b={b}")));
        }
        if p.is_infinite() {
            if q.is_infinite() && b > 0.0 {
                return Err(Error::Gate(format!("p = ∞, q = ∞ requires b ≤ 0, got b = {b}")));
            }
            if q.is_finite() && b >= -1.0 / q {
                return Err(Error::Gate(format!("p = ∞ requires b < −1/q = {}, got b = {b}", -1.0 / q)));
            }
        }
        Ok(LzParams { p, q, b, domain_measure })
    }

    /// Plain Lorentz space `L_{p,q}` on a unit-measure domain.
    pub fn lorentz(p: f64, q: f64) -> Result<Self> {
        Self::new(p, q, 0.0, 1.0)
    }

    pub fn inv_p(&self) -> f64 {
        1.0 / self.p
    }
}

fn finish(q: Quad, what: &str) -> Result<f64> {
    if !q.converged || !q.value.is_finite() || q.value > DIVERGENCE_CAP.powi(2) {
        return Err(Error::Divergent(format!("{what}: integral does not converge")));
    }
    Ok(q.value)
}

/// `ln((1 + |σ|)^{b})` with the convention `0 · ln = 0`.
fn ln_logweight(b: f64, sigma: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        b * (1.0 + sigma.abs()).ln()
    }
}

/// `∫_α^β t^{aq} (1 + |ln t|)^{bq} dt/t`.
fn power_log_integral(a: f64, b: f64, q: f64, alpha: f64, beta: f64) -> Result<f64> {
    let (e, bq) = (a * q, b * q);
    if !(beta > alpha) {
        return Ok(0.0);
    }
    if bq == 0.0 {
        if e > 0.0 {
            return Ok((beta.powf(e) - alpha.powf(e)) / e);
        }
        return if alpha > 0.0 { Ok((beta / alpha).ln()) } else { Err(Error::Divergent("∫ dt/t at 0".into())) };
    }
    if e == 0.0 {
        // antiderivative of (1 + |ln t|)^{bq}/t, handled on each side of t = 1
        let prim = |l: f64| if bq == -1.0 { l.ln() } else { l.powf(bq + 1.0) / (bq + 1.0) };
        let mut total = 0.0;
        if alpha < 1.0 {
            let top = beta.min(1.0);
            let l_lo = if alpha > 0.0 { 1.0 - alpha.ln() } else { f64::INFINITY };
            let l_hi = 1.0 - top.ln();
            if l_lo.is_infinite() && bq >= -1.0 {
                return Err(Error::Divergent("logarithmic weight not integrable at 0".into()));
            }
            let lo_part = if l_lo.is_infinite() { 0.0 } else { prim(l_lo) };
            total += lo_part - prim(l_hi);
        }
        if beta > 1.0 {
            let bot = alpha.max(1.0);
            total += prim(1.0 + beta.ln()) - prim(1.0 + bot.ln());
        }
        return Ok(total);
    }
    let mut total = 0.0;
    if alpha < 1.0 {
        let s_lo = -(beta.min(1.0)).ln();
        let h = |s: f64| (-e * s + bq * (1.0 + s).ln()).exp();
        let q = if alpha > 0.0 { simpson(h, s_lo, -alpha.ln(), REL_TOL) } else { simpson_to_infinity(h, s_lo, (1.0 / e).max(1.0), REL_TOL) };
        total += finish(q, "power-log integral")?;
    }
    if beta > 1.0 {
        let h = |s: f64| (e * s + bq * (1.0 + s).ln()).exp();
        total += finish(simpson(h, alpha.max(1.0).ln(), beta.ln(), REL_TOL), "power-log integral")?;
    }
    Ok(total)
}

/// `∫_lo^hi (t^a (1 + |log t|)^b g*(t))^q dt/t` for finite `q`.
pub fn weighted_integral(g: &dyn Rearranged, a: f64, b: f64, q: f64, lo: f64, hi: f64) -> Result<f64> {
    let hi = hi.min(g.support());
    if !(hi > lo) {
        return Ok(0.0);
    }
    match g.as_steps() {
        Some(rp) => steps_integral(rp, a, b, q, lo, hi),
        None => closed_integral(g, a, b, q, lo, hi),
    }
}

fn steps_integral(rp: &RearrangementProfile, a: f64, b: f64, q: f64, lo: f64, hi: f64) -> Result<f64> {
    let bp = rp.breakpoints();
    let mut total = 0.0;
    for (j, &v) in rp.values().iter().enumerate() {
        let (l, r) = (bp[j].max(lo), bp[j + 1].min(hi));
        if r <= l || v == 0.0 {
            continue;
        }
        total += v.powf(q) * power_log_integral(a, b, q, l, r)?;
    }
    Ok(total)
}

fn closed_integral(g: &dyn Rearranged, a: f64, b: f64, q: f64, lo: f64, hi: f64) -> Result<f64> {
    let h = |s: f64| {
        let ln = g.ln_eval_neg_log(s);
        if ln == f64::NEG_INFINITY {
            0.0
        } else {
            (q * (-a * s + ln_logweight(b, s) + ln)).exp()
        }
    };
    // panel boundaries in σ = −ln t, increasing
    let s_top = -hi.ln();
    let s_bot = if lo > 0.0 { -lo.ln() } else { f64::INFINITY };
    let mut cuts = vec![s_top];
    let mut inner: Vec<f64> = g.breakpoints().into_iter().chain(std::iter::once(1.0)).filter(|&t| t > lo && t < hi).map(|t| -t.ln()).collect();
    inner.sort_by(f64::total_cmp);
    cuts.extend(inner);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += finish(simpson(h, w[0], w[1], REL_TOL), "lz integral")?;
    }
    let last = *cuts.last().unwrap();
    total += if s_bot.is_finite() {
        finish(simpson(h, last, s_bot, REL_TOL), "lz integral")?
    } else {
        finish(simpson_to_infinity(h, last, 1.0, REL_TOL), "lz integral")?
    };
    Ok(total)
}

/// `t^a (1 + |ln t|)^b`, with its limit at `t = 0`.
fn weight(a: f64, b: f64, t: f64) -> f64 {
    if t == 0.0 {
        return if a > 0.0 || b < 0.0 {
            0.0
        } else if b == 0.0 {
            1.0
        } else {
            f64::INFINITY
        };
    }
    t.powf(a) * (1.0 + t.ln().abs()).powf(b)
}

/// `sup_{lo<t<hi} t^a (1 + |log t|)^b g*(t)`.
pub fn weighted_sup(g: &dyn Rearranged, a: f64, b: f64, lo: f64, hi: f64) -> Result<f64> {
    let hi = hi.min(g.support());
    if !(hi > lo) {
        return Ok(0.0);
    }
    let best = match g.as_steps() {
        Some(rp) => {
            let bp = rp.breakpoints();
            let mut best = 0.0f64;
            for (j, &v) in rp.values().iter().enumerate() {
                let (l, r) = (bp[j].max(lo), bp[j + 1].min(hi));
                if r <= l || v == 0.0 {
                    continue;
                }
                let mut cands = vec![l, r];
                if l < 1.0 && r > 1.0 {
                    cands.push(1.0);
                }
                if a > 0.0 && b > 0.0 {
                    let t_star = (-(b / a - 1.0)).exp();
                    if t_star > l && t_star < r {
                        cands.push(t_star);
                    }
                }
                for t in cands {
                    best = best.max(v * weight(a, b, t));
                }
            }
            best
        }
        None => closed_sup(g, a, b, lo, hi),
    };
    if !best.is_finite() || best > DIVERGENCE_CAP {
        return Err(Error::Divergent("weighted supremum is unbounded".into()));
    }
    Ok(best)
}

fn closed_sup(g: &dyn Rearranged, a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    let h = |s: f64| (-a * s + ln_logweight(b, s) + g.ln_eval_neg_log(s)).exp();
    let s_top = -hi.ln();
    let s_bot = if lo > 0.0 { -lo.ln() } else { f64::INFINITY };
    let mut pts: Vec<f64> = (0..=6000).map(|i| s_top + i as f64 * 0.01).collect();
    let mut s = s_top + 60.0;
    while s < 1e15 {
        pts.push(s);
        s *= 1.01;
    }
    pts.extend(g.breakpoints().into_iter().filter(|&t| t > lo && t < hi).map(|t| -t.ln()));
    if s_top < 0.0 {
        pts.push(0.0);
    }
    let mut best = 0.0f64;
    let mut tail_growing = false;
    for &s in pts.iter().filter(|&&s| s <= s_bot) {
        best = best.max(h(s));
    }
    if s_bot.is_finite() {
        best = best.max(h(s_bot));
    } else {
        // still climbing at σ = 10^15 means no finite supremum
        tail_growing = h(1e15) > h(1e14) * (1.0 + 1e-3);
    }
    if tail_growing {
        f64::INFINITY
    } else {
        best
    }
}

/// `‖f‖_{L_{p,q}(log L)_b}` from a rearrangement.
pub fn lz_norm(g: &dyn Rearranged, params: &LzParams) -> Result<f64> {
    let params = LzParams::new(params.p, params.q, params.b, params.domain_measure)?;
    let hi = params.domain_measure;
    if params.q.is_infinite() {
        return weighted_sup(g, params.inv_p(), params.b, 0.0, hi);
    }
    let v = weighted_integral(g, params.inv_p(), params.b, params.q, 0.0, hi)?.powf(1.0 / params.q);
    if v > DIVERGENCE_CAP {
        return Err(Error::Divergent(format!("norm exceeds {DIVERGENCE_CAP:e}")));
    }
    Ok(v)
}

/// `sup_t (1 − log t)^{−1/λ} f*(t)`, the `exp L^λ` functional on a unit-measure domain.
pub fn exp_l_norm(g: &dyn Rearranged, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::OutOfRange(format!("λ must be positive, got {lambda}")));
    }
    lz_norm(g, &LzParams::new(f64::INFINITY, f64::INFINITY, -1.0 / lambda, 1.0)?)
}

fn check_lorentz_exponents(p: f64, r: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) || !(r > 0.0) {
        return Err(Error::OutOfRange(format!("need 0 < p < ∞ and r > 0, got p={p} r={r}")));
    }
    Ok(())
}

/// `K(t, f; L_{p,r}, L_∞) ≍ (∫_0^{t^p} (u^{1/p} f*(u))^r du/u)^{1/r}`.
pub fn k_lorentz_linfty(g: &dyn Rearranged, p: f64, r: f64, t: f64) -> Result<f64> {
    check_lorentz_exponents(p, r)?;
    if !(t > 0.0) {
        return Err(Error::OutOfRange(format!("t must be positive, got {t}")));
    }
    let top = t.powf(p);
    if r.is_infinite() {
        return weighted_sup(g, 1.0 / p, 0.0, 0.0, top);
    }
    Ok(weighted_integral(g, 1.0 / p, 0.0, r, 0.0, top)?.powf(1.0 / r))
}

/// `K(t, f; L_1, L_∞) = t f**(t)`.
pub fn k_l1_linfty(rp: &RearrangementProfile, t: f64) -> Result<f64> {
    Ok(t * rp.double_star(t)?)
}

/// `K(t, f; L_{p,r}, BMO) ≍ (∫_0^{t^p} (u^{1/p} (f#)*(u))^r du/u)^{1/r}` with `f#` over the shifted family.
pub fn k_lp_bmo(f: &GridFunction, p: f64, r: f64, t: f64) -> Result<f64> {
    k_lp_bmo_from_sharp(&rearrange_exact(&sharp_maximal(f, true)), p, r, t)
}

/// As [`k_lp_bmo`] with `(f#)*` already computed.
pub fn k_lp_bmo_from_sharp(sharp_star: &RearrangementProfile, p: f64, r: f64, t: f64) -> Result<f64> {
    k_lorentz_linfty(sharp_star, p, r, t)
}

/// A K-functional tabulated on an increasing grid of `t`, linearly interpolated in between.
#[derive(Debug, Clone, PartialEq)]
pub struct KProfile {
    pub couple: String,
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl KProfile {
    pub fn tabulate<F>(couple: &str, t_grid: Vec<f64>, mut k: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if t_grid.is_empty() || t_grid.windows(2).any(|w| !(w[1] > w[0])) || !(t_grid[0] > 0.0) {
            return Err(Error::OutOfRange("t grid must be positive and strictly increasing".into()));
        }
        let values = t_grid.iter().map(|&t| k(t)).collect::<Result<Vec<_>>>()?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutOfRange("K values must be finite".into()));
        }
        Ok(KProfile { couple: couple.to_string(), t_grid, values })
    }

    /// `n` log-spaced points from `t_min` to `t_max`.
    pub fn log_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
        let (a, b) = (t_min.ln(), t_max.ln());
        (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
    }

    /// `K` non-decreasing and `K(t)/t` non-increasing on the grid, up to relative slack `tol`.
    pub fn check_invariants(&self, tol: f64) -> bool {
        let t = &self.t_grid;
        let k = &self.values;
        (1..t.len()).all(|i| {
            let slack = tol * k[i].abs().max(k[i - 1].abs());
            k[i] >= k[i - 1] - slack && k[i] / t[i] <= k[i - 1] / t[i - 1] * (1.0 + tol) + f64::MIN_POSITIVE
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (g, v) = (&self.t_grid, &self.values);
        if t <= g[0] {
            return v[0] * t / g[0];
        }
        let j = g.partition_point(|&x| x < t);
        if j >= g.len() {
            return *v.last().unwrap();
        }
        let w = (t - g[j - 1]) / (g[j] - g[j - 1]);
        v[j - 1] + w * (v[j] - v[j - 1])
    }

    /// Right derivative of the interpolant, the decreasing function whose integral is `K`.
    pub fn slope(&self, t: f64) -> f64 {
        let (g, v) = (&self.t_grid, &self.values);
        if t < g[0] {
            return v[0] / g[0];
        }
        let j = g.partition_point(|&x| x <= t);
        if j >= g.len() {
            return 0.0;
        }
        (v[j] - v[j - 1]) / (g[j] - g[j - 1])
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,K\n");
        for (t, k) in self.t_grid.iter().zip(&self.values) {
            s.push_str(&format!("{},{}\n", t, k));
        }
        s
    }

    pub fn from_csv(couple: &str, text: &str) -> Result<Self> {
        let mut t_grid = Vec::new();
        let mut values = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("t,") {
                continue;
            }
            let bad = || Error::Parse { line: k + 1, msg: format!("expected `t,K`, got {line:?}") };
            let mut it = line.split(',').map(|x| x.trim().parse::<f64>());
            let t = it.next().and_then(|x| x.ok()).ok_or_else(bad)?;
            let v = it.next().and_then(|x| x.ok()).ok_or_else(bad)?;
            t_grid.push(t);
            values.push(v);
        }
        let mut it = values.into_iter();
        KProfile::tabulate(couple, t_grid, |_| Ok(it.next().unwrap_or(f64::NAN)))
    }
}

fn check_limiting(b: f64, q: f64) -> Result<()> {
    if !(q > 0.0) {
        return Err(Error::OutOfRange(format!("q must be positive, got {q}")));
    }
    let ok = if q.is_infinite() { b <= 0.0 } else { b < -1.0 / q };
    if ok {
        Ok(())
    } else {
        Err(Error::Gate(format!("limiting interpolation needs b < −1/q (b ≤ 0 for q = ∞); got b={b}, q={q}")))
    }
}

/// `∫_lo^hi (u^{-1} (1 − log u)^b K(u))^q du/u` over `0 ≤ lo < hi ≤ 1`, or the supremum when `q = ∞`.
///
/// `K(u)/u` is treated as constant for `u < e^{-700}`.
pub fn limiting_integral(k: &dyn Fn(f64) -> f64, breaks: &[f64], b: f64, q: f64, lo: f64, hi: f64) -> Result<f64> {
    let hi = hi.min(1.0);
    if !(hi > lo) {
        return Ok(0.0);
    }
    // K(t)/t is taken as constant below e^{-700}, where e^{-σ} stops being representable
    let h = |s: f64| {
        let c = s.min(LOG_FLOOR);
        b * (1.0 + s).ln() + c + k((-c).exp()).ln()
    };
    let s_top = -hi.ln();
    let s_bot = if lo > 0.0 { -lo.ln() } else { f64::INFINITY };
    let mut cuts = vec![s_top];
    let mut inner: Vec<f64> = breaks.iter().filter(|&&t| t > lo && t < hi).map(|&t| -t.ln()).collect();
    inner.sort_by(f64::total_cmp);
    cuts.extend(inner);
    if q.is_infinite() {
        let mut best = 0.0f64;
        let end = if s_bot.is_finite() { s_bot } else { cuts.last().unwrap() + 60.0 };
        let n = (((end - s_top) / 0.005).ceil() as usize).max(2);
        for i in 0..=n {
            best = best.max(h(s_top + (end - s_top) * i as f64 / n as f64).exp());
        }
        for &c in &cuts {
            best = best.max(h(c).exp());
        }
        if !s_bot.is_finite() && h(1e15) > h(1e14) + 1e-3 {
            return Err(Error::Divergent("limiting supremum is unbounded".into()));
        }
        return Ok(best);
    }
    let e = |s: f64| (q * h(s)).exp();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += finish(simpson(e, w[0], w[1], REL_TOL), "limiting integral")?;
    }
    let last = *cuts.last().unwrap();
    total += if s_bot.is_finite() {
        finish(simpson(e, last, s_bot, REL_TOL), "limiting integral")?
    } else {
        finish(simpson_to_infinity(e, last, 1.0, REL_TOL), "limiting integral")?
    };
    Ok(total)
}

/// `‖f‖_{(A_0,A_1)_{(1,b),q}} = (∫_0^1 (t^{-1}(1 − log t)^b K(t))^q dt/t)^{1/q}`.
pub fn limiting_norm(kp: &KProfile, b: f64, q: f64) -> Result<f64> {
    limiting_norm_fn(&|t| kp.eval(t), &kp.t_grid, b, q)
}

/// As [`limiting_norm`] for a K-functional given as a function, with optional kinks.
pub fn limiting_norm_fn(k: &dyn Fn(f64) -> f64, breaks: &[f64], b: f64, q: f64) -> Result<f64> {
    check_limiting(b, q)?;
    let v = limiting_integral(k, breaks, b, q, 0.0, 1.0)?;
    Ok(if q.is_infinite() { v } else { v.powf(1.0 / q) })
}

/// Both sides of the two reiteration equivalences at one `t ∈ (0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReiterationPoint {
    pub t: f64,
    /// `K(t(1−log t)^{−b−1/q}, f; A_0, (A_0,A_1)_{(1,b),q})`
    pub lhs_inner: f64,
    /// `K(t,f) + t(1−log t)^{−b−1/q} (∫_t^1 (u^{−1}(1−log u)^b K(u,f))^q du/u)^{1/q}`
    pub rhs_inner: f64,
    /// `K((1−log t)^{b+1/q}, f; (A_0,A_1)_{(1,b),q}, A_1)`
    pub lhs_outer: f64,
    /// `(∫_0^t (u^{−1}(1−log u)^b K(u,f))^q du/u)^{1/q}`
    pub rhs_outer: f64,
}

impl ReiterationPoint {
    pub fn ratios(&self) -> (f64, f64) {
        (self.lhs_inner / self.rhs_inner, self.lhs_outer / self.rhs_outer)
    }
}

fn root(v: f64, q: f64) -> f64 {
    if q.is_infinite() {
        v
    } else {
        v.powf(1.0 / q)
    }
}

/// Evaluates both sides of the reiteration formulas for the ordered couple `(L_1, L_∞)` on `(0,1)`
/// with `K(t,f) = ∫_0^t f*` given by `kp`.
///
/// The left-hand K-functionals are computed as infima over truncations `f = (f − f_τ) + f_τ`,
/// `f_τ = min(f*, f*(τ))`, with each piece measured by its own limiting norm.
pub fn reiteration_check(kp: &KProfile, b: f64, q: f64, t: f64) -> Result<ReiterationPoint> {
    check_limiting(b, q)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutOfRange(format!("t must lie in (0,1), got {t}")));
    }
    let k = |u: f64| kp.eval(u);
    let lim = |f: &dyn Fn(f64) -> f64, breaks: &[f64], lo: f64, hi: f64| -> Result<f64> { Ok(root(limiting_integral(f, breaks, b, q, lo, hi)?, q)) };
    let shift = if q.is_infinite() { -b } else { -b - 1.0 / q };
    let l = 1.0 - t.ln();
    let s_inner = t * l.powf(shift);
    let s_outer = l.powf(-shift);

    let rhs_inner = k(t) + s_inner * lim(&k, &kp.t_grid, t, 1.0)?;
    let rhs_outer = lim(&k, &kp.t_grid, 0.0, t)?;

    let mut taus: Vec<f64> = kp.t_grid.iter().cloned().filter(|&x| x < 1.0).collect();
    taus.push(1.0);
    // τ → 0 keeps all of f in the second space
    let mut lhs_inner = s_inner * lim(&k, &kp.t_grid, 0.0, 1.0)?;
    let mut lhs_outer = f64::INFINITY;
    for &tau in &taus {
        let g_tau = kp.slope(tau * (1.0 - 1e-12));
        let k_tau = k(tau);
        let head = k_tau - tau * g_tau;
        // the part of f below level f*(τ)
        let low = |u: f64| if u <= tau { u * g_tau } else { k(u) - head };
        let mut breaks = kp.t_grid.clone();
        breaks.push(tau);
        lhs_inner = lhs_inner.min(head + s_inner * lim(&low, &breaks, 0.0, 1.0)?);
        // the peak above level f*(τ)
        let peak = |u: f64| if u <= tau { k(u) - u * g_tau } else { head };
        if head > 0.0 {
            lhs_outer = lhs_outer.min(lim(&peak, &breaks, 0.0, 1.0)? + s_outer * g_tau);
        } else {
            lhs_outer = lhs_outer.min(s_outer * g_tau);
        }
    }
    Ok(ReiterationPoint { t, lhs_inner, rhs_inner, lhs_outer, rhs_outer })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rearrange::ClosedForm;

    fn indicator(a: f64) -> RearrangementProfile {
        RearrangementProfile::new(vec![0.0, a, 1.0], vec![1.0, 0.0]).unwrap()
    }

    fn quarters() -> RearrangementProfile {
        RearrangementProfile::new(vec![0.0, 0.25, 0.5, 0.75, 1.0], vec![5.0, 3.0, 2.0, 1.0]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn indicator_norms() {
        let a: f64 = 0.3;
        for (p, q) in [(2.0f64, 2.0f64), (1.5, 1.5), (2.0, 1.0), (3.0, 2.0), (1.0, 4.0)] {
            let n = lz_norm(&indicator(a), &LzParams::lorentz(p, q).unwrap()).unwrap();
            let expect = a.powf(1.0 / p) * (p / q).powf(1.0 / q);
            assert!(close(n, expect, 1e-12), "p={p} q={q}: {n} vs {expect}");
        }
        let n = lz_norm(&indicator(a), &LzParams::lorentz(2.0, f64::INFINITY).unwrap()).unwrap();
        assert!(close(n, a.sqrt(), 1e-15));
    }

    #[test]
    fn log_weighted_steps_match_closed_form() {
        // same function as a step profile and as a closed form; b ≠ 0 forces quadrature
        let a = 0.2;
        let params = LzParams::new(2.0, 1.5, -0.7, 1.0).unwrap();
        let steps = lz_norm(&indicator(a), &params).unwrap();
        let closed = ClosedForm::new(a, |_| 1.0);
        let other = lz_norm(&closed, &params).unwrap();
        assert!(close(steps, other, 1e-8), "{steps} vs {other}");
    }

    #[test]
    fn infinite_p_gate() {
        assert!(matches!(LzParams::new(f64::INFINITY, 2.0, 0.0, 1.0), Err(Error::Gate(_))));
        assert!(matches!(LzParams::new(f64::INFINITY, 2.0, -0.5, 1.0), Err(Error::Gate(_))));
        assert!(LzParams::new(f64::INFINITY, 2.0, -0.51, 1.0).is_ok());
        assert!(LzParams::new(f64::INFINITY, f64::INFINITY, 0.0, 1.0).is_ok());
    }

    #[test]
    fn infinite_p_closed_form_antiderivative() {
        // ∫_0^a (1 − ln t)^{-2} dt/t = (1 − ln a)^{-1}
        let a: f64 = 0.3;
        let n = lz_norm(&indicator(a), &LzParams::new(f64::INFINITY, 1.0, -2.0, 1.0).unwrap()).unwrap();
        assert!(close(n, 1.0 / (1.0 - a.ln()), 1e-13));
    }

    #[test]
    fn exp_l_examples() {
        let log1 = ClosedForm::from_log(1.0, |s| (1.0 + s).ln());
        assert!(close(exp_l_norm(&log1, 1.0).unwrap(), 1.0, 1e-12));
        let flat = RearrangementProfile::new(vec![0.0, 1.0], vec![3.0]).unwrap();
        assert!(close(exp_l_norm(&flat, 0.5).unwrap(), 3.0, 1e-15));
        let log2 = ClosedForm::from_log(1.0, |s| 2.0 * (1.0 + s).ln());
        assert!(matches!(exp_l_norm(&log2, 1.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn k_functionals_of_steps() {
        for t in [0.1, 0.3, 0.7] {
            assert!(close(k_lorentz_linfty(&indicator(0.3), 1.0, 1.0, t).unwrap(), t.min(0.3), 1e-14));
            assert!(close(k_l1_linfty(&indicator(0.3), t).unwrap(), t.min(0.3), 1e-14));
        }
        let c = RearrangementProfile::new(vec![0.0, 1.0], vec![2.0]).unwrap();
        for t in [0.2, 0.9, 1.5] {
            assert!(close(k_lorentz_linfty(&c, 2.0, 2.0, t).unwrap(), 2.0 * t.min(1.0), 1e-14));
        }
        assert!(close(k_lorentz_linfty(&quarters(), 1.0, 1.0, 0.5).unwrap(), 2.0, 1e-15));
        assert!(close(k_l1_linfty(&quarters(), 0.5).unwrap(), 2.0, 1e-15));
    }

    #[test]
    fn limiting_norm_examples() {
        let lin = KProfile::tabulate("L1,Linf", KProfile::log_grid(1e-6, 1.0, 50), Ok).unwrap();
        assert!(close(limiting_norm(&lin, -2.0, f64::INFINITY).unwrap(), 1.0, 1e-12));
        let klog = |t: f64| t * (1.0 - t.ln());
        assert!(close(limiting_norm_fn(&klog, &[], -2.0, f64::INFINITY).unwrap(), 1.0, 1e-12));
        // K(t) = t, q = 1: ∫_0^1 (1 − ln t)^b dt/t = −1/(b+1)
        assert!(close(limiting_norm(&lin, -2.0, 1.0).unwrap(), 1.0, 1e-8));
        assert!(matches!(limiting_norm(&lin, -0.5, 2.0), Err(Error::Gate(_))));
    }

    #[test]
    fn k_profile_interpolation() {
        let kp = KProfile::tabulate("x", vec![0.25, 0.5, 1.0], |t| Ok(t.sqrt())).unwrap();
        assert!(kp.check_invariants(1e-12));
        assert!(close(kp.eval(0.125), 0.25, 1e-15));
        assert!(close(kp.slope(0.3), (0.5f64.sqrt() - 0.5) / 0.25, 1e-14));
        let back = KProfile::from_csv("x", &kp.to_csv()).unwrap();
        assert_eq!(back, kp);
    }
}
