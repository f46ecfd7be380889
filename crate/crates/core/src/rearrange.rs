//! Distribution functions, decreasing rearrangements and their running averages.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::radial::RadialProfile;

/// `μ_f(λ) = |{|f| > λ}|` for a grid function, stored at the distinct levels of `|f|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionFunction {
    thresholds: Vec<f64>,
    counts: Vec<usize>,
    cells: usize,
    cell: f64,
    total_measure: f64,
}

impl DistributionFunction {
    /// Distinct values of `|f|` in decreasing order.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }
    /// `μ_f` at each threshold.
    pub fn measures(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| self.cell * c as f64).collect()
    }
    pub fn total_measure(&self) -> f64 {
        self.total_measure
    }
    /// `μ_f(λ)`, exact: the cell measure times the number of cells with `|f| > λ`.
    pub fn eval(&self, lambda: f64) -> f64 {
        // thresholds are decreasing and counts[j] is the number of cells above thresholds[j]
        let k = self.thresholds.partition_point(|&v| v > lambda);
        let above = self.counts.get(k).copied().unwrap_or(self.cells);
        self.cell * above as f64
    }
}

pub fn distribution(f: &GridFunction) -> DistributionFunction {
    let sorted = sorted_abs_desc(f.values());
    let mut thresholds = Vec::new();
    let mut counts = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        if thresholds.last() != Some(&v) {
            thresholds.push(v);
            counts.push(i);
        }
    }
    DistributionFunction { thresholds, counts, cells: sorted.len(), cell: f.cell_measure(), total_measure: f.total_measure() }
}

fn sorted_abs_desc(values: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.total_cmp(a));
    v
}

/// A non-increasing step function on `[0, t_m)`, zero afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementProfile {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    cumulative: Vec<f64>,
}

impl RearrangementProfile {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 || breakpoints[0] != 0.0 {
            return Err(Error::OutOfRange("breakpoints must start at 0 and bracket every value".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) || !breakpoints.iter().all(|t| t.is_finite()) {
            return Err(Error::OutOfRange("breakpoints must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::NotMonotone("values must be finite, non-negative and non-increasing".into()));
        }
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        cumulative.push(0.0);
        for (j, v) in values.iter().enumerate() {
            let last = cumulative[j];
            cumulative.push(last + v * (breakpoints[j + 1] - breakpoints[j]));
        }
        Ok(RearrangementProfile { breakpoints, values, cumulative })
    }

    /// Descending sort of `|values|`, each weighted by `cell`, with equal neighbours merged.
    pub fn from_cells(values: &[f64], cell: f64) -> Self {
        let sorted = sorted_abs_desc(values);
        let mut breakpoints = vec![0.0];
        let mut vals: Vec<f64> = Vec::new();
        for (i, &v) in sorted.iter().enumerate() {
            let right = cell * (i + 1) as f64;
            if vals.last() == Some(&v) {
                *breakpoints.last_mut().unwrap() = right;
            } else {
                vals.push(v);
                breakpoints.push(right);
            }
        }
        RearrangementProfile::new(breakpoints, vals).expect("sorted cells form a valid profile")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn total_measure(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// Index of the step containing `t`, or `None` past the end.
    fn step(&self, t: f64) -> Option<usize> {
        let j = self.breakpoints[1..].partition_point(|&b| b <= t);
        (j < self.values.len()).then_some(j)
    }

    /// `f*(t)`; zero for `t ≥ total_measure`.
    pub fn eval(&self, t: f64) -> f64 {
        match self.step(t.max(0.0)) {
            Some(j) => self.values[j],
            None => 0.0,
        }
    }

    /// `∫_0^t f*` by exact partial-cell integration.
    pub fn integral(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self.step(t) {
            Some(j) => self.cumulative[j] + self.values[j] * (t - self.breakpoints[j]),
            None => *self.cumulative.last().unwrap(),
        }
    }

    /// `f**(t) = (1/t) ∫_0^t f*`.
    pub fn double_star(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::OutOfRange(format!("f** needs t > 0, got {t}")));
        }
        if t > self.total_measure() {
            return Err(Error::OutOfRange(format!("t = {t} exceeds total measure {}", self.total_measure())));
        }
        Ok(self.integral(t) / t)
    }

    /// Rows `(t_left, value)`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t_left,value\n");
        for (t, v) in self.breakpoints.iter().zip(&self.values) {
            s.push_str(&format!("{},{}\n", t, v));
        }
        s.push_str(&format!("{},0\n", self.total_measure()));
        s
    }

    /// Parses the output of [`to_csv`](Self::to_csv); the trailing zero row closes the last step.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("t_left") {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: k + 1, msg: msg.to_string() };
            let mut it = line.split(',');
            let t: f64 = it.next().and_then(|x| x.trim().parse().ok()).ok_or_else(|| bad("bad t_left"))?;
            let v: f64 = it.next().and_then(|x| x.trim().parse().ok()).ok_or_else(|| bad("bad value"))?;
            rows.push((t, v));
        }
        if rows.len() < 2 {
            return Err(Error::Parse { line: 1, msg: "profile needs at least two rows".into() });
        }
        let breakpoints = rows.iter().map(|r| r.0).collect();
        let values = rows[..rows.len() - 1].iter().map(|r| r.1).collect();
        RearrangementProfile::new(breakpoints, values)
    }
}

pub fn rearrange_exact(f: &GridFunction) -> RearrangementProfile {
    RearrangementProfile::from_cells(f.values(), f.cell_measure())
}

pub fn double_star(profile: &RearrangementProfile, t: f64) -> Result<f64> {
    profile.double_star(t)
}

/// Anything that can serve as a decreasing rearrangement `f*` on `(0, ∞)`.
pub trait Rearranged: Sync {
    fn eval(&self, t: f64) -> f64;
    /// `ln f*(e^{-s})`, overridden where a log-space form avoids overflow.
    fn ln_eval_neg_log(&self, s: f64) -> f64 {
        self.eval((-s).exp()).ln()
    }
    /// `f*` vanishes beyond this point.
    fn support(&self) -> f64;
    /// Points where `f*` may jump.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    fn as_steps(&self) -> Option<&RearrangementProfile> {
        None
    }
}

impl Rearranged for RearrangementProfile {
    fn eval(&self, t: f64) -> f64 {
        RearrangementProfile::eval(self, t)
    }
    fn support(&self) -> f64 {
        self.total_measure()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
    fn as_steps(&self) -> Option<&RearrangementProfile> {
        Some(self)
    }
}

type LogFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A closed-form rearrangement given through `s ↦ ln f*(e^{-s})`.
pub struct ClosedForm {
    ln_f: LogFn,
    support: f64,
}

impl ClosedForm {
    /// From `t ↦ f*(t)`; `f*` is frozen at its value at `e^{-700}` below that point, so singular
    /// profiles should use [`from_log`](Self::from_log).
    pub fn new<F>(support: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ClosedForm { ln_f: Box::new(move |s: f64| f((-s.min(700.0)).exp()).ln()), support }
    }

    pub fn from_log<F>(support: f64, ln_f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ClosedForm { ln_f: Box::new(ln_f), support }
    }
}

impl Rearranged for ClosedForm {
    fn eval(&self, t: f64) -> f64 {
        if t > self.support * (1.0 + 1e-12) {
            return 0.0;
        }
        (self.ln_f)(-t.ln()).exp()
    }
    fn ln_eval_neg_log(&self, s: f64) -> f64 {
        if (-s).exp() > self.support * (1.0 + 1e-12) {
            return f64::NEG_INFINITY;
        }
        (self.ln_f)(s)
    }
    fn support(&self) -> f64 {
        self.support
    }
}

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}

/// `f*(t) = g((t/ω_d)^{1/d})` for a non-increasing radial profile `g`.
pub fn rearrange_radial(profile: &RadialProfile) -> Result<ClosedForm> {
    profile.check_monotone()?;
    let d = profile.dim() as f64;
    let ln_omega = unit_ball_volume(profile.dim()).ln();
    let support = unit_ball_volume(profile.dim()) * profile.t_max().powf(d);
    let g = profile.clone();
    Ok(ClosedForm::from_log(support, move |s| {
        // t = e^{-s}  =>  radius = e^{-(s + ln ω_d)/d}
        g.ln_eval_neg_log((s + ln_omega) / d)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid_function;

    fn quarter_grid() -> GridFunction {
        GridFunction::from_values(1, 4, (0.0, 1.0), vec![3.0, 1.0, 2.0, 5.0]).unwrap()
    }

    #[test]
    fn distribution_counts_cells() {
        let mu = distribution(&quarter_grid());
        let expect = [(0.0, 1.0), (1.0, 0.75), (2.0, 0.5), (3.0, 0.25), (5.0, 0.0), (0.5, 1.0), (4.0, 0.25)];
        for (lambda, m) in expect {
            assert_eq!(mu.eval(lambda), m, "λ = {lambda}");
        }
        assert_eq!(mu.thresholds(), &[5.0, 3.0, 2.0, 1.0]);
        assert_eq!(mu.measures(), vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn distribution_of_indicator_and_zero() {
        let f = make_grid_function(1, 8, (0.0, 1.0), |x| if x[0] < 0.25 { 1.0 } else { 0.0 }).unwrap();
        let mu = distribution(&f);
        assert_eq!(mu.eval(0.0), 0.25);
        assert_eq!(mu.eval(0.999), 0.25);
        assert_eq!(mu.eval(1.0), 0.0);
        let z = make_grid_function(1, 8, (0.0, 1.0), |_| 0.0).unwrap();
        assert_eq!(distribution(&z).eval(0.0), 0.0);
    }

    #[test]
    fn sorted_steps() {
        let p = rearrange_exact(&quarter_grid());
        assert_eq!(p.breakpoints(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p.values(), &[5.0, 3.0, 2.0, 1.0]);
        assert_eq!(p.double_star(0.5).unwrap(), 4.0);
    }

    #[test]
    fn indicator_double_star() {
        let a = 0.25;
        let f = make_grid_function(1, 16, (0.0, 1.0), |x| if x[0] < a { 1.0 } else { 0.0 }).unwrap();
        let p = rearrange_exact(&f);
        assert_eq!(p.eval(0.2), 1.0);
        assert_eq!(p.eval(0.25), 0.0);
        for t in [0.1, 0.25, 0.5, 1.0] {
            let expect = if t <= a { 1.0 } else { a / t };
            assert!((p.double_star(t).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn double_star_range() {
        let p = rearrange_exact(&quarter_grid());
        assert!(p.double_star(0.0).is_err());
        assert!(p.double_star(1.5).is_err());
        assert_eq!(p.double_star(1.0).unwrap(), 11.0 / 4.0);
    }

    #[test]
    fn profile_csv_round_trip() {
        let p = rearrange_exact(&quarter_grid());
        assert_eq!(RearrangementProfile::from_csv(&p.to_csv()).unwrap(), p);
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
    }
}
