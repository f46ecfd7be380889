//! Closed-form radial profiles built from power, log and log-log factors.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::quad::simpson;
use serde::{Deserialize, Serialize};

/// `c · t^α · (1 − log t)^β · (1 + log(1 − log t))^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLogTerm {
    pub c: f64,
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
}

impl PowerLogTerm {
    pub fn new(c: f64, alpha: f64, beta: f64, gamma: f64) -> Self {
        PowerLogTerm { c, alpha, beta, gamma }
    }

    pub fn constant(c: f64) -> Self {
        PowerLogTerm::new(c, 0.0, 0.0, 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.c == 0.0 {
            return 0.0;
        }
        let l = 1.0 - t.ln();
        let mut v = self.c * t.powf(self.alpha);
        if self.beta != 0.0 {
            v *= l.powf(self.beta);
        }
        if self.gamma != 0.0 {
            v *= (1.0 + l.ln()).powf(self.gamma);
        }
        v
    }

    /// `t^{α−1} L^β Λ^γ (α − β/L − γ/(L Λ))` with `L = 1 − log t`, `Λ = 1 + log L`.
    pub fn derivative(&self, t: f64) -> f64 {
        if self.c == 0.0 {
            return 0.0;
        }
        let l = 1.0 - t.ln();
        let ll = 1.0 + l.ln();
        let factor = self.alpha - self.beta / l - self.gamma / (l * ll);
        self.eval(t) / t * factor
    }

    /// `ln(term)` at `t = e^{-σ}`; requires `c > 0`.
    pub fn ln_eval_neg_log(&self, sigma: f64) -> f64 {
        let l = 1.0 + sigma;
        let mut v = self.c.ln() - self.alpha * sigma;
        if self.beta != 0.0 {
            v += self.beta * l.ln();
        }
        if self.gamma != 0.0 {
            v += self.gamma * (1.0 + l.ln()).ln();
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadialExpr {
    /// A finite sum of power-log terms.
    Sum(Vec<PowerLogTerm>),
    /// `∫_t^1 u^{−d/p} b(u) du/u`.
    Integral { p: f64, b: PowerLogTerm },
}

/// A radial profile `g` on `(0, t_max]`, zero beyond `t_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadialJson", into = "RadialJson")]
pub struct RadialProfile {
    expr: RadialExpr,
    dim: usize,
    t_max: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadialJson {
    Term {
        c: f64,
        alpha: f64,
        #[serde(default)]
        beta: f64,
        #[serde(default)]
        gamma: f64,
        dim: usize,
        t_max: f64,
    },
    Tagged(TaggedJson),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum TaggedJson {
    Integral {
        p: f64,
        d: usize,
        b: PowerLogTerm,
        #[serde(default = "one")]
        t_max: f64,
    },
    Sum {
        terms: Vec<PowerLogTerm>,
        dim: usize,
        t_max: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RadialJson> for RadialProfile {
    type Error = Error;
    fn try_from(j: RadialJson) -> Result<Self> {
        match j {
            RadialJson::Term { c, alpha, beta, gamma, dim, t_max } => RadialProfile::term(PowerLogTerm { c, alpha, beta, gamma }, dim, t_max),
            RadialJson::Tagged(TaggedJson::Sum { terms, dim, t_max }) => RadialProfile::sum(terms, dim, t_max),
            RadialJson::Tagged(TaggedJson::Integral { p, d, b, t_max }) => {
                let mut g = RadialProfile::integral(p, d, b)?;
                if t_max <= 0.0 || t_max > 1.0 {
                    return Err(Error::OutOfRange(format!("integral profile needs t_max in (0,1], got {t_max}")));
                }
                g.t_max = t_max;
                Ok(g)
            }
        }
    }
}

impl From<RadialProfile> for RadialJson {
    fn from(g: RadialProfile) -> Self {
        match g.expr {
            RadialExpr::Sum(terms) if terms.len() == 1 => {
                let PowerLogTerm { c, alpha, beta, gamma } = terms[0];
                RadialJson::Term { c, alpha, beta, gamma, dim: g.dim, t_max: g.t_max }
            }
            RadialExpr::Sum(terms) => RadialJson::Tagged(TaggedJson::Sum { terms, dim: g.dim, t_max: g.t_max }),
            RadialExpr::Integral { p, b } => RadialJson::Tagged(TaggedJson::Integral { p, d: g.dim, b, t_max: g.t_max }),
        }
    }
}

const MONOTONE_SAMPLES: usize = 10_000;

impl RadialProfile {
    pub fn term(term: PowerLogTerm, dim: usize, t_max: f64) -> Result<Self> {
        Self::sum(vec![term], dim, t_max)
    }

    pub fn sum(terms: Vec<PowerLogTerm>, dim: usize, t_max: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension(dim));
        }
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::OutOfRange(format!("t_max must be positive, got {t_max}")));
        }
        let g = RadialProfile { expr: RadialExpr::Sum(terms), dim, t_max };
        if !g.eval(t_max).is_finite() {
            return Err(Error::OutOfRange("profile is not defined at t_max".into()));
        }
        Ok(g)
    }

    /// `g(t) = ∫_t^1 u^{−d/p} b(u) du/u` on `(0, 1]`.
    pub fn integral(p: f64, dim: usize, b: PowerLogTerm) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension(dim));
        }
        if !(p > 0.0) {
            return Err(Error::OutOfRange(format!("p must be positive, got {p}")));
        }
        if !(b.c > 0.0) {
            return Err(Error::OutOfRange("b must be positive".into()));
        }
        Ok(RadialProfile { expr: RadialExpr::Integral { p, b }, dim, t_max: 1.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn t_max(&self) -> f64 {
        self.t_max
    }
    pub fn expr(&self) -> &RadialExpr {
        &self.expr
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t > self.t_max {
            return 0.0;
        }
        match &self.expr {
            RadialExpr::Sum(terms) => terms.iter().map(|x| x.eval(t)).sum(),
            RadialExpr::Integral { .. } => self.ln_eval_neg_log(-t.ln()).exp(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        if t > self.t_max {
            return 0.0;
        }
        match &self.expr {
            RadialExpr::Sum(terms) => terms.iter().map(|x| x.derivative(t)).sum(),
            RadialExpr::Integral { p, b } => -t.powf(-(self.dim as f64) / p) * b.eval(t) / t,
        }
    }

    /// `ln g(e^{-σ})`, evaluated without forming `e^{-σ}` where possible.
    pub fn ln_eval_neg_log(&self, sigma: f64) -> f64 {
        if (-sigma).exp() > self.t_max {
            return f64::NEG_INFINITY;
        }
        match &self.expr {
            RadialExpr::Sum(terms) if terms.iter().all(|x| x.c > 0.0) => {
                let logs: Vec<f64> = terms.iter().map(|x| x.ln_eval_neg_log(sigma)).collect();
                let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
            }
            RadialExpr::Sum(terms) => terms.iter().map(|x| x.eval((-sigma).exp())).sum::<f64>().ln(),
            RadialExpr::Integral { p, b } => {
                if sigma <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                // g(e^{-σ}) = e^{σκ} ∫_0^σ e^{-vκ} b(e^{-(σ-v)}) dv with κ = d/p
                let kappa = self.dim as f64 / p;
                let lnb0 = b.ln_eval_neg_log(sigma);
                let upper = sigma.min(60.0 / kappa);
                let q = simpson(|v| (-v * kappa + b.ln_eval_neg_log(sigma - v) - lnb0).exp(), 0.0, upper, 1e-12);
                sigma * kappa + lnb0 + q.value.ln()
            }
        }
    }

    /// Signs of consecutive differences over `10^4` log-spaced points of `(0, t_max]`.
    fn monotone_direction(&self) -> (bool, bool) {
        let lo = (self.t_max * 1e-12).ln();
        let hi = self.t_max.ln();
        let mut non_inc = true;
        let mut non_dec = true;
        let mut prev = self.eval(lo.exp());
        for i in 1..MONOTONE_SAMPLES {
            let t = (lo + (hi - lo) * i as f64 / (MONOTONE_SAMPLES - 1) as f64).exp().min(self.t_max);
            let v = self.eval(t);
            let slack = 1e-12 * v.abs().max(prev.abs());
            if v > prev + slack {
                non_inc = false;
            }
            if v < prev - slack {
                non_dec = false;
            }
            prev = v;
        }
        (non_inc, non_dec)
    }

    pub fn is_monotone(&self) -> bool {
        let (a, b) = self.monotone_direction();
        a || b
    }

    /// Certifies that `g` is non-increasing on `(0, t_max]`.
    pub fn check_monotone(&self) -> Result<()> {
        match self.monotone_direction() {
            (true, _) => Ok(()),
            _ => Err(Error::NotMonotone("radial profile increases somewhere on (0, t_max]".into())),
        }
    }
}

/// Samples `g(|x|)` at cell centers; zero outside the support ball.
pub fn radial_to_grid(profile: &RadialProfile, n: usize, domain: (f64, f64)) -> Result<GridFunction> {
    if profile.dim() > 2 {
        return Err(Error::BadDimension(profile.dim()));
    }
    let side = domain.1 - domain.0;
    let probe = GridFunction::from_values(profile.dim(), n, domain, vec![0.0; n.pow(profile.dim() as u32)])?;
    let mut values = Vec::with_capacity(probe.len());
    for i in 0..probe.len() {
        let c = probe.center(i);
        let r = (c[0] * c[0] + c[1] * c[1]).sqrt();
        if r <= 1e-12 * side {
            return Err(Error::CenterAtOrigin(i));
        }
        let v = if r <= profile.t_max() { profile.eval(r) } else { 0.0 };
        if !v.is_finite() {
            return Err(Error::NonFinite { index: i, value: v });
        }
        values.push(v);
    }
    GridFunction::from_values(profile.dim(), n, domain, values)
}
