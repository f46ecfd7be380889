//! Finite differences, moduli of smoothness and Besov-type norms on cubes and on the torus.
//!
//! Steps `h` are restricted to whole-cell shifts; on a cube the difference lives on
//! `Q_{kh} = {x : x, x + kh ∈ Q}`, on the torus it wraps around.

use crate::error::{Error, Result};
use crate::grid::{GridFunction, PeriodicGridFunction};
use crate::norms::{lz_norm, LzParams};
use crate::rearrange::RearrangementProfile;
use rayon::prelude::*;

/// A whole-cell step vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shift {
    pub dx: i64,
    pub dy: i64,
}

impl Shift {
    pub fn new(dx: i64, dy: i64) -> Self {
        Shift { dx, dy }
    }
    fn cells_len(&self) -> f64 {
        ((self.dx * self.dx + self.dy * self.dy) as f64).sqrt()
    }
}

/// Values of a difference on its (possibly restricted) domain, each carrying `cell_measure`.
#[derive(Debug, Clone, PartialEq)]
pub struct Difference {
    pub values: Vec<f64>,
    pub cell_measure: f64,
}

impl Difference {
    pub fn rearrangement(&self) -> RearrangementProfile {
        RearrangementProfile::from_cells(&self.values, self.cell_measure)
    }
}

fn binomials(k: usize) -> Vec<f64> {
    let mut c = vec![1.0f64; k + 1];
    for j in 1..=k {
        c[j] = c[j - 1] * (k + 1 - j) as f64 / j as f64;
    }
    // sign (−1)^{k−j}
    c.iter().enumerate().map(|(j, v)| if (k - j).is_multiple_of(2) { *v } else { -v }).collect()
}

/// Something on which whole-cell differences can be taken.
pub trait Shiftable: Sync {
    fn cell_width(&self) -> f64;
    fn cell_measure(&self) -> f64;
    fn domain_measure(&self) -> f64;
    /// Non-equivalent shifts of positive length at most `max_len` (physical units), by increasing length.
    fn shifts(&self, max_len: f64, k: usize) -> Vec<Shift>;
    fn difference(&self, h: Shift, k: usize) -> Result<Difference>;
}

impl Shiftable for GridFunction {
    fn cell_width(&self) -> f64 {
        GridFunction::cell_width(self)
    }
    fn cell_measure(&self) -> f64 {
        GridFunction::cell_measure(self)
    }
    fn domain_measure(&self) -> f64 {
        self.total_measure()
    }

    fn shifts(&self, max_len: f64, k: usize) -> Vec<Shift> {
        let n = self.cells_per_side() as i64;
        let reach = max_len / self.cell_width() * (1.0 + 1e-12);
        let m = reach.min(n as f64).floor() as i64;
        let fits = |h: &Shift| (k as f64) * h.cells_len() < n as f64;
        let mut out: Vec<Shift> = if self.dim() == 1 {
            (1..=m).map(|dx| Shift::new(dx, 0)).filter(fits).collect()
        } else {
            // half-plane representatives: h and −h give the same norm
            let mut v = Vec::new();
            for dy in 0..=m {
                for dx in -m..=m {
                    let h = Shift::new(dx, dy);
                    if (dy > 0 || dx > 0) && h.cells_len() <= reach && fits(&h) {
                        v.push(h);
                    }
                }
            }
            v
        };
        out.sort_by(|a, b| a.cells_len().total_cmp(&b.cells_len()).then(a.dy.cmp(&b.dy)).then(a.dx.cmp(&b.dx)));
        out
    }

    fn difference(&self, h: Shift, k: usize) -> Result<Difference> {
        let n = self.cells_per_side() as i64;
        if (k as f64) * h.cells_len() * self.cell_width() >= self.side() {
            return Err(Error::OutOfRange(format!("|{k}h| reaches the side length; Q_kh is empty")));
        }
        if self.dim() == 1 && h.dy != 0 {
            return Err(Error::OutOfRange("one-dimensional grid needs dy = 0".into()));
        }
        let ki = k as i64;
        let range = |d: i64| ((-ki * d).max(0), (n - ki * d).min(n));
        let (x0, x1) = range(h.dx);
        let (y0, y1) = if self.dim() == 2 { range(h.dy) } else { (0, 1) };
        let coef = binomials(k);
        let v = self.values();
        let mut values = Vec::with_capacity(((x1 - x0) * (y1 - y0)).max(0) as usize);
        for y in y0..y1 {
            for x in x0..x1 {
                let mut acc = 0.0;
                for (j, c) in coef.iter().enumerate() {
                    let (xx, yy) = (x + j as i64 * h.dx, y + j as i64 * h.dy);
                    acc += c * v[(yy * n + xx) as usize];
                }
                values.push(acc);
            }
        }
        Ok(Difference { values, cell_measure: self.cell_measure() })
    }
}

impl Shiftable for PeriodicGridFunction {
    fn cell_width(&self) -> f64 {
        self.spacing()
    }
    fn cell_measure(&self) -> f64 {
        self.spacing()
    }
    fn domain_measure(&self) -> f64 {
        2.0 * std::f64::consts::PI
    }
    fn shifts(&self, max_len: f64, _k: usize) -> Vec<Shift> {
        let m = (max_len / self.spacing() * (1.0 + 1e-12)).floor() as i64;
        (1..=m.min(self.len() as i64 / 2)).map(|dx| Shift::new(dx, 0)).collect()
    }
    fn difference(&self, h: Shift, k: usize) -> Result<Difference> {
        let m = self.len() as i64;
        let coef = binomials(k);
        let v = self.samples();
        let values = (0..m).map(|i| coef.iter().enumerate().map(|(j, c)| c * v[(i + j as i64 * h.dx).rem_euclid(m) as usize]).sum()).collect();
        Ok(Difference { values, cell_measure: self.spacing() })
    }
}

/// `Δ^k_h f` on a cube grid.
pub fn difference(f: &GridFunction, h: Shift, k: usize) -> Result<Difference> {
    f.difference(h, k)
}

/// `Δ^k_h f` on the torus with wraparound.
pub fn difference_torus(f: &PeriodicGridFunction, h: i64, k: usize) -> Result<Difference> {
    f.difference(Shift::new(h, 0), k)
}

/// A modulus value; `unresolved` marks `t` below one cell, where the value is reported as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusValue {
    pub value: f64,
    pub unresolved: bool,
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::OutOfRange("difference order k must be at least 1".into()));
    }
    Ok(())
}

/// Norm of `Δ^k_h f` for every admissible shift up to `max_t`, by increasing length.
pub fn shift_norms(f: &dyn Shiftable, max_t: f64, params: &LzParams, k: usize) -> Result<Vec<(f64, f64)>> {
    check_order(k)?;
    let shifts = f.shifts(max_t, k);
    let w = f.cell_width();
    shifts
        .par_iter()
        .map(|h| {
            let d = f.difference(*h, k)?;
            Ok((h.cells_len() * w, lz_norm(&d.rearrangement(), params)?))
        })
        .collect()
}

/// `ω_k(f,t) = sup_{|h| ≤ t} ‖Δ^k_h f‖` at each `t`, sharing the difference norms across `ts`.
pub fn modulus_curve(f: &dyn Shiftable, ts: &[f64], params: &LzParams, k: usize) -> Result<Vec<ModulusValue>> {
    let max_t = ts.iter().cloned().fold(0.0, f64::max);
    let norms = shift_norms(f, max_t, params, k)?;
    let w = f.cell_width();
    Ok(ts
        .iter()
        .map(|&t| {
            if t < w * (1.0 - 1e-12) {
                return ModulusValue { value: 0.0, unresolved: true };
            }
            let value = norms.iter().filter(|(len, _)| *len <= t * (1.0 + 1e-12)).map(|x| x.1).fold(0.0, f64::max);
            ModulusValue { value, unresolved: false }
        })
        .collect())
}

pub fn modulus(f: &dyn Shiftable, t: f64, params: &LzParams, k: usize) -> Result<ModulusValue> {
    if !(t > 0.0) {
        return Err(Error::OutOfRange(format!("t must be positive, got {t}")));
    }
    Ok(modulus_curve(f, &[t], params, k)?[0])
}

/// `(s, ξ, r, k)` of a Besov-type norm over a Lorentz–Zygmund base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    pub s: f64,
    pub xi: f64,
    pub r: f64,
    pub base: LzParams,
    pub k: usize,
    pub homogeneous: bool,
}

impl BesovParams {
    pub fn new(s: f64, xi: f64, r: f64, base: LzParams, k: usize, homogeneous: bool) -> Result<Self> {
        check_order(k)?;
        if !(s >= 0.0) || !(r > 0.0) || !xi.is_finite() {
            return Err(Error::OutOfRange(format!("need s ≥ 0, r > 0, finite ξ; got s={s} r={r} ξ={xi}")));
        }
        if s > 0.0 && (k as f64) <= s {
            return Err(Error::Gate(format!("difference order k = {k} must exceed s = {s}")));
        }
        Ok(BesovParams { s, xi, r, base, k, homogeneous })
    }
}

/// Dyadic scales `t_j = side · 2^{-j}` for `j = 0..=log2(N) − 2`.
pub fn dyadic_scales(side: f64, n: usize) -> Vec<f64> {
    let top = (n.trailing_zeros() as i32 - 2).max(0);
    (0..=top).map(|j| side * 2f64.powi(-j)).collect()
}

/// Terms `t_j^{-s}(1 + |log t_j|)^ξ ω_k(f, t_j)` of the dyadic Besov sum.
pub fn besov_terms(f: &dyn Shiftable, scales: &[f64], bp: &BesovParams) -> Result<Vec<f64>> {
    let om = modulus_curve(f, scales, &bp.base, bp.k)?;
    Ok(scales.iter().zip(om).map(|(&t, w)| t.powf(-bp.s) * (1.0 + t.ln().abs()).powf(bp.xi) * w.value).collect())
}

fn lr_sum(terms: &[f64], r: f64) -> f64 {
    if r.is_infinite() {
        terms.iter().cloned().fold(0.0, f64::max)
    } else {
        terms.iter().map(|x| x.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Besov-type norm with the integral over `t` replaced by its dyadic sum.
pub fn besov_norm_on(f: &dyn Shiftable, scales: &[f64], bp: &BesovParams, f_norm: f64) -> Result<f64> {
    let semi = lr_sum(&besov_terms(f, scales, bp)?, bp.r);
    Ok(if bp.homogeneous { semi } else { f_norm + semi })
}

pub fn besov_norm(f: &GridFunction, bp: &BesovParams) -> Result<f64> {
    let scales = dyadic_scales(f.side(), f.cells_per_side());
    let f_norm = if bp.homogeneous { 0.0 } else { lz_norm(&crate::rearrange::rearrange_exact(f), &bp.base)? };
    besov_norm_on(f, &scales, bp, f_norm)
}

/// `ω_l`, `ω_k` and `t^k ∫_t^∞ ω_l(u) u^{-k} du/u` on a grid of `t`, with the observed constants.
#[derive(Debug, Clone, PartialEq)]
pub struct MarchaudReport {
    pub t: Vec<f64>,
    pub omega_l: Vec<f64>,
    pub omega_k: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max ω_l/ω_k`
    pub lower_constant: f64,
    /// `max ω_k/rhs`
    pub upper_constant: f64,
}

pub fn marchaud_check(f: &dyn Shiftable, k: usize, l: usize, t_grid: &[f64], params: &LzParams) -> Result<MarchaudReport> {
    if !(k < l) {
        return Err(Error::OutOfRange(format!("Marchaud check needs k < l, got k={k} l={l}")));
    }
    // ω_l is a step function of u that jumps at shift lengths and is constant beyond the largest
    let norms = shift_norms(f, f64::INFINITY, params, l)?;
    let mut jumps: Vec<(f64, f64)> = Vec::new();
    let mut best = 0.0f64;
    for (len, v) in norms {
        best = best.max(v);
        jumps.push((len, best));
    }
    let omega_l_at = |u: f64| jumps.iter().filter(|(len, _)| *len <= u * (1.0 + 1e-12)).map(|x| x.1).fold(0.0, f64::max);
    let kf = k as f64;
    let tail = |t: f64| {
        // ∫_t^∞ ω_l(u) u^{-k-1} du, exact for the step function
        let mut pts: Vec<f64> = jumps.iter().map(|x| x.0).filter(|&u| u > t).collect();
        pts.insert(0, t);
        let mut acc = 0.0;
        for (i, &a) in pts.iter().enumerate() {
            let val = omega_l_at(a);
            let right = if i + 1 < pts.len() { pts[i + 1].powf(-kf) } else { 0.0 };
            acc += val * (a.powf(-kf) - right) / kf;
        }
        acc
    };
    let omega_k: Vec<f64> = modulus_curve(f, t_grid, params, k)?.into_iter().map(|m| m.value).collect();
    let omega_l: Vec<f64> = t_grid.iter().map(|&t| omega_l_at(t)).collect();
    let rhs: Vec<f64> = t_grid.iter().map(|&t| t.powf(kf) * tail(t)).collect();
    let ratio_max = |a: &[f64], b: &[f64]| a.iter().zip(b).filter(|(_, &y)| y > 0.0).map(|(x, y)| x / y).fold(0.0, f64::max);
    Ok(MarchaudReport { lower_constant: ratio_max(&omega_l, &omega_k), upper_constant: ratio_max(&omega_k, &rhs), t: t_grid.to_vec(), omega_l, omega_k, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid_function;
    use std::f64::consts::PI;

    fn sup_norm() -> LzParams {
        LzParams::new(f64::INFINITY, f64::INFINITY, 0.0, 1.0).unwrap()
    }

    #[test]
    fn second_difference_kills_affine() {
        let f = make_grid_function(1, 16, (0.0, 1.0), |x| 3.0 * x[0] - 1.0).unwrap();
        for dx in 1..5 {
            let d = difference(&f, Shift::new(dx, 0), 2).unwrap();
            assert!(d.values.iter().all(|v| v.abs() < 1e-14));
            assert_eq!(d.values.len(), 16 - 2 * dx as usize);
        }
    }

    #[test]
    fn second_difference_of_square() {
        let f = make_grid_function(1, 32, (0.0, 1.0), |x| x[0] * x[0]).unwrap();
        let delta = 1.0 / 32.0;
        let d = difference(&f, Shift::new(1, 0), 2).unwrap();
        assert!(d.values.iter().all(|v| (v - 2.0 * delta * delta).abs() < 1e-15));
    }

    #[test]
    fn cosine_first_difference_on_torus() {
        let f = PeriodicGridFunction::from_fn(256, f64::cos).unwrap();
        let h = f.spacing();
        for m in [1i64, 5, 64] {
            let d = difference_torus(&f, m, 1).unwrap();
            let x0 = 0.0;
            assert!((d.values[0] - (-2.0 * (m as f64 * h / 2.0).sin() * (x0 + m as f64 * h / 2.0).sin())).abs() < 1e-14);
        }
        let params = LzParams::new(f64::INFINITY, f64::INFINITY, 0.0, 2.0 * PI).unwrap();
        for m in [2usize, 8, 32, 128] {
            let t = m as f64 * h;
            let w = modulus(&f, t, &params, 1).unwrap();
            assert!(!w.unresolved);
            // sin(x + t/2) reaches 1 on the grid for even m
            assert!((w.value - 2.0 * (t / 2.0).sin()).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn modulus_below_one_cell_is_flagged() {
        let f = make_grid_function(1, 8, (0.0, 1.0), |x| x[0]).unwrap();
        let w = modulus(&f, 0.05, &sup_norm(), 1).unwrap();
        assert_eq!(w, ModulusValue { value: 0.0, unresolved: true });
    }

    #[test]
    fn constants_have_zero_modulus_and_besov_seminorm() {
        let f = make_grid_function(2, 8, (0.0, 1.0), |_| 2.0).unwrap();
        let curve = modulus_curve(&f, &[0.125, 0.25, 0.5], &sup_norm(), 2).unwrap();
        assert!(curve.iter().all(|w| w.value == 0.0));
        let bp = BesovParams::new(0.5, 0.0, 2.0, sup_norm(), 1, false).unwrap();
        assert_eq!(besov_norm(&f, &bp).unwrap(), 2.0);
    }

    #[test]
    fn rejects_empty_restricted_domain() {
        let f = make_grid_function(1, 8, (0.0, 1.0), |x| x[0]).unwrap();
        assert!(difference(&f, Shift::new(4, 0), 2).is_err());
        assert!(difference(&f, Shift::new(3, 0), 2).is_ok());
    }

    #[test]
    fn besov_order_gate() {
        assert!(matches!(BesovParams::new(1.0, 0.0, 1.0, sup_norm(), 1, true), Err(Error::Gate(_))));
    }

    #[test]
    fn two_dimensional_shift_sets() {
        let f = make_grid_function(2, 8, (0.0, 1.0), |x| x[0] * x[1]).unwrap();
        let s = Shiftable::shifts(&f, 1.5 / 8.0, 1);
        // |h| ≤ 1.5 cells in the upper half-plane: (1,0), (0,1), (−1,1), (1,1)
        assert_eq!(s.len(), 4);
        let d = difference(&f, Shift::new(-1, 1), 1).unwrap();
        assert_eq!(d.values.len(), 49);
    }
}
