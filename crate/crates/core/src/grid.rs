//! Piecewise-constant grid functions on a cube and sampled functions on the torus.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// A function that is constant on each cell of a uniform `N^d` grid over `[a,b]^d`.
///
/// Values are stored row-major with the first coordinate varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: usize,
    n: usize,
    a: f64,
    b: f64,
    values: Vec<f64>,
}

fn check_shape(dim: usize, n: usize, a: f64, b: f64) -> Result<()> {
    if dim != 1 && dim != 2 {
        return Err(Error::BadDimension(dim));
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::BadDomain { a, b });
    }
    Ok(())
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

/// Samples `generator` at every cell center.
pub fn make_grid_function<F>(dim: usize, n: usize, domain: (f64, f64), generator: F) -> Result<GridFunction>
where
    F: Fn(&[f64]) -> f64,
{
    let (a, b) = domain;
    check_shape(dim, n, a, b)?;
    let h = (b - a) / n as f64;
    let len = n.pow(dim as u32);
    let mut values = Vec::with_capacity(len);
    let mut x = [0.0; 2];
    for i in 0..len {
        x[0] = a + ((i % n) as f64 + 0.5) * h;
        if dim == 2 {
            x[1] = a + ((i / n) as f64 + 0.5) * h;
        }
        let v = generator(&x[..dim]);
        if !v.is_finite() {
            return Err(Error::NonFinite { index: i, value: v });
        }
        values.push(v);
    }
    Ok(GridFunction { dim, n, a, b, values })
}

impl GridFunction {
    pub fn from_values(dim: usize, n: usize, domain: (f64, f64), values: Vec<f64>) -> Result<Self> {
        check_shape(dim, n, domain.0, domain.1)?;
        let expected = n.pow(dim as u32);
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        check_finite(&values)?;
        Ok(GridFunction { dim, n, a: domain.0, b: domain.1, values })
    }

    /// Same grid, new values. Panics on length mismatch.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.values.len());
        GridFunction { values, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn cells_per_side(&self) -> usize {
        self.n
    }
    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }
    pub fn side(&self) -> f64 {
        self.b - self.a
    }
    pub fn cell_width(&self) -> f64 {
        self.side() / self.n as f64
    }
    pub fn cell_measure(&self) -> f64 {
        self.cell_width().powi(self.dim as i32)
    }
    pub fn total_measure(&self) -> f64 {
        self.side().powi(self.dim as i32)
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Center of cell `i`; the second coordinate is 0 in one dimension.
    pub fn center(&self, i: usize) -> [f64; 2] {
        let h = self.cell_width();
        let x = self.a + ((i % self.n) as f64 + 0.5) * h;
        let y = if self.dim == 2 { self.a + ((i / self.n) as f64 + 0.5) * h } else { 0.0 };
        [x, y]
    }

    /// `∫ |f|` over the domain.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.cell_measure()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Self {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    /// Serializes as a `# dim,N,a,b` header line followed by one value per line.
    pub fn to_csv(&self) -> String {
        let mut s = format!("# {},{},{},{}\n", self.dim, self.n, self.a, self.b);
        for v in &self.values {
            s.push_str(&format!("{}\n", v));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, f64, f64)> = None;
        let mut values = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if header.is_some() {
                    return Err(Error::Parse { line: line_no, msg: "duplicate header".into() });
                }
                let fields: Vec<&str> = rest.split(',').map(str::trim).collect();
                if fields.len() != 4 {
                    return Err(Error::Parse { line: line_no, msg: "header must be `# dim,N,a,b`".into() });
                }
                let bad = |m: &str| Error::Parse { line: line_no, msg: m.to_string() };
                let dim = fields[0].parse().map_err(|_| bad("bad dim"))?;
                let n = fields[1].parse().map_err(|_| bad("bad N"))?;
                let a = fields[2].parse().map_err(|_| bad("bad a"))?;
                let b = fields[3].parse().map_err(|_| bad("bad b"))?;
                header = Some((dim, n, a, b));
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse { line: line_no, msg: "missing `# dim,N,a,b` header".into() });
            }
            let v: f64 = line.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("not a number: {line:?}") })?;
            if !v.is_finite() {
                return Err(Error::Parse { line: line_no, msg: "non-finite value".into() });
            }
            values.push(v);
        }
        let (dim, n, a, b) = header.ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        GridFunction::from_values(dim, n, (a, b), values)
    }
}

/// Samples of a function on `[0, 2π)` at `x_m = 2πm/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGridFunction {
    samples: Vec<f64>,
}

impl PeriodicGridFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        let m = samples.len();
        if !m.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(m));
        }
        if m < 4 {
            return Err(Error::OutOfRange(format!("torus grid needs at least 4 samples, got {m}")));
        }
        check_finite(&samples)?;
        Ok(PeriodicGridFunction { samples })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(m: usize, f: F) -> Result<Self> {
        let h = 2.0 * PI / m as f64;
        Self::new((0..m).map(|i| f(i as f64 * h)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.samples.len() as f64
    }

    /// `(∫_T |f|^2)^{1/2}` by the trapezoid rule, exact for trigonometric polynomials of degree < M/2.
    pub fn l2_norm(&self) -> f64 {
        (self.samples.iter().map(|v| v * v).sum::<f64>() * self.spacing()).sqrt()
    }

    /// View as a one-dimensional cell grid on `[0, 2π]`; sample `m` becomes the value on cell `m`.
    pub fn to_grid(&self) -> GridFunction {
        GridFunction { dim: 1, n: self.samples.len(), a: 0.0, b: 2.0 * PI, values: self.samples.clone() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# 1,{},0,{}\n", self.samples.len(), 2.0 * PI);
        for v in &self.samples {
            s.push_str(&format!("{}\n", v));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_generator() {
        let g = make_grid_function(1, 4, (0.0, 1.0), |_| 3.0).unwrap();
        assert_eq!(g.values(), &[3.0, 3.0, 3.0, 3.0]);
    }

    #[test]
    fn row_major_centers() {
        let g = make_grid_function(2, 2, (0.0, 1.0), |x| x[0]).unwrap();
        assert_eq!(g.values(), &[0.25, 0.75, 0.25, 0.75]);
        assert_eq!(g.center(2), [0.25, 0.75]);
    }

    #[test]
    fn log_abs_avoids_origin() {
        let g = make_grid_function(1, 8, (-1.0, 1.0), |x| x[0].abs().ln().abs()).unwrap();
        assert!(g.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(make_grid_function(1, 6, (0.0, 1.0), |_| 0.0), Err(Error::NotPowerOfTwo(6)));
        let e = make_grid_function(1, 4, (0.0, 1.0), |x| if x[0] > 0.5 { f64::NAN } else { 1.0 });
        assert!(matches!(e, Err(Error::NonFinite { index: 2, .. })));
    }

    #[test]
    fn measure_bookkeeping() {
        let g = make_grid_function(2, 64, (-1.5, 1.5), |_| 1.0).unwrap();
        let rel = (g.cell_measure() * 4096.0 - g.total_measure()).abs() / g.total_measure();
        assert!(rel < 1e-12);
    }

    #[test]
    fn csv_round_trip() {
        let g = make_grid_function(2, 4, (-1.0, 1.0), |x| x[0] * 0.1 + x[1].sin()).unwrap();
        assert_eq!(GridFunction::from_csv(&g.to_csv()).unwrap(), g);
    }

    #[test]
    fn csv_reports_line() {
        let e = GridFunction::from_csv("# 1,4,0,1\n1\n2\nx\n4\n");
        assert_eq!(e, Err(Error::Parse { line: 4, msg: "not a number: \"x\"".into() }));
    }

    #[test]
    fn torus_guards() {
        assert!(PeriodicGridFunction::new(vec![0.0; 2]).is_err());
        assert!(PeriodicGridFunction::new(vec![0.0; 12]).is_err());
    }
}
