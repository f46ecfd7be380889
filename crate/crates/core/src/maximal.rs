//! Local maximal functions over dyadic cubes: mean oscillation `f#`, the
//! Strömberg–Jawerth–Torchinsky function `M#_s` and its variant `M̄#_s` with the center fixed at the mean.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use rayon::prelude::*;

/// An axis-aligned cube of `side × side` cells with lower corner `(x0, y0)` in cell units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cube {
    pub x0: usize,
    pub y0: usize,
    pub side: usize,
}

/// Dyadic cubes of every level, optionally with the translates by half a side along each axis.
#[derive(Debug, Clone)]
pub struct DyadicCubeFamily {
    dim: usize,
    n: usize,
    cubes: Vec<Cube>,
}

impl DyadicCubeFamily {
    pub fn new(dim: usize, n: usize, shifted: bool) -> Self {
        let mut cubes = Vec::new();
        let mut side = n;
        while side >= 1 {
            let step = if shifted && side >= 2 { side / 2 } else { side };
            let starts: Vec<usize> = (0..).map(|k| k * step).take_while(|&s| s + side <= n).collect();
            let ys: &[usize] = if dim == 2 { &starts } else { &[0] };
            for &y0 in ys {
                for &x0 in &starts {
                    cubes.push(Cube { x0, y0, side });
                }
            }
            side /= 2;
        }
        DyadicCubeFamily { dim, n, cubes }
    }

    pub fn for_grid(f: &GridFunction, shifted: bool) -> Self {
        Self::new(f.dim(), f.cells_per_side(), shifted)
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Row-major indices of the cells of `c`.
    pub fn cells(&self, c: &Cube) -> impl Iterator<Item = usize> + '_ {
        let rows = if self.dim == 2 { c.side } else { 1 };
        let (n, c) = (self.n, *c);
        (0..rows).flat_map(move |r| (0..c.side).map(move |k| (c.y0 + r) * n + c.x0 + k))
    }

    /// Evaluates `op` on the values of every cube and returns, per cell, the maximum over the
    /// cubes containing it.
    pub fn sup_over_cubes<F>(&self, values: &[f64], op: F) -> Vec<f64>
    where
        F: Fn(&mut [f64]) -> f64 + Sync,
    {
        let per_cube: Vec<f64> = self
            .cubes
            .par_iter()
            .map(|c| {
                let mut buf: Vec<f64> = self.cells(c).map(|i| values[i]).collect();
                op(&mut buf)
            })
            .collect();
        let mut out = vec![0.0f64; values.len()];
        for (c, v) in self.cubes.iter().zip(per_cube) {
            for i in self.cells(c) {
                if v > out[i] {
                    out[i] = v;
                }
            }
        }
        out
    }
}

/// Mean, accumulated relative to the first value so that constant data gives exact deviations.
fn mean(v: &[f64]) -> f64 {
    let v0 = v[0];
    v0 + v.iter().map(|x| x - v0).sum::<f64>() / v.len() as f64
}

/// `(1/|Q|) ∫_Q |f − f_Q|` for the cell values of one cube.
pub fn mean_oscillation(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m).abs()).sum::<f64>() / values.len() as f64
}

/// Rounds `x` to the nearest integer when it is one up to floating noise.
fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("s must lie in (0,1), got {s}")))
    }
}

/// `inf_c inf{α ≥ 0 : #{|f − c| > α} < s·m}` on one cube of `m` cells: half the width of the
/// shortest run of sorted values that leaves fewer than `s·m` cells outside.
pub fn sjt_on_cube(values: &mut [f64], s: f64) -> f64 {
    let m = values.len();
    let max_out = snap(s * m as f64).ceil() as usize - 1;
    let w = m - max_out.min(m - 1);
    values.sort_unstable_by(f64::total_cmp);
    values.windows(w).map(|win| win[w - 1] - win[0]).fold(f64::INFINITY, f64::min) * 0.5
}

/// `inf{α ≥ 0 : #{|f − f_Q| > α} ≤ s·m}` on one cube: the `(⌊s·m⌋ + 1)`-th largest deviation.
pub fn sjt_modified_on_cube(values: &mut [f64], s: f64) -> f64 {
    let m = values.len();
    let c = mean(values);
    for v in values.iter_mut() {
        *v = (*v - c).abs();
    }
    let k = (snap(s * m as f64).floor() as usize).min(m - 1);
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    values[k]
}

pub fn sharp_maximal(f: &GridFunction, shifted: bool) -> GridFunction {
    let fam = DyadicCubeFamily::for_grid(f, shifted);
    f.with_values(fam.sup_over_cubes(f.values(), |v| mean_oscillation(v)))
}

pub fn sjt_maximal(f: &GridFunction, s: f64, shifted: bool) -> Result<GridFunction> {
    check_s(s)?;
    let fam = DyadicCubeFamily::for_grid(f, shifted);
    Ok(f.with_values(fam.sup_over_cubes(f.values(), |v| sjt_on_cube(v, s))))
}

pub fn sjt_modified(f: &GridFunction, s: f64, shifted: bool) -> Result<GridFunction> {
    check_s(s)?;
    let fam = DyadicCubeFamily::for_grid(f, shifted);
    Ok(f.with_values(fam.sup_over_cubes(f.values(), |v| sjt_modified_on_cube(v, s))))
}

/// `sup_x f#(x)` over the shifted family.
pub fn bmo_norm(f: &GridFunction) -> f64 {
    sharp_maximal(f, true).sup_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid_function;

    fn step() -> GridFunction {
        GridFunction::from_values(1, 4, (0.0, 1.0), vec![0.0, 0.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(DyadicCubeFamily::new(1, 8, false).cubes().len(), 15);
        // sides 8,4,2 have 1,3,7 cubes; side 1 has 8
        assert_eq!(DyadicCubeFamily::new(1, 8, true).cubes().len(), 19);
        assert_eq!(DyadicCubeFamily::new(2, 4, false).cubes().len(), 21);
        let fam = DyadicCubeFamily::new(2, 4, true);
        let c = Cube { x0: 1, y0: 2, side: 2 };
        assert!(fam.cubes().contains(&c));
        assert_eq!(fam.cells(&c).collect::<Vec<_>>(), vec![9, 10, 13, 14]);
    }

    #[test]
    fn step_function_oscillation() {
        assert_eq!(sharp_maximal(&step(), false).values(), &[0.5; 4]);
        assert_eq!(sharp_maximal(&step(), true).values(), &[0.5; 4]);
        assert_eq!(bmo_norm(&step()), 0.5);
    }

    #[test]
    fn constants_have_no_oscillation() {
        let f = make_grid_function(2, 8, (0.0, 1.0), |_| 4.2).unwrap();
        assert_eq!(sharp_maximal(&f, true).sup_norm(), 0.0);
        assert_eq!(sjt_maximal(&f, 0.1, true).unwrap().sup_norm(), 0.0);
        assert_eq!(sjt_modified(&f, 0.1, true).unwrap().sup_norm(), 0.0);
        assert_eq!(bmo_norm(&f), 0.0);
    }

    #[test]
    fn sjt_single_cube() {
        assert_eq!(sjt_on_cube(&mut [0.0, 0.0, 0.0, 10.0], 0.3), 0.0);
        // fewer than 0.25·4 = 1 cell may stay outside, so the window spans everything
        assert_eq!(sjt_on_cube(&mut [0.0, 0.0, 0.0, 10.0], 0.25), 5.0);
        // (1 − s)·4 < 1: a single cell suffices
        assert_eq!(sjt_on_cube(&mut [3.0, 1.0, 4.0, 1.5], 0.9), 0.0);
    }

    #[test]
    fn modified_single_cube() {
        assert_eq!(sjt_modified_on_cube(&mut [0.0, 0.0, 0.0, 10.0], 0.25), 2.5);
        assert_eq!(sjt_modified_on_cube(&mut [0.0, 0.0, 0.0, 10.0], 0.75), 2.5);
        assert_eq!(sjt_modified_on_cube(&mut [0.0, 0.0, 0.0, 10.0], 0.2), 7.5);
    }

    #[test]
    fn s_range() {
        assert!(sjt_maximal(&step(), 0.0, true).is_err());
        assert!(sjt_modified(&step(), 1.0, true).is_err());
    }
}
