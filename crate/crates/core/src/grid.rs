//! Structured sampling grids on the parameter domain.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::Lattice;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// Polar grid `center + r e^{i theta}`; the angular direction wraps.
    Annulus {
        center: Complex64,
        rmin: f64,
        rmax: f64,
    },
    /// Axis-aligned rectangle with corners `min` and `max`.
    Rect { min: Complex64, max: Complex64 },
    /// The closed fundamental period parallelogram `s + t tau`, `s, t` in `[0, 1]`.
    Fpp,
}

/// A grid kind with `n` samples in the first direction and `m` in the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    pub n: usize,
    pub m: usize,
}

/// Sample points laid out row-major: index `i * m + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub points: Vec<Complex64>,
    pub n: usize,
    pub m: usize,
    /// The second direction closes up (`j = m - 1` neighbours `j = 0`).
    pub wraps: bool,
}

impl GridSpec {
    pub fn annulus(rmin: f64, rmax: f64, n: usize, m: usize) -> Self {
        Self {
            kind: GridKind::Annulus {
                center: Complex64::new(0.0, 0.0),
                rmin,
                rmax,
            },
            n,
            m,
        }
    }

    pub fn fpp(n: usize, m: usize) -> Self {
        Self {
            kind: GridKind::Fpp,
            n,
            m,
        }
    }

    pub fn build(&self, lattice: Option<&Lattice>) -> Result<Grid> {
        if self.n < 2 || self.m < 2 {
            return Err(Error::InvalidInput(format!(
                "grid must be at least 2x2, got {}x{}",
                self.n, self.m
            )));
        }
        let frac = |i: usize, n: usize| i as f64 / (n - 1) as f64;
        let (n, m) = (self.n, self.m);
        let mut points = Vec::with_capacity(n * m);
        let wraps = match self.kind {
            GridKind::Annulus { center, rmin, rmax } => {
                if !(rmin > 0.0 && rmax > rmin) {
                    return Err(Error::InvalidInput(format!(
                        "annulus needs 0 < rmin < rmax, got [{rmin}, {rmax}]"
                    )));
                }
                for i in 0..n {
                    let r = rmin + (rmax - rmin) * frac(i, n);
                    for j in 0..m {
                        let theta = 2.0 * PI * j as f64 / m as f64;
                        points.push(center + Complex64::from_polar(r, theta));
                    }
                }
                true
            }
            GridKind::Rect { min, max } => {
                for i in 0..n {
                    let x = min.re + (max.re - min.re) * frac(i, n);
                    for j in 0..m {
                        let y = min.im + (max.im - min.im) * frac(j, m);
                        points.push(Complex64::new(x, y));
                    }
                }
                false
            }
            GridKind::Fpp => {
                let lat = lattice.ok_or_else(|| {
                    Error::InvalidInput("a period-parallelogram grid needs a torus domain".into())
                })?;
                for i in 0..n {
                    for j in 0..m {
                        points.push(frac(i, n) + lat.tau() * frac(j, m));
                    }
                }
                false
            }
        };
        Ok(Grid {
            points,
            n,
            m,
            wraps,
        })
    }
}

impl Grid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    /// Grid edges as index pairs, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.m {
                let a = self.index(i, j);
                if i + 1 < self.n {
                    out.push((a, self.index(i + 1, j)));
                }
                if j + 1 < self.m {
                    out.push((a, self.index(i, j + 1)));
                } else if self.wraps && self.m > 2 {
                    out.push((a, self.index(i, 0)));
                }
            }
        }
        out
    }

    /// Grid cells as corner quadruples in counter-clockwise parameter order.
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let jmax = if self.wraps { self.m } else { self.m - 1 };
        let mut out = Vec::new();
        for i in 0..self.n - 1 {
            for j in 0..jmax {
                let j1 = (j + 1) % self.m;
                out.push([
                    self.index(i, j),
                    self.index(i + 1, j),
                    self.index(i + 1, j1),
                    self.index(i, j1),
                ]);
            }
        }
        out
    }
}
