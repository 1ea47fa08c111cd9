//! Continuous nondecreasing piecewise-linear functions on `[0, inf)` with
//! exact rational breakpoints, used as effective latencies of subnetworks.

use crate::rational::Rational;
use num_traits::{Signed, Zero};

/// Breakpoints `(x_0 = 0, y_0), ..., (x_k, y_k)` with strictly increasing `x`
/// and nondecreasing `y`, followed by a ray of slope `tail_slope` past `x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearFn {
    points: Vec<(Rational, Rational)>,
    tail_slope: Rational,
}

impl PiecewiseLinearFn {
    /// `x -> slope * x + intercept`.
    pub fn affine(slope: Rational, intercept: Rational) -> Self {
        assert!(!slope.is_negative(), "latency slope must be nonnegative");
        PiecewiseLinearFn { points: vec![(Rational::zero(), intercept)], tail_slope: slope }
    }

    /// Builds from raw breakpoints, merging collinear runs.
    ///
    /// Panics if the breakpoints violate the type's invariants.
    pub fn from_points(points: Vec<(Rational, Rational)>, tail_slope: Rational) -> Self {
        assert!(!points.is_empty() && points[0].0.is_zero(), "first breakpoint must sit at 0");
        assert!(!tail_slope.is_negative());
        for w in points.windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 <= w[1].1, "breakpoints must be increasing");
        }
        let mut f = PiecewiseLinearFn { points, tail_slope };
        f.simplify();
        f
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn tail_slope(&self) -> &Rational {
        &self.tail_slope
    }

    pub fn at_zero(&self) -> &Rational {
        &self.points[0].1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let j = self.points.partition_point(|(px, _)| px <= x);
        if j == self.points.len() {
            let (lx, ly) = self.points.last().unwrap();
            return ly + &self.tail_slope * (x - lx);
        }
        // j >= 1 because points[0].0 == 0 <= x
        let (x0, y0) = &self.points[j - 1];
        let (x1, y1) = &self.points[j];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Smallest `x >= 0` with `f(x) >= level`; `None` if the function stays
    /// below `level` forever.
    pub fn min_preimage(&self, level: &Rational) -> Option<Rational> {
        let j = self.points.partition_point(|(_, py)| py < level);
        if j == 0 {
            return Some(Rational::zero());
        }
        if j == self.points.len() {
            let (lx, ly) = self.points.last().unwrap();
            if self.tail_slope.is_zero() {
                return None;
            }
            return Some(lx + (level - ly) / &self.tail_slope);
        }
        let (x0, y0) = &self.points[j - 1];
        let (x1, y1) = &self.points[j];
        Some(x0 + (x1 - x0) * (level - y0) / (y1 - y0))
    }

    /// Largest `x >= 0` with `f(x) <= level` (0 when `level < f(0)`);
    /// `None` when the function ends in a flat ray at or below `level`.
    pub fn max_preimage(&self, level: &Rational) -> Option<Rational> {
        let j = self.points.partition_point(|(_, py)| py <= level);
        if j == 0 {
            return Some(Rational::zero());
        }
        if j == self.points.len() {
            let (lx, ly) = self.points.last().unwrap();
            if self.tail_slope.is_zero() {
                return None;
            }
            return Some(lx + (level - ly) / &self.tail_slope);
        }
        let (x0, y0) = &self.points[j - 1];
        let (x1, y1) = &self.points[j];
        Some(x0 + (x1 - x0) * (level - y0) / (y1 - y0))
    }

    /// Pointwise sum: the latency of two subnetworks in series.
    pub fn add(&self, other: &Self) -> Self {
        let mut xs: Vec<&Rational> = self.points.iter().chain(other.points.iter()).map(|(x, _)| x).collect();
        xs.sort();
        xs.dedup();
        let points = xs.into_iter().map(|x| (x.clone(), self.eval(x) + other.eval(x))).collect();
        let mut f = PiecewiseLinearFn { points, tail_slope: &self.tail_slope + &other.tail_slope };
        f.simplify();
        f
    }

    /// Equilibrium latency of two subnetworks in parallel: for each common
    /// level the preimages add up, and a child stays empty while the level is
    /// below its latency at zero.
    pub fn parallel(&self, other: &Self) -> Self {
        let start = self.at_zero().min(other.at_zero()).clone();
        let mut levels: Vec<&Rational> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|(_, y)| y)
            .filter(|y| **y >= start)
            .collect();
        levels.sort();
        levels.dedup();

        let mut points: Vec<(Rational, Rational)> = Vec::with_capacity(levels.len() + 1);
        for level in levels {
            let lo = self.min_preimage(level).unwrap() + other.min_preimage(level).unwrap();
            push_point(&mut points, lo.clone(), level.clone());
            match (self.max_preimage(level), other.max_preimage(level)) {
                (Some(a), Some(b)) => {
                    let hi = a + b;
                    if hi > lo {
                        push_point(&mut points, hi, level.clone());
                    }
                }
                _ => {
                    // one side absorbs any extra flow at this level
                    let mut f = PiecewiseLinearFn { points, tail_slope: Rational::zero() };
                    f.simplify();
                    return f;
                }
            }
        }
        // Both tails are strictly increasing past the last level.
        let inv = self.tail_slope.recip() + other.tail_slope.recip();
        let mut f = PiecewiseLinearFn { points, tail_slope: inv.recip() };
        f.simplify();
        f
    }

    fn simplify(&mut self) {
        if self.points.len() < 2 {
            return;
        }
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(self.points.len());
        let n = self.points.len();
        for i in 0..n {
            if i > 0 && !kept.is_empty() {
                let (px, py) = kept.last().unwrap();
                let (cx, cy) = &self.points[i];
                let slope_in = (cy - py) / (cx - px);
                let slope_out = if i + 1 < n {
                    let (nx, ny) = &self.points[i + 1];
                    (ny - cy) / (nx - cx)
                } else {
                    self.tail_slope.clone()
                };
                if slope_in == slope_out {
                    continue;
                }
            }
            kept.push(self.points[i].clone());
        }
        self.points = kept;
    }
}

fn push_point(points: &mut Vec<(Rational, Rational)>, x: Rational, y: Rational) {
    match points.last() {
        Some((lx, _)) if *lx == x => {}
        _ => points.push((x, y)),
    }
}
