use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::PyramidState;

/// Limit shape of Plancherel-distributed Young diagrams on `[-1, 1]`:
/// `(2/pi) (u asin u + sqrt(1 - u^2))`.
pub fn omega(u: f64) -> Result<f64> {
    if !(u.abs() <= 1.0) {
        return Err(Error::Domain(format!("omega needs |u| <= 1, got {u}")));
    }
    Ok(2.0 / PI * (u * u.asin() + (1.0 - u * u).max(0.0).sqrt()))
}

/// `T(u, v) = ((u + v)/2, (v - u)/2)`.
pub fn rotate(u: f64, v: f64) -> (f64, f64) {
    ((u + v) / 2.0, (v - u) / 2.0)
}

/// The pyramid target curve `G = T(H) ∪ S T(H)`, `H` the graph of omega
/// and `S` the reflection `x -> -x`, as one polyline from the left foot
/// through the apex to the right foot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveG {
    pub points: Vec<(f64, f64)>,
}

/// `samples` points per branch, `u` evenly spaced on `[-1, 1]`.
pub fn curve_g(samples: usize) -> Result<CurveG> {
    if samples < 2 {
        return Err(Error::param("at least two samples per branch"));
    }
    let right: Vec<(f64, f64)> = (0..samples)
        .map(|k| {
            let u = -1.0 + 2.0 * k as f64 / (samples - 1) as f64;
            rotate(u, omega(u).expect("u lies in [-1, 1]"))
        })
        .collect();
    // the right branch runs from the apex (0, 1) down to (1, 0)
    let mut points: Vec<(f64, f64)> = right.iter().rev().map(|&(x, y)| (-x, y)).collect();
    points.extend(right.into_iter().skip(1));
    Ok(CurveG { points })
}

impl CurveG {
    /// Height of the curve at abscissa `x` (0 outside the feet).
    pub fn height_at(&self, x: f64) -> f64 {
        for w in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if (x0..=x1).contains(&x) && x1 > x0 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        0.0
    }

    /// Area between the curve and the axis (trapezoid rule).
    pub fn area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum()
    }
}

fn point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

fn point_polyline(p: (f64, f64), line: &[(f64, f64)]) -> f64 {
    line.windows(2)
        .map(|w| point_segment(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Polyline refined so that no segment is longer than `step`.
fn densify(line: &[(f64, f64)], step: f64) -> Vec<(f64, f64)> {
    let mut out = vec![line[0]];
    for w in line.windows(2) {
        let len = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
        let k = (len / step).ceil().max(1.0) as usize;
        for i in 1..=k {
            let t = i as f64 / k as f64;
            out.push((w[0].0 + t * (w[1].0 - w[0].0), w[0].1 + t * (w[1].1 - w[0].1)));
        }
    }
    out
}

/// Hausdorff distance between two polylines. Vertices of each are
/// refined to spacing `step` before measuring against the other's
/// segments, so the result is exact up to `step`.
pub fn hausdorff(a: &[(f64, f64)], b: &[(f64, f64)], step: f64) -> f64 {
    let one = densify(a, step)
        .into_iter()
        .map(|p| point_polyline(p, b))
        .fold(0.0, f64::max);
    let two = densify(b, step)
        .into_iter()
        .map(|p| point_polyline(p, a))
        .fold(0.0, f64::max);
    one.max(two)
}

/// Upper boundary of a pyramid as a staircase through the column tops,
/// scaled by `1/sqrt(n)`. Column `c` spans `[c - 1/2, c + 1/2]` so the
/// first box is centred on the axis.
pub fn staircase(state: &PyramidState, n: usize) -> Vec<(f64, f64)> {
    staircase_scaled(state, 1.0 / (n as f64).sqrt())
}

/// [`staircase`] with box side `s`.
pub fn staircase_scaled(state: &PyramidState, s: f64) -> Vec<(f64, f64)> {
    let left = state.offset as f64 - 0.5;
    let mut pts = vec![(left * s, 0.0)];
    for (k, &h) in state.heights.iter().enumerate() {
        let x0 = (left + k as f64) * s;
        let y = h as f64 * s;
        pts.push((x0, y));
        pts.push((x0 + s, y));
    }
    pts.push(((left + state.heights.len() as f64) * s, 0.0));
    pts.dedup();
    pts
}

/// Samples of the target curve used by [`boundary_distance`].
pub const DISTANCE_SAMPLES: usize = 1001;

/// Hausdorff distance from the scaled upper boundary of `state` to G.
pub fn boundary_distance(state: &PyramidState, n: usize) -> Result<f64> {
    if state.size() as usize != n {
        return Err(Error::param(format!(
            "state has {} boxes, expected {n}",
            state.size()
        )));
    }
    let g = curve_g(DISTANCE_SAMPLES)?;
    Ok(hausdorff(&staircase(state, n), &g.points, 1e-3))
}

/// Hausdorff distance to G with boxes of side `1/sqrt(2n)`, so that the
/// scaled pyramid has the same area (1/2) as the region under G.
pub fn area_matched_distance(state: &PyramidState, n: usize) -> Result<f64> {
    if state.size() as usize != n {
        return Err(Error::param(format!(
            "state has {} boxes, expected {n}",
            state.size()
        )));
    }
    let g = curve_g(DISTANCE_SAMPLES)?;
    let s = 1.0 / (2.0 * n as f64).sqrt();
    Ok(hausdorff(&staircase_scaled(state, s), &g.points, 1e-3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::Profile;

    #[test]
    fn omega_values() {
        assert!((omega(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((omega(0.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        let half = 2.0 / PI * (PI / 12.0 + 3f64.sqrt() / 2.0);
        assert!((omega(0.5).unwrap() - half).abs() < 1e-15);
        assert!(omega(1.5).is_err());
    }

    #[test]
    fn curve_is_symmetric() {
        let g = curve_g(201).unwrap();
        let n = g.points.len();
        for i in 0..n {
            let (x, y) = g.points[i];
            let (xr, yr) = g.points[n - 1 - i];
            assert!((x + xr).abs() < 1e-12 && (y - yr).abs() < 1e-12);
        }
        assert_eq!(g.points[0], (-1.0, 0.0));
        assert!((g.points[n / 2].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_box_distance() {
        let d = boundary_distance(&Profile::single(), 1).unwrap();
        let g = curve_g(DISTANCE_SAMPLES).unwrap();
        let square = [(-0.5, 0.0), (-0.5, 1.0), (0.5, 1.0), (0.5, 0.0)];
        let expect = hausdorff(&square, &g.points, 1e-4);
        assert!((d - expect).abs() < 2e-3);
    }
}
