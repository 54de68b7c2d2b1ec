//! Kreweras walks (steps NE, S, W) in the three-quarter plane
//! `Z^2 \ {i < 0, j < 0}`, which encode the three-column pyramid.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

pub const MAX_EXACT_STEPS: usize = 60;
pub const MAX_FLOAT_STEPS: usize = 400;

pub const STEPS: [(i64, i64); 3] = [(1, 1), (0, -1), (-1, 0)];

pub fn allowed(i: i64, j: i64) -> bool {
    !(i < 0 && j < 0)
}

/// Dense square window `|i|, |j| <= radius`.
struct Grid<T> {
    radius: i64,
    cells: Vec<T>,
}

impl<T: Clone> Grid<T> {
    fn new(radius: i64, fill: T) -> Self {
        let side = (2 * radius + 1) as usize;
        Grid {
            radius,
            cells: vec![fill; side * side],
        }
    }

    fn index(&self, i: i64, j: i64) -> Option<usize> {
        let r = self.radius;
        (i.abs() <= r && j.abs() <= r).then(|| ((i + r) * (2 * r + 1) + (j + r)) as usize)
    }
}

/// `a_n(0, 0)` for `n = 0..=n_max`: the number of walks of length `n` from
/// the origin that avoid the forbidden quadrant.
pub fn kreweras_counts(n_max: usize) -> Result<Vec<BigUint>> {
    if n_max > MAX_EXACT_STEPS {
        return Err(Error::budget("exact Kreweras steps", MAX_EXACT_STEPS));
    }
    let r = n_max as i64;
    let mut grid = Grid::new(r, BigUint::zero());
    let origin = grid.index(0, 0).expect("origin lies in the window");
    grid.cells[origin] = BigUint::one();
    let mut out = vec![BigUint::one()];
    for _ in 0..n_max {
        let mut next = Grid::new(r, BigUint::zero());
        for i in -r..=r {
            for j in -r..=r {
                let here = &grid.cells[grid.index(i, j).unwrap()];
                if here.is_zero() {
                    continue;
                }
                for (di, dj) in STEPS {
                    let (a, b) = (i + di, j + dj);
                    if allowed(a, b) {
                        let k = next.index(a, b).expect("walks stay inside the window");
                        next.cells[k] += here;
                    }
                }
            }
        }
        grid = next;
        out.push(grid.cells.iter().sum());
    }
    Ok(out)
}

/// `ln a_n(0, 0)` for `n = 0..=n_max`, normalizing each level to avoid
/// overflow.
pub fn kreweras_log_counts(n_max: usize) -> Result<Vec<f64>> {
    if n_max > MAX_FLOAT_STEPS {
        return Err(Error::budget("float Kreweras steps", MAX_FLOAT_STEPS));
    }
    let r = n_max as i64;
    let mut grid = Grid::new(r, 0.0f64);
    let origin = grid.index(0, 0).unwrap();
    grid.cells[origin] = 1.0;
    let mut log_scale = 0.0;
    let mut out = vec![0.0];
    for _ in 0..n_max {
        let mut next = Grid::new(r, 0.0f64);
        for i in -r..=r {
            for j in -r..=r {
                let here = grid.cells[grid.index(i, j).unwrap()];
                if here == 0.0 {
                    continue;
                }
                for (di, dj) in STEPS {
                    let (a, b) = (i + di, j + dj);
                    if allowed(a, b) {
                        let k = next.index(a, b).unwrap();
                        next.cells[k] += here;
                    }
                }
            }
        }
        let total: f64 = next.cells.iter().sum();
        for c in &mut next.cells {
            *c /= total;
        }
        log_scale += total.ln();
        out.push(log_scale);
        grid = next;
    }
    Ok(out)
}

/// Walk counts by direct enumeration of all `3^n` step sequences.
pub fn kreweras_brute_force(n: usize) -> u64 {
    fn rec(i: i64, j: i64, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        STEPS
            .iter()
            .filter(|(di, dj)| allowed(i + di, j + dj))
            .map(|(di, dj)| rec(i + di, j + dj, left - 1))
            .sum()
    }
    rec(0, 0, n)
}

/// `3^(3/4) sqrt(2 - sqrt 2) / Gamma(5/8)`.
pub fn kreweras_constant() -> f64 {
    3f64.powf(0.75) * (2.0 - 2f64.sqrt()).sqrt() / gamma(5.0 / 8.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct KrewerasDiagnostic {
    pub n: usize,
    pub log_count: f64,
    /// `a_{n} / a_{n-1}`.
    pub growth_ratio: f64,
    /// `a_n 3^-n n^(3/8)`, to be compared with [`kreweras_constant`].
    pub scaled: f64,
}

pub fn kreweras_diagnostics(n_max: usize) -> Result<Vec<KrewerasDiagnostic>> {
    let logs = kreweras_log_counts(n_max)?;
    Ok((1..=n_max)
        .map(|n| KrewerasDiagnostic {
            n,
            log_count: logs[n],
            growth_ratio: (logs[n] - logs[n - 1]).exp(),
            scaled: (logs[n] - n as f64 * 3f64.ln() + 0.375 * (n as f64).ln()).exp(),
        })
        .collect())
}

/// Candidate harmonicity relations for the conjectured function `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stencil {
    /// `3 H(i,j) = H(i+1,j+1) + H(i,j-1) + H(i-1,j)`: harmonic for the walk.
    Forward,
    /// `3 H(i,j) = H(i-1,j-1) + H(i,j+1) + H(i+1,j)`: harmonic for the
    /// reversed walk.
    Reversed,
    /// `3 H(i,j) = H(i-1,j) + H(i,j-1) + H(i,j)`, taken literally.
    Literal,
}

impl Stencil {
    fn neighbours(self) -> [(i64, i64); 3] {
        match self {
            Stencil::Forward => STEPS,
            Stencil::Reversed => [(-1, -1), (0, 1), (1, 0)],
            Stencil::Literal => [(-1, 0), (0, -1), (0, 0)],
        }
    }
}

/// Output of the exploratory `H` solver.
#[derive(Debug, Clone, Serialize)]
pub struct HSolution {
    pub label: &'static str,
    pub stencil: Stencil,
    pub radius: i64,
    pub iterations: usize,
    pub converged: bool,
    /// Max residual `|3H - sum|` over the interior, per iteration.
    pub residuals: Vec<f64>,
    pub residual_monotone: bool,
    /// `(i, j, H)` over the window.
    pub values: Vec<(i64, i64, f64)>,
}

/// Damped fixed-point iteration `H <- (1-w) H + w (sum of stencil
/// neighbours) / 3` on the window `|i|, |j| <= radius`, with `H = 0` on
/// the forbidden quadrant, a zero-gradient condition on the window edge and
/// renormalization `H(0,0) = 1` after every sweep.
pub fn kreweras_h_solver(
    stencil: Stencil,
    radius: i64,
    iterations: usize,
    tol: f64,
) -> Result<HSolution> {
    if radius < 2 {
        return Err(Error::param("radius must be at least 2"));
    }
    const DAMPING: f64 = 0.5;
    let mut h = Grid::new(radius, 0.0f64);
    for i in -radius..=radius {
        for j in -radius..=radius {
            if allowed(i, j) {
                let k = h.index(i, j).unwrap();
                h.cells[k] = 1.0;
            }
        }
    }
    let interior = |i: i64, j: i64| i.abs() < radius && j.abs() < radius && allowed(i, j);
    let mut residuals = Vec::new();
    let mut converged = false;
    for _ in 0..iterations {
        let mut next = Grid::new(radius, 0.0f64);
        for i in -radius..=radius {
            for j in -radius..=radius {
                if !allowed(i, j) {
                    continue;
                }
                let k = h.index(i, j).unwrap();
                if interior(i, j) {
                    let s: f64 = stencil
                        .neighbours()
                        .iter()
                        .map(|(di, dj)| h.cells[h.index(i + di, j + dj).unwrap()])
                        .sum();
                    next.cells[k] = (1.0 - DAMPING) * h.cells[k] + DAMPING * s / 3.0;
                }
            }
        }
        // zero-gradient edge: copy the nearest interior value
        for i in -radius..=radius {
            for j in -radius..=radius {
                if allowed(i, j) && !interior(i, j) {
                    let ci = i.clamp(-radius + 1, radius - 1);
                    let cj = j.clamp(-radius + 1, radius - 1);
                    let src = if allowed(ci, cj) { next.index(ci, cj) } else { None };
                    let k = next.index(i, j).unwrap();
                    next.cells[k] = src.map_or(0.0, |s| next.cells[s]);
                }
            }
        }
        let pin = next.cells[next.index(0, 0).unwrap()];
        if pin > 0.0 {
            for c in &mut next.cells {
                *c /= pin;
            }
        }
        h = next;
        let mut worst = 0.0f64;
        for i in -radius + 1..radius {
            for j in -radius + 1..radius {
                if !interior(i, j) {
                    continue;
                }
                let s: f64 = stencil
                    .neighbours()
                    .iter()
                    .map(|(di, dj)| h.cells[h.index(i + di, j + dj).unwrap()])
                    .sum();
                worst = worst.max((3.0 * h.cells[h.index(i, j).unwrap()] - s).abs());
            }
        }
        residuals.push(worst);
        if worst < tol {
            converged = true;
            break;
        }
    }
    let residual_monotone = residuals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    let mut values = Vec::new();
    for i in -radius..=radius {
        for j in -radius..=radius {
            values.push((i, j, h.cells[h.index(i, j).unwrap()]));
        }
    }
    Ok(HSolution {
        label: "EXPLORATORY",
        stencil,
        radius,
        iterations: residuals.len(),
        converged,
        residuals,
        residual_monotone,
        values,
    })
}

/// Ratio estimate `a_n(i, j) / a_n(0, 0)` of `H(i, j)`, from walks started
/// at each point of the window.
pub fn kreweras_ratio_estimate(radius: i64, n: usize) -> Result<HashMap<(i64, i64), f64>> {
    if n > MAX_FLOAT_STEPS {
        return Err(Error::budget("float Kreweras steps", MAX_FLOAT_STEPS));
    }
    // Backward recursion a_{m+1}(p) = sum_steps a_m(p + step) on a window
    // wide enough that no walk of length n started inside `radius` leaves it.
    let r = radius + n as i64 + 1;
    let mut a = Grid::new(r, 0.0f64);
    for i in -r..=r {
        for j in -r..=r {
            if allowed(i, j) {
                let k = a.index(i, j).unwrap();
                a.cells[k] = 1.0;
            }
        }
    }
    for _ in 0..n {
        let mut next = Grid::new(r, 0.0f64);
        for i in -r..=r {
            for j in -r..=r {
                if !allowed(i, j) {
                    continue;
                }
                let s: f64 = STEPS
                    .iter()
                    .filter_map(|(di, dj)| a.index(i + di, j + dj).map(|k| a.cells[k]))
                    .sum();
                let k = next.index(i, j).unwrap();
                next.cells[k] = s / 3.0;
            }
        }
        a = next;
    }
    let base = a.cells[a.index(0, 0).unwrap()];
    let mut out = HashMap::new();
    for i in -radius..=radius {
        for j in -radius..=radius {
            out.insert((i, j), a.cells[a.index(i, j).unwrap()] / base);
        }
    }
    Ok(out)
}
