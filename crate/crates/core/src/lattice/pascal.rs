//! The Pascal lattice `N^2`, optionally with weights on the edges leaving
//! the diagonal.

use std::fmt;

use serde::Serialize;

use crate::chain::{CentralKernel, HarmonicFn};
use crate::diagram::{DiagramModel, WeightedEdge};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Exact, Scalar};

/// Vertex `(k, n - k)` on level `n`; `x = 2k - n` is its signed distance
/// from the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PascalVertex {
    pub n: u32,
    pub k: u32,
}

impl PascalVertex {
    pub fn new(n: u32, k: u32) -> Self {
        assert!(k <= n, "k = {k} exceeds level {n}");
        PascalVertex { n, k }
    }

    /// Vertex at level `n` and position `x`, if `x` has the parity of `n`.
    pub fn at(n: u32, x: i64) -> Option<Self> {
        let twice_k = x + n as i64;
        (twice_k >= 0 && twice_k % 2 == 0 && twice_k / 2 <= n as i64)
            .then(|| PascalVertex::new(n, (twice_k / 2) as u32))
    }

    pub fn x(&self) -> i64 {
        2 * self.k as i64 - self.n as i64
    }
}

impl fmt::Display for PascalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.n - self.k)
    }
}

/// Diagonal weights. `alpha` sits on the edge that increments `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PascalParams<S> {
    pub alpha: S,
    pub beta: S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Below,
    Critical,
    Above,
}

impl<S: Scalar> PascalParams<S> {
    pub fn new(alpha: S, beta: S) -> Result<Self> {
        if alpha <= S::zero() || beta <= S::zero() {
            return Err(Error::param(format!(
                "diagonal weights must be positive, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(PascalParams { alpha, beta })
    }

    pub fn gamma(&self) -> S {
        (self.alpha.clone() + self.beta.clone()) / S::from_u64(2)
    }

    pub fn regime(&self) -> Regime {
        let g = self.gamma();
        if g < S::one() {
            Regime::Below
        } else if g == S::one() {
            Regime::Critical
        } else {
            Regime::Above
        }
    }

    /// `s^2 = (1 - (1 - 1/gamma)^2) / 4 = (2 gamma - 1) / (4 gamma^2)`.
    pub fn s_squared(&self) -> S {
        let g = self.gamma();
        (S::from_u64(2) * g.clone() - S::one()) / (S::from_u64(4) * g.clone() * g)
    }

    /// `(s, rho, q)` with `rho = 1/s` and `q = 1/(2 gamma s)`, when `s` is
    /// representable in `S`.
    pub fn s_rho_q(&self) -> Option<(S, S, S)> {
        let s = self.s_squared().sqrt()?;
        if s.is_zero() {
            return None;
        }
        let q = S::one() / (S::from_u64(2) * self.gamma() * s.clone());
        Some((s.clone(), S::one() / s, q))
    }
}

#[derive(Debug, Clone)]
pub struct PascalModel<S> {
    params: Option<PascalParams<S>>,
}

/// The Pascal lattice; `None` gives unit weights everywhere.
pub fn pascal_model<S: Scalar>(params: Option<PascalParams<S>>) -> PascalModel<S> {
    PascalModel { params }
}

impl<S: Scalar> PascalModel<S> {
    pub fn params(&self) -> Option<&PascalParams<S>> {
        self.params.as_ref()
    }
}

impl<S: Scalar> DiagramModel for PascalModel<S> {
    type Vertex = PascalVertex;
    type Weight = S;

    fn name(&self) -> String {
        match &self.params {
            None => "pascal".into(),
            Some(p) => format!("pascal(alpha={}, beta={})", p.alpha, p.beta),
        }
    }
    fn root(&self) -> PascalVertex {
        PascalVertex::new(0, 0)
    }
    fn level(&self, v: &PascalVertex) -> usize {
        v.n as usize
    }
    /// Children in the order `(n+1, k)`, `(n+1, k+1)`.
    fn children(&self, v: &PascalVertex) -> Vec<WeightedEdge<PascalVertex, S>> {
        let (lo, hi) = match (&self.params, v.x()) {
            (Some(p), 0) => (p.beta.clone(), p.alpha.clone()),
            _ => (S::one(), S::one()),
        };
        vec![
            WeightedEdge::new(PascalVertex::new(v.n + 1, v.k), lo),
            WeightedEdge::new(PascalVertex::new(v.n + 1, v.k + 1), hi),
        ]
    }
    fn may_reach(&self, from: &PascalVertex, to: &PascalVertex) -> bool {
        to.n >= from.n && to.k >= from.k && to.k - from.k <= to.n - from.n
    }
}

/// Closed-form MERW harmonic function of the weighted Pascal lattice.
#[derive(Debug, Clone)]
pub enum PascalHarmonic<S> {
    /// `2^-n`.
    Uniform,
    /// `(1 + c |x|) / 2^n` with `c = 1/gamma - 1`.
    Below { c: S },
    /// `q^|x| s^n`.
    Above { s: S, q: S },
}

impl<S: Scalar> HarmonicFn<PascalVertex> for PascalHarmonic<S> {
    type Value = S;

    fn eval(&self, v: &PascalVertex) -> S {
        let ax = v.x().unsigned_abs() as u32;
        match self {
            PascalHarmonic::Uniform => S::one() / S::from_u64(2).pow(v.n),
            PascalHarmonic::Below { c } => {
                (S::one() + c.clone() * S::from_u64(ax as u64)) / S::from_u64(2).pow(v.n)
            }
            PascalHarmonic::Above { s, q } => q.pow(ax) * s.pow(v.n),
        }
    }

    fn description(&self) -> String {
        match self {
            PascalHarmonic::Uniform => "2^-n".into(),
            PascalHarmonic::Below { c } => format!("(1 + {c}|x|)/2^n"),
            PascalHarmonic::Above { s, q } => format!("{q}^|x| {s}^n"),
        }
    }
}

/// The unique MERW harmonic function for the given diagonal weights.
///
/// At `gamma = 1` both branches degenerate to `2^-n`. In exact mode the
/// `gamma > 1` branch requires `s` to be rational.
pub fn pascal_merw_harmonic<S: Scalar>(params: &PascalParams<S>) -> Result<PascalHarmonic<S>> {
    match params.regime() {
        Regime::Critical => Ok(PascalHarmonic::Uniform),
        Regime::Below => Ok(PascalHarmonic::Below {
            c: S::one() / params.gamma() - S::one(),
        }),
        Regime::Above => {
            let (s, _, q) = params.s_rho_q().ok_or_else(|| {
                Error::Domain(format!(
                    "s^2 = {} has no square root in this arithmetic; use float mode",
                    params.s_squared()
                ))
            })?;
            Ok(PascalHarmonic::Above { s, q })
        }
    }
}

/// Mixture of the extremal functions under the uniform law on `[0, 1]`:
/// `phi(k, n-k) = k! (n-k)! / (n+1)!`. Its chain is the two-colour Pólya urn.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyaHarmonic;

impl HarmonicFn<PascalVertex> for PolyaHarmonic {
    type Value = Exact;

    fn eval(&self, v: &PascalVertex) -> Exact {
        let num = factorial(v.k as u64) * factorial((v.n - v.k) as u64);
        Exact::new(num.into(), factorial(v.n as u64 + 1).into())
    }

    fn description(&self) -> String {
        "k!(n-k)!/(n+1)!".into()
    }
}

pub fn polya_kernel() -> CentralKernel<PascalModel<Exact>, PolyaHarmonic> {
    CentralKernel::new(pascal_model(None), PolyaHarmonic).expect("the Pólya function is harmonic")
}

/// `phi_H(n, x) = d((n,x), X_H) / d(root, X_H)` for each point and horizon,
/// computed by a backward sweep over the strip `|x| <= H` in binary64.
///
/// Levels above the deepest requested point are rescaled as the sweep goes,
/// so horizons in the thousands do not overflow.
pub fn pascal_truncation(
    alpha: f64,
    beta: f64,
    points: &[PascalVertex],
    horizons: &[usize],
) -> Vec<Vec<f64>> {
    let depth = points.iter().map(|p| p.n as usize).max().unwrap_or(0);
    let mut out = vec![Vec::with_capacity(horizons.len()); points.len()];
    for &h in horizons {
        assert!(h >= depth, "horizon {h} below requested level {depth}");
        // layer[k] holds d((m, k), X_h) up to a common factor.
        let mut layer = vec![1.0f64; h + 1];
        let mut kept: Vec<Vec<f64>> = vec![Vec::new(); depth + 1];
        if h <= depth {
            kept[h] = layer.clone();
        }
        for m in (0..h).rev() {
            let mut next = vec![0.0f64; m + 1];
            for (k, slot) in next.iter_mut().enumerate() {
                let diagonal = 2 * k == m;
                let (lo, hi) = if diagonal { (beta, alpha) } else { (1.0, 1.0) };
                *slot = lo * layer[k] + hi * layer[k + 1];
            }
            if m > depth {
                let top = next.iter().cloned().fold(0.0, f64::max);
                next.iter_mut().for_each(|v| *v /= top);
            } else {
                kept[m] = next.clone();
            }
            layer = next;
        }
        let total = kept[0][0];
        for (i, p) in points.iter().enumerate() {
            out[i].push(kept[p.n as usize][p.k as usize] / total);
        }
    }
    out
}

/// `d(root, X_{n+1}) / d(root, X_n)` from a normalized forward sweep.
/// Weighted diagonals sit on even levels only, so consecutive ratios
/// alternate; the growth rate is the geometric mean of two of them.
pub fn pascal_growth_ratio(alpha: f64, beta: f64, n: usize) -> f64 {
    // `layer` is kept normalized to total mass 1, so the next total is the ratio.
    let mut layer = vec![1.0f64];
    let mut ratio = f64::NAN;
    for m in 0..=n {
        let mut next = vec![0.0f64; m + 2];
        for (k, v) in layer.iter().enumerate() {
            let diagonal = 2 * k == m;
            let (lo, hi) = if diagonal { (beta, alpha) } else { (1.0, 1.0) };
            next[k] += lo * v;
            next[k + 1] += hi * v;
        }
        let total: f64 = next.iter().sum();
        ratio = total;
        next.iter_mut().for_each(|v| *v /= total);
        layer = next;
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_coordinates() {
        let v = PascalVertex::at(3, -1).unwrap();
        assert_eq!((v.n, v.k), (3, 1));
        assert!(PascalVertex::at(3, 0).is_none());
        assert_eq!(v.to_string(), "(1,2)");
    }

    #[test]
    fn growth_ratio_unweighted_is_two() {
        assert!((pascal_growth_ratio(1.0, 1.0, 50) - 2.0).abs() < 1e-12);
    }
}
