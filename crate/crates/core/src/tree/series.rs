//! The sequence `T_n = d(root, X_{n-1})` of the preferential binary tree.
//!
//! `T_n` depends on the weights only through `s = x + y`, so it is kept as
//! a polynomial in `s` with integer coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::model::{DaryTreeModel, PreferentialWeights};
use super::prefix::PrefixTree;
use crate::diagram::Dimensions;
use crate::error::{Error, Result};
use crate::scalar::{binomial, Exact, Scalar};

/// Largest index computed with exact polynomial coefficients.
pub const MAX_EXACT_N: usize = 80;
/// Largest index of the floating ratio sequence.
pub const MAX_FLOAT_N: usize = 400;

/// Polynomial in `s`, lowest degree first.
pub type Poly = Vec<BigInt>;

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_scale(a: &Poly, k: &BigInt) -> Poly {
    trim(a.iter().map(|c| c * k).collect())
}

/// Multiplies by `s`.
fn poly_shift(a: &Poly) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero()];
    out.extend(a.iter().cloned());
    out
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `T_0 = 0, T_1, ..., T_N` as polynomials in `s`, from
/// `T_{n+1} = s [T_n + sum_{k=1}^{n-1} C(n-1, k-1) T_k T_{n-k}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesT {
    terms: Vec<Poly>,
}

impl SeriesT {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > MAX_EXACT_N {
            return Err(Error::budget("exact series length", MAX_EXACT_N));
        }
        let mut terms: Vec<Poly> = vec![Vec::new(), vec![BigInt::one()]];
        for n in 1..n_max {
            let mut inner = terms[n].clone();
            for k in 1..n {
                let c = BigInt::from(binomial(n as u64 - 1, k as u64 - 1));
                inner = poly_add(&inner, &poly_scale(&poly_mul(&terms[k], &terms[n - k]), &c));
            }
            terms.push(poly_shift(&inner));
        }
        terms.truncate(n_max + 1);
        Ok(SeriesT { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coefficients of `T_n` in powers of `s`.
    pub fn poly(&self, n: usize) -> &Poly {
        &self.terms[n]
    }

    /// `T_n` as a polynomial in `(x, y)`: entry `[i][j]` is the coefficient
    /// of `x^i y^j`.
    pub fn bivariate(&self, n: usize) -> Vec<Vec<BigInt>> {
        let p = &self.terms[n];
        let deg = p.len().saturating_sub(1);
        let mut out = vec![vec![BigInt::zero(); deg + 1]; deg + 1];
        for (k, c) in p.iter().enumerate() {
            for i in 0..=k {
                out[i][k - i] += c * BigInt::from(binomial(k as u64, i as u64));
            }
        }
        out
    }

    pub fn eval<S: Scalar>(&self, n: usize, s: &S) -> S {
        self.terms[n].iter().rev().fold(S::zero(), |acc, c| {
            acc * s.clone() + S::from_i64(i64::try_from(c.clone()).unwrap_or_else(|_| {
                panic!("coefficient too large for direct evaluation; use eval_exact")
            }))
        })
    }

    pub fn eval_exact(&self, n: usize, s: &Exact) -> Exact {
        self.terms[n]
            .iter()
            .rev()
            .fold(Exact::zero(), |acc, c| acc * s + Exact::from_integer(c.clone()))
    }

    /// Coefficient residuals of the Riccati equation
    /// `T' = 1 + s T + (s/2) T^2` for the exponential generating function,
    /// multiplied by 2 to stay integral: for each `n < N`,
    /// `2 T_{n+1} - 2[n=0] - 2 s T_n - s sum_a C(n, a) T_a T_{n-a}`.
    pub fn ode_residuals(&self) -> Vec<Poly> {
        let two = BigInt::from(2);
        (0..self.len())
            .map(|n| {
                let mut r = poly_scale(&self.terms[n + 1], &two);
                if n == 0 {
                    r = poly_add(&r, &vec![-two.clone()]);
                }
                r = poly_add(&r, &poly_scale(&poly_shift(&self.terms[n]), &-two.clone()));
                let mut conv = Vec::new();
                for a in 0..=n {
                    let c = BigInt::from(binomial(n as u64, a as u64));
                    conv = poly_add(
                        &conv,
                        &poly_scale(&poly_mul(&self.terms[a], &self.terms[n - a]), &c),
                    );
                }
                poly_add(&r, &poly_scale(&poly_shift(&conv), &-BigInt::one()))
            })
            .collect()
    }

    pub fn ode_holds(&self) -> bool {
        self.ode_residuals().iter().all(Vec::is_empty)
    }
}

/// Radius of convergence of the exponential generating function of `T_n`.
pub fn u_star(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::param("s must be positive"));
    }
    Ok(if (s - 2.0).abs() < 1e-15 {
        1.0
    } else if s < 2.0 {
        let r = (s * (2.0 - s)).sqrt();
        2.0 / r * ((2.0 - s) / s).sqrt().atan()
    } else {
        let r = (s * (s - 2.0)).sqrt();
        (s - 1.0 + r).ln() / r
    })
}

/// `T_n s u*^(n+1) / (2 n!)` for `n = 1..=n_max`, which tends to 1.
///
/// Runs the recurrence on `t_n = T_n u*^n / n!`, which stays of order one:
/// `t_{n+1} = s u* / (n+1) [t_n + (1/n) sum_{k=1}^{n-1} k t_k t_{n-k}]`.
pub fn asymptotic_ratios(s: f64, n_max: usize) -> Result<Vec<f64>> {
    if n_max > MAX_FLOAT_N {
        return Err(Error::budget("float series length", MAX_FLOAT_N));
    }
    let u = u_star(s)?;
    let mut t = vec![0.0, u];
    for n in 1..n_max {
        let conv: f64 = (1..n).map(|k| k as f64 * t[k] * t[n - k]).sum();
        let next = s * u / (n + 1) as f64 * (t[n] + conv / n as f64);
        t.push(next);
    }
    Ok(t[1..=n_max].iter().map(|tn| tn * s * u / 2.0).collect())
}

/// Compares the dimension `d(tau, X_{n-1})` on the preferential binary tree
/// with the convolution
/// `[u^(n-k)/(n-k)!] (T')^l (T+1)^kappa`, `k = |tau|`, where `l` counts
/// leaves and `kappa` incomplete internal nodes. Returns `(dp, series)`.
pub fn subtree_dimension_generating_check(
    tau: &PrefixTree,
    x: &Exact,
    y: &Exact,
    n: usize,
) -> Result<(Exact, Exact)> {
    let k = tau.size();
    if n < k {
        return Err(Error::param("target size is below the tree size"));
    }
    if tau.max_index() > 2 {
        return Err(Error::param("tree is not binary"));
    }
    let m = n - k;
    let model = DaryTreeModel::weighted(PreferentialWeights::binary(x.clone(), y.clone())?);
    let dims = Dimensions::new(&model);
    let dp = dims.to_level(tau, n - 1)?;

    let series = SeriesT::new(m + 1)?;
    let s = x + y;
    let t: Vec<Exact> = (0..=m + 1).map(|i| series.eval_exact(i, &s)).collect();
    let derivative: Vec<Exact> = (0..=m).map(|i| t[i + 1].clone()).collect();
    let shifted: Vec<Exact> = (0..=m)
        .map(|i| if i == 0 { Exact::one() } else { t[i].clone() })
        .collect();
    let leaves = tau.leaves().len();
    let kappa = tau.incomplete(2);
    let mut acc = egf_unit(m);
    for _ in 0..leaves {
        acc = egf_mul(&acc, &derivative);
    }
    for _ in 0..kappa {
        acc = egf_mul(&acc, &shifted);
    }
    Ok((dp, acc[m].clone()))
}

fn egf_unit(m: usize) -> Vec<Exact> {
    let mut v = vec![Exact::zero(); m + 1];
    v[0] = Exact::one();
    v
}

/// Binomial convolution of exponential generating function coefficients.
fn egf_mul(a: &[Exact], b: &[Exact]) -> Vec<Exact> {
    (0..a.len())
        .map(|n| {
            (0..=n).fold(Exact::zero(), |acc, i| {
                acc + Exact::from_big(&binomial(n as u64, i as u64)) * &a[i] * &b[n - i]
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let t = SeriesT::new(3).unwrap();
        assert_eq!(t.poly(1), &vec![BigInt::one()]);
        assert_eq!(t.poly(2), &vec![BigInt::zero(), BigInt::one()]);
        assert_eq!(t.poly(3), &vec![BigInt::zero(), BigInt::one(), BigInt::one()]);
        let xy = t.bivariate(3);
        assert_eq!(xy[2][0], BigInt::one());
        assert_eq!(xy[1][1], BigInt::from(2));
        assert_eq!(xy[1][0], BigInt::one());
    }

    #[test]
    fn critical_u_star_is_continuous() {
        let a = u_star(2.0 - 1e-7).unwrap();
        let b = u_star(2.0 + 1e-7).unwrap();
        assert!((a - 1.0).abs() < 1e-6 && (b - 1.0).abs() < 1e-6);
    }
}
