//! Central Markov chains built from non-negative harmonic functions.
//!
//! A function `phi` with `phi(root) = 1` and
//! `phi(x) = sum_y w(x, y) phi(y)` defines the kernel
//! `p(x, y) = w(x, y) phi(y) / phi(x)`. Conditioned on its endpoints, the
//! resulting chain picks paths proportionally to their weight.

mod entropy;
mod sample;
mod truncation;

pub use entropy::{path_entropy, EntropyReport};
pub use sample::{choose_index, sample_many, sample_path, PathSample};
pub use truncation::{
    classify_sequence, merw_by_truncation, LimitDiagnostic, TruncationTable,
};

use std::fmt::{Debug, Display};
use std::marker::PhantomData;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::diagram::{forward_level, paths_between, DiagramModel};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, HARMONIC_TOL};

pub trait HarmonicFn<V>: Send + Sync {
    type Value: Scalar;

    fn eval(&self, v: &V) -> Self::Value;
    fn description(&self) -> String;

    fn exact(&self) -> bool {
        Self::Value::EXACT
    }
}

impl<V, H: HarmonicFn<V> + ?Sized> HarmonicFn<V> for &H {
    type Value = H::Value;
    fn eval(&self, v: &V) -> H::Value {
        (**self).eval(v)
    }
    fn description(&self) -> String {
        (**self).description()
    }
}

impl<V, H: HarmonicFn<V> + ?Sized> HarmonicFn<V> for Arc<H> {
    type Value = H::Value;
    fn eval(&self, v: &V) -> H::Value {
        (**self).eval(v)
    }
    fn description(&self) -> String {
        (**self).description()
    }
}

/// Harmonic function backed by a closure.
pub struct FnHarmonic<V, S, F> {
    f: F,
    description: String,
    _marker: PhantomData<fn(&V) -> S>,
}

impl<V, S, F> FnHarmonic<V, S, F>
where
    S: Scalar,
    F: Fn(&V) -> S + Send + Sync,
{
    pub fn new(description: impl Into<String>, f: F) -> Self {
        FnHarmonic {
            f,
            description: description.into(),
            _marker: PhantomData,
        }
    }
}

impl<V, S, F> HarmonicFn<V> for FnHarmonic<V, S, F>
where
    S: Scalar,
    F: Fn(&V) -> S + Send + Sync,
{
    type Value = S;
    fn eval(&self, v: &V) -> S {
        (self.f)(v)
    }
    fn description(&self) -> String {
        self.description.clone()
    }
}

pub trait MarkovKernel: Send + Sync {
    type Vertex: Clone + Eq + Debug + Display + Send + Sync;
    type Prob: Scalar;

    fn start(&self) -> Self::Vertex;

    /// Outgoing transitions with positive probability.
    fn transitions(&self, x: &Self::Vertex) -> Result<Vec<(Self::Vertex, Self::Prob)>>;
}

impl<K: MarkovKernel + ?Sized> MarkovKernel for &K {
    type Vertex = K::Vertex;
    type Prob = K::Prob;
    fn start(&self) -> K::Vertex {
        (**self).start()
    }
    fn transitions(&self, x: &K::Vertex) -> Result<Vec<(K::Vertex, K::Prob)>> {
        (**self).transitions(x)
    }
}

/// `p(x, y) = w(x, y) phi(y) / phi(x)` on the support of `phi`.
#[derive(Debug, Clone)]
pub struct CentralKernel<M, H> {
    model: M,
    harmonic: H,
}

impl<M, H> CentralKernel<M, H>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    /// Builds the kernel, checking `phi(root) = 1` and the root row sum.
    pub fn new(model: M, harmonic: H) -> Result<Self> {
        let root = model.root();
        let phi_root = harmonic.eval(&root);
        let one = M::Weight::one();
        if !M::Weight::negligible(&(phi_root.clone() - one.clone()), &one, HARMONIC_TOL) {
            return Err(Error::NotHarmonic {
                vertex: format!("{root} (phi(root) = {phi_root})"),
                residual: (phi_root - one).to_f64(),
            });
        }
        let kernel = CentralKernel { model, harmonic };
        let total = kernel
            .transitions(&root)?
            .into_iter()
            .fold(M::Weight::zero(), |acc, (_, p)| acc + p);
        let residual = total - M::Weight::one();
        if !M::Weight::negligible(&residual, &M::Weight::one(), HARMONIC_TOL) {
            return Err(Error::NotHarmonic {
                vertex: root.to_string(),
                residual: residual.to_f64(),
            });
        }
        Ok(kernel)
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn harmonic(&self) -> &H {
        &self.harmonic
    }

    /// Row of `x` with its sum checked against 1 under the mode tolerance.
    pub fn checked_transitions(&self, x: &M::Vertex) -> Result<Vec<(M::Vertex, M::Weight)>> {
        let row = self.transitions(x)?;
        let total = row
            .iter()
            .fold(M::Weight::zero(), |acc, (_, p)| acc + p.clone());
        let residual = total - M::Weight::one();
        if M::Weight::negligible(&residual, &M::Weight::one(), HARMONIC_TOL) {
            Ok(row)
        } else {
            Err(Error::NotHarmonic {
                vertex: x.to_string(),
                residual: residual.to_f64(),
            })
        }
    }
}

/// Builds the central kernel of `phi`.
pub fn kernel_from_harmonic<M, H>(model: M, phi: H) -> Result<CentralKernel<M, H>>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    CentralKernel::new(model, phi)
}

impl<M, H> MarkovKernel for CentralKernel<M, H>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    type Vertex = M::Vertex;
    type Prob = M::Weight;

    fn start(&self) -> M::Vertex {
        self.model.root()
    }

    fn transitions(&self, x: &M::Vertex) -> Result<Vec<(M::Vertex, M::Weight)>> {
        let phi_x = self.harmonic.eval(x);
        if phi_x <= M::Weight::zero() {
            return Err(Error::Invalid(format!("{x} lies outside the support")));
        }
        let mut row = Vec::new();
        for e in self.model.children(x) {
            let phi_y = self.harmonic.eval(&e.child);
            if phi_y > M::Weight::zero() {
                row.push((e.child, e.weight * phi_y / phi_x.clone()));
            }
        }
        Ok(row)
    }
}

/// `phi(x) - sum_y w(x, y) phi(y)` for each listed vertex.
pub fn harmonicity_residual<M, H>(
    model: &M,
    phi: &H,
    vertices: &[M::Vertex],
) -> Vec<(M::Vertex, M::Weight)>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    vertices
        .iter()
        .map(|x| {
            let sum = model
                .children(x)
                .into_iter()
                .fold(M::Weight::zero(), |acc, e| acc + e.weight * phi.eval(&e.child));
            (x.clone(), phi.eval(x) - sum)
        })
        .collect()
}

/// Largest residual relative to `phi(x)` (absolute where `phi(x) = 0`).
pub fn max_relative_residual<M, H>(model: &M, phi: &H, vertices: &[M::Vertex]) -> f64
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    harmonicity_residual(model, phi, vertices)
        .into_iter()
        .map(|(x, r)| {
            let scale = phi.eval(&x).to_f64().abs();
            let r = r.to_f64().abs();
            if scale > 0.0 {
                r / scale
            } else {
                r
            }
        })
        .fold(0.0, f64::max)
}

/// `sum_{y in X_n} d(root, y) phi(y) - 1`, zero for every valid harmonic function.
pub fn identity_residual<M, H>(model: &M, phi: &H, n: usize, budget: usize) -> Result<M::Weight>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    let layer = forward_level(model, &model.root(), n, None, budget)?;
    let total = layer
        .into_iter()
        .fold(M::Weight::zero(), |acc, (y, d)| acc + d * phi.eval(&y));
    Ok(total - M::Weight::one())
}

/// Product of kernel transitions along `path`; zero if a step is impossible.
pub fn path_probability<K: MarkovKernel>(kernel: &K, path: &[K::Vertex]) -> Result<K::Prob> {
    let mut acc = K::Prob::one();
    for pair in path.windows(2) {
        let row = kernel.transitions(&pair[0])?;
        match row.into_iter().find(|(y, _)| *y == pair[1]) {
            Some((_, p)) => acc = acc * p,
            None => return Ok(K::Prob::zero()),
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub holds: bool,
    pub max_deviation: f64,
    pub paths: usize,
}

/// Checks `p(t) w_s = p(s) w_t` for all paths `s, t` from `x` to `y`.
pub fn conditional_uniformity_check<M, K>(
    model: &M,
    kernel: &K,
    x: &M::Vertex,
    y: &M::Vertex,
    limit: usize,
) -> Result<UniformityReport>
where
    M: DiagramModel,
    K: MarkovKernel<Vertex = M::Vertex, Prob = M::Weight>,
{
    let mut reference: Option<(M::Weight, M::Weight)> = None;
    let mut max_deviation: f64 = 0.0;
    let mut holds = true;
    let mut paths = 0;
    for (path, w) in paths_between(model, x.clone(), y.clone()) {
        paths += 1;
        if paths > limit {
            return Err(Error::budget("enumerating paths between two vertices", limit));
        }
        let p = path_probability(kernel, &path)?;
        match &reference {
            None => reference = Some((p, w)),
            Some((p0, w0)) => {
                let lhs = p.clone() * w0.clone();
                let rhs = p0.clone() * w;
                let diff = lhs - rhs.clone();
                let dev = diff.to_f64().abs() / rhs.to_f64().abs().max(f64::MIN_POSITIVE);
                max_deviation = max_deviation.max(dev);
                if !M::Weight::negligible(&diff, &rhs, HARMONIC_TOL) {
                    holds = false;
                }
            }
        }
    }
    Ok(UniformityReport {
        holds,
        max_deviation,
        paths,
    })
}
