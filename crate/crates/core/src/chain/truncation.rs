use serde::Serialize;

use crate::diagram::{DiagramModel, Dimensions};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, FLOAT_TOL};

/// What a sequence of truncated values suggests about its limit points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LimitDiagnostic {
    /// The last three values agree within tolerance.
    Cauchy { limit: f64 },
    /// The values split into `period` residue classes, each settled, with
    /// several distinct limits.
    MultipleLimitPoints { period: usize, limits: Vec<f64> },
    /// Neither pattern is visible yet; `spread` is the largest pairwise gap
    /// among the last three values.
    Unresolved { spread: f64 },
}

/// Classifies a sequence of values indexed by increasing horizons.
///
/// Two values count as equal when they differ by at most `10 * tol` times
/// their magnitude (floored at 1).
pub fn classify_sequence(values: &[f64], tol: f64) -> LimitDiagnostic {
    let close = |a: f64, b: f64| (a - b).abs() <= 10.0 * tol * a.abs().max(b.abs()).max(1.0);
    let k = values.len();
    if k < 3 {
        return LimitDiagnostic::Unresolved {
            spread: f64::INFINITY,
        };
    }
    let last = &values[k - 3..];
    let spread = (last[0] - last[1])
        .abs()
        .max((last[1] - last[2]).abs())
        .max((last[0] - last[2]).abs());
    if close(last[0], last[1]) && close(last[1], last[2]) && close(last[0], last[2]) {
        return LimitDiagnostic::Cauchy { limit: last[2] };
    }
    for period in 2..=k / 2 {
        let settled = (0..period).all(|r| {
            let class: Vec<f64> = values.iter().skip(r).step_by(period).copied().collect();
            class.len() >= 2 && close(class[class.len() - 2], class[class.len() - 1])
        });
        if settled {
            let mut limits: Vec<f64> = Vec::new();
            for r in 0..period {
                let v = values.iter().skip(r).step_by(period).last().copied().unwrap();
                if !limits.iter().any(|l| close(*l, v)) {
                    limits.push(v);
                }
            }
            if limits.len() > 1 {
                return LimitDiagnostic::MultipleLimitPoints { period, limits };
            }
        }
    }
    LimitDiagnostic::Unresolved { spread }
}

/// `phi_n(x)` for every requested vertex and horizon.
#[derive(Debug, Clone)]
pub struct TruncationTable<V, W> {
    pub horizons: Vec<usize>,
    pub vertices: Vec<V>,
    /// `values[i][j] = phi_{horizons[j]}(vertices[i])`.
    pub values: Vec<Vec<W>>,
    pub diagnostics: Vec<LimitDiagnostic>,
}

/// Ratios `d(x, X_n) / d(root, X_n)` over increasing horizons.
pub fn merw_by_truncation<M: DiagramModel>(
    dims: &Dimensions<'_, M>,
    vertices: &[M::Vertex],
    horizons: &[usize],
) -> Result<TruncationTable<M::Vertex, M::Weight>> {
    if horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("horizons must be strictly increasing"));
    }
    let model = dims.model();
    let root = model.root();
    let mut values = vec![Vec::with_capacity(horizons.len()); vertices.len()];
    for &n in horizons {
        let total = dims.to_level(&root, n)?;
        for (i, x) in vertices.iter().enumerate() {
            values[i].push(dims.to_level(x, n)? / total.clone());
        }
    }
    let diagnostics = values
        .iter()
        .map(|row| {
            let floats: Vec<f64> = row.iter().map(Scalar::to_f64).collect();
            classify_sequence(&floats, FLOAT_TOL)
        })
        .collect();
    Ok(TruncationTable {
        horizons: horizons.to_vec(),
        vertices: vertices.to_vec(),
        values,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_period_three() {
        let v: Vec<f64> = (0..12).map(|i| [0.5, 1.0 / 3.0, 2.0 / 3.0][i % 3]).collect();
        match classify_sequence(&v, 1e-9) {
            LimitDiagnostic::MultipleLimitPoints { period, limits } => {
                assert_eq!(period, 3);
                assert_eq!(limits.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classifies_constant() {
        assert_eq!(
            classify_sequence(&[1.0, 1.0, 1.0, 1.0], 1e-9),
            LimitDiagnostic::Cauchy { limit: 1.0 }
        );
    }
}
