use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::PyramidState;
use crate::rng::derive;

/// Box occupancy of `samples` pyramids of size `n`.
///
/// `counts[(c, r)]` is the number of samples holding the box in column `c`
/// (first box in column 0) and row `r` (from 0). Partial heatmaps merge by
/// adding counts.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Heatmap {
    pub n: usize,
    pub samples: usize,
    pub counts: BTreeMap<(i32, u32), u64>,
}

impl Heatmap {
    pub fn empty(n: usize) -> Self {
        Heatmap {
            n,
            samples: 0,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, state: &PyramidState) {
        for (c, &h) in state.columns().zip(&state.heights) {
            for r in 0..h {
                *self.counts.entry((c, r)).or_insert(0) += 1;
            }
        }
        self.samples += 1;
    }

    pub fn merge(mut self, other: Heatmap) -> Result<Heatmap> {
        if self.samples == 0 {
            return Ok(other);
        }
        if other.samples > 0 && other.n != self.n {
            return Err(Error::param("heatmaps of different sizes"));
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.samples += other.samples;
        Ok(self)
    }

    pub fn frequency(&self, c: i32, r: u32) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        self.counts.get(&(c, r)).copied().unwrap_or(0) as f64 / self.samples as f64
    }

    /// Side of a box after scaling by `1/sqrt(n)`.
    pub fn cell_side(&self) -> f64 {
        1.0 / (self.n as f64).sqrt()
    }

    /// `sum freq * cell area`, the mean scaled area: 1 for complete runs.
    pub fn mass(&self) -> f64 {
        let total: u64 = self.counts.values().sum();
        total as f64 / (self.samples as f64 * self.n as f64)
    }

    /// Scaled rectangle `[x0, x1] x [y0, y1]` of box `(c, r)`, with the
    /// first box centred on the axis.
    pub fn cell_rect(&self, c: i32, r: u32) -> (f64, f64, f64, f64) {
        let s = self.cell_side();
        let x0 = (c as f64 - 0.5) * s;
        let y0 = r as f64 * s;
        (x0, x0 + s, y0, y0 + s)
    }

    /// Rows `[freq(c, r) for c in columns]` for CSV output:
    /// header `column,row,x,y,frequency`.
    pub fn csv_rows(&self) -> Vec<String> {
        self.counts
            .keys()
            .map(|&(c, r)| {
                let (x0, x1, y0, y1) = self.cell_rect(c, r);
                format!(
                    "{c},{r},{},{},{}",
                    (x0 + x1) / 2.0,
                    (y0 + y1) / 2.0,
                    self.frequency(c, r)
                )
            })
            .collect()
    }

    /// Area-weighted resampling onto a `grid x grid` raster covering
    /// `[-extent, extent] x [0, 2 extent]`. Cell values are mean covered
    /// fractions in `[0, 1]`; the mass of the raster equals [`Self::mass`]
    /// whenever every box lies inside the window.
    pub fn raster(&self, grid: usize, extent: f64) -> Result<Raster> {
        if grid < 16 {
            return Err(Error::param("raster resolution must be at least 16"));
        }
        if !(extent > 0.0) {
            return Err(Error::param("extent must be positive"));
        }
        let side = 2.0 * extent / grid as f64;
        let mut cells = vec![0.0; grid * grid];
        for (&(c, r), _) in &self.counts {
            let f = self.frequency(c, r);
            let (x0, x1, y0, y1) = self.cell_rect(c, r);
            let i0 = (((x0 + extent) / side).floor().max(0.0) as usize).min(grid);
            let i1 = (((x1 + extent) / side).ceil().max(0.0) as usize).min(grid);
            let j0 = ((y0 / side).floor().max(0.0) as usize).min(grid);
            let j1 = ((y1 / side).ceil().max(0.0) as usize).min(grid);
            for j in j0..j1 {
                let (cy0, cy1) = (j as f64 * side, (j + 1) as f64 * side);
                let oy = (y1.min(cy1) - y0.max(cy0)).max(0.0);
                for i in i0..i1 {
                    let (cx0, cx1) = (i as f64 * side - extent, (i + 1) as f64 * side - extent);
                    let ox = (x1.min(cx1) - x0.max(cx0)).max(0.0);
                    cells[j * grid + i] += f * ox * oy / (side * side);
                }
            }
        }
        Ok(Raster {
            grid,
            extent,
            cells,
        })
    }
}

/// Heatmap resampled on a square grid; row 0 is the bottom row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Raster {
    pub grid: usize,
    pub extent: f64,
    pub cells: Vec<f64>,
}

impl Raster {
    pub fn cell_side(&self) -> f64 {
        2.0 * self.extent / self.grid as f64
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.cells[j * self.grid + i]
    }

    pub fn mass(&self) -> f64 {
        let a = self.cell_side() * self.cell_side();
        self.cells.iter().sum::<f64>() * a
    }
}

/// `count` pyramids from `sampler`; pyramid `k` receives seed
/// `derive(seed, k)`, as in [`pyramid_heatmap`].
pub fn sample_pyramids<F>(sampler: F, count: usize, seed: u64) -> Result<Vec<PyramidState>>
where
    F: Fn(u64) -> Result<PyramidState> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|k| sampler(derive(seed, k as u64)))
        .collect()
}

/// Occupancy of `samples` pyramids of size `n` drawn by `sampler(seed)`;
/// sample `k` receives seed `derive(seed, k)`.
pub fn pyramid_heatmap<F>(sampler: F, n: usize, samples: usize, seed: u64) -> Result<Heatmap>
where
    F: Fn(u64) -> Result<PyramidState> + Sync,
{
    if samples == 0 {
        return Err(Error::param("at least one sample"));
    }
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let state = sampler(derive(seed, k as u64))?;
            if state.size() as usize != n {
                return Err(Error::Invalid(format!(
                    "sampler returned {} boxes, expected {n}",
                    state.size()
                )));
            }
            let mut h = Heatmap::empty(n);
            h.add(&state);
            Ok(h)
        })
        .try_reduce(|| Heatmap::empty(n), |a, b| a.merge(b))
}
