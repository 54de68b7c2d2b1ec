//! Limit-shape and distributional diagnostics: the Plancherel curve and
//! the pyramid target curve G, occupancy heatmaps, boundary distances, and
//! Kolmogorov-Smirnov comparisons for tree fractions and block sizes.

mod curve;
mod heatmap;
mod stats;

pub use curve::{
    area_matched_distance, boundary_distance, curve_g, hausdorff, omega, rotate, staircase, staircase_scaled, CurveG, DISTANCE_SAMPLES,
};
pub use heatmap::{pyramid_heatmap, sample_pyramids, Heatmap, Raster};
pub use stats::{
    crp_blocks, crp_pd_test, fraction_test, gem_frequencies, ks_statistic, ks_two_sample,
    CrpComparison, DistributionTestReport, FractionTarget,
};
