//! Knuth's estimator of path counts and the approximate MERW built on it.
//!
//! A trajectory `s` of a proposal kernel `q` from `x` has cost
//! `c(s) = w_s / prod q(s_i, s_{i+1})`; its mean is `d(x, X_{level(x)+depth})`
//! whenever `q` charges every child. Costs are accumulated as logarithms.

mod algorithm;
mod estimate;
mod proposal;
mod pyramid;
mod table1;

pub use algorithm::{merw_approx_sample, pyramid_merw_approx_sample, ApproxMerwSample, ApproxParams};
pub use estimate::{
    knuth_estimate, knuth_estimate_exact, knuth_log_costs, trajectory_log_cost, EstimateResult,
    ExactEstimate,
};
pub use proposal::{FiniteHorizon, GammaSchedule, GammaSpec, Grw, OutDegreePower, ProposalKernel};
pub use pyramid::{pyramid_estimate, pyramid_log_costs, WalkRule};
pub use table1::{table1_experiment, table1_seeds, Table1Row, TABLE1_MAX_N};
