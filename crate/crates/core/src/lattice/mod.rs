//! Lattice models: the Pascal lattice and the Young lattice.

pub mod pascal;
pub mod young;

pub use pascal::{
    pascal_growth_ratio, pascal_merw_harmonic, pascal_model, pascal_truncation, polya_kernel,
    PascalHarmonic, PascalModel, PascalParams, PascalVertex, PolyaHarmonic, Regime,
};
pub use young::{
    partitions, plancherel_kernel, young_dim, Partition, PlancherelHarmonic, YoungModel,
};
