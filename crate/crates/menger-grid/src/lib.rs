//! Neuron grids as curves in the Menger sponge.
//!
//! A self-organizing map's grid is, topologically, a curve: a finite
//! connected graph. Every such curve embeds in the Menger sponge (the
//! universal curve), so every grid topology has concrete 3-D geometry.
//! This crate makes both halves of that statement runnable:
//!
//! * [`triadic`], [`sponge`], [`peano`]: exact base-3 coordinate
//!   arithmetic, level-k sponge cells and their face-adjacency skeleton,
//!   and the classic square-filling Peano walk.
//! * [`grid`], [`dataset`], [`train`], [`metrics`]: connected grid
//!   graphs, LBG vector quantization, online Kohonen training over
//!   arbitrary grid topologies, and quantization/topographic error,
//!   including the chain-versus-lattice folding experiment.
//! * [`embed`]: a constructive search that places any connected grid
//!   (max degree 6) into the sponge skeleton with vertex-disjoint link
//!   routing, plus validation and 3-D geometry export.
//! * [`io`]: deterministic JSON/CSV/OBJ/PLY persistence for all of the
//!   above.
//!
//! Everything seeded is reproducible: the same inputs and seeds give
//! byte-identical artifacts. The `examples/` directory exercises one
//! capability per file and is the fastest way in; a thin CLI binary
//! (`menger-grid`) wires the same calls to files for scripting.

pub mod dataset;
pub mod embed;
pub mod error;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod peano;
pub mod sponge;
pub mod train;
pub mod triadic;

pub use dataset::Dataset;
pub use embed::{
    embed_grid, embedding_to_geometry, validate_embedding, Embedding, GridGeometry, Violation,
};
pub use error::{Error, Result};
pub use grid::{
    from_edge_list, make_chain, make_lattice2d, make_lattice3d, make_ring, NeuronGrid,
};
pub use metrics::{
    folding_demo, folding_experiment, quantization_error, second_bmu, topographic_error,
    topology_metrics, FoldingExperiment, TopologyMetrics,
};
pub use peano::{peano_cell, peano_curve, peano_point, peano_polyline, Polyline2D};
pub use sponge::{enumerate_cells, is_sponge_member, SpongeCell, SpongeSkeleton};
pub use train::{bmu, lbg_vq, som_step, som_train, LbgResult, TrainingReport, TrainingSchedule};
pub use triadic::{has_alternative_expansion, to_triadic, TriadicDigits};
