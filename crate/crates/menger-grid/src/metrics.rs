//! Topology-preservation measurements, and the folding experiment that
//! shows a 1-D chain cannot cover a square without tearing neighborhoods.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::grid::{make_chain, make_lattice2d, NeuronGrid};
use crate::train::{bmu, som_train, squared_distance, TrainingReport, TrainingSchedule};

/// Summary statistics of how a trained grid represents a dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyMetrics {
    /// Mean Euclidean distance from each sample to its winner weight.
    pub qe: f64,
    /// Fraction of samples whose two nearest units are not grid-adjacent.
    pub te: f64,
    pub n_samples: usize,
}

/// Mean distance from samples to their best-matching units.
pub fn quantization_error(g: &NeuronGrid, data: &Dataset) -> Result<f64> {
    let mut sum = 0.0;
    for s in data.samples() {
        let b = bmu(g, s)?;
        sum += squared_distance(g.weight(b).expect("weights checked"), s).sqrt();
    }
    Ok(sum / data.len() as f64)
}

/// The node closest to `x` after the winner, same lowest-id tie-break.
pub fn second_bmu(g: &NeuronGrid, x: &[f64]) -> Result<u32> {
    if g.len() < 2 {
        return Err(Error::domain("second-best unit needs at least 2 nodes"));
    }
    let weights = g
        .weights()
        .ok_or_else(|| Error::domain("grid weights are not initialized"))?;
    if x.len() != g.dim().expect("weights present") {
        return Err(Error::domain(format!(
            "sample dimension {} does not match grid dimension {}",
            x.len(),
            g.dim().expect("weights present")
        )));
    }
    let mut best = (0u32, squared_distance(&weights[0], x));
    let mut second = (1u32, squared_distance(&weights[1], x));
    if second.1 < best.1 {
        std::mem::swap(&mut best, &mut second);
    }
    for (id, w) in weights.iter().enumerate().skip(2) {
        let d = squared_distance(w, x);
        if d < best.1 {
            second = best;
            best = (id as u32, d);
        } else if d < second.1 {
            second = (id as u32, d);
        }
    }
    Ok(second.0)
}

/// Fraction of samples whose first and second units share no grid edge.
pub fn topographic_error(g: &NeuronGrid, data: &Dataset) -> Result<f64> {
    let mut folds = 0usize;
    for s in data.samples() {
        let first = bmu(g, s)?;
        let second = second_bmu(g, s)?;
        if !g.are_adjacent(first, second) {
            folds += 1;
        }
    }
    Ok(folds as f64 / data.len() as f64)
}

pub fn topology_metrics(g: &NeuronGrid, data: &Dataset) -> Result<TopologyMetrics> {
    Ok(TopologyMetrics {
        qe: quantization_error(g, data)?,
        te: topographic_error(g, data)?,
        n_samples: data.len(),
    })
}

/// Unit budget shared by both competitors in the folding experiment.
pub const DEMO_UNITS: u32 = 64;
pub const DEMO_SAMPLES: usize = 2048;
pub const DEMO_SCHEDULE: (u64, f64, f64, f64, f64) = (16384, 0.5, 0.05, 8.0, 0.5);
pub const DEMO_EPOCHS: usize = 8;

/// Everything the folding experiment produced, for inspection or export.
#[derive(Debug, Clone)]
pub struct FoldingExperiment {
    pub seed: u64,
    pub data: Dataset,
    pub chain: TrainingReport,
    pub lattice: TrainingReport,
    pub chain_metrics: TopologyMetrics,
    pub lattice_metrics: TopologyMetrics,
}

/// Trains a 64-node chain and an 8x8 lattice on the same 2048 uniform
/// square samples with identical schedules, then measures both.
///
/// A square has no continuous, neighborhood-preserving image in a line
/// segment, so the chain must fold: its topographic error stays well
/// above the lattice's.
pub fn folding_experiment(seed: u64) -> Result<FoldingExperiment> {
    let (t_max, eta0, eta_f, sigma0, sigma_f) = DEMO_SCHEDULE;
    let schedule = TrainingSchedule::new(t_max, eta0, eta_f, sigma0, sigma_f)?;
    let data = Dataset::uniform(DEMO_SAMPLES, 2, seed)?;
    // Derived sub-seeds keep the two runs identical in everything except
    // grid topology.
    let init_seed = seed.wrapping_add(1);
    let train_seed = seed.wrapping_add(2);

    let chain = make_chain(DEMO_UNITS)?.init_weights(&data, init_seed)?;
    let lattice = make_lattice2d(8, 8)?.init_weights(&data, init_seed)?;
    let chain = som_train(&chain, &data, &schedule, train_seed, DEMO_EPOCHS)?;
    let lattice = som_train(&lattice, &data, &schedule, train_seed, DEMO_EPOCHS)?;

    let chain_metrics = topology_metrics(&chain.grid, &data)?;
    let lattice_metrics = topology_metrics(&lattice.grid, &data)?;
    Ok(FoldingExperiment {
        seed,
        data,
        chain,
        lattice,
        chain_metrics,
        lattice_metrics,
    })
}

/// The two topographic errors of [`folding_experiment`], chain first.
pub fn folding_demo(seed: u64) -> Result<(f64, f64)> {
    let e = folding_experiment(seed)?;
    Ok((e.chain_metrics.te, e.lattice_metrics.te))
}
