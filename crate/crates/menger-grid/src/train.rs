//! Vector quantization: LBG codebook optimization and online Kohonen
//! training over arbitrary connected grid graphs.
//!
//! Both algorithms are deterministic functions of their seeds. The data
//! metric is Euclidean throughout; swap [`squared_distance`] to change it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::grid::NeuronGrid;
use crate::metrics::quantization_error;

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Exponentially decaying learning-rate and neighborhood-radius schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingSchedule {
    t_max: u64,
    eta0: f64,
    eta_f: f64,
    sigma0: f64,
    sigma_f: f64,
}

impl TrainingSchedule {
    pub fn new(t_max: u64, eta0: f64, eta_f: f64, sigma0: f64, sigma_f: f64) -> Result<Self> {
        if t_max == 0 {
            return Err(Error::validation("t_max must be at least 1"));
        }
        if !(eta_f > 0.0 && eta_f <= eta0 && eta0 <= 1.0) {
            return Err(Error::validation(format!(
                "learning rates must satisfy 0 < etaF <= eta0 <= 1, got eta0={eta0}, etaF={eta_f}"
            )));
        }
        if !(sigma_f > 0.0 && sigma_f <= sigma0) {
            return Err(Error::validation(format!(
                "radii must satisfy 0 < sigmaF <= sigma0, got sigma0={sigma0}, sigmaF={sigma_f}"
            )));
        }
        Ok(TrainingSchedule {
            t_max,
            eta0,
            eta_f,
            sigma0,
            sigma_f,
        })
    }

    pub fn t_max(&self) -> u64 {
        self.t_max
    }

    /// `eta0 * (etaF/eta0)^(t/t_max)`.
    pub fn eta(&self, t: u64) -> f64 {
        let frac = t as f64 / self.t_max as f64;
        self.eta0 * (self.eta_f / self.eta0).powf(frac)
    }

    /// `sigma0 * (sigmaF/sigma0)^(t/t_max)`.
    pub fn sigma(&self, t: u64) -> f64 {
        let frac = t as f64 / self.t_max as f64;
        self.sigma0 * (self.sigma_f / self.sigma0).powf(frac)
    }
}

/// Best-matching unit: node id minimizing squared Euclidean distance to
/// `x`; ties go to the lowest id.
pub fn bmu(g: &NeuronGrid, x: &[f64]) -> Result<u32> {
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
    let mut best = 0u32;
    let mut best_d = squared_distance(&weights[0], x);
    for (id, w) in weights.iter().enumerate().skip(1) {
        let d = squared_distance(w, x);
        if d < best_d {
            best = id as u32;
            best_d = d;
        }
    }
    Ok(best)
}

/// One online update at step `t`. Every node within hop distance
/// `3 sigma(t)` of the winner moves toward `x` by the factor
/// `eta(t) * exp(-d^2 / (2 sigma(t)^2))`; the move is a convex blend, so
/// a factor of 1 lands on `x` exactly.
pub fn som_step(g: &NeuronGrid, x: &[f64], t: u64, schedule: &TrainingSchedule) -> Result<NeuronGrid> {
    if t >= schedule.t_max() {
        return Err(Error::domain(format!(
            "step {t} is outside the schedule horizon {}",
            schedule.t_max()
        )));
    }
    let mut out = g.clone();
    som_step_in_place(&mut out, x, t, schedule)?;
    Ok(out)
}

fn som_step_in_place(
    g: &mut NeuronGrid,
    x: &[f64],
    t: u64,
    schedule: &TrainingSchedule,
) -> Result<()> {
    let winner = bmu(g, x)?;
    let dists = g.hop_distances(winner)?;
    let eta = schedule.eta(t);
    let sigma = schedule.sigma(t);
    let cutoff = 3.0 * sigma;
    let denom = 2.0 * sigma * sigma;
    for (j, w) in g.weights_mut().iter_mut().enumerate() {
        let d = f64::from(dists[j]);
        if d > cutoff {
            continue;
        }
        let c = eta * (-(d * d) / denom).exp();
        for (wi, &xi) in w.iter_mut().zip(x) {
            *wi = (1.0 - c) * *wi + c * xi;
        }
    }
    Ok(())
}

/// Result of an online training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingReport {
    /// Quantization error measured at the end of each epoch.
    pub qe_trace: Vec<f64>,
    pub grid: NeuronGrid,
    pub steps: u64,
    pub seed: u64,
}

/// Runs `t_max` online steps, drawing samples uniformly with a seeded
/// generator, and records quantization error at `epochs` evenly spaced
/// checkpoints.
pub fn som_train(
    g: &NeuronGrid,
    data: &Dataset,
    schedule: &TrainingSchedule,
    seed: u64,
    epochs: usize,
) -> Result<TrainingReport> {
    if !g.has_weights() {
        return Err(Error::domain("grid weights are not initialized"));
    }
    if g.dim() != Some(data.dim()) {
        return Err(Error::domain(format!(
            "grid dimension {:?} does not match dataset dimension {}",
            g.dim(),
            data.dim()
        )));
    }
    if epochs == 0 {
        return Err(Error::validation("epochs must be at least 1"));
    }
    let mut grid = g.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t_max = schedule.t_max();
    let mut qe_trace = Vec::with_capacity(epochs);
    let mut t = 0u64;
    for e in 0..epochs {
        let end = t_max * (e as u64 + 1) / epochs as u64;
        while t < end {
            let x = data.sample(rng.gen_range(0..data.len())).to_vec();
            som_step_in_place(&mut grid, &x, t, schedule)?;
            t += 1;
        }
        qe_trace.push(quantization_error(&grid, data)?);
    }
    debug_assert_eq!(t, t_max);
    Ok(TrainingReport {
        qe_trace,
        grid,
        steps: t_max,
        seed,
    })
}

/// Outcome of LBG codebook optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct LbgResult {
    pub codebook: Vec<Vec<f64>>,
    /// Mean squared distance of samples to their nearest codeword, for
    /// the returned codebook. Equals the last trace entry.
    pub qe: f64,
    /// Distortion after every assignment pass, non-increasing.
    pub trace: Vec<f64>,
    pub iterations: usize,
}

/// LBG (Lloyd) vector quantization: seeds `m` codewords at distinct
/// samples, then alternates nearest-codeword assignment and centroid
/// updates until the relative distortion improvement drops below `tol`
/// or `max_iters` passes complete.
///
/// An empty cluster is repaired by moving its codeword onto the sample
/// currently farthest from its own codeword, which never increases the
/// distortion. A rounding-induced increase ends the run with the previous
/// codebook, so the reported trace is exactly non-increasing.
pub fn lbg_vq(
    data: &Dataset,
    m: usize,
    max_iters: usize,
    tol: f64,
    seed: u64,
) -> Result<LbgResult> {
    if m == 0 {
        return Err(Error::domain("codebook size must be at least 1"));
    }
    if m > data.len() {
        return Err(Error::domain(format!(
            "codebook size {m} exceeds the {} available samples",
            data.len()
        )));
    }
    if max_iters == 0 {
        return Err(Error::domain("max_iters must be at least 1"));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("tol must be finite and >= 0, got {tol}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codebook: Vec<Vec<f64>> = rand::seq::index::sample(&mut rng, data.len(), m)
        .into_iter()
        .map(|i| data.sample(i).to_vec())
        .collect();

    let (mut assignment, d0) = assign_with_repair(data, &mut codebook);
    let mut trace = vec![d0];

    for _ in 1..max_iters {
        let prev_d = *trace.last().expect("nonempty");
        if prev_d == 0.0 {
            break;
        }
        let prev_codebook = codebook.clone();
        update_centroids(data, &assignment, &mut codebook);
        let (next_assignment, d) = assign_with_repair(data, &mut codebook);
        if d > prev_d {
            codebook = prev_codebook;
            break;
        }
        trace.push(d);
        if (prev_d - d) / prev_d < tol {
            break;
        }
        assignment = next_assignment;
    }

    let qe = *trace.last().expect("nonempty");
    Ok(LbgResult {
        codebook,
        qe,
        iterations: trace.len(),
        trace,
    })
}

/// Assigns every sample to its nearest codeword (ties to the lowest
/// index) and returns the mean squared distortion. Empty clusters are
/// re-seeded at the worst-quantized sample, at most `m` repairs.
fn assign_with_repair(data: &Dataset, codebook: &mut [Vec<f64>]) -> (Vec<usize>, f64) {
    let m = codebook.len();
    for _ in 0..=m {
        let mut assignment = Vec::with_capacity(data.len());
        let mut occupancy = vec![false; m];
        let mut total = 0.0;
        let mut worst = (0usize, -1.0f64);
        for (i, s) in data.samples().iter().enumerate() {
            let mut best = 0usize;
            let mut best_d = squared_distance(&codebook[0], s);
            for (c, w) in codebook.iter().enumerate().skip(1) {
                let d = squared_distance(w, s);
                if d < best_d {
                    best = c;
                    best_d = d;
                }
            }
            assignment.push(best);
            occupancy[best] = true;
            total += best_d;
            if best_d > worst.1 {
                worst = (i, best_d);
            }
        }
        match occupancy.iter().position(|&o| !o) {
            Some(empty) if worst.1 > 0.0 => {
                codebook[empty] = data.sample(worst.0).to_vec();
            }
            _ => return (assignment, total / data.len() as f64),
        }
    }
    // Unreachable in practice; fall through with the final state.
    let (assignment, d) = assign_only(data, codebook);
    (assignment, d)
}

fn assign_only(data: &Dataset, codebook: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut assignment = Vec::with_capacity(data.len());
    let mut total = 0.0;
    for s in data.samples() {
        let mut best = 0usize;
        let mut best_d = squared_distance(&codebook[0], s);
        for (c, w) in codebook.iter().enumerate().skip(1) {
            let d = squared_distance(w, s);
            if d < best_d {
                best = c;
                best_d = d;
            }
        }
        assignment.push(best);
        total += best_d;
    }
    (assignment, total / data.len() as f64)
}

/// Moves every codeword with members to the centroid of its members.
fn update_centroids(data: &Dataset, assignment: &[usize], codebook: &mut [Vec<f64>]) {
    let dim = data.dim();
    let mut sums = vec![vec![0.0; dim]; codebook.len()];
    let mut counts = vec![0usize; codebook.len()];
    for (s, &c) in data.samples().iter().zip(assignment) {
        counts[c] += 1;
        for (acc, &v) in sums[c].iter_mut().zip(s) {
            *acc += v;
        }
    }
    for (c, sum) in sums.into_iter().enumerate() {
        if counts[c] > 0 {
            codebook[c] = sum.into_iter().map(|v| v / counts[c] as f64).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_chain, make_lattice2d};

    fn schedule(t_max: u64, eta0: f64, eta_f: f64, sigma0: f64, sigma_f: f64) -> TrainingSchedule {
        TrainingSchedule::new(t_max, eta0, eta_f, sigma0, sigma_f).unwrap()
    }

    #[test]
    fn schedule_validation_and_endpoints() {
        assert!(TrainingSchedule::new(0, 0.5, 0.1, 2.0, 0.5).is_err());
        assert!(TrainingSchedule::new(10, 0.1, 0.5, 2.0, 0.5).is_err());
        assert!(TrainingSchedule::new(10, 1.5, 0.1, 2.0, 0.5).is_err());
        assert!(TrainingSchedule::new(10, 0.5, 0.1, 0.5, 2.0).is_err());
        assert!(TrainingSchedule::new(10, 0.5, 0.1, 2.0, 0.0).is_err());
        let s = schedule(100, 0.5, 0.05, 4.0, 0.5);
        assert_eq!(s.eta(0), 0.5);
        assert!((s.eta(100) - 0.05).abs() < 1e-12);
        assert_eq!(s.sigma(0), 4.0);
        assert!((s.sigma(100) - 0.5).abs() < 1e-12);
        assert!(s.eta(50) < s.eta(0) && s.eta(50) > s.eta(100));
    }

    #[test]
    fn bmu_examples_and_tie_break() {
        let g = make_chain(2)
            .unwrap()
            .with_weights(vec![vec![0.0], vec![1.0]])
            .unwrap();
        assert_eq!(bmu(&g, &[0.4]).unwrap(), 0);
        assert_eq!(bmu(&g, &[0.5]).unwrap(), 0);
        assert_eq!(bmu(&g, &[0.6]).unwrap(), 1);
        assert!(bmu(&g, &[0.5, 0.5]).is_err());

        // 3x3 lattice with weights on the integer lattice, row-major.
        let mut w = Vec::new();
        for y in 0..3 {
            for x in 0..3 {
                w.push(vec![f64::from(x), f64::from(y)]);
            }
        }
        let g = make_lattice2d(3, 3).unwrap().with_weights(w).unwrap();
        assert_eq!(bmu(&g, &[0.9, 1.1]).unwrap(), 4);
    }

    #[test]
    fn bmu_matches_sort_oracle() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let weights: Vec<Vec<f64>> = (0..5)
                .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let g = make_chain(5).unwrap().with_weights(weights.clone()).unwrap();
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut order: Vec<u32> = (0..5).collect();
            order.sort_by(|&a, &b| {
                squared_distance(&weights[a as usize], &x)
                    .partial_cmp(&squared_distance(&weights[b as usize], &x))
                    .unwrap()
                    .then(a.cmp(&b))
            });
            assert_eq!(bmu(&g, &x).unwrap(), order[0]);
        }
    }

    #[test]
    fn full_rate_step_lands_on_the_sample() {
        // eta = 1 and a vanishing radius: the winner snaps to x exactly,
        // everyone else is beyond the cutoff.
        let s = schedule(10, 1.0, 1.0, 1e-9, 1e-9);
        let g = make_chain(2)
            .unwrap()
            .with_weights(vec![vec![0.0, 0.0], vec![5.0, 5.0]])
            .unwrap();
        let x = [0.3, 0.7];
        let g2 = som_step(&g, &x, 0, &s).unwrap();
        assert_eq!(g2.weight(0).unwrap(), &x);
        assert_eq!(g2.weight(1).unwrap(), &[5.0, 5.0]);
    }

    #[test]
    fn single_node_step_is_plain_relaxation() {
        let s = schedule(10, 0.5, 0.5, 1.0, 1.0);
        let g = make_chain(1)
            .unwrap()
            .with_weights(vec![vec![2.0]])
            .unwrap();
        let g2 = som_step(&g, &[4.0], 0, &s).unwrap();
        // w' = w + eta (x - w) = 2 + 0.5 * 2 = 3.
        assert!((g2.weight(0).unwrap()[0] - 3.0).abs() < 1e-12);
        assert!(som_step(&g, &[4.0], 10, &s).is_err());
    }

    #[test]
    fn neighborhood_kernel_falls_off_with_hops() {
        let s = schedule(10, 1.0, 1.0, 1.0, 1.0);
        let g = make_chain(3)
            .unwrap()
            .with_weights(vec![vec![0.0], vec![10.0], vec![10.0]])
            .unwrap();
        let x = [1.0];
        let g2 = som_step(&g, &x, 0, &s).unwrap();
        // Winner is node 0 with factor 1; node 2 sits two hops away and
        // moves by exp(-2) of the same relative step.
        assert_eq!(g2.weight(0).unwrap()[0], 1.0);
        let expected2 = 10.0 + (-2.0f64).exp() * (1.0 - 10.0);
        assert!((g2.weight(2).unwrap()[0] - expected2).abs() < 1e-12);
        // Radius cutoff: with sigma so small that 3 sigma < 1, only the
        // winner moves.
        let tight = schedule(10, 1.0, 1.0, 0.2, 0.2);
        let g3 = som_step(&g, &x, 0, &tight).unwrap();
        assert_eq!(g3.weight(1).unwrap()[0], 10.0);
        assert_eq!(g3.weight(2).unwrap()[0], 10.0);
    }

    #[test]
    fn training_contracts_to_a_constant_dataset() {
        let data = Dataset::new(vec![vec![0.25, 0.75]; 50]).unwrap();
        let g = make_chain(4).unwrap().init_weights(&data, 3).unwrap();
        // Starting weights already equal the sample here, so perturb them.
        let g = g
            .with_weights(vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ])
            .unwrap();
        let s = schedule(2000, 0.5, 0.05, 2.0, 0.3);
        let report = som_train(&g, &data, &s, 1, 4).unwrap();
        for id in 0..4 {
            let w = report.grid.weight(id).unwrap();
            assert!((w[0] - 0.25).abs() < 1e-6 && (w[1] - 0.75).abs() < 1e-6);
        }
        assert_eq!(report.qe_trace.len(), 4);
        assert_eq!(report.steps, 2000);
    }

    #[test]
    fn training_is_deterministic_and_reduces_qe() {
        let data = Dataset::uniform(1024, 2, 42).unwrap();
        let g = make_lattice2d(8, 8).unwrap().init_weights(&data, 7).unwrap();
        let s = schedule(2048, 0.5, 0.05, 4.0, 0.5);
        let initial_qe = quantization_error(&g, &data).unwrap();
        let a = som_train(&g, &data, &s, 9, 4).unwrap();
        let b = som_train(&g, &data, &s, 9, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.qe_trace.last().unwrap() < &initial_qe);
    }

    #[test]
    fn training_requires_initialized_weights() {
        let data = Dataset::uniform(16, 2, 0).unwrap();
        let g = make_chain(4).unwrap();
        let s = schedule(16, 0.5, 0.05, 1.0, 0.5);
        let err = som_train(&g, &data, &s, 0, 2).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn lbg_single_codeword_is_the_mean() {
        let data = Dataset::new(vec![
            vec![1.0, 2.0],
            vec![3.0, 6.0],
            vec![5.0, 4.0],
            vec![7.0, 0.0],
        ])
        .unwrap();
        let r = lbg_vq(&data, 1, 50, 1e-12, 0).unwrap();
        assert_eq!(r.codebook.len(), 1);
        assert!((r.codebook[0][0] - 4.0).abs() < 1e-12);
        assert!((r.codebook[0][1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn lbg_exact_cover_reaches_zero() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let data = Dataset::new(pts.clone()).unwrap();
        let r = lbg_vq(&data, 4, 50, 1e-12, 3).unwrap();
        assert_eq!(r.qe, 0.0);
        let mut got = r.codebook.clone();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want = pts;
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn lbg_separates_two_far_clouds() {
        let mut pts = Vec::new();
        for i in 0..10 {
            pts.push(vec![0.1 * f64::from(i), 0.05 * f64::from(i)]);
        }
        for i in 0..10 {
            pts.push(vec![50.0 + 0.1 * f64::from(i), 30.0 - 0.05 * f64::from(i)]);
        }
        let mean = |rows: &[Vec<f64>]| {
            let mut m = [0.0; 2];
            for r in rows {
                m[0] += r[0];
                m[1] += r[1];
            }
            vec![m[0] / rows.len() as f64, m[1] / rows.len() as f64]
        };
        let (lo, hi) = (mean(&pts[..10]), mean(&pts[10..]));
        let data = Dataset::new(pts).unwrap();
        let r = lbg_vq(&data, 2, 100, 1e-12, 1).unwrap();
        let mut got = r.codebook.clone();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got[0].iter().zip(&lo) {
            assert!((g - e).abs() < 1e-12);
        }
        for (g, e) in got[1].iter().zip(&hi) {
            assert!((g - e).abs() < 1e-12);
        }
    }

    #[test]
    fn lbg_trace_is_non_increasing() {
        let data = Dataset::uniform(200, 3, 17).unwrap();
        let r = lbg_vq(&data, 8, 100, 0.0, 4).unwrap();
        assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(r.qe, *r.trace.last().unwrap());
    }

    #[test]
    fn lbg_repairs_empty_clusters() {
        // Four identical points and one outlier: two seeds can coincide,
        // leaving one cluster empty until repair moves it to the outlier.
        let data = Dataset::new(vec![
            vec![0.0],
            vec![0.0],
            vec![0.0],
            vec![0.0],
            vec![10.0],
        ])
        .unwrap();
        for seed in 0..10 {
            let r = lbg_vq(&data, 2, 50, 1e-12, seed).unwrap();
            let mut got = r.codebook.clone();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(got, vec![vec![0.0], vec![10.0]], "seed {seed}");
            assert_eq!(r.qe, 0.0);
        }
    }

    #[test]
    fn lbg_input_validation() {
        let data = Dataset::uniform(10, 2, 0).unwrap();
        assert!(lbg_vq(&data, 0, 10, 1e-9, 0).is_err());
        assert!(lbg_vq(&data, 11, 10, 1e-9, 0).is_err());
        assert!(lbg_vq(&data, 2, 0, 1e-9, 0).is_err());
        assert!(lbg_vq(&data, 2, 10, -1.0, 0).is_err());
    }
}
