//! Train a ring on points from a circle; the ring should wrap around it
//! and the quantization error should fall epoch by epoch.

use menger_grid::grid::make_ring;
use menger_grid::metrics::topology_metrics;
use menger_grid::train::{som_train, TrainingSchedule};
use menger_grid::Dataset;

fn main() -> menger_grid::Result<()> {
    let n = 512;
    let samples: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * f64::from(i) / f64::from(n);
            vec![0.5 + 0.4 * angle.cos(), 0.5 + 0.4 * angle.sin()]
        })
        .collect();
    let data = Dataset::new(samples)?;

    let grid = make_ring(16)?.init_weights(&data, 7)?;
    let schedule = TrainingSchedule::new(4096, 0.5, 0.05, 4.0, 0.5)?;
    let report = som_train(&grid, &data, &schedule, 7, 8)?;

    for (epoch, qe) in report.qe_trace.iter().enumerate() {
        println!("epoch {epoch}: qe {qe:.5}");
    }
    let metrics = topology_metrics(&report.grid, &data)?;
    println!("final qe {:.5}, te {:.5}", metrics.qe, metrics.te);

    for (id, w) in report.grid.weights().unwrap().iter().enumerate() {
        println!("node {id:>2}: [{:.3}, {:.3}]", w[0], w[1]);
    }
    Ok(())
}
