//! Quantization error measures fit; topographic error measures whether
//! winners and runners-up stay grid-adjacent. A deliberate fold leaves
//! the fit intact but breaks adjacency.

use menger_grid::grid::make_chain;
use menger_grid::metrics::{second_bmu, topology_metrics};
use menger_grid::train::bmu;
use menger_grid::Dataset;

fn main() -> menger_grid::Result<()> {
    let data = Dataset::new(vec![vec![0.05], vec![0.45], vec![0.55], vec![0.95]])?;

    // Monotone weights along the chain: neighbors in space are neighbors
    // on the grid.
    let straight = make_chain(4)?.with_weights(vec![vec![0.0], vec![0.4], vec![0.6], vec![1.0]])?;
    let m = topology_metrics(&straight, &data)?;
    println!("straight chain: qe {:.3}, te {:.3}", m.qe, m.te);

    // Swap two weights; samples between them now pick non-adjacent
    // winners.
    let folded = make_chain(4)?.with_weights(vec![vec![0.0], vec![0.6], vec![0.4], vec![1.0]])?;
    let m = topology_metrics(&folded, &data)?;
    println!("folded chain:   qe {:.3}, te {:.3}", m.qe, m.te);

    for sample in data.samples() {
        let best = bmu(&folded, sample)?;
        let second = second_bmu(&folded, sample)?;
        println!(
            "sample {sample:?}: winner {best}, runner-up {second}, adjacent = {}",
            folded.are_adjacent(best, second)
        );
    }
    Ok(())
}
