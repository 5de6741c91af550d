//! Lloyd-style vector quantization on two Gaussian-free clouds; the
//! distortion trace never rises.

use menger_grid::train::lbg_vq;
use menger_grid::Dataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> menger_grid::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut samples = Vec::new();
    for center in [[0.2, 0.3], [0.8, 0.7]] {
        for _ in 0..200 {
            samples.push(vec![
                center[0] + rng.gen_range(-0.1..0.1),
                center[1] + rng.gen_range(-0.1..0.1),
            ]);
        }
    }
    let data = Dataset::new(samples)?;

    let result = lbg_vq(&data, 2, 50, 1e-9, 42)?;
    println!("converged after {} iterations", result.iterations);
    for (i, qe) in result.trace.iter().enumerate() {
        println!("  iteration {i}: distortion {qe:.6}");
    }
    for (i, w) in result.codebook.iter().enumerate() {
        println!("codeword {i}: [{:.3}, {:.3}]", w[0], w[1]);
    }
    println!("final quantization error {:.6}", result.qe);
    Ok(())
}
