//! Sample collections for training: nonempty, rectangular, finite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Vec<f64>>,
    dim: usize,
}

impl Dataset {
    pub fn new(samples: Vec<Vec<f64>>) -> Result<Dataset> {
        let Some(first) = samples.first() else {
            return Err(Error::validation("dataset is empty"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::validation("samples must have at least 1 column"));
        }
        for (row, s) in samples.iter().enumerate() {
            if s.len() != dim {
                return Err(Error::validation(format!(
                    "row {row} has {} columns but row 0 has {dim}",
                    s.len()
                )));
            }
            if s.iter().any(|v| !v.is_finite()) {
                return Err(Error::validation(format!(
                    "row {row} contains a non-finite value"
                )));
            }
        }
        Ok(Dataset { samples, dim })
    }

    /// `n` points drawn uniformly from `[0,1]^dim`, deterministic in seed.
    pub fn uniform(n: usize, dim: usize, seed: u64) -> Result<Dataset> {
        if n == 0 || dim == 0 {
            return Err(Error::domain("uniform dataset needs n >= 1 and dim >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect())
            .collect();
        Dataset::new(samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape() {
        assert!(Dataset::new(vec![]).is_err());
        assert!(Dataset::new(vec![vec![]]).is_err());
        assert!(Dataset::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(Dataset::new(vec![vec![f64::INFINITY]]).is_err());
        let d = Dataset::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.dim(), 2);
    }

    #[test]
    fn uniform_is_deterministic_and_bounded() {
        let a = Dataset::uniform(100, 2, 5).unwrap();
        let b = Dataset::uniform(100, 2, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Dataset::uniform(100, 2, 6).unwrap());
        assert!(a
            .samples()
            .iter()
            .all(|s| s.iter().all(|&v| (0.0..1.0).contains(&v))));
    }
}
