//! Finite base-3 (triadic) expansions of coordinates in `[0, 1]`.
//!
//! A coordinate is represented by its first `k` triadic digits. Finite
//! triadic rationals have two infinite expansions (one terminating, one
//! ending in repeating 2s); membership tests for the sponge must consider
//! both, so [`has_alternative_expansion`] exposes the second prefix.

use crate::error::{Error, Result};

/// Largest supported digit count. Beyond this, `x * 3^k` exceeds the exact
/// integer range of f64 and digits would be noise.
pub const MAX_PRECISION: usize = 33;

/// Snap tolerance exponent: an input within `3^-(k+2)` of a multiple of
/// `3^-k` is treated as that multiple, so membership is deterministic for
/// points sitting on cube faces.
const SNAP_NUMERATOR: f64 = 1.0 / 9.0;

/// The first `k` digits of a triadic expansion of some `x` in `[0, 1]`.
///
/// Digit `i` is the coefficient of `3^-(i+1)`. `exact` is true when `x`
/// equals the finite digit sum; when false, the residual `x - value()`
/// lies in `[0, 3^-k)` for canonical expansions, or stands for an implicit
/// tail of repeating 2s for expansions produced by
/// [`has_alternative_expansion`] (and for the all-2 encoding of `x = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriadicDigits {
    digits: Vec<u8>,
    exact: bool,
}

impl TriadicDigits {
    /// Builds from raw digits. Every digit must be 0, 1 or 2.
    pub fn new(digits: Vec<u8>, exact: bool) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::domain("triadic expansion needs at least 1 digit"));
        }
        if let Some(d) = digits.iter().find(|d| **d > 2) {
            return Err(Error::domain(format!("triadic digit {d} out of range")));
        }
        Ok(TriadicDigits { digits, exact })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The finite digit sum `sum(digits[i] * 3^-(i+1))`.
    pub fn value(&self) -> f64 {
        let mut acc = 0.0;
        let mut scale = 1.0;
        for &d in &self.digits {
            scale /= 3.0;
            acc += f64::from(d) * scale;
        }
        acc
    }
}

/// Greedy (canonical) `k`-digit triadic expansion of `x`.
///
/// Inputs within `3^-(k+2)` of a multiple of `3^-k` are snapped to that
/// multiple and marked exact. `x = 1` has no canonical k-digit prefix; it
/// is encoded as all-2 digits, inexact, so the far faces of the unit cube
/// behave like the near ones.
pub fn to_triadic(x: f64, k: usize) -> Result<TriadicDigits> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "coordinate {x} outside [0, 1] has no triadic expansion"
        )));
    }
    if k == 0 {
        return Err(Error::domain("precision k must be at least 1"));
    }
    if k > MAX_PRECISION {
        return Err(Error::domain(format!(
            "precision {k} exceeds the supported maximum {MAX_PRECISION}"
        )));
    }

    let scale = 3f64.powi(k as i32);
    let y = x * scale;
    let nearest = y.round();
    let (mut n, mut exact) = if (y - nearest).abs() < SNAP_NUMERATOR {
        (nearest as u64, true)
    } else {
        (y.floor() as u64, false)
    };
    let cells = scale as u64;
    if n >= cells {
        // x = 1 (or snapped to it): all-2 digits, residual 3^-k implied.
        n = cells - 1;
        exact = false;
    }

    let mut digits = vec![0u8; k];
    let mut rest = n;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % 3) as u8;
        rest /= 3;
    }
    TriadicDigits::new(digits, exact)
}

/// The second admissible `k`-digit prefix of an exact triadic rational:
/// the last nonzero digit is decremented and the suffix filled with 2s
/// (standing for the infinite tail of 2s).
///
/// Returns `None` for zero (a single expansion) and for inexact values
/// (their expansion is unique at this precision).
pub fn has_alternative_expansion(d: &TriadicDigits) -> Option<TriadicDigits> {
    if !d.exact {
        return None;
    }
    let last_nonzero = d.digits.iter().rposition(|&d| d != 0)?;
    let mut digits = d.digits.clone();
    digits[last_nonzero] -= 1;
    for slot in digits.iter_mut().skip(last_nonzero + 1) {
        *slot = 2;
    }
    Some(TriadicDigits {
        digits,
        exact: false,
    })
}
