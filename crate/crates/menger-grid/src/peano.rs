//! Peano's square-filling curve, discretised to order `p`.
//!
//! Index `j < 9^p` is read as `2p` triadic digits `a_1 .. a_2p`. The cell
//! digits come from the classical complement construction with
//! `k(d) = 2 - d` applied once per odd digit seen on the other axis:
//!
//! ```text
//! x_i = k^(a_2 + a_4 + .. + a_2i-2)(a_2i-1)
//! y_i = k^(a_1 + a_3 + .. + a_2i-1)(a_2i)
//! ```
//!
//! Consecutive points are always one cell apart, so the walk visits every
//! cell of the `3^p * 3^p` grid exactly once without jumps.

use crate::error::{Error, Result};

/// Cap on points materialised in one call: `9^7`.
pub const DEFAULT_POINT_BUDGET: u64 = 4_782_969;

/// Single-point queries work up to order 20 (`9^20` still fits in `u64`).
pub const MAX_ORDER: u32 = 20;

/// Grid cell visited at step `index` of the order-`p` curve.
pub fn peano_cell(index: u64, p: u32) -> Result<[u32; 2]> {
    if p == 0 || p > MAX_ORDER {
        return Err(Error::domain(format!(
            "curve order must be between 1 and {MAX_ORDER}, got {p}"
        )));
    }
    let total = 9u64.pow(p);
    if index >= total {
        return Err(Error::domain(format!(
            "index {index} out of range for order {p} (9^{p} = {total} points)"
        )));
    }

    let mut digits = vec![0u8; 2 * p as usize];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % 3) as u8;
        rest /= 3;
    }

    let flip = |d: u8, odd: bool| if odd { 2 - d } else { d };
    let mut cx = 0u32;
    let mut cy = 0u32;
    let mut sum_x_digits = 0u32;
    let mut sum_y_digits = 0u32;
    for pair in digits.chunks_exact(2) {
        let (ax, ay) = (pair[0], pair[1]);
        cx = cx * 3 + u32::from(flip(ax, sum_y_digits % 2 == 1));
        sum_x_digits += u32::from(ax);
        cy = cy * 3 + u32::from(flip(ay, sum_x_digits % 2 == 1));
        sum_y_digits += u32::from(ay);
    }
    Ok([cx, cy])
}

/// Center of the cell visited at step `index`, in the unit square.
pub fn peano_point(index: u64, p: u32) -> Result<[f64; 2]> {
    let [cx, cy] = peano_cell(index, p)?;
    let side = 3f64.powi(-(p as i32));
    Ok([(f64::from(cx) + 0.5) * side, (f64::from(cy) + 0.5) * side])
}

/// An ordered walk in the unit square; consecutive points are distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline2D {
    points: Vec<[f64; 2]>,
}

impl Polyline2D {
    pub fn new(points: Vec<[f64; 2]>) -> Result<Polyline2D> {
        if points.is_empty() {
            return Err(Error::domain("polyline needs at least one point"));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.iter().all(|c| (0.0..=1.0).contains(c)) {
                return Err(Error::domain(format!(
                    "polyline point {i} = {p:?} leaves the unit square"
                )));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::domain(format!(
                "polyline repeats point {:?} at position {i}",
                points[i]
            )));
        }
        Ok(Polyline2D { points })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The order-`p` Peano walk as a polyline.
pub fn peano_polyline(p: u32) -> Result<Polyline2D> {
    Polyline2D::new(peano_curve(p)?)
}

/// The full order-`p` polyline, `9^p` cell centers in traversal order.
pub fn peano_curve(p: u32) -> Result<Vec<[f64; 2]>> {
    if p == 0 || p > MAX_ORDER {
        return Err(Error::domain(format!(
            "curve order must be between 1 and {MAX_ORDER}, got {p}"
        )));
    }
    let total = 9u64.pow(p);
    if total > DEFAULT_POINT_BUDGET {
        return Err(Error::capacity(format!(
            "order {p} has 9^{p} = {total} points, over the budget of {DEFAULT_POINT_BUDGET}"
        )));
    }
    (0..total).map(|j| peano_point(j, p)).collect()
}
