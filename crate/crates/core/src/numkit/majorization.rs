use super::{Spectrum, TRACE_TOL};
use crate::error::{Error, Result};

const PARTIAL_SUM_TOL: f64 = 1e-10;

/// `x ≺ y`: every leading partial sum of descending `y` dominates the
/// corresponding one of `x`. The shorter vector is zero padded.
pub fn majorizes(x: &Spectrum, y: &Spectrum) -> Result<bool> {
    for (name, v) in [("x", x), ("y", y)] {
        let s = v.sum();
        if (s - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation("unit_sum", alloc::format!("{name} sums to {s}")));
        }
    }
    let n = x.len().max(y.len());
    let x = x.padded(n);
    let y = y.padded(n);
    let mut sx = 0.0;
    let mut sy = 0.0;
    for (a, b) in x.values().iter().zip(y.values()) {
        sx += a;
        sy += b;
        if sx > sy + PARTIAL_SUM_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}
