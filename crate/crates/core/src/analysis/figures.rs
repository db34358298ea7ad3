use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::measures::{e2_normalized, e_min, e_min_reinforced, partial_negativity, tangle};
use crate::states::pure_from_schmidt;

const GRID_TOL: f64 = 1e-12;

/// Two-qutrit pure-state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFamily {
    /// Schmidt coefficients `(√(2/3−t), √(1/3), √t)` for `t` on an evenly
    /// spaced grid over `[0, 1/3]`.
    Fig1 { resolution: usize },
    /// `(√p, √q, √(1−p−q))` for `p = i/n`, `q = j/n` with `q ≤ p` and
    /// `p + q ≤ 1`.
    Fig2 { resolution: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub param1: f64,
    /// Absent for one-parameter families.
    pub param2: Option<f64>,
    pub e2_norm: f64,
    pub e_min: f64,
    pub e_min_reinforced: f64,
    pub tangle: f64,
    pub partial_negativity: f64,
}

fn row(squares: [f64; 3], param1: f64, param2: Option<f64>) -> Result<FigureRow> {
    let coeffs = squares.map(|x| Float::sqrt(x.max(0.0)));
    let psi = pure_from_schmidt(&coeffs, 3, 3)?;
    Ok(FigureRow {
        param1,
        param2,
        e2_norm: e2_normalized(&psi)?,
        e_min: e_min(&psi)?,
        e_min_reinforced: e_min_reinforced(&psi)?,
        tangle: tangle(&psi)?,
        partial_negativity: partial_negativity(&psi.density())?,
    })
}

pub fn fig1_point(t: f64) -> Result<FigureRow> {
    if !(-GRID_TOL..=1.0 / 3.0 + GRID_TOL).contains(&t) {
        return Err(Error::validation(
            "grid_range",
            alloc::format!("t = {t} outside [0, 1/3]"),
        ));
    }
    let t = t.clamp(0.0, 1.0 / 3.0);
    row([2.0 / 3.0 - t, 1.0 / 3.0, t], t, None)
}

pub fn fig2_point(p: f64, q: f64) -> Result<FigureRow> {
    if !(p > 0.0 && q > 0.0 && q <= p + GRID_TOL && p + q <= 1.0 + GRID_TOL) {
        return Err(Error::validation(
            "grid_range",
            alloc::format!("(p, q) = ({p}, {q}) needs p >= q > 0 and p + q <= 1"),
        ));
    }
    row([p, q, 1.0 - p - q], p, Some(q))
}

pub fn figure_scan(family: FigureFamily) -> Result<Vec<FigureRow>> {
    match family {
        FigureFamily::Fig1 { resolution } => {
            require_resolution(resolution)?;
            let last = (resolution - 1) as f64;
            (0..resolution).map(|i| fig1_point(i as f64 / last / 3.0)).collect()
        }
        FigureFamily::Fig2 { resolution } => {
            require_resolution(resolution)?;
            let n = resolution as f64;
            let mut rows = Vec::new();
            for i in 1..=resolution {
                for j in 1..=i.min(resolution - i) {
                    rows.push(fig2_point(i as f64 / n, j as f64 / n)?);
                }
            }
            Ok(rows)
        }
    }
}

fn require_resolution(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::validation("resolution", "need at least 2 grid points"));
    }
    Ok(())
}
