//! Sampling the zero set of the reduced Hamiltonian `Γ̃` on a grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physical::EnergyLevel;
use crate::regularized::{gamma_reduced, ReducedState};
use crate::roots::bisect;

const POLISH_FTOL: f64 = 1e-12;
const ACCEPT: f64 = 1e-10;

/// Rectangle `[−q1_bound, q1_bound] × [−p1_bound, p1_bound]` with
/// `resolution` grid lines per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelGrid {
    pub q1_bound: f64,
    pub p1_bound: f64,
    pub resolution: usize,
}

impl LevelGrid {
    /// Grid lines `L·(2i − (n−1))/(n−1)`; node `n−1−i` is exactly `−x_i`.
    fn nodes(bound: f64, n: usize) -> Vec<f64> {
        let d = (n - 1) as f64;
        (0..n).map(|i| bound * (2.0 * i as f64 - d) / d).collect()
    }
}

/// Roots of `f` between consecutive nodes. Brackets are oriented from the
/// node nearer zero outward so that mirrored brackets give mirrored roots.
fn scan_line<F: Fn(f64) -> f64>(f: F, nodes: &[f64], out: &mut Vec<f64>) -> Result<()> {
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    for i in 0..nodes.len() - 1 {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            out.push(nodes[i]);
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        let (inner, outer) = if nodes[i].abs() <= nodes[i + 1].abs() {
            (nodes[i], nodes[i + 1])
        } else {
            (nodes[i + 1], nodes[i])
        };
        out.push(bisect(&f, inner, outer, POLISH_FTOL, 200)?);
    }
    if values[nodes.len() - 1] == 0.0 {
        out.push(nodes[nodes.len() - 1]);
    }
    Ok(())
}

/// Points of `{Γ̃ = 0}` found by sign-change scanning along every grid row
/// (constant `P1`) and column (constant `Q1`), each polished by bisection.
/// Returned sorted and deduplicated; every point has `|Γ̃| < 1e-10`.
pub fn level_set_sample(h: f64, m: f64, a: f64, grid: &LevelGrid) -> Result<Vec<(f64, f64)>> {
    if grid.resolution < 2 {
        return Err(Error::param(
            "resolution",
            grid.resolution as f64,
            "needs at least two grid lines",
        ));
    }
    if !(grid.q1_bound > 0.0) || !(grid.p1_bound > 0.0) {
        return Err(Error::Domain("grid bounds must be positive".into()));
    }
    let level = EnergyLevel(h);
    let gamma = |q1: f64, p1: f64| gamma_reduced(&ReducedState { q1, p1, a }, level, m);
    let qs = LevelGrid::nodes(grid.q1_bound, grid.resolution);
    let ps = LevelGrid::nodes(grid.p1_bound, grid.resolution);

    let mut points = Vec::new();
    let mut roots = Vec::new();
    for &p1 in &ps {
        roots.clear();
        scan_line(|q1| gamma(q1, p1), &qs, &mut roots)?;
        points.extend(roots.iter().map(|&q1| (q1, p1)));
    }
    for &q1 in &qs {
        roots.clear();
        scan_line(|p1| gamma(q1, p1), &ps, &mut roots)?;
        points.extend(roots.iter().map(|&p1| (q1, p1)));
    }
    points.retain(|&(q1, p1)| gamma(q1, p1).abs() < ACCEPT);
    points.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    points.dedup();
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_points_lie_on_level() {
        let grid = LevelGrid {
            q1_bound: 3.0,
            p1_bound: 3.0,
            resolution: 41,
        };
        let a = 4.0 * 0.5;
        let pts = level_set_sample(-1.0, 1e-3, a, &grid).unwrap();
        assert!(!pts.is_empty());
        for &(q1, p1) in &pts {
            let s = ReducedState { q1, p1, a };
            assert!(gamma_reduced(&s, EnergyLevel(-1.0), 1e-3).abs() < 1e-10);
        }
    }

    #[test]
    fn empty_intersection_is_not_an_error() {
        // Far from the orbit: P1² ≥ 2m everywhere on the level, grid too small.
        let grid = LevelGrid {
            q1_bound: 1e-3,
            p1_bound: 1e-3,
            resolution: 5,
        };
        assert!(level_set_sample(-1.0, 1e-3, 2.0, &grid).unwrap().is_empty());
    }

    #[test]
    fn rejects_degenerate_grid() {
        let grid = LevelGrid {
            q1_bound: 1.0,
            p1_bound: 1.0,
            resolution: 1,
        };
        assert!(level_set_sample(-1.0, 1e-3, 2.0, &grid).is_err());
    }
}
