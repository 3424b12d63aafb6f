//! Orbit analysis of the symmetric problem.
//!
//! With `ε = 0` and symmetric data `q1 = −q2 = q`, `p1 = −p2 = p`, the
//! energy relation reads `h/2 = ½p² − 1/√(q²+r²) − m/(4q)`, so that
//! `q̇² = h + 2/√(q²+r²) + m/(2q)`. Everything here follows from that first
//! integral and from the reduced regularized flow.

mod kepler1d;
mod levelset;
pub mod quadrature;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::ring_radius;
use crate::error::{Error, Result};
use crate::integrators::{integrate, IntegrateOptions, IntegratorConfig, Method, ReducedFlow};
use crate::roots::brent;

pub use kepler1d::{kepler1d_validation, Kepler1dReport};
pub use levelset::{level_set_sample, LevelGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    Periodic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitKind::Periodic => "Periodic",
            OrbitKind::Parabolic => "Parabolic",
            OrbitKind::Hyperbolic => "Hyperbolic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub kind: OrbitKind,
    pub h: f64,
}

pub const DEFAULT_PARABOLIC_BAND: f64 = 1e-12;

/// Energy classification; `|h| ≤ tol` counts as parabolic.
pub fn classify(h: f64, tol: f64) -> OrbitClass {
    let kind = if h < -tol {
        OrbitKind::Periodic
    } else if h > tol {
        OrbitKind::Hyperbolic
    } else {
        OrbitKind::Parabolic
    };
    OrbitClass { kind, h }
}

/// Terminal speed `√h` of escaping secondaries.
pub fn escape_speed(h: f64) -> Result<f64> {
    if h < 0.0 {
        return Err(Error::Domain(format!(
            "bounded motion (h = {h}) has no escape speed"
        )));
    }
    Ok(h.sqrt())
}

/// `q̇ = √(h + 2/√(q²+r²) + m/(2q))`, the positive branch.
pub fn momentum_profile(q: f64, h: f64, m: f64, r: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("momentum profile needs q > 0, got {q}")));
    }
    let radicand = h + 2.0 / (q * q + r * r).sqrt() + m / (2.0 * q);
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "q = {q} lies beyond the turning point (radicand {radicand:e})"
        )));
    }
    Ok(radicand.sqrt())
}

/// Maximal height `q_max` of a bounded (`h < 0`) symmetric orbit: the
/// root of `h/2 + 1/√(q²+r²) + m/(4q) = 0`.
pub fn turning_point(h: f64, m: f64, r: f64) -> Result<f64> {
    if !(h < 0.0) {
        return Err(Error::Domain(format!("turning point needs h < 0, got {h}")));
    }
    let f = |q: f64| 0.5 * h + 1.0 / (q * q + r * r).sqrt() + m / (4.0 * q);
    if m == 0.0 {
        // f(0) = h/2 + 1/r must be positive for a root to exist.
        let disc = 4.0 / (h * h) - r * r;
        if !(disc > 0.0) {
            return Err(Error::Domain(format!(
                "no turning point for m = 0 and h = {h} <= -2/r"
            )));
        }
        return Ok(disc.sqrt());
    }
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = hi;
    while f(lo) <= 0.0 {
        lo *= 0.5;
    }
    brent(f, lo, hi, 1e-15 * hi, 200)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodMethod {
    Quadrature,
    Flow,
}

/// Panels per decade of the geometric grading toward `θ = 0`.
const QUAD_PANELS: usize = 40;
const QUAD_NODES: usize = 32;

/// Physical time between successive collisions, `2∫₀^{q_max} dq/q̇`.
///
/// After `q = q_max sin²θ` both endpoints are regular; the integrand is
/// rewritten so that `q̇²` carries the factor `(q_max − q)` explicitly and
/// no cancellation occurs near the turning point. Panels are graded
/// geometrically toward `θ = 0`, where the `m/(2q)` boundary layer lives.
fn period_quadrature(h: f64, m: f64, r: f64) -> Result<f64> {
    let qmax = turning_point(h, m, r)?;
    let smax = (qmax * qmax + r * r).sqrt();
    let integrand = |theta: f64| {
        let sin = theta.sin();
        let sin2 = sin * sin;
        let q = qmax * sin2;
        let s = (q * q + r * r).sqrt();
        let ring = 2.0 * (qmax + q) / (s * smax * (s + smax));
        // dq/q̇ = 2√q_max sin²θ dθ / √(ring sin²θ + m/(2 q_max²))
        2.0 * qmax.sqrt() * sin2 / (ring * sin2 + m / (2.0 * qmax * qmax)).sqrt()
    };
    let run = |nodes: usize| {
        let rule = quadrature::gauss_legendre(nodes);
        let mut upper = std::f64::consts::FRAC_PI_2;
        let mut total = 0.0;
        for _ in 0..QUAD_PANELS {
            let lower = 0.5 * upper;
            total += quadrature::integrate_panel(&integrand, lower, upper, &rule);
            upper = lower;
        }
        total + quadrature::integrate_panel(&integrand, 0.0, upper, &rule)
    };
    let fine = 2.0 * run(QUAD_NODES);
    let coarse = 2.0 * run(QUAD_NODES / 2);
    let err = (fine - coarse).abs();
    if !(err <= 1e-10 * fine.abs()) {
        return Err(Error::Quadrature {
            estimate: fine,
            error: err,
        });
    }
    Ok(fine)
}

pub const DEFAULT_FLOW_STEP: f64 = 1e-3;

/// Collision-to-collision passage of the reduced regularized flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowPassage {
    /// Physical time between collisions.
    pub t: f64,
    /// Fictitious time between collisions.
    pub tau: f64,
}

/// Integrate the reduced flow from a collision (`Q1 = 0`, `P1 = √(2m)`)
/// to the next one with the fourth-order Gauss collocation.
pub fn flow_passage(h: f64, m: f64, r: f64, dtau: f64) -> Result<FlowPassage> {
    if !(h < 0.0) {
        return Err(Error::Domain(format!("bounded passage needs h < 0, got {h}")));
    }
    let flow = ReducedFlow {
        a: 4.0 * r,
        h,
        m,
        flipped: false,
    };
    let cfg = IntegratorConfig {
        record_every: usize::MAX,
        ..IntegratorConfig::new(Method::Gauss4, dtau)
    };
    let opts = IntegrateOptions {
        stop_after_collisions: Some(1),
        ..Default::default()
    };
    // Generous τ budget: the passage is a bounded oscillation.
    let traj = integrate(&flow, &[0.0, (2.0 * m).sqrt()], 1e4, &cfg, &opts)?;
    let e = traj
        .events
        .first()
        .ok_or_else(|| Error::Domain("no return to collision within the τ budget".into()))?;
    Ok(FlowPassage { t: e.t, tau: e.tau })
}

/// Period of the bounded symmetric orbit in physical time.
pub fn period(h: f64, m: f64, r: f64, method: PeriodMethod) -> Result<f64> {
    if !(h < 0.0) {
        return Err(Error::Domain(format!("period needs h < 0, got {h}")));
    }
    if !(m > 0.0) {
        return Err(Error::Domain(format!("period needs m > 0, got {m}")));
    }
    match method {
        PeriodMethod::Quadrature => period_quadrature(h, m, r),
        PeriodMethod::Flow => flow_passage(h, m, r, DEFAULT_FLOW_STEP).map(|p| p.t),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub h: f64,
    pub m: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T_quadrature")]
    pub t_quadrature: f64,
    #[serde(rename = "T_flow")]
    pub t_flow: f64,
    /// Period of the reduced state `(Q1, P1)` in fictitious time: two
    /// collision passages, since `Q1` changes sign at every collision.
    pub tau_period: f64,
}

impl PeriodReport {
    pub fn relative_gap(&self) -> f64 {
        (self.t_quadrature - self.t_flow).abs() / self.t_quadrature.abs()
    }
}

pub fn period_report(h: f64, m: f64, n: usize) -> Result<PeriodReport> {
    let r = ring_radius(n)?;
    let t_quadrature = period(h, m, r, PeriodMethod::Quadrature)?;
    let passage = flow_passage(h, m, r, DEFAULT_FLOW_STEP)?;
    Ok(PeriodReport {
        h,
        m,
        n,
        t_quadrature,
        t_flow: passage.t,
        tau_period: 2.0 * passage.tau,
    })
}
