//! Time stepping with dual clocks and event detection.
//!
//! Every system implements [`Flow`]: a vector field in some independent
//! variable (fictitious time `τ` for regularized systems, physical time
//! `t` for the physical chart) plus the clock rate `dt/dτ`. Steppers
//! advance the phase point and integrate the clock with the same
//! quadrature as the state.

mod adaptive;
mod steppers;
pub mod systems;
mod trajectory;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use adaptive::{integrate_adaptive, integrate_physical_oracle, DEFAULT_GUARD_DISTANCE};
pub use steppers::{step, step_gauss4, step_implicit_midpoint, step_rk4, Step};
pub use systems::{Kepler1dFlow, PhysicalFlow, ReducedFlow, RegularizedFlow};
pub use trajectory::{integrate, Aborted, Event, EventKind, IntegrateOptions, RunMetadata, Sample, Trajectory};

pub trait Flow {
    fn dim(&self) -> usize;

    /// Writes the vector field at `y` into `dy`.
    fn field(&self, y: &[f64], dy: &mut [f64]) -> Result<()>;

    /// `dt/d(independent variable)`.
    fn clock_rate(&self, _y: &[f64]) -> f64 {
        1.0
    }

    /// Coordinate whose sign change marks a collision (`Q1`).
    fn collision_coordinate(&self, _y: &[f64]) -> Option<f64> {
        None
    }

    /// Distance of the secondaries from the ring plane, for escape stops.
    fn escape_distance(&self, _y: &[f64]) -> Option<f64> {
        None
    }

    /// Separation in the physical chart, for proximity guards.
    fn separation(&self, _y: &[f64]) -> Option<f64> {
        None
    }

    /// Conserved quantity expected to vanish on the run (`Γ`, or `H − h`).
    fn invariant(&self, _y: &[f64]) -> Option<f64> {
        None
    }

    /// CSV column names of the state vector.
    fn columns(&self) -> Vec<&'static str>;

    fn eval(&self, y: &[f64]) -> Result<Vec<f64>> {
        let mut dy = vec![0.0; self.dim()];
        self.field(y, &mut dy)?;
        Ok(dy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ImplicitMidpoint,
    /// Two-stage Gauss–Legendre collocation (order 4, symplectic).
    Gauss4,
    Rk4,
    RkAdaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub method: Method,
    pub step: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub adaptive_tol: f64,
    /// Keep every n-th sample (the final sample is always kept).
    pub record_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Gauss4,
            step: 1e-3,
            newton_tol: 1e-13,
            newton_max_iter: 50,
            adaptive_tol: 1e-12,
            record_every: 1,
        }
    }
}

impl IntegratorConfig {
    pub fn new(method: Method, step: f64) -> Self {
        Self {
            method,
            step,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        use crate::error::Error;
        if !(self.step > 0.0) {
            return Err(Error::config("integrator.step", "must be positive"));
        }
        if !(self.newton_tol > 0.0) || !(self.adaptive_tol > 0.0) {
            return Err(Error::config("integrator", "tolerances must be positive"));
        }
        if self.newton_max_iter == 0 || self.record_every == 0 {
            return Err(Error::config(
                "integrator",
                "newton_max_iter and record_every must be at least 1",
            ));
        }
        Ok(())
    }
}
