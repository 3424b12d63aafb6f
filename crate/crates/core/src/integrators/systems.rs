use super::Flow;
use crate::config::{MassParams, RingConfig};
use crate::error::Result;
use crate::physical::{hamiltonian, physical_field, EnergyLevel, PhysState};
use crate::regularized::{
    chart_positions, gamma, gamma_reduced, reduced_field, reduced_field_flipped,
    regularized_field_raw, time_scale, ReducedState, RegState,
};

/// Symmetric problem on the invariant plane, state `(Q1, P1)`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedFlow {
    pub a: f64,
    pub h: f64,
    pub m: f64,
    /// Use the sign-flipped field (mutation checks only).
    pub flipped: bool,
}

impl ReducedFlow {
    pub fn new(ring: &RingConfig, h: f64, m: f64) -> Self {
        Self {
            a: ring.reduced_constant(),
            h,
            m,
            flipped: false,
        }
    }

    fn state(&self, y: &[f64]) -> ReducedState {
        ReducedState {
            q1: y[0],
            p1: y[1],
            a: self.a,
        }
    }
}

impl Flow for ReducedFlow {
    fn dim(&self) -> usize {
        2
    }

    fn field(&self, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let s = self.state(y);
        let (dq, dp) = if self.flipped {
            reduced_field_flipped(&s, EnergyLevel(self.h))
        } else {
            reduced_field(&s, EnergyLevel(self.h))
        };
        dy[0] = dq;
        dy[1] = dp;
        Ok(())
    }

    fn clock_rate(&self, y: &[f64]) -> f64 {
        0.5 * y[0] * y[0]
    }

    fn collision_coordinate(&self, y: &[f64]) -> Option<f64> {
        Some(y[0])
    }

    fn escape_distance(&self, y: &[f64]) -> Option<f64> {
        Some(0.25 * y[0] * y[0])
    }

    fn separation(&self, y: &[f64]) -> Option<f64> {
        Some(0.5 * y[0] * y[0])
    }

    fn invariant(&self, y: &[f64]) -> Option<f64> {
        Some(gamma_reduced(&self.state(y), EnergyLevel(self.h), self.m))
    }

    fn columns(&self) -> Vec<&'static str> {
        vec!["Q1", "P1"]
    }
}

/// Full regularized system, state `(Q1, Q2, P1, P2)`.
#[derive(Debug, Clone)]
pub struct RegularizedFlow {
    pub params: MassParams,
    pub ring: RingConfig,
    pub h: f64,
}

impl RegularizedFlow {
    pub fn new(params: MassParams, ring: RingConfig, h: f64) -> Self {
        Self { params, ring, h }
    }
}

impl Flow for RegularizedFlow {
    fn dim(&self) -> usize {
        4
    }

    fn field(&self, y: &[f64], dy: &mut [f64]) -> Result<()> {
        dy.copy_from_slice(&regularized_field_raw(
            y,
            self.h,
            self.params.mu,
            self.ring.radius,
        ));
        Ok(())
    }

    fn clock_rate(&self, y: &[f64]) -> f64 {
        time_scale(&RegState::from_phase(y), &self.params)
    }

    fn collision_coordinate(&self, y: &[f64]) -> Option<f64> {
        Some(y[0])
    }

    fn escape_distance(&self, y: &[f64]) -> Option<f64> {
        let (q1, q2) = chart_positions(&RegState::from_phase(y), &self.params);
        Some(q1.abs().max(q2.abs()))
    }

    fn separation(&self, y: &[f64]) -> Option<f64> {
        Some(0.5 * y[0] * y[0])
    }

    fn invariant(&self, y: &[f64]) -> Option<f64> {
        Some(gamma(
            &RegState::from_phase(y),
            EnergyLevel(self.h),
            &self.params,
            &self.ring,
        ))
    }

    fn columns(&self) -> Vec<&'static str> {
        vec!["Q1", "Q2", "P1", "P2"]
    }
}

/// Physical chart, state `(q1, q2, p1, p2)`, independent variable `t`.
#[derive(Debug, Clone)]
pub struct PhysicalFlow {
    pub params: MassParams,
    pub ring: RingConfig,
    pub h: f64,
}

impl PhysicalFlow {
    pub fn new(params: MassParams, ring: RingConfig, h: f64) -> Self {
        Self { params, ring, h }
    }
}

impl Flow for PhysicalFlow {
    fn dim(&self) -> usize {
        4
    }

    fn field(&self, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let f = physical_field(&PhysState::from_slice(y), &self.params, &self.ring)?;
        dy.copy_from_slice(&f.to_array());
        Ok(())
    }

    fn escape_distance(&self, y: &[f64]) -> Option<f64> {
        Some(y[0].abs().max(y[1].abs()))
    }

    fn separation(&self, y: &[f64]) -> Option<f64> {
        Some(y[0] - y[1])
    }

    fn invariant(&self, y: &[f64]) -> Option<f64> {
        hamiltonian(&PhysState::from_slice(y), &self.params, &self.ring)
            .ok()
            .map(|e| e - self.h)
    }

    fn columns(&self) -> Vec<&'static str> {
        vec!["q1", "q2", "p1", "p2"]
    }
}

/// Regularized one-dimensional Kepler problem.
///
/// With `x = u²/2`, `y = v/u` and `dt = u² dτ`, the Hamiltonian
/// `½y² − μ/x` on the level `h` becomes `Γ = ½v² − 2μ − h u²`: a harmonic
/// oscillator of frequency `√(2|h|)` for `h < 0`.
#[derive(Debug, Clone, Copy)]
pub struct Kepler1dFlow {
    pub mu_grav: f64,
    pub h: f64,
}

impl Kepler1dFlow {
    pub fn gamma(&self, u: f64, v: f64) -> f64 {
        0.5 * v * v - 2.0 * self.mu_grav - self.h * u * u
    }
}

impl Flow for Kepler1dFlow {
    fn dim(&self) -> usize {
        2
    }

    fn field(&self, y: &[f64], dy: &mut [f64]) -> Result<()> {
        dy[0] = y[1];
        dy[1] = 2.0 * self.h * y[0];
        Ok(())
    }

    fn clock_rate(&self, y: &[f64]) -> f64 {
        y[0] * y[0]
    }

    fn collision_coordinate(&self, y: &[f64]) -> Option<f64> {
        Some(y[0])
    }

    fn escape_distance(&self, y: &[f64]) -> Option<f64> {
        Some(0.5 * y[0] * y[0])
    }

    fn invariant(&self, y: &[f64]) -> Option<f64> {
        Some(self.gamma(y[0], y[1]))
    }

    fn columns(&self) -> Vec<&'static str> {
        vec!["u", "v"]
    }
}
