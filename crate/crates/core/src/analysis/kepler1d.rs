//! Validation of the regularized one-dimensional Kepler problem.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrators::{integrate, EventKind, IntegrateOptions, IntegratorConfig, Kepler1dFlow, Method};
use crate::symplectic::euler_forward;

/// Oscillator periods integrated per validation run.
const PERIODS: usize = 16;
/// Steps per period; a multiple of 4 so that turning points are samples.
const STEPS_PER_PERIOD: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kepler1dReport {
    pub h: f64,
    pub mu_grav: f64,
    /// `max |μ − (¼v² − (h/2)u²)|` along the run.
    pub relation_residual: f64,
    /// `π / (mean τ between collisions)`.
    pub omega_measured: f64,
    /// `√(2|h|)`.
    pub omega_expected: f64,
    /// Largest spectral magnitude of `u(τ)` over the runner-up.
    pub fft_peak_ratio: f64,
    pub turning_point_measured: f64,
    /// `μ/|h|`.
    pub turning_point_expected: f64,
    /// `max | |v| − 2√μ |` over collision transits.
    pub collision_speed_error: f64,
    pub collisions: usize,
    /// `max |½y² − μ/x − h|` at samples away from collision.
    pub physical_energy_residual: f64,
}

impl Kepler1dReport {
    pub fn omega_ratio(&self) -> f64 {
        self.omega_measured / self.omega_expected
    }
}

/// Integrates the regularized problem from a collision over 16 periods of
/// the oscillator with the Gauss collocation and compares against the
/// closed-form oscillator.
pub fn kepler1d_validation(h: f64, mu_grav: f64) -> Result<Kepler1dReport> {
    if !(h < 0.0) {
        return Err(Error::param("h", h, "must be negative"));
    }
    if !(mu_grav > 0.0) {
        return Err(Error::param("mu_grav", mu_grav, "must be positive"));
    }
    let flow = Kepler1dFlow { mu_grav, h };
    let omega_expected = (2.0 * h.abs()).sqrt();
    let period = 2.0 * std::f64::consts::PI / omega_expected;
    let steps = PERIODS * STEPS_PER_PERIOD;
    let cfg = IntegratorConfig::new(Method::Gauss4, period / STEPS_PER_PERIOD as f64);
    let v0 = 2.0 * mu_grav.sqrt();
    let traj = integrate(&flow, &[0.0, v0], steps as f64 * cfg.step, &cfg, &IntegrateOptions::default())?;

    let relation = |u: f64, v: f64| 0.25 * v * v - 0.5 * h * u * u;
    let relation_residual = traj
        .samples
        .iter()
        .map(|s| (mu_grav - relation(s.state[0], s.state[1])).abs())
        .fold(0.0, f64::max);

    let collisions: Vec<_> = traj.events_of(EventKind::Collision).collect();
    if collisions.len() < 2 {
        return Err(Error::Domain("fewer than two collision transits".into()));
    }
    let span = collisions[collisions.len() - 1].tau - collisions[0].tau;
    let omega_measured = std::f64::consts::PI * (collisions.len() - 1) as f64 / span;
    let collision_speed_error = collisions
        .iter()
        .map(|e| (e.state[1].abs() - v0).abs())
        .fold(0.0, f64::max);

    let u_max = traj.samples.iter().map(|s| s.state[0].abs()).fold(0.0, f64::max);
    let turning_point_measured = 0.5 * u_max * u_max;
    let physical_energy_residual = traj
        .samples
        .iter()
        .filter(|s| s.state[0].abs() > 0.1 * u_max)
        .map(|s| {
            let (x, y) = euler_forward(s.state[0], s.state[1])?;
            Ok((0.5 * y * y - mu_grav / x - h).abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let mut buffer: Vec<Complex<f64>> = traj.samples[..steps]
        .iter()
        .map(|s| Complex::new(s.state[0], 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(steps).process(&mut buffer);
    let mut mags: Vec<f64> = buffer[..steps / 2].iter().map(|c| c.norm()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let fft_peak_ratio = mags[0] / mags[1].max(f64::MIN_POSITIVE);

    Ok(Kepler1dReport {
        h,
        mu_grav,
        relation_residual,
        omega_measured,
        omega_expected,
        fft_peak_ratio,
        turning_point_measured,
        turning_point_expected: mu_grav / h.abs(),
        collision_speed_error,
        collisions: collisions.len(),
        physical_energy_residual,
    })
}
