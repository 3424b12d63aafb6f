//! Problem parameterization: infinitesimal masses, ring geometry and the
//! general rotationally symmetric primary configuration.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean infinitesimal mass `m` and asymmetry `ε`, with the derived
/// quantities `μ = (1−ε)/2`, `α = 1+ε`, `β = 1−ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassParams {
    pub m: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl MassParams {
    pub fn new(m: f64, epsilon: f64) -> Result<Self> {
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::param("m", m, "must be finite and non-negative"));
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::param("epsilon", epsilon, "must lie in [0, 1)"));
        }
        Ok(Self {
            m,
            epsilon,
            mu: (1.0 - epsilon) / 2.0,
            alpha: 1.0 + epsilon,
            beta: 1.0 - epsilon,
        })
    }

    /// Symmetric case `ε = 0`.
    pub fn symmetric(m: f64) -> Result<Self> {
        Self::new(m, 0.0)
    }

    /// `αβ = 1 − ε²`.
    pub fn reduced_product(&self) -> f64 {
        self.alpha * self.beta
    }

    /// Physical masses `(m1, m2) = (m(1+ε), m(1−ε))`.
    pub fn masses(&self) -> (f64, f64) {
        (self.m * self.alpha, self.m * self.beta)
    }
}

/// Mean mass and asymmetry from the two physical masses, `m2 ≤ m1`.
pub fn rescale_masses(m1: f64, m2: f64) -> Result<MassParams> {
    if !(m1 > 0.0) {
        return Err(Error::param("m1", m1, "must be positive"));
    }
    if !(m2 > 0.0) {
        return Err(Error::param("m2", m2, "must be positive"));
    }
    if m2 > m1 {
        return Err(Error::param("m2", m2, "must not exceed m1"));
    }
    let m = (m1 + m2) / 2.0;
    let epsilon = (m1 - m2) / (m1 + m2);
    MassParams::new(m, epsilon)
}

/// Sine sum `Σ_{γ=1}^{k} 1/sin(πγ/N)`, largest terms first.
fn inverse_sine_sum(n: usize, upto: usize) -> f64 {
    (1..=upto)
        .map(|g| 1.0 / (PI * g as f64 / n as f64).sin())
        .sum()
}

/// Right-hand side of `2N r³ = S(N)` for the relative equilibrium with
/// `G = 1`, primary mass `1/N` and unit angular velocity.
pub fn ring_sine_sum(n: usize) -> f64 {
    if n % 2 == 1 {
        inverse_sine_sum(n, (n - 1) / 2)
    } else {
        0.5 + inverse_sine_sum(n, n / 2 - 1)
    }
}

/// Radius of the rotating N-gon of primaries.
pub fn ring_radius(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::param("N", n as f64, "need at least two primaries"));
    }
    Ok((ring_sine_sum(n) / (2.0 * n as f64)).cbrt())
}

/// `½ csc(π/N)`: the unit-side N-gon circumradius. Comparison only.
pub fn bp_radius(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::param("N", n as f64, "need at least two primaries"));
    }
    Ok(0.5 / (PI / n as f64).sin())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingConfig {
    pub n: usize,
    pub radius: f64,
    pub primary_mass: f64,
    pub vertex_angles: Vec<f64>,
}

impl RingConfig {
    pub fn new(n: usize) -> Result<Self> {
        let radius = ring_radius(n)?;
        Ok(Self::with_radius(n, radius))
    }

    /// Ring with an externally supplied radius (e.g. for scaling studies).
    pub fn with_radius(n: usize, radius: f64) -> Self {
        let vertex_angles = (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect();
        Self {
            n,
            radius,
            primary_mass: 1.0 / n as f64,
            vertex_angles,
        }
    }

    /// `a = 4 r_N`, the constant of the reduced regularized Hamiltonian.
    pub fn reduced_constant(&self) -> f64 {
        4.0 * self.radius
    }
}

impl fmt::Display for RingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} r={:.12}", self.n, self.radius)
    }
}

/// Vertex positions at the given rotation phase.
pub fn primary_positions_3d(cfg: &RingConfig, phase: f64) -> Vec<[f64; 3]> {
    cfg.vertex_angles
        .iter()
        .map(|&theta| {
            let (s, c) = (phase + theta).sin_cos();
            [cfg.radius * c, cfg.radius * s, 0.0]
        })
        .collect()
}

pub type PositionProvider = Box<dyn Fn(f64) -> Vec<[f64; 3]> + Send + Sync>;

/// Primaries split into `s` subsystems, each an orbit of the rotation by
/// `2π/r` about the z-axis. Only one representative per subsystem is
/// supplied; the rest are generated by the rotation.
pub struct GeneralSymmetricConfig {
    pub r_order: usize,
    pub s_count: usize,
    pub subsystem_masses: Vec<f64>,
    pub representative_positions: PositionProvider,
}

impl fmt::Debug for GeneralSymmetricConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralSymmetricConfig")
            .field("r_order", &self.r_order)
            .field("s_count", &self.s_count)
            .field("subsystem_masses", &self.subsystem_masses)
            .finish_non_exhaustive()
    }
}

fn rotate_z(p: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]]
}

impl GeneralSymmetricConfig {
    pub fn new(
        r_order: usize,
        subsystem_masses: Vec<f64>,
        representative_positions: PositionProvider,
    ) -> Result<Self> {
        if r_order < 2 {
            return Err(Error::param("r_order", r_order as f64, "must exceed 1"));
        }
        if subsystem_masses.is_empty() {
            return Err(Error::param("s_count", 0.0, "need at least one subsystem"));
        }
        Ok(Self {
            r_order,
            s_count: subsystem_masses.len(),
            subsystem_masses,
            representative_positions,
        })
    }

    /// The ring as a single subsystem (`s = 1`, `r = N`) rotating rigidly
    /// with angular velocity `omega`.
    pub fn from_ring(ring: &RingConfig, omega: f64) -> Self {
        let radius = ring.radius;
        Self {
            r_order: ring.n,
            s_count: 1,
            subsystem_masses: vec![ring.primary_mass],
            representative_positions: Box::new(move |t| {
                let (s, c) = (omega * t).sin_cos();
                vec![[radius * c, radius * s, 0.0]]
            }),
        }
    }

    pub fn total_primaries(&self) -> usize {
        self.r_order * self.s_count
    }

    /// Every primary position at time `t`, subsystem-major.
    pub fn all_positions(&self, t: f64) -> Vec<[f64; 3]> {
        let reps = (self.representative_positions)(t);
        let step = 2.0 * PI / self.r_order as f64;
        reps.iter()
            .flat_map(|&q| (0..self.r_order).map(move |j| rotate_z(q, step * j as f64)))
            .collect()
    }

    /// Largest distance between a rotated primary and its nearest
    /// counterpart in the unrotated configuration. Zero for a truly
    /// symmetric configuration.
    pub fn rotation_symmetry_defect(&self, t: f64) -> f64 {
        let pts = self.all_positions(t);
        let angle = 2.0 * PI / self.r_order as f64;
        pts.iter()
            .map(|&p| {
                let rp = rotate_z(p, angle);
                pts.iter()
                    .map(|q| {
                        let d = [rp[0] - q[0], rp[1] - q[1], rp[2] - q[2]];
                        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Parameters of a Sitnikov run as they appear in JSON configs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: f64,
    #[serde(default)]
    pub epsilon: f64,
    pub h: f64,
}

impl ProblemParams {
    pub fn build(&self) -> Result<(MassParams, RingConfig)> {
        Ok((MassParams::new(self.m, self.epsilon)?, RingConfig::new(self.n)?))
    }
}
