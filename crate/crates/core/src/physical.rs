//! Unregularized dynamics of the two secondaries on the symmetry axis.
//!
//! With normalized masses (mean `m`, asymmetry `ε`, time rescaled by `m`)
//! the Hamiltonian is
//!
//! ```text
//! H = p1²/(2α) + p2²/(2β) − α/√(q1²+r²) − β/√(q2²+r²) − m αβ/(q1 − q2)
//! ```
//!
//! on `q1 > q2`, with `α = 1+ε`, `β = 1−ε`.

use serde::{Deserialize, Serialize};

use crate::config::{primary_positions_3d, GeneralSymmetricConfig, MassParams, RingConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysState {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhysState {
    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        Self { q1, q2, p1, p2 }
    }

    /// Symmetric configuration `(q, −q, p, −p)`.
    pub fn symmetric(q: f64, p: f64) -> Self {
        Self::new(q, -q, p, -p)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q1, self.q2, self.p1, self.p2]
    }

    pub fn from_slice(x: &[f64]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn separation(&self) -> f64 {
        self.q1 - self.q2
    }

    fn check_order(&self) -> Result<()> {
        if self.q1 > self.q2 {
            Ok(())
        } else {
            Err(Error::Collision {
                q1: self.q1,
                q2: self.q2,
            })
        }
    }
}

/// Fixed value of the physical energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel(pub f64);

impl From<f64> for EnergyLevel {
    fn from(h: f64) -> Self {
        EnergyLevel(h)
    }
}

/// Force function `V` (so that `H = T − V`).
pub fn potential(state: &PhysState, params: &MassParams, ring: &RingConfig) -> Result<f64> {
    state.check_order()?;
    let r2 = ring.radius * ring.radius;
    let PhysState { q1, q2, .. } = *state;
    Ok(params.alpha / (q1 * q1 + r2).sqrt()
        + params.beta / (q2 * q2 + r2).sqrt()
        + params.m * params.reduced_product() / (q1 - q2))
}

pub fn kinetic(state: &PhysState, params: &MassParams) -> f64 {
    0.5 * state.p1 * state.p1 / params.alpha + 0.5 * state.p2 * state.p2 / params.beta
}

pub fn hamiltonian(state: &PhysState, params: &MassParams, ring: &RingConfig) -> Result<f64> {
    Ok(kinetic(state, params) - potential(state, params, ring)?)
}

/// Hamiltonian vector field `d/dt (q1, q2, p1, p2)`.
pub fn physical_field(state: &PhysState, params: &MassParams, ring: &RingConfig) -> Result<PhysState> {
    state.check_order()?;
    let PhysState { q1, q2, p1, p2 } = *state;
    let r2 = ring.radius * ring.radius;
    let binary = params.m * params.reduced_product() / ((q1 - q2) * (q1 - q2));
    Ok(PhysState {
        q1: p1 / params.alpha,
        q2: p2 / params.beta,
        p1: -params.alpha * q1 / (q1 * q1 + r2).powf(1.5) - binary,
        p2: -params.beta * q2 / (q2 * q2 + r2).powf(1.5) + binary,
    })
}

/// Axis coordinates of the two secondaries for a general rotationally
/// symmetric primary motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisState2 {
    pub z1: f64,
    pub z2: f64,
    pub pz1: f64,
    pub pz2: f64,
}

/// Field of the secondaries for a general symmetric primary configuration,
/// in normalized masses. Each subsystem contributes through its
/// representative only: all `r` rotated copies sit at the same distance
/// from any point on the axis.
pub fn axis_field_general(
    state: &AxisState2,
    params: &MassParams,
    general: &GeneralSymmetricConfig,
    t: f64,
) -> Result<AxisState2> {
    let AxisState2 { z1, z2, pz1, pz2 } = *state;
    if z1 == z2 {
        return Err(Error::Collision { q1: z1, q2: z2 });
    }
    let reps = (general.representative_positions)(t);
    let order = general.r_order as f64;
    let ring_pull = |z: f64| -> f64 {
        reps.iter()
            .zip(&general.subsystem_masses)
            .map(|(q, &mk)| {
                let d = [q[0], q[1], q[2] - z];
                let dist = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                order * mk * (z - q[2]) / (dist * dist * dist)
            })
            .sum()
    };
    let sep = z1 - z2;
    let binary = params.m * params.reduced_product() * sep.signum() / (sep * sep);
    Ok(AxisState2 {
        z1: pz1 / params.alpha,
        z2: pz2 / params.beta,
        pz1: -params.alpha * ring_pull(z1) - binary,
        pz2: -params.beta * ring_pull(z2) + binary,
    })
}

/// Newtonian acceleration in 3D of a test particle at `(0, 0, z)` due to
/// the ring primaries at the given rotation phase.
pub fn infinitesimal_accel_3d(z: f64, ring: &RingConfig, phase: f64) -> [f64; 3] {
    let mut acc = [0.0; 3];
    for q in primary_positions_3d(ring, phase) {
        let d = [q[0], q[1], q[2] - z];
        let dist2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let w = ring.primary_mass / (dist2 * dist2.sqrt());
        for i in 0..3 {
            acc[i] += w * d[i];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn setup(m: f64, eps: f64, n: usize) -> (MassParams, RingConfig) {
        (MassParams::new(m, eps).unwrap(), RingConfig::new(n).unwrap())
    }

    #[test]
    fn potential_examples() {
        let (p, ring) = setup(0.0, 0.0, 3);
        let r = ring.radius;
        let v = potential(&PhysState::symmetric(0.7, 0.0), &p, &ring).unwrap();
        assert_relative_eq!(v, 2.0 / (0.49 + r * r).sqrt(), epsilon = 1e-15);

        let (p, ring) = setup(1e-3, 0.0, 2);
        let v = potential(&PhysState::new(1.0, -1.0, 0.0, 0.0), &p, &ring).unwrap();
        assert_relative_eq!(v, 2.0 / 1.25f64.sqrt() + 1e-3 / 2.0, epsilon = 1e-15);

        let close = PhysState::new(1e-12, 0.0, 0.0, 0.0);
        assert!(potential(&close, &p, &ring).unwrap() > 1e8);
        assert!(matches!(
            potential(&PhysState::new(0.0, 0.0, 0.0, 0.0), &p, &ring),
            Err(Error::Collision { .. })
        ));
    }

    #[test]
    fn hamiltonian_examples() {
        let (p, ring) = setup(1e-3, 0.0, 2);
        let h = hamiltonian(&PhysState::new(1.0, -1.0, 0.0, 0.0), &p, &ring).unwrap();
        assert_relative_eq!(h, -2.0 / 1.25f64.sqrt() - 5e-4, epsilon = 1e-15);

        let (q, mom) = (0.8, 0.3);
        let h = hamiltonian(&PhysState::symmetric(q, mom), &p, &ring).unwrap();
        let r = ring.radius;
        let doubled = mom * mom - 2.0 / (q * q + r * r).sqrt() - p.m / (2.0 * q);
        assert_relative_eq!(h, doubled, epsilon = 1e-14);
    }

    #[test]
    fn field_symmetry_and_action_reaction() {
        let (p, ring) = setup(1e-3, 0.0, 4);
        let f = physical_field(&PhysState::symmetric(0.9, 0.2), &p, &ring).unwrap();
        assert_relative_eq!(f.p1, -f.p2, epsilon = 1e-15);

        let (p, ring) = setup(1e-2, 0.4, 3);
        let s = PhysState::new(0.0, -0.5, 0.1, 0.2);
        let f = physical_field(&s, &p, &ring).unwrap();
        let binary = p.m * p.reduced_product() / 0.25;
        // ring force on body 1 vanishes at q1 = 0
        assert_relative_eq!(f.p1, -binary, epsilon = 1e-15);
    }

    #[test]
    fn accel_3d_examples() {
        let ring = RingConfig::new(3).unwrap();
        let a = infinitesimal_accel_3d(1.0, &ring, 0.0);
        assert!(a[0].abs() < 1e-15 && a[1].abs() < 1e-15);
        assert_relative_eq!(a[2], -3.0 * 3f64.sqrt() / 8.0, epsilon = 1e-14);
        let a0 = infinitesimal_accel_3d(0.0, &ring, 0.7);
        assert!(a0.iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn general_field_binary_terms_balance() {
        let (p, ring) = setup(1e-2, 0.3, 5);
        let g = GeneralSymmetricConfig::from_ring(&ring, 1.0);
        let s = AxisState2 { z1: 1e-3, z2: -1e-3, pz1: 0.0, pz2: 0.0 };
        let f = axis_field_general(&s, &p, &g, 0.0).unwrap();
        // Ring pull is tiny near z = 0, so the binary terms dominate.
        let ring1 = -p.alpha * 1e-3 / (1e-6 + ring.radius * ring.radius).powf(1.5);
        let ring2 = p.beta * 1e-3 / (1e-6 + ring.radius * ring.radius).powf(1.5);
        assert_relative_eq!(f.pz1 - ring1, -(f.pz2 - ring2), epsilon = 1e-9);
        let same = AxisState2 { z1: 0.2, z2: 0.2, pz1: 0.0, pz2: 0.0 };
        assert!(axis_field_general(&same, &p, &g, 0.0).is_err());
    }
}
