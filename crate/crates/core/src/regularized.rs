//! Regularizing chart, fictitious time and the regularized Hamiltonians.
//!
//! The chart
//!
//! ```text
//! q1 = Q2 + μ Q1²/2,        p1 = (1−μ) P2 + P1/Q1
//! q2 = Q2 − (1−μ) Q1²/2,    p2 =  μ    P2 − P1/Q1
//! ```
//!
//! is the cotangent lift of a point map with `q1 − q2 = Q1²/2`, hence
//! symplectic. Together with `dt/dτ = 2μ(1−μ) Q1²` it turns the energy
//! level `H = h` into the zero set of the globally smooth function
//!
//! ```text
//! Γ = ½(μ(1−μ) P2² Q1² + P1²) − 16 μ²(1−μ)² m − 2μ(1−μ) Q1² (W(Q1, Q2) + h)
//! W = 4(1−μ)/√(A² + 4r²) + 4μ/√(B² + 4r²),
//! A = 2Q2 + μ Q1²,  B = 2Q2 − (1−μ) Q1².
//! ```
//!
//! `Q1` ranges over the whole real line: a collision is a transversal
//! crossing of `Q1 = 0`.
//!
//! All vector fields here are the exact symplectic gradients of `Γ` and
//! of its symmetric restriction `Γ̃`, with hand-derived partials.

use serde::{Deserialize, Serialize};

use crate::config::{MassParams, RingConfig};
use crate::error::{Error, Result};
use crate::physical::{EnergyLevel, PhysState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegState {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
    /// Fictitious time.
    pub tau: f64,
    /// Accumulated physical time.
    pub t: f64,
}

impl RegState {
    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        Self {
            q1,
            q2,
            p1,
            p2,
            tau: 0.0,
            t: 0.0,
        }
    }

    pub fn phase(&self) -> [f64; 4] {
        [self.q1, self.q2, self.p1, self.p2]
    }

    pub fn from_phase(x: &[f64]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }
}

/// Point of the symmetric (`ε = 0`, `Q2 = P2 = 0`) problem with `a = 4 r_N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    pub q1: f64,
    pub p1: f64,
    pub a: f64,
}

impl ReducedState {
    pub fn new(q1: f64, p1: f64, ring: &RingConfig) -> Self {
        Self {
            q1,
            p1,
            a: ring.reduced_constant(),
        }
    }
}

/// Physical positions only; defined on the collision set as well.
pub fn chart_positions(z: &RegState, params: &MassParams) -> (f64, f64) {
    let half_sq = 0.5 * z.q1 * z.q1;
    (z.q2 + params.mu * half_sq, z.q2 - (1.0 - params.mu) * half_sq)
}

pub fn chart_to_physical(z: &RegState, params: &MassParams) -> Result<PhysState> {
    if z.q1 == 0.0 {
        return Err(Error::Domain(
            "physical momenta are singular at Q1 = 0; use chart_positions".into(),
        ));
    }
    let (q1, q2) = chart_positions(z, params);
    let w = z.p1 / z.q1;
    Ok(PhysState {
        q1,
        q2,
        p1: (1.0 - params.mu) * z.p2 + w,
        p2: params.mu * z.p2 - w,
    })
}

/// Inverse chart on the positive branch `Q1 > 0`.
pub fn chart_to_regularized(x: &PhysState, params: &MassParams) -> Result<RegState> {
    if !(x.q1 > x.q2) {
        return Err(Error::Collision { q1: x.q1, q2: x.q2 });
    }
    let mu = params.mu;
    let big_q1 = (2.0 * (x.q1 - x.q2)).sqrt();
    Ok(RegState::new(
        big_q1,
        (1.0 - mu) * x.q1 + mu * x.q2,
        (mu * x.p1 - (1.0 - mu) * x.p2) * big_q1,
        x.p1 + x.p2,
    ))
}

/// `dt/dτ = 2μ(1−μ) Q1²`.
pub fn time_scale(z: &RegState, params: &MassParams) -> f64 {
    2.0 * params.mu * (1.0 - params.mu) * z.q1 * z.q1
}

/// `dt/dτ` written as `(1−ε²)/2 · Q1²`.
pub fn time_scale_eps(z: &RegState, params: &MassParams) -> f64 {
    0.5 * (1.0 - params.epsilon * params.epsilon) * z.q1 * z.q1
}

/// Shared geometric pieces of `Γ` and its gradient.
struct Geometry {
    c: f64,
    ra: f64, // 1/√(A² + 4r²)
    rb: f64,
    a: f64,
    b: f64,
}

impl Geometry {
    fn new(q1: f64, q2: f64, mu: f64, radius: f64) -> Self {
        let four_r2 = 4.0 * radius * radius;
        let a = 2.0 * q2 + mu * q1 * q1;
        let b = 2.0 * q2 - (1.0 - mu) * q1 * q1;
        Self {
            c: mu * (1.0 - mu),
            ra: 1.0 / (a * a + four_r2).sqrt(),
            rb: 1.0 / (b * b + four_r2).sqrt(),
            a,
            b,
        }
    }

    fn w(&self, mu: f64) -> f64 {
        4.0 * (1.0 - mu) * self.ra + 4.0 * mu * self.rb
    }
}

/// Regularized Hamiltonian `Γ(z; h)`.
pub fn gamma(z: &RegState, h: EnergyLevel, params: &MassParams, ring: &RingConfig) -> f64 {
    let mu = params.mu;
    let g = Geometry::new(z.q1, z.q2, mu, ring.radius);
    let q1sq = z.q1 * z.q1;
    0.5 * (g.c * z.p2 * z.p2 * q1sq + z.p1 * z.p1)
        - 16.0 * g.c * g.c * params.m
        - 2.0 * g.c * q1sq * (g.w(mu) + h.0)
}

/// `Γ̃ = ½P1² − 4Q1²(1/√(Q1⁴+a²) + h/8) − m`.
pub fn gamma_reduced(s: &ReducedState, h: EnergyLevel, m: f64) -> f64 {
    let q2 = s.q1 * s.q1;
    0.5 * s.p1 * s.p1 - 4.0 * q2 * (1.0 / (q2 * q2 + s.a * s.a).sqrt() + h.0 / 8.0) - m
}

/// Regularized field `d/dτ (Q1, Q2, P1, P2)`, returned as a [`RegState`]
/// whose `tau` slot is `1` and `t` slot is `dt/dτ`.
pub fn regularized_field(
    z: &RegState,
    h: EnergyLevel,
    params: &MassParams,
    ring: &RingConfig,
) -> RegState {
    let [dq1, dq2, dp1, dp2] = regularized_field_raw(&z.phase(), h.0, params.mu, ring.radius);
    RegState {
        q1: dq1,
        q2: dq2,
        p1: dp1,
        p2: dp2,
        tau: 1.0,
        t: time_scale(z, params),
    }
}

pub(crate) fn regularized_field_raw(x: &[f64], h: f64, mu: f64, radius: f64) -> [f64; 4] {
    let (q1, q2, p1, p2) = (x[0], x[1], x[2], x[3]);
    let g = Geometry::new(q1, q2, mu, radius);
    let c = g.c;
    let q1sq = q1 * q1;
    let ra3 = g.ra * g.ra * g.ra;
    let rb3 = g.rb * g.rb * g.rb;
    // ∂W/∂Q1 and ∂W/∂Q2
    let dw_dq1 = 8.0 * c * q1 * (g.b * rb3 - g.a * ra3);
    let dw_dq2 = -8.0 * ((1.0 - mu) * g.a * ra3 + mu * g.b * rb3);
    let w = g.w(mu);
    [
        p1,
        c * q1sq * p2,
        -c * q1 * (p2 * p2 - 4.0 * (w + h) - 2.0 * q1 * dw_dq1),
        2.0 * c * q1sq * dw_dq2,
    ]
}

/// Field of `Γ̃`: `(Q1', P1') = (P1, 8 Q1 (a²/(Q1⁴+a²)^{3/2} + h/8))`.
pub fn reduced_field(s: &ReducedState, h: EnergyLevel) -> (f64, f64) {
    let q4 = s.q1 * s.q1 * s.q1 * s.q1;
    let a2 = s.a * s.a;
    let d = q4 + a2;
    (s.p1, 8.0 * s.q1 * (a2 / (d * d.sqrt()) + h.0 / 8.0))
}

/// [`reduced_field`] with the opposite sign on `P1'`. Not a Hamiltonian
/// field of `Γ̃`; kept so the verification suite can demonstrate that the
/// sign oracles reject it.
pub fn reduced_field_flipped(s: &ReducedState, h: EnergyLevel) -> (f64, f64) {
    let (dq, dp) = reduced_field(s, h);
    (dq, -dp)
}

/// Speed `|P1|` at which every solution on `Σ_h` crosses `Q1 = 0`:
/// `(1−ε²)√(2m)`.
pub fn collision_momentum(params: &MassParams) -> f64 {
    params.reduced_product() * (2.0 * params.m).sqrt()
}

/// Place `z` on `Σ_h` by solving `Γ = 0` for `|P1|`, keeping the sign of
/// the given `P1` (positive if zero).
pub fn project_to_level(
    z: &RegState,
    h: EnergyLevel,
    params: &MassParams,
    ring: &RingConfig,
) -> Result<RegState> {
    let without_p1 = gamma(&RegState { p1: 0.0, ..*z }, h, params, ring);
    if without_p1 > 0.0 {
        return Err(Error::Domain(format!(
            "no real P1 puts this point on the energy level (Γ|P1=0 = {without_p1:e} > 0)"
        )));
    }
    let magnitude = (-2.0 * without_p1).sqrt();
    let sign = if z.p1 < 0.0 { -1.0 } else { 1.0 };
    Ok(RegState {
        p1: sign * magnitude,
        ..*z
    })
}

/// Reduced analogue of [`project_to_level`].
pub fn project_reduced(s: &ReducedState, h: EnergyLevel, m: f64) -> Result<ReducedState> {
    let without = gamma_reduced(&ReducedState { p1: 0.0, ..*s }, h, m);
    if without > 0.0 {
        return Err(Error::Domain(format!(
            "no real P1 puts Q1 = {} on the reduced energy level",
            s.q1
        )));
    }
    let sign = if s.p1 < 0.0 { -1.0 } else { 1.0 };
    Ok(ReducedState {
        p1: sign * (-2.0 * without).sqrt(),
        ..*s
    })
}
