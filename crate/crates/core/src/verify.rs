//! Built-in invariant suite behind `collreg verify`.
//!
//! Every check evaluates a measured defect against a fixed threshold on a
//! deterministic sample set (Weyl lattices), so repeated runs report
//! identical numbers.

use serde::Serialize;

use crate::analysis::{classify, level_set_sample, period_report, kepler1d_validation, LevelGrid, OrbitKind};
use crate::config::{bp_radius, ring_radius, MassParams, RingConfig};
use crate::error::Result;
use crate::integrators::{integrate, IntegrateOptions, IntegratorConfig, Method, ReducedFlow, RegularizedFlow};
use crate::physical::{hamiltonian, infinitesimal_accel_3d, physical_field, EnergyLevel, PhysState};
use crate::regularized::{
    chart_to_physical, collision_momentum, gamma, gamma_reduced, project_reduced, project_to_level,
    reduced_field, reduced_field_flipped, regularized_field, time_scale, ReducedState, RegState,
};
use crate::symplectic::{build_relative_map, euler_jacobian, fd_jacobian, symplectic_defect, DEFAULT_FD_STEP};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub category: &'static str,
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run only checks whose category or name contains this string.
    pub filter: Option<String>,
    /// Replace the reduced field by its sign-flipped mutant.
    pub inject_sign_flip: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

type CheckFn = fn(&VerifyOptions) -> Result<f64>;

struct Check {
    category: &'static str,
    name: &'static str,
    threshold: f64,
    run: CheckFn,
}

/// `k`-th point of the additive recurrence with irrational step `alpha`,
/// mapped to `[lo, hi]`.
fn weyl(k: usize, alpha: f64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (k as f64 * alpha).fract()
}

const A1: f64 = 0.618_033_988_749_894_9;
const A2: f64 = 0.414_213_562_373_095_1;
const A3: f64 = 0.732_050_807_568_877_3;
const A4: f64 = 0.236_067_977_499_789_7;

fn sample_reg_state(k: usize) -> RegState {
    let q1 = weyl(k, A1, 0.1, 3.0);
    RegState::new(
        if k.is_multiple_of(2) { q1 } else { -q1 },
        weyl(k, A2, -1.0, 1.0),
        weyl(k, A3, -2.0, 2.0),
        weyl(k, A4, -2.0, 2.0),
    )
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0, |acc, v| Ok(f64::max(acc, v?)))
}

fn reduced(opts: &VerifyOptions, s: &ReducedState, h: f64) -> (f64, f64) {
    if opts.inject_sign_flip {
        reduced_field_flipped(s, EnergyLevel(h))
    } else {
        reduced_field(s, EnergyLevel(h))
    }
}

fn relative_map(_: &VerifyOptions) -> Result<f64> {
    max_of((1..=100).map(|i| symplectic_defect(&build_relative_map(i as f64 / 200.0)?)))
}

fn euler_map(_: &VerifyOptions) -> Result<f64> {
    max_of((0..100).map(|k| {
        let z = sample_reg_state(k);
        symplectic_defect(&euler_jacobian(z.q1, z.p1)?)
    }))
}

fn chart_jacobian(_: &VerifyOptions) -> Result<f64> {
    max_of((0..100).map(|k| {
        let params = MassParams::new(1e-3, [0.0, 0.25, 0.5, 0.9][k % 4])?;
        let map = |x: &[f64]| chart_to_physical(&RegState::from_phase(x), &params).map(|p| p.to_array().to_vec());
        symplectic_defect(&fd_jacobian(map, &sample_reg_state(k).phase(), DEFAULT_FD_STEP)?)
    }))
}

fn radius_two(_: &VerifyOptions) -> Result<f64> {
    Ok((ring_radius(2)? - 0.5).abs())
}

fn radius_three(_: &VerifyOptions) -> Result<f64> {
    Ok((ring_radius(3)? - 3f64.powf(-0.5)).abs())
}

fn radius_three_bp(_: &VerifyOptions) -> Result<f64> {
    Ok((ring_radius(3)? - bp_radius(3)?).abs())
}

fn axis_invariance(_: &VerifyOptions) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 2..=9 {
        let ring = RingConfig::new(n)?;
        for k in 0..50 {
            let z = weyl(k, A1, -5.0, 5.0);
            for j in 0..10 {
                let a = infinitesimal_accel_3d(z, &ring, weyl(j, A2, 0.0, std::f64::consts::TAU));
                worst = worst.max(a[0].hypot(a[1]));
            }
        }
    }
    Ok(worst)
}

fn defining_identity(_: &VerifyOptions) -> Result<f64> {
    let h = EnergyLevel(-0.7);
    let mut worst = 0.0f64;
    for n in [2, 3, 4, 7] {
        let ring = RingConfig::new(n)?;
        for eps in [0.0, 0.2, 0.5, 0.9] {
            let params = MassParams::new(1e-3, eps)?;
            for k in 0..250 {
                let z = sample_reg_state(k);
                let x = chart_to_physical(&z, &params)?;
                let scaled = time_scale(&z, &params) * (hamiltonian(&x, &params, &ring)? - h.0);
                worst = worst.max((gamma(&z, h, &params, &ring) - scaled).abs());
            }
        }
    }
    Ok(worst)
}

/// `(∂Γ̃/∂P1, −∂Γ̃/∂Q1)` by central differences against the field.
fn reduced_gradient(opts: &VerifyOptions) -> Result<f64> {
    let (h, m, a) = (-1.0, 1e-3, 4.0 * ring_radius(3)?);
    let d = 1e-6;
    max_of((0..100).map(|k| {
        let s = ReducedState {
            q1: weyl(k, A1, -3.0, 3.0),
            p1: weyl(k, A2, -2.0, 2.0),
            a,
        };
        let g = |q1: f64, p1: f64| gamma_reduced(&ReducedState { q1, p1, a }, EnergyLevel(h), m);
        let dq = (g(s.q1 + d, s.p1) - g(s.q1 - d, s.p1)) / (2.0 * d);
        let dp = (g(s.q1, s.p1 + d) - g(s.q1, s.p1 - d)) / (2.0 * d);
        let (fq, fp) = reduced(opts, &s, h);
        Ok((fq - dp).abs().max((fp + dq).abs()))
    }))
}

/// Full regularized field on `Q2 = P2 = 0`, `ε = 0` against the reduced field.
fn reduced_restriction(opts: &VerifyOptions) -> Result<f64> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    let params = MassParams::symmetric(m)?;
    max_of((0..100).map(|k| {
        let (q1, p1) = (weyl(k, A1, -3.0, 3.0), weyl(k, A2, -2.0, 2.0));
        let full = regularized_field(&RegState::new(q1, 0.0, p1, 0.0), EnergyLevel(h), &params, &ring);
        let (fq, fp) = reduced(opts, &ReducedState::new(q1, p1, &ring), h);
        Ok((full.q1 - fq).abs().max((full.p1 - fp).abs()).max(full.q2.abs()).max(full.p2.abs()))
    }))
}

/// Physical `ṗ` rebuilt from the reduced field by the chain rule on `Σ_h`:
/// `q = Q1²/4`, `p = P1/Q1`, `dt/dτ = Q1²/2`. Relative defect.
fn reduced_chain_rule(opts: &VerifyOptions) -> Result<f64> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    let params = MassParams::symmetric(m)?;
    max_of((0..100).map(|k| {
        let q1 = weyl(k, A1, 0.2, 2.0);
        let s = project_reduced(&ReducedState::new(q1, weyl(k, A2, -1.0, 1.0), &ring), EnergyLevel(h), m)?;
        let (dq1, dp1) = reduced(opts, &s, h);
        let p_dot = (dp1 * s.q1 - s.p1 * dq1) / (s.q1 * s.q1) / (0.5 * s.q1 * s.q1);
        let x = PhysState::symmetric(0.25 * s.q1 * s.q1, s.p1 / s.q1);
        let want = physical_field(&x, &params, &ring)?.p1;
        Ok((p_dot - want).abs() / want.abs().max(1.0))
    }))
}

fn reduced_start(ring: &RingConfig, h: f64, m: f64) -> Result<Vec<f64>> {
    let s = project_reduced(&ReducedState::new(1.0, 0.0, ring), EnergyLevel(h), m)?;
    Ok(vec![s.q1, s.p1])
}

fn transit_run(opts: &VerifyOptions) -> Result<crate::integrators::Trajectory> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(2)?;
    let flow = ReducedFlow {
        flipped: opts.inject_sign_flip,
        ..ReducedFlow::new(&ring, h, m)
    };
    let cfg = IntegratorConfig {
        record_every: 1000,
        ..IntegratorConfig::new(Method::Gauss4, 1e-3)
    };
    Ok(integrate(&flow, &reduced_start(&ring, h, m)?, 100.0, &cfg, &IntegrateOptions::default())?)
}

fn transit_drift(opts: &VerifyOptions) -> Result<f64> {
    Ok(transit_run(opts)?.metadata.max_invariant.unwrap_or(f64::INFINITY))
}

fn transit_momentum(opts: &VerifyOptions) -> Result<f64> {
    let traj = transit_run(opts)?;
    if traj.collision_count() < 10 {
        return Ok(f64::INFINITY);
    }
    let want = (2.0f64 * 1e-3).sqrt();
    Ok(traj
        .events
        .iter()
        .map(|e| (e.state[1].abs() - want).abs())
        .fold(0.0, f64::max))
}

fn transit_momentum_full(_: &VerifyOptions) -> Result<f64> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    let params = MassParams::new(m, 0.3)?;
    let want = collision_momentum(&params);
    let cfg = IntegratorConfig {
        record_every: usize::MAX,
        ..IntegratorConfig::new(Method::Gauss4, 1e-3)
    };
    // The unequal pair is kicked off the plane at each transit and wanders
    // far afterwards, so each start is followed to its first collision only.
    let opts = IntegrateOptions {
        stop_after_collisions: Some(1),
        ..Default::default()
    };
    let starts = [(0.3, 0.0, 0.0), (0.5, 0.1, 0.05), (0.8, -0.2, -0.1), (1.2, 0.0, 0.2)];
    max_of(starts.iter().map(|&(q1, q2, p2)| {
        let z = project_to_level(&RegState::new(q1, q2, -1.0, p2), EnergyLevel(h), &params, &ring)?;
        let flow = RegularizedFlow::new(params, ring.clone(), h);
        let traj = integrate(&flow, &z.phase(), 40.0, &cfg, &opts)?;
        Ok(traj
            .events
            .first()
            .map_or(f64::INFINITY, |e| (e.state[2].abs() - want).abs()))
    }))
}

fn invariant_plane(_: &VerifyOptions) -> Result<f64> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    let params = MassParams::symmetric(m)?;
    let z = project_to_level(&RegState::new(1.0, 0.0, 0.0, 0.0), EnergyLevel(h), &params, &ring)?;
    let flow = RegularizedFlow::new(params, ring, h);
    let cfg = IntegratorConfig::new(Method::Gauss4, 1e-3);
    let traj = integrate(&flow, &z.phase(), 100.0, &cfg, &IntegrateOptions::default())?;
    Ok(traj
        .samples
        .iter()
        .map(|s| s.state[1].abs().max(s.state[3].abs()))
        .fold(0.0, f64::max))
}

fn reversibility(opts: &VerifyOptions) -> Result<f64> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    let flow = ReducedFlow {
        flipped: opts.inject_sign_flip,
        ..ReducedFlow::new(&ring, h, m)
    };
    let cfg = IntegratorConfig {
        record_every: usize::MAX,
        ..IntegratorConfig::new(Method::Gauss4, 1e-3)
    };
    let y0 = reduced_start(&ring, h, m)?;
    let out = integrate(&flow, &y0, 20.0, &cfg, &IntegrateOptions::default())?;
    let end = &out.last().state;
    let back = integrate(&flow, &[end[0], -end[1]], 20.0, &cfg, &IntegrateOptions::default())?;
    let fin = &back.last().state;
    Ok((fin[0] - y0[0]).abs().max((fin[1] + y0[1]).abs()))
}

fn levelset_symmetry(_: &VerifyOptions) -> Result<f64> {
    let grid = LevelGrid {
        q1_bound: 3.0,
        p1_bound: 3.0,
        resolution: 101,
    };
    let pts = level_set_sample(-1.0, 1e-3, 4.0 * ring_radius(3)?, &grid)?;
    let mut worst = 0.0f64;
    for flip in [(-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let mut mirrored: Vec<(f64, f64)> = pts.iter().map(|&(q, p)| (flip.0 * q, flip.1 * p)).collect();
        mirrored.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        if mirrored.len() != pts.len() {
            return Ok(f64::INFINITY);
        }
        for (a, b) in pts.iter().zip(&mirrored) {
            worst = worst.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
        }
    }
    Ok(worst)
}

fn classify_examples(_: &VerifyOptions) -> Result<f64> {
    let ok = classify(-0.5, 1e-12).kind == OrbitKind::Periodic
        && classify(0.0, 1e-12).kind == OrbitKind::Parabolic
        && classify(0.25, 1e-12).kind == OrbitKind::Hyperbolic;
    Ok(if ok { 0.0 } else { 1.0 })
}

fn period_agreement(_: &VerifyOptions) -> Result<f64> {
    max_of([-2.0, -1.0, -0.6].map(|h| Ok(period_report(h, 1e-3, 3)?.relative_gap())))
}

fn kepler_relation(_: &VerifyOptions) -> Result<f64> {
    Ok(kepler1d_validation(-0.5, 1.0)?.relation_residual)
}

fn kepler_collision_speed(_: &VerifyOptions) -> Result<f64> {
    Ok(kepler1d_validation(-0.5, 1.0)?.collision_speed_error)
}

fn kepler_frequency(_: &VerifyOptions) -> Result<f64> {
    Ok((kepler1d_validation(-0.5, 1.0)?.omega_ratio() - 1.0).abs())
}

const CHECKS: &[Check] = &[
    Check { category: "symplectic", name: "relative_map", threshold: 1e-12, run: relative_map },
    Check { category: "symplectic", name: "euler_jacobian", threshold: 1e-12, run: euler_map },
    Check { category: "symplectic", name: "chart_fd_jacobian", threshold: 1e-6, run: chart_jacobian },
    Check { category: "config", name: "ring_radius_2", threshold: 1e-12, run: radius_two },
    Check { category: "config", name: "ring_radius_3", threshold: 1e-12, run: radius_three },
    Check { category: "config", name: "ring_radius_3_bp", threshold: 1e-12, run: radius_three_bp },
    Check { category: "physical", name: "axis_invariance", threshold: 1e-13, run: axis_invariance },
    Check { category: "regularized", name: "defining_identity", threshold: 1e-12, run: defining_identity },
    Check { category: "regularized", name: "reduced_fd_gradient", threshold: 1e-7, run: reduced_gradient },
    Check { category: "regularized", name: "reduced_restriction", threshold: 1e-13, run: reduced_restriction },
    Check { category: "regularized", name: "reduced_chain_rule", threshold: 1e-10, run: reduced_chain_rule },
    Check { category: "integrators", name: "transit_invariant_drift", threshold: 1e-8, run: transit_drift },
    Check { category: "integrators", name: "transit_collision_momentum", threshold: 1e-6, run: transit_momentum },
    Check { category: "integrators", name: "transit_collision_momentum_eps", threshold: 1e-6, run: transit_momentum_full },
    Check { category: "integrators", name: "invariant_plane", threshold: 1e-12, run: invariant_plane },
    Check { category: "integrators", name: "reversibility", threshold: 1e-8, run: reversibility },
    Check { category: "analysis", name: "levelset_symmetry", threshold: 0.0, run: levelset_symmetry },
    Check { category: "analysis", name: "classify", threshold: 0.0, run: classify_examples },
    Check { category: "analysis", name: "period_agreement", threshold: 1e-5, run: period_agreement },
    Check { category: "kepler", name: "energy_relation", threshold: 1e-9, run: kepler_relation },
    Check { category: "kepler", name: "collision_speed", threshold: 1e-8, run: kepler_collision_speed },
    Check { category: "kepler", name: "frequency_ratio", threshold: 1e-6, run: kepler_frequency },
];

/// Names of all checks as `category/name`.
pub fn check_names() -> Vec<String> {
    CHECKS.iter().map(|c| format!("{}/{}", c.category, c.name)).collect()
}

/// Run the suite. A check whose computation errors is reported as failed
/// with an infinite defect.
pub fn run_checks(opts: &VerifyOptions) -> VerifyReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|c| {
            opts.filter
                .as_deref()
                .is_none_or(|f| c.category.contains(f) || c.name.contains(f))
        })
        .map(|c| {
            let measured = (c.run)(opts).unwrap_or(f64::INFINITY);
            CheckResult {
                category: c.category,
                name: c.name,
                measured,
                threshold: c.threshold,
                pass: measured <= c.threshold,
            }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    VerifyReport {
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_points_stay_in_range() {
        for k in 0..1000 {
            let x = weyl(k, A3, -2.0, 5.0);
            assert!((-2.0..5.0).contains(&x));
        }
    }

    #[test]
    fn filter_selects_category() {
        let report = run_checks(&VerifyOptions {
            filter: Some("config".into()),
            inject_sign_flip: false,
        });
        assert_eq!(report.checks.len(), 3);
        assert!(report.all_passed());
    }
}
