//! Adaptive Dormand–Prince 5(4) reference integrator.

use super::trajectory::{Aborted, Event, EventKind, IntegrateOptions, Sample, Trajectory};
use super::{Flow, IntegratorConfig, PhysicalFlow};
use crate::config::{MassParams, RingConfig};
use crate::error::{Error, Result};
use crate::physical::{hamiltonian, PhysState};

pub const DEFAULT_GUARD_DISTANCE: f64 = 1e-4;

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B_LOW: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Attempt {
    y: Vec<f64>,
    dt: f64,
    error: f64,
}

fn dopri_step<F: Flow + ?Sized>(flow: &F, y: &[f64], h: f64, tol: f64) -> Result<Attempt> {
    let n = flow.dim();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
    let mut dt = 0.0;
    for s in 0..7 {
        let ys: Vec<f64> = (0..n)
            .map(|i| y[i] + h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>())
            .collect();
        dt += h * B[s] * flow.clock_rate(&ys);
        k.push(flow.eval(&ys)?);
    }
    let y_new: Vec<f64> = (0..n)
        .map(|i| y[i] + h * (0..7).map(|s| B[s] * k[s][i]).sum::<f64>())
        .collect();
    let error = ((0..n)
        .map(|i| {
            let e = h * (0..7).map(|s| (B[s] - B_LOW[s]) * k[s][i]).sum::<f64>();
            let scale = tol + tol * y[i].abs().max(y_new[i].abs());
            (e / scale).powi(2)
        })
        .sum::<f64>()
        / n as f64)
        .sqrt();
    Ok(Attempt { y: y_new, dt, error })
}

/// Adaptive march over `span` of the independent variable with error
/// tolerance `cfg.adaptive_tol` (relative and absolute). `cfg.step` seeds
/// the first trial step.
pub fn integrate_adaptive<F: Flow + ?Sized>(
    flow: &F,
    y0: &[f64],
    span: f64,
    cfg: &IntegratorConfig,
    opts: &IntegrateOptions,
) -> std::result::Result<Trajectory, Aborted> {
    let mut traj = Trajectory::start(flow, y0, opts.tau0, opts.t0, cfg);
    let end = opts.tau0 + span;
    let mut targets: Vec<f64> = opts
        .sample_times
        .iter()
        .copied()
        .filter(|&s| s > opts.tau0 && s < end)
        .collect();
    targets.sort_by(f64::total_cmp);
    targets.push(end);
    let mut next_target = 0;

    let mut y = y0.to_vec();
    let mut tau = opts.tau0;
    let mut t = opts.t0;
    let mut h = cfg.step.min(span);
    let mut accepted = 0usize;
    let tol = cfg.adaptive_tol;

    let abort = |traj: Trajectory, error: Error| Aborted {
        error,
        partial: Box::new(traj),
    };

    while span > 0.0 && tau < end {
        let target = targets[next_target];
        let hits_target = h >= target - tau;
        let h_try = if hits_target { target - tau } else { h };
        let attempt = match dopri_step(flow, &y, h_try, tol) {
            Ok(a) if a.y.iter().all(|v| v.is_finite()) => Some(a),
            Ok(_) | Err(Error::Collision { .. }) => None,
            Err(e) => return Err(abort(traj, e)),
        };
        let Some(attempt) = attempt.filter(|a| a.error <= 1.0) else {
            h = 0.25 * h_try;
            if h < 1e-14 * tau.abs().max(1.0) {
                if flow.separation(&y).is_some() {
                    traj.events.push(Event {
                        index: traj.samples.len() - 1,
                        kind: EventKind::ProximityAbort,
                        tau,
                        t,
                        state: y.clone(),
                    });
                    return Ok(traj);
                }
                return Err(abort(traj, Error::NonFinite { tau }));
            }
            continue;
        };
        let factor = if attempt.error == 0.0 {
            5.0
        } else {
            (0.9 * attempt.error.powf(-0.2)).clamp(0.2, 5.0)
        };
        let prev = std::mem::replace(&mut y, attempt.y);
        tau = if hits_target { target } else { tau + h_try };
        t += attempt.dt;
        h = if hits_target { h.max(h_try * factor) } else { h_try * factor };
        accepted += 1;
        traj.metadata.steps = accepted;
        traj.track_invariant(flow, &y);
        if hits_target {
            next_target += 1;
        }

        if let (Some(c0), Some(c1)) = (flow.collision_coordinate(&prev), flow.collision_coordinate(&y)) {
            if c0 != 0.0 && c0 * c1 <= 0.0 {
                let w = c0 / (c0 - c1);
                traj.events.push(Event {
                    index: traj.samples.len() - 1,
                    kind: EventKind::Collision,
                    tau: tau - (1.0 - w) * h_try,
                    t: t - (1.0 - w) * attempt.dt,
                    state: prev.iter().zip(&y).map(|(a, b)| a + w * (b - a)).collect(),
                });
            }
        }
        let guard_hit = opts
            .guard_distance
            .zip(flow.separation(&y))
            .is_some_and(|(g, d)| d < g);
        let escaped = opts
            .escape_threshold
            .zip(flow.escape_distance(&y))
            .is_some_and(|(e, d)| d >= e);

        if accepted.is_multiple_of(cfg.record_every) || hits_target || guard_hit || escaped || tau >= end {
            traj.samples.push(Sample {
                tau,
                t,
                state: y.clone(),
            });
        }
        if guard_hit || escaped {
            traj.events.push(Event {
                index: traj.samples.len() - 1,
                kind: if guard_hit {
                    EventKind::ProximityAbort
                } else {
                    EventKind::EscapeThreshold
                },
                tau,
                t,
                state: y.clone(),
            });
            break;
        }
    }
    Ok(traj)
}

/// Reference integration in the physical chart over `t_span`. Stops with a
/// [`EventKind::ProximityAbort`] event once `q1 − q2` drops below the guard
/// distance (default `1e-4`).
pub fn integrate_physical_oracle(
    initial: &PhysState,
    t_span: f64,
    cfg: &IntegratorConfig,
    params: &MassParams,
    ring: &RingConfig,
    opts: &IntegrateOptions,
) -> std::result::Result<Trajectory, Aborted> {
    let h = match hamiltonian(initial, params, ring) {
        Ok(h) => h,
        Err(e) => {
            let flow = PhysicalFlow::new(*params, ring.clone(), 0.0);
            let traj = Trajectory::start(&flow, &initial.to_array(), opts.tau0, opts.t0, cfg);
            return Err(Aborted {
                error: e,
                partial: Box::new(traj),
            });
        }
    };
    let flow = PhysicalFlow::new(*params, ring.clone(), h);
    let mut opts = opts.clone();
    opts.guard_distance.get_or_insert(DEFAULT_GUARD_DISTANCE);
    integrate_adaptive(&flow, &initial.to_array(), t_span, cfg, &opts)
}
