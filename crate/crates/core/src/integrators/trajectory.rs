use std::fmt;

use serde::Serialize;

use super::steppers::{step, Step};
use super::{integrate_adaptive, Flow, IntegratorConfig, Method};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub tau: f64,
    pub t: f64,
    pub state: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// Sign change of the collision coordinate.
    Collision,
    EscapeThreshold,
    /// Physical-chart run stopped on approaching the collision set.
    ProximityAbort,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event {
    /// Index of the last sample recorded before the event.
    pub index: usize,
    pub kind: EventKind,
    pub tau: f64,
    pub t: f64,
    pub state: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub columns: Vec<String>,
    pub integrator: IntegratorConfig,
    /// Largest `|invariant|` seen at any step (not only recorded samples).
    pub max_invariant: Option<f64>,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    pub metadata: RunMetadata,
}

impl Trajectory {
    pub(crate) fn start<F: Flow + ?Sized>(
        flow: &F,
        y0: &[f64],
        tau0: f64,
        t0: f64,
        cfg: &IntegratorConfig,
    ) -> Self {
        Self {
            samples: vec![Sample {
                tau: tau0,
                t: t0,
                state: y0.to_vec(),
            }],
            events: Vec::new(),
            metadata: RunMetadata {
                columns: flow.columns().into_iter().map(String::from).collect(),
                integrator: *cfg,
                max_invariant: flow.invariant(y0).map(f64::abs),
                steps: 0,
            },
        }
    }

    pub(crate) fn track_invariant<F: Flow + ?Sized>(&mut self, flow: &F, y: &[f64]) {
        if let Some(v) = flow.invariant(y) {
            let m = self.metadata.max_invariant.get_or_insert(0.0);
            *m = m.max(v.abs());
        }
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn events_of(&self, kind: EventKind) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.kind == kind)
    }

    pub fn collision_count(&self) -> usize {
        self.events_of(EventKind::Collision).count()
    }

    pub fn terminated_by(&self) -> Option<EventKind> {
        self.events
            .last()
            .map(|e| e.kind)
            .filter(|k| matches!(k, EventKind::EscapeThreshold | EventKind::ProximityAbort))
    }
}

/// Integration that stopped on an error, with everything computed up to
/// the last good sample.
#[derive(Debug)]
pub struct Aborted {
    pub error: Error,
    pub partial: Box<Trajectory>,
}

impl fmt::Display for Aborted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (after {} samples, last tau = {})",
            self.error,
            self.partial.samples.len(),
            self.partial.last().tau
        )
    }
}

impl std::error::Error for Aborted {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Aborted> for Error {
    fn from(a: Aborted) -> Self {
        a.error
    }
}

#[derive(Debug, Clone, Default)]
pub struct IntegrateOptions {
    /// Stop once the escape distance reaches this value.
    pub escape_threshold: Option<f64>,
    /// Stop right after this many collision events.
    pub stop_after_collisions: Option<usize>,
    /// Separation below which the run stops with a proximity abort.
    pub guard_distance: Option<f64>,
    /// Adaptive runs: extra output times that the stepper lands on exactly.
    pub sample_times: Vec<f64>,
    pub tau0: f64,
    pub t0: f64,
}

/// Bracketing tolerance for event localization in the independent variable.
const EVENT_TOL: f64 = 1e-12;

/// Locate the zero of `indicator` along the step from `y` by re-stepping
/// with partial step sizes: a linear-interpolation guess followed by
/// Illinois-modified regula falsi, bracket kept throughout.
fn localize<F, G>(
    flow: &F,
    y: &[f64],
    h: f64,
    cfg: &IntegratorConfig,
    tau: f64,
    indicator: G,
    full: &Step,
) -> Result<(f64, Step)>
where
    F: Flow + ?Sized,
    G: Fn(&[f64]) -> f64,
{
    let (mut lo, mut hi) = (0.0, h);
    let (mut f_lo, mut f_hi) = (indicator(y), indicator(&full.y));
    let mut best = (h, full.clone());
    if f_hi == 0.0 {
        return Ok(best);
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let s = if f_hi != f_lo {
            (lo - f_lo * (hi - lo) / (f_hi - f_lo)).clamp(lo, hi)
        } else {
            0.5 * (lo + hi)
        };
        let trial = step(flow, y, s, cfg, tau)?;
        let f_s = indicator(&trial.y);
        best = (s, trial);
        if f_s == 0.0 || (hi - lo).abs() < EVENT_TOL {
            break;
        }
        if (f_s > 0.0) == (f_lo > 0.0) {
            lo = s;
            f_lo = f_s;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = s;
            f_hi = f_s;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        if (hi - lo).abs() < EVENT_TOL {
            break;
        }
    }
    Ok(best)
}

fn crossed(prev: f64, next: f64) -> bool {
    prev != 0.0 && (prev * next < 0.0 || next == 0.0)
}

/// March `flow` from `y0` over `span` of the independent variable.
///
/// Fixed-step methods take `round(span/step)` equal steps (a shortened
/// final step if the span is not a multiple). `rk_adaptive` delegates to
/// [`integrate_adaptive`]. Collisions are logged at sign changes of the
/// collision coordinate and localized to `1e-12` in the independent
/// variable.
pub fn integrate<F: Flow + ?Sized>(
    flow: &F,
    y0: &[f64],
    span: f64,
    cfg: &IntegratorConfig,
    opts: &IntegrateOptions,
) -> std::result::Result<Trajectory, Aborted> {
    let mut traj = Trajectory::start(flow, y0, opts.tau0, opts.t0, cfg);
    let fail = |traj: Trajectory, error: Error| Aborted {
        error,
        partial: Box::new(traj),
    };
    if let Err(e) = cfg.validate() {
        return Err(fail(traj, e));
    }
    if !(span >= 0.0) {
        return Err(fail(traj, Error::param("span", span, "must be non-negative")));
    }
    if cfg.method == Method::RkAdaptive {
        return integrate_adaptive(flow, y0, span, cfg, opts);
    }
    if span == 0.0 {
        return Ok(traj);
    }

    let ratio = span / cfg.step;
    let n_steps = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    };
    let mut y = y0.to_vec();
    let mut t = opts.t0;
    let mut collisions = 0;

    for k in 1..=n_steps {
        let tau_prev = opts.tau0 + (k - 1) as f64 * cfg.step;
        let tau_next = if k == n_steps {
            opts.tau0 + span
        } else {
            opts.tau0 + k as f64 * cfg.step
        };
        let h = tau_next - tau_prev;
        let out = match step(flow, &y, h, cfg, tau_prev) {
            Ok(s) => s,
            Err(e) => return Err(fail(traj, e)),
        };
        if !out.y.iter().all(|v| v.is_finite()) || !out.dt.is_finite() {
            return Err(fail(traj, Error::NonFinite { tau: tau_next }));
        }
        traj.metadata.steps = k;
        traj.track_invariant(flow, &out.y);

        if let (Some(c0), Some(c1)) = (
            flow.collision_coordinate(&y),
            flow.collision_coordinate(&out.y),
        ) {
            if crossed(c0, c1) {
                let indicator = |x: &[f64]| flow.collision_coordinate(x).unwrap_or(0.0);
                match localize(flow, &y, h, cfg, tau_prev, indicator, &out) {
                    Ok((s, at)) => traj.events.push(Event {
                        index: traj.samples.len() - 1,
                        kind: EventKind::Collision,
                        tau: tau_prev + s,
                        t: t + at.dt,
                        state: at.y,
                    }),
                    Err(e) => return Err(fail(traj, e)),
                }
                collisions += 1;
            }
        }

        let mut stop = opts
            .stop_after_collisions
            .is_some_and(|limit| collisions >= limit);
        if let Some(threshold) = opts.escape_threshold {
            if let Some(d) = flow.escape_distance(&out.y) {
                if d >= threshold {
                    let indicator = |x: &[f64]| flow.escape_distance(x).unwrap_or(0.0) - threshold;
                    match localize(flow, &y, h, cfg, tau_prev, indicator, &out) {
                        Ok((s, at)) => traj.events.push(Event {
                            index: traj.samples.len() - 1,
                            kind: EventKind::EscapeThreshold,
                            tau: tau_prev + s,
                            t: t + at.dt,
                            state: at.y,
                        }),
                        Err(e) => return Err(fail(traj, e)),
                    }
                    stop = true;
                }
            }
        }

        let guard_hit = opts
            .guard_distance
            .zip(flow.separation(&out.y))
            .is_some_and(|(g, d)| d < g);
        if guard_hit && !stop {
            traj.events.push(Event {
                index: traj.samples.len() - 1,
                kind: EventKind::ProximityAbort,
                tau: tau_next,
                t: t + out.dt,
                state: out.y.clone(),
            });
            stop = true;
        }

        y = out.y;
        t += out.dt;
        if k % cfg.record_every == 0 || k == n_steps || stop {
            traj.samples.push(Sample {
                tau: tau_next,
                t,
                state: y.clone(),
            });
        }
        if stop {
            break;
        }
    }
    Ok(traj)
}
