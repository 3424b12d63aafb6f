use nalgebra::{DMatrix, DVector};

use super::{Flow, IntegratorConfig, Method};
use crate::error::{Error, Result};
use crate::symplectic::fd_jacobian;

/// Outcome of one step: the new phase point and the physical-time
/// increment accumulated over the step.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub y: Vec<f64>,
    pub dt: f64,
    pub iterations: usize,
}

const FULL_NEWTON_AFTER: usize = 10;
const JACOBIAN_STEP: f64 = 1e-7;

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn field_jacobian<F: Flow + ?Sized>(flow: &F, y: &[f64]) -> Result<DMatrix<f64>> {
    fd_jacobian(|x| flow.eval(x), y, JACOBIAN_STEP)
}

/// Dispatch for the fixed-step methods.
pub fn step<F: Flow + ?Sized>(
    flow: &F,
    y: &[f64],
    h: f64,
    cfg: &IntegratorConfig,
    tau: f64,
) -> Result<Step> {
    match cfg.method {
        Method::ImplicitMidpoint => step_implicit_midpoint(flow, y, h, cfg, tau),
        Method::Gauss4 => step_gauss4(flow, y, h, cfg, tau),
        Method::Rk4 => step_rk4(flow, y, h),
        Method::RkAdaptive => Err(Error::config(
            "integrator.method",
            "rk_adaptive has no fixed step; use integrate_adaptive",
        )),
    }
}

/// Implicit midpoint rule `y⁺ = y + h f((y + y⁺)/2)`.
///
/// Solved for the midpoint `m = y + (h/2) f(m)` by simplified Newton with
/// a finite-difference Jacobian; after ten iterations the Jacobian is
/// refreshed every iteration and steps are damped by backtracking.
pub fn step_implicit_midpoint<F: Flow + ?Sized>(
    flow: &F,
    y: &[f64],
    h: f64,
    cfg: &IntegratorConfig,
    tau: f64,
) -> Result<Step> {
    if h == 0.0 {
        return Ok(Step {
            y: y.to_vec(),
            dt: 0.0,
            iterations: 0,
        });
    }
    let n = flow.dim();
    let y0 = DVector::from_column_slice(y);
    let f0 = DVector::from_vec(flow.eval(y)?);
    let mut mid = &y0 + &f0 * (0.5 * h);

    let residual = |m: &DVector<f64>| -> Result<DVector<f64>> {
        let fm = DVector::from_vec(flow.eval(m.as_slice())?);
        Ok(m - &y0 - fm * (0.5 * h))
    };
    let newton_matrix = |at: &[f64]| -> Result<_> {
        let jac = field_jacobian(flow, at)?;
        Ok((DMatrix::identity(n, n) - jac * (0.5 * h)).lu())
    };

    let mut lu = newton_matrix(y)?;
    let mut res = residual(&mid)?;
    let mut converged = false;
    let mut iterations = 0;
    for iter in 1..=cfg.newton_max_iter {
        iterations = iter;
        if iter > FULL_NEWTON_AFTER {
            lu = newton_matrix(mid.as_slice())?;
        }
        let delta = lu.solve(&res).ok_or(Error::StepFailure {
            tau,
            residual: res.amax(),
            iterations: iter,
        })?;
        let mut damping = 1.0;
        let mut trial = &mid - &delta;
        let mut trial_res = residual(&trial)?;
        if iter > FULL_NEWTON_AFTER {
            while trial_res.amax() > res.amax() && damping > 1.0 / 64.0 {
                damping *= 0.5;
                trial = &mid - &delta * damping;
                trial_res = residual(&trial)?;
            }
        }
        mid = trial;
        res = trial_res;
        if damping * delta.amax() <= cfg.newton_tol * (1.0 + max_abs(mid.as_slice())) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::StepFailure {
            tau,
            residual: res.amax(),
            iterations,
        });
    }
    let y_new = &mid * 2.0 - &y0;
    Ok(Step {
        y: y_new.as_slice().to_vec(),
        dt: h * flow.clock_rate(mid.as_slice()),
        iterations,
    })
}

const SQRT3_6: f64 = 0.288_675_134_594_812_9; // √3/6
const GAUSS_A: [[f64; 2]; 2] = [[0.25, 0.25 - SQRT3_6], [0.25 + SQRT3_6, 0.25]];
const GAUSS_C: [f64; 2] = [0.5 - SQRT3_6, 0.5 + SQRT3_6];

/// Two-stage Gauss–Legendre collocation. Symmetric and symplectic like the
/// midpoint rule, but fourth order.
pub fn step_gauss4<F: Flow + ?Sized>(
    flow: &F,
    y: &[f64],
    h: f64,
    cfg: &IntegratorConfig,
    tau: f64,
) -> Result<Step> {
    if h == 0.0 {
        return Ok(Step {
            y: y.to_vec(),
            dt: 0.0,
            iterations: 0,
        });
    }
    let n = flow.dim();
    let f0 = flow.eval(y)?;
    // Stage increments Z_i, stacked.
    let mut z = DVector::from_fn(2 * n, |k, _| h * GAUSS_C[k / n] * f0[k % n]);

    let stage_points = |z: &DVector<f64>| -> [Vec<f64>; 2] {
        [
            (0..n).map(|i| y[i] + z[i]).collect(),
            (0..n).map(|i| y[i] + z[n + i]).collect(),
        ]
    };
    let stage_fields = |z: &DVector<f64>| -> Result<[Vec<f64>; 2]> {
        let [y1, y2] = stage_points(z);
        Ok([flow.eval(&y1)?, flow.eval(&y2)?])
    };
    let residual = |z: &DVector<f64>, fs: &[Vec<f64>; 2]| -> DVector<f64> {
        DVector::from_fn(2 * n, |k, _| {
            let (s, i) = (k / n, k % n);
            z[k] - h * (GAUSS_A[s][0] * fs[0][i] + GAUSS_A[s][1] * fs[1][i])
        })
    };
    let newton_matrix = |jac: &DMatrix<f64>| {
        let mut m = DMatrix::identity(2 * n, 2 * n);
        for s in 0..2 {
            for r in 0..2 {
                let mut block = m.view_mut((s * n, r * n), (n, n));
                block -= jac * (h * GAUSS_A[s][r]);
            }
        }
        m.lu()
    };

    let mut lu = newton_matrix(&field_jacobian(flow, y)?);
    let mut fs = stage_fields(&z)?;
    let mut res = residual(&z, &fs);
    let scale = 1.0 + max_abs(y);
    let mut converged = false;
    let mut iterations = 0;
    for iter in 1..=cfg.newton_max_iter {
        iterations = iter;
        if iter > FULL_NEWTON_AFTER {
            let [y1, y2] = stage_points(&z);
            let mid: Vec<f64> = y1.iter().zip(&y2).map(|(a, b)| 0.5 * (a + b)).collect();
            lu = newton_matrix(&field_jacobian(flow, &mid)?);
        }
        let delta = lu.solve(&res).ok_or(Error::StepFailure {
            tau,
            residual: res.amax(),
            iterations: iter,
        })?;
        let mut damping = 1.0;
        let mut trial = &z - &delta;
        let mut trial_fs = stage_fields(&trial)?;
        let mut trial_res = residual(&trial, &trial_fs);
        if iter > FULL_NEWTON_AFTER {
            while trial_res.amax() > res.amax() && damping > 1.0 / 64.0 {
                damping *= 0.5;
                trial = &z - &delta * damping;
                trial_fs = stage_fields(&trial)?;
                trial_res = residual(&trial, &trial_fs);
            }
        }
        z = trial;
        fs = trial_fs;
        res = trial_res;
        if damping * delta.amax() <= cfg.newton_tol * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::StepFailure {
            tau,
            residual: res.amax(),
            iterations,
        });
    }
    let [y1, y2] = stage_points(&z);
    let y_new = (0..n)
        .map(|i| y[i] + 0.5 * h * (fs[0][i] + fs[1][i]))
        .collect();
    Ok(Step {
        y: y_new,
        dt: 0.5 * h * (flow.clock_rate(&y1) + flow.clock_rate(&y2)),
        iterations,
    })
}

/// Classical explicit Runge–Kutta 4, with the clock integrated by the
/// same weights.
pub fn step_rk4<F: Flow + ?Sized>(flow: &F, y: &[f64], h: f64) -> Result<Step> {
    let n = flow.dim();
    let offset = |k: &[f64], c: f64| -> Vec<f64> { (0..n).map(|i| y[i] + c * k[i]).collect() };
    let k1 = flow.eval(y)?;
    let y2 = offset(&k1, 0.5 * h);
    let k2 = flow.eval(&y2)?;
    let y3 = offset(&k2, 0.5 * h);
    let k3 = flow.eval(&y3)?;
    let y4 = offset(&k3, h);
    let k4 = flow.eval(&y4)?;
    let y_new = (0..n)
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    let dt = h / 6.0
        * (flow.clock_rate(y)
            + 2.0 * flow.clock_rate(&y2)
            + 2.0 * flow.clock_rate(&y3)
            + flow.clock_rate(&y4));
    Ok(Step {
        y: y_new,
        dt,
        iterations: 0,
    })
}
