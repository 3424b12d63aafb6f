//! The regularized flow against a direct integration of the physical
//! equations up to the first near-collision.

use collreg::config::{MassParams, RingConfig};
use collreg::integrators::{
    integrate, integrate_physical_oracle, IntegrateOptions, IntegratorConfig, Method, RegularizedFlow,
};
use collreg::physical::{EnergyLevel, PhysState};
use collreg::regularized::{chart_positions, chart_to_physical, chart_to_regularized, project_to_level, RegState};

fn main() -> collreg::Result<()> {
    let (h, eps, m) = (-1.0, 0.2, 1e-3);
    let params = MassParams::new(m, eps)?;
    let ring = RingConfig::new(3)?;
    let z0 = chart_to_regularized(&PhysState::new(0.6, -0.4, -0.3, 0.2), &params)?;
    let z0 = project_to_level(&z0, EnergyLevel(h), &params, &ring)?;

    let cfg = IntegratorConfig {
        record_every: 500,
        ..IntegratorConfig::new(Method::ImplicitMidpoint, 2e-4)
    };
    let flow = RegularizedFlow::new(params, ring.clone(), h);
    let reg = integrate(&flow, &z0.phase(), 3.0, &cfg, &IntegrateOptions::default())?;

    let times: Vec<f64> = reg.samples.iter().map(|s| s.t).filter(|&t| t > 0.0).collect();
    let oracle = IntegratorConfig {
        adaptive_tol: 1e-12,
        ..IntegratorConfig::new(Method::RkAdaptive, 1e-4)
    };
    let opts = IntegrateOptions {
        sample_times: times.clone(),
        ..Default::default()
    };
    let x0 = chart_to_physical(&z0, &params)?;
    let phys = integrate_physical_oracle(&x0, *times.last().unwrap(), &oracle, &params, &ring, &opts)?;

    println!("{:>10} {:>12} {:>12} {:>10}", "t", "q1", "q2", "|dq|");
    for s in &reg.samples {
        if let Some(p) = phys.samples.iter().find(|p| p.tau == s.t) {
            let (q1, q2) = chart_positions(&RegState::from_phase(&s.state), &params);
            let d = (q1 - p.state[0]).abs().max((q2 - p.state[1]).abs());
            println!("{:>10.6} {q1:>12.8} {q2:>12.8} {d:>10.2e}", s.t);
        }
    }
    println!("physical run ended by {:?}", phys.terminated_by());
    Ok(())
}
