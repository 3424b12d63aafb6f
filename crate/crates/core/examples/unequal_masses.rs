//! Collision of unequal secondaries in the full regularized system.

use collreg::config::{MassParams, RingConfig};
use collreg::integrators::{integrate, EventKind, IntegrateOptions, IntegratorConfig, Method, RegularizedFlow};
use collreg::physical::EnergyLevel;
use collreg::regularized::{collision_momentum, project_to_level, RegState};

fn main() -> collreg::Result<()> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(3)?;
    for eps in [0.0, 0.3, 0.6] {
        let params = MassParams::new(m, eps)?;
        let z = project_to_level(&RegState::new(0.5, 0.1, -1.0, 0.05), EnergyLevel(h), &params, &ring)?;
        let flow = RegularizedFlow::new(params, ring.clone(), h);
        let cfg = IntegratorConfig::new(Method::Gauss4, 1e-3);
        let opts = IntegrateOptions {
            stop_after_collisions: Some(1),
            ..Default::default()
        };
        let traj = integrate(&flow, &z.phase(), 20.0, &cfg, &opts)?;
        let first = traj.events_of(EventKind::Collision).next();
        if let Some(e) = first {
            println!(
                "eps {eps}: |P1| {:.12} expected {:.12} at t = {:.6}",
                e.state[2].abs(),
                collision_momentum(&params),
                e.t
            );
        }
    }
    Ok(())
}
