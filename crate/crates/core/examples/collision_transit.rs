//! Symmetric secondaries passing through repeated binary collisions in
//! the reduced regularized system.

use collreg::config::RingConfig;
use collreg::integrators::{integrate, EventKind, IntegrateOptions, IntegratorConfig, Method, ReducedFlow};
use collreg::physical::EnergyLevel;
use collreg::regularized::{project_reduced, ReducedState};

fn main() -> collreg::Result<()> {
    let (h, m) = (-1.0, 1e-3);
    let ring = RingConfig::new(2)?;
    let start = project_reduced(&ReducedState::new(1.0, 0.3, &ring), EnergyLevel(h), m)?;
    let flow = ReducedFlow::new(&ring, h, m);
    let cfg = IntegratorConfig::new(Method::Gauss4, 1e-3);
    let traj = integrate(&flow, &[start.q1, start.p1], 60.0, &cfg, &IntegrateOptions::default())?;

    println!("collision momentum sqrt(2m) = {:.12}", (2.0 * m).sqrt());
    for e in traj.events_of(EventKind::Collision) {
        println!("tau {:9.5}  t {:9.5}  P1 {:+.12}", e.tau, e.t, e.state[1]);
    }
    println!("max |invariant| {:.2e}", traj.metadata.max_invariant.unwrap_or(f64::NAN));
    Ok(())
}
