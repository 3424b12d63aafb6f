//! Parabolic and hyperbolic symmetric orbits leaving along the axis.

use collreg::analysis::{classify, escape_speed, DEFAULT_PARABOLIC_BAND};
use collreg::config::RingConfig;
use collreg::integrators::{integrate, IntegrateOptions, IntegratorConfig, Method, ReducedFlow};

fn main() -> collreg::Result<()> {
    let (m, n) = (1e-3, 3);
    let ring = RingConfig::new(n)?;
    for h in [0.0, 0.05, 0.25, 1.0] {
        let flow = ReducedFlow::new(&ring, h, m);
        let cfg = IntegratorConfig::new(Method::Gauss4, 1e-3);
        let opts = IntegrateOptions {
            escape_threshold: Some(1e3),
            ..Default::default()
        };
        let traj = integrate(&flow, &[0.0, (2.0 * m).sqrt()], 1e5, &cfg, &opts)?;
        let end = &traj.last().state;
        println!(
            "h {h:4}: {:10} speed at q = 1e3 is {:.6} (limit {:.6}), reached at t = {:.1}",
            classify(h, DEFAULT_PARABOLIC_BAND).kind.to_string(),
            (end[1] / end[0]).abs(),
            escape_speed(h)?,
            traj.last().t
        );
    }
    Ok(())
}
