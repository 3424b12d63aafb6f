//! Regularized one-dimensional Kepler problem as a harmonic oscillator.

use collreg::analysis::kepler1d_validation;

fn main() -> collreg::Result<()> {
    for (h, mu) in [(-0.5, 1.0), (-1.0, 0.3), (-0.1, 2.0)] {
        let r = kepler1d_validation(h, mu)?;
        println!(
            "h {h:5} mu {mu:3}: omega {:.10} / {:.10}, relation {:.1e}, collision speed {:.1e}, apex {:.8} / {:.8}",
            r.omega_measured,
            r.omega_expected,
            r.relation_residual,
            r.collision_speed_error,
            r.turning_point_measured,
            r.turning_point_expected
        );
    }
    Ok(())
}
