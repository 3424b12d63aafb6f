//! Ring radii of the central configuration and the axial force on the
//! infinitesimal body.

use collreg::config::{bp_radius, ring_radius, RingConfig};
use collreg::physical::infinitesimal_accel_3d;

fn main() -> collreg::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>14}", "N", "radius", "csc radius", "max |a_xy|");
    for n in 2..=10 {
        let ring = RingConfig::new(n)?;
        let transverse = (0..200)
            .map(|k| {
                let a = infinitesimal_accel_3d(-3.0 + 0.03 * k as f64, &ring, 0.1 * k as f64);
                a[0].hypot(a[1])
            })
            .fold(0.0, f64::max);
        println!("{n:>3} {:>12.9} {:>12.9} {transverse:>14.2e}", ring_radius(n)?, bp_radius(n)?);
    }
    Ok(())
}
