//! Points of the reduced energy level in the (Q1, P1) plane, written as
//! CSV to stdout.

use collreg::analysis::{level_set_sample, LevelGrid};
use collreg::config::RingConfig;

fn main() -> collreg::Result<()> {
    let ring = RingConfig::new(3)?;
    let grid = LevelGrid {
        q1_bound: 3.0,
        p1_bound: 3.0,
        resolution: 201,
    };
    println!("h,Q1,P1");
    for h in [-1.5, -1.0, -0.5, 0.0, 0.25] {
        for (q, p) in level_set_sample(h, 1e-3, ring.reduced_constant(), &grid)? {
            println!("{h},{q:.12},{p:.12}");
        }
    }
    Ok(())
}
