//! Collision-to-collision period of the symmetric orbits as a function of
//! the energy, by quadrature and by the flow.

use collreg::analysis::period_report;

fn main() -> collreg::Result<()> {
    println!("{:>6} {:>16} {:>16} {:>10}", "h", "T quadrature", "T flow", "rel gap");
    for k in 0..10 {
        let h = -2.0 + 0.15 * k as f64;
        let r = period_report(h, 1e-3, 3)?;
        println!("{h:>6.2} {:>16.12} {:>16.12} {:>10.2e}", r.t_quadrature, r.t_flow, r.relative_gap());
    }
    Ok(())
}
