//! Symplectic defects of the relative map, the Euler map and the
//! regularizing chart.

use collreg::config::MassParams;
use collreg::regularized::{chart_to_physical, RegState};
use collreg::symplectic::{build_relative_map, euler_jacobian, fd_jacobian, symplectic_defect, DEFAULT_FD_STEP};

fn main() -> collreg::Result<()> {
    for mu in [0.05, 0.25, 0.5] {
        let b = build_relative_map(mu)?;
        println!("relative map   mu = {mu:<5} defect {:.2e}", symplectic_defect(&b)?);
    }
    for (q, p) in [(0.1, 2.0), (1.0, -0.5), (5.0, 3.0)] {
        let j = euler_jacobian(q, p)?;
        println!("euler map      Q = {q:<5} defect {:.2e}", symplectic_defect(&j)?);
    }
    for eps in [0.0, 0.3, 0.8] {
        let params = MassParams::new(1e-3, eps)?;
        let z = RegState::new(0.7, -0.2, 0.4, 1.1);
        let map = |x: &[f64]| Ok(chart_to_physical(&RegState::from_phase(x), &params)?.to_array().to_vec());
        let j = fd_jacobian(map, &z.phase(), DEFAULT_FD_STEP)?;
        println!("chart (FD)     eps = {eps:<4} defect {:.2e}", symplectic_defect(&j)?);
    }
    Ok(())
}
