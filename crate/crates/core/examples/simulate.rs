//! Runs the bundled JSON configurations through the same path as
//! `collreg simulate` and prints their summaries.

use std::path::Path;

use collreg::cli::{simulate, RunConfig};

fn main() -> collreg::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    for name in ["reduced_periodic.json", "sitnikov_unequal.json", "physical_chart.json", "kepler1d.json"] {
        let cfg = RunConfig::load(&dir.join(name))?;
        let out = simulate(&cfg, None)?;
        let s = &out.summary;
        println!(
            "{name}: {} steps, {} collisions, drift {:.1e}, ended by {}",
            s.steps,
            s.collisions,
            s.max_invariant_drift,
            s.terminated_by.map_or("end of span".to_string(), |k| format!("{k:?}"))
        );
    }
    Ok(())
}
