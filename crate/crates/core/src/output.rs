//! Deterministic text output: 17 significant digits, `.` decimal, LF.

use std::io::{self, Write};

use crate::integrators::Trajectory;

/// Scientific notation with 17 significant digits, enough to round-trip
/// any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Which clocks lead each CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClockColumns {
    /// `tau,t,...` for runs in fictitious time.
    Both,
    /// `t,...` for physical-chart runs.
    Physical,
}

/// Write `traj` as CSV with a trailing diagnostic column computed per row.
pub fn write_trajectory_csv<W, F>(
    mut out: W,
    traj: &Trajectory,
    clocks: ClockColumns,
    diag_name: &str,
    diag: F,
) -> io::Result<()>
where
    W: Write,
    F: Fn(&[f64]) -> f64,
{
    let mut header: Vec<&str> = match clocks {
        ClockColumns::Both => vec!["tau", "t"],
        ClockColumns::Physical => vec!["t"],
    };
    header.extend(traj.metadata.columns.iter().map(String::as_str));
    header.push(diag_name);
    out.write_all(header.join(",").as_bytes())?;
    out.write_all(b"\n")?;
    for s in &traj.samples {
        let mut row: Vec<String> = match clocks {
            ClockColumns::Both => vec![fmt_f64(s.tau), fmt_f64(s.t)],
            ClockColumns::Physical => vec![fmt_f64(s.tau)],
        };
        row.extend(s.state.iter().map(|&v| fmt_f64(v)));
        row.push(fmt_f64(diag(&s.state)));
        out.write_all(row.join(",").as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// `Q1,P1` rows.
pub fn write_points_csv<W: Write>(mut out: W, header: &str, points: &[(f64, f64)]) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for &(a, b) in points {
        writeln!(out, "{},{}", fmt_f64(a), fmt_f64(b))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn points_csv_layout() {
        let mut buf = Vec::new();
        write_points_csv(&mut buf, "Q1,P1", &[(1.0, -2.0)]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "Q1,P1\n1.0000000000000000e0,-2.0000000000000000e0\n"
        );
    }
}
