use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{Result, ScanGrid};

fn header(grid: &ScanGrid) -> Vec<&'static str> {
    let sel = grid.config.observables;
    let mut cols = vec![
        "delta_over_gamma0",
        "rabi_over_gamma0",
        "converged",
        "residual",
        "rho11",
        "rho22",
        "rho33",
        "rho44",
        "rho14_abs",
    ];
    if sel.fluorescence {
        cols.push("fluorescence_over_g2");
    }
    if sel.concurrence {
        cols.push("concurrence");
    }
    if sel.variance {
        cols.extend([
            "variance_min_over_2g2",
            "variance_single1_over_2g2",
            "variance_single2_over_2g2",
            "variance_cross_over_2g2",
            "theta_opt_rad",
            "relative_phase_rad",
        ]);
    }
    if sel.spin {
        cols.extend(["spin_xi", "spin_normal_variance"]);
    }
    cols
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.8e}")
    }
}

/// Writes the grid as CSV: a header naming every column with its unit, then
/// one row per point with `Omega0` outer and `Delta` inner. Numbers carry nine
/// significant digits; missing values are written as `NaN`.
pub fn emit_csv<W: Write>(grid: &ScanGrid, mut out: W) -> std::io::Result<()> {
    let sel = grid.config.observables;
    writeln!(out, "{}", header(grid).join(","))?;
    for r in &grid.records {
        let mut row = vec![
            num(r.delta),
            num(r.rabi),
            (r.converged as u8).to_string(),
            num(r.residual),
        ];
        row.extend(r.populations.iter().map(|p| num(*p)));
        row.push(num(r.rho14_abs));
        if sel.fluorescence {
            row.push(num(r.fluorescence.unwrap_or(f64::NAN)));
        }
        if sel.concurrence {
            row.push(num(r.concurrence.unwrap_or(f64::NAN)));
        }
        if sel.variance {
            match &r.variance {
                Some(v) => row.extend(
                    [v.total, v.single[0], v.single[1], v.cross, v.theta, v.relative_phase].map(num),
                ),
                None => row.extend(std::iter::repeat_n(num(f64::NAN), 6)),
            }
        }
        if sel.spin {
            match &r.spin {
                Some(s) => {
                    row.push(num(s.xi.unwrap_or(f64::NAN)));
                    row.push(num(s.normal_variance));
                }
                None => row.extend(std::iter::repeat_n(num(f64::NAN), 2)),
            }
        }
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub fn write_csv(grid: &ScanGrid, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    emit_csv(grid, BufWriter::new(file))?;
    Ok(())
}
