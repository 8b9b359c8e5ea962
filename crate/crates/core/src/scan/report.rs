use std::fmt::Write as _;

use super::{Result, ScanError, ScanGrid};
use crate::observables::INDEPENDENT_EMITTER_THRESHOLD;

/// Local fluorescence maxima along `Delta` for one drive amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FluorescencePeaks {
    pub rabi: f64,
    pub delta: Vec<f64>,
}

/// Extremal values over a grid. Fields tied to an observable that was not
/// evaluated are `None` or empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrema {
    /// `(C, Delta, Omega0)`.
    pub max_concurrence: Option<(f64, f64, f64)>,
    /// `(variance, Delta, Omega0, theta*)`.
    pub min_variance: Option<(f64, f64, f64, f64)>,
    pub fluorescence_peaks: Vec<FluorescencePeaks>,
    /// Points whose optimised variance lies below the independent-emitter limit.
    pub below_threshold: usize,
    pub failed_points: usize,
    pub points: usize,
}

impl Extrema {
    pub fn has_subthreshold_region(&self) -> bool {
        self.below_threshold > 0
    }

    /// Flat `key = value` text, one entry per line.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let e = |x: f64| format!("{x:.8e}");
        writeln!(s, "points = {}", self.points).unwrap();
        writeln!(s, "failed_points = {}", self.failed_points).unwrap();
        if let Some((c, d, r)) = self.max_concurrence {
            writeln!(s, "max_concurrence = {}", e(c)).unwrap();
            writeln!(s, "max_concurrence.delta_over_gamma0 = {}", e(d)).unwrap();
            writeln!(s, "max_concurrence.rabi_over_gamma0 = {}", e(r)).unwrap();
        }
        if let Some((v, d, r, t)) = self.min_variance {
            writeln!(s, "min_variance_over_2g2 = {}", e(v)).unwrap();
            writeln!(s, "min_variance.delta_over_gamma0 = {}", e(d)).unwrap();
            writeln!(s, "min_variance.rabi_over_gamma0 = {}", e(r)).unwrap();
            writeln!(s, "min_variance.theta_opt_rad = {}", e(t)).unwrap();
            writeln!(s, "threshold = {}", e(INDEPENDENT_EMITTER_THRESHOLD)).unwrap();
            writeln!(s, "below_threshold_points = {}", self.below_threshold).unwrap();
            writeln!(s, "subthreshold_region = {}", self.has_subthreshold_region()).unwrap();
        }
        for (i, p) in self.fluorescence_peaks.iter().enumerate() {
            let list: Vec<String> = p.delta.iter().map(|d| e(*d)).collect();
            writeln!(s, "fluorescence_peaks.{i}.rabi_over_gamma0 = {}", e(p.rabi)).unwrap();
            writeln!(s, "fluorescence_peaks.{i}.delta_over_gamma0 = {}", list.join(",")).unwrap();
        }
        s
    }
}

/// Interior points strictly above the left neighbour and not below the right one,
/// so that a flat-topped maximum is reported once.
fn local_maxima(values: &[Option<f64>]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| match (values[i - 1], values[i], values[i + 1]) {
            (Some(l), Some(c), Some(r)) => c > l && c >= r,
            _ => false,
        })
        .collect()
}

pub fn report_extrema(grid: &ScanGrid) -> Result<Extrema> {
    if grid.records.is_empty() {
        return Err(ScanError::EmptyGrid);
    }
    let mut max_concurrence: Option<(f64, f64, f64)> = None;
    let mut min_variance: Option<(f64, f64, f64, f64)> = None;
    let mut below_threshold = 0;
    for r in &grid.records {
        if let Some(c) = r.concurrence {
            if max_concurrence.is_none_or(|m| c > m.0) {
                max_concurrence = Some((c, r.delta, r.rabi));
            }
        }
        if let Some(v) = &r.variance {
            if min_variance.is_none_or(|m| v.total < m.0) {
                min_variance = Some((v.total, r.delta, r.rabi, v.theta));
            }
            if v.total < INDEPENDENT_EMITTER_THRESHOLD {
                below_threshold += 1;
            }
        }
    }
    let fluorescence_peaks = if grid.config.observables.fluorescence {
        (0..grid.rabi.len())
            .map(|i| {
                let row = grid.row(i);
                let values: Vec<Option<f64>> = row.iter().map(|r| r.fluorescence).collect();
                FluorescencePeaks {
                    rabi: grid.rabi[i],
                    delta: local_maxima(&values).into_iter().map(|j| row[j].delta).collect(),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(Extrema {
        max_concurrence,
        min_variance,
        fluorescence_peaks,
        below_threshold,
        failed_points: grid.failed_points(),
        points: grid.records.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_maxima_skip_edges_and_plateaus() {
        let v = [3.0, 1.0, 2.0, 2.0, 1.0, 5.0, 4.0, 6.0].map(Some);
        assert_eq!(local_maxima(&v), vec![2, 5]);
        assert!(local_maxima(&[Some(1.0)]).is_empty());
        assert!(local_maxima(&[Some(0.0), None, Some(0.0)]).is_empty());
    }
}
