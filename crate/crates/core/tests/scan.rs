use nanopair::observables::QuadratureResult;
use nanopair::photonic::CouplingRates;
use nanopair::scan::{
    emit_csv, report_extrema, run_sweep, write_csv, Axis, PointRecord, ScanError, ScanGrid, SweepConfig,
};

fn small(delta: Axis, rabi: Axis) -> SweepConfig {
    SweepConfig {
        delta,
        rabi,
        ..SweepConfig::default()
    }
}

fn csv_bytes(grid: &ScanGrid) -> Vec<u8> {
    let mut out = Vec::new();
    emit_csv(grid, &mut out).unwrap();
    out
}

#[test]
fn two_by_two_grid_gives_header_and_four_rows() {
    let grid = run_sweep(&small(Axis { min: -5.0, max: 5.0, count: 2 }, Axis { min: 10.0, max: 60.0, count: 2 })).unwrap();
    let text = String::from_utf8(csv_bytes(&grid)).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("delta_over_gamma0,rabi_over_gamma0,converged,"));
}

#[test]
fn csv_round_trips_through_a_reader() {
    let cfg = SweepConfig::parse(
        "delta.min_over_gamma0 = -3\ndelta.max_over_gamma0 = 3\ndelta.count = 7\n\
         rabi.min_over_gamma0 = 60\nrabi.max_over_gamma0 = 60\nrabi.count = 1\n\
         observables = fluorescence, concurrence, variance, spin\n",
    )
    .unwrap();
    let grid = run_sweep(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.csv");
    write_csv(&grid, &path).unwrap();

    let mut reader = csv::Reader::from_path(&path).unwrap();
    let header = reader.headers().unwrap().clone();
    assert_eq!(header.len(), 19);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    for (row, record) in rows.iter().zip(&grid.records) {
        assert_eq!(row.len(), header.len());
        let value = |name: &str| row[col(name)].parse::<f64>().unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-8 * b.abs().max(1e-300);
        assert!(close(value("delta_over_gamma0"), record.delta) || record.delta == 0.0);
        assert!(close(value("concurrence"), record.concurrence.unwrap()));
        assert!(close(value("variance_min_over_2g2"), record.variance.unwrap().total));
        assert!(close(value("rho44"), record.populations[3]));
        assert_eq!(&row[col("converged")], "1");
    }
}

#[test]
fn output_is_identical_for_any_thread_count() {
    let cfg = small(Axis { min: -30.0, max: 30.0, count: 9 }, Axis { min: 0.0, max: 150.0, count: 7 });
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| csv_bytes(&run_sweep(&cfg).unwrap()))
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
}

fn record(delta: f64, rabi: f64, value: f64) -> PointRecord {
    PointRecord {
        delta,
        rabi,
        converged: true,
        error: None,
        residual: 0.0,
        populations: [1.0, 0.0, 0.0, 0.0],
        rho14_abs: 0.0,
        fluorescence: Some(value),
        concurrence: Some(value),
        variance: Some(QuadratureResult {
            total: value - 1.0,
            single: [0.0; 2],
            cross: 0.0,
            theta: 0.25,
            relative_phase: 0.0,
        }),
        spin: None,
    }
}

fn synthetic(f: impl Fn(f64, f64) -> f64) -> ScanGrid {
    let delta = vec![-1.0, 0.0, 1.0, 2.0];
    let rabi = vec![0.0, 10.0, 20.0];
    let mut config = SweepConfig::default();
    config.observables.spin = false;
    let records = rabi
        .iter()
        .flat_map(|&r| delta.iter().map(move |&d| (d, r)))
        .map(|(d, r)| record(d, r, f(d, r)))
        .collect();
    ScanGrid {
        delta,
        rabi,
        rates: CouplingRates::injected([1.0; 2], 0.0, 0.0, [1.0; 2]),
        config,
        records,
    }
}

#[test]
fn monotone_grid_puts_extrema_at_corners() {
    let e = report_extrema(&synthetic(|d, r| d + 0.1 * r)).unwrap();
    assert_eq!(e.max_concurrence, Some((4.0, 2.0, 20.0)));
    assert_eq!(e.min_variance, Some((-2.0, -1.0, 0.0, 0.25)));
    assert!(e.fluorescence_peaks.iter().all(|p| p.delta.is_empty()));
    assert_eq!(e.below_threshold, 3);
    assert!(e.to_key_value().contains("max_concurrence.rabi_over_gamma0 = 2.00000000e1"));
}

#[test]
fn peaks_are_reported_per_drive_amplitude() {
    let e = report_extrema(&synthetic(|d, _| -(d - 0.4).powi(2))).unwrap();
    assert_eq!(e.fluorescence_peaks.len(), 3);
    assert!(e.fluorescence_peaks.iter().all(|p| p.delta == vec![0.0]));
}

#[test]
fn empty_grid_is_an_error() {
    let mut grid = synthetic(|d, _| d);
    grid.records.clear();
    assert!(matches!(report_extrema(&grid), Err(ScanError::EmptyGrid)));
}

#[test]
fn failed_points_stay_in_the_grid() {
    let mut grid = synthetic(|d, _| d);
    grid.records[5].converged = false;
    grid.records[5].concurrence = None;
    grid.records[5].error = Some("synthetic".into());
    let text = String::from_utf8(csv_bytes(&grid)).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().nth(6).unwrap().contains(",0,"));
    assert_eq!(report_extrema(&grid).unwrap().failed_points, 1);
}

#[test]
fn fluorescence_line_scan_shows_all_three_resonances() {
    let cfg = SweepConfig::parse(
        "delta.min_over_gamma0 = -250\ndelta.max_over_gamma0 = 250\ndelta.count = 121\n\
         rabi.min_over_gamma0 = 20\nrabi.max_over_gamma0 = 20\nrabi.count = 1\nobservables = fluorescence\n",
    )
    .unwrap();
    let e = report_extrema(&run_sweep(&cfg).unwrap()).unwrap();
    let peaks = &e.fluorescence_peaks[0].delta;
    let step = 500.0 / 120.0;
    let resonance = 200.0f64.hypot(6.4);
    for target in [-resonance, 0.0, resonance] {
        assert!(peaks.iter().any(|p| (p - target).abs() <= 2.0 * step), "{target} not in {peaks:?}");
    }
}
