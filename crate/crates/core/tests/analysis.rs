// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::reference_parameters;
use cpb_core::{
    concurrence_peaks, detect_esd_intervals, detect_mems_events, predict_mems_times,
    simulate_series, summarize, sweep, CircuitParams, DensityMatrix, DetectorSettings, SweepAxis,
    TimeGrid,
};

fn ground() -> DensityMatrix {
    DensityMatrix::basis_state(0)
}

fn reference_grid() -> TimeGrid {
    TimeGrid::new(0.0, 20.0, 4001).unwrap()
}

#[test]
fn equal_junctions_swap_the_doubly_occupied_states() {
    let p = CircuitParams::with_energies(30.0, 30.0, 6.0);
    let s = simulate_series(&p, &ground(), TimeGrid::new(0.0, 10.0, 2001).unwrap()).unwrap();
    let column = |k: usize| s.records.iter().map(move |r| r.populations[k]);
    let range = |k: usize| {
        column(k).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        })
    };
    for k in [0, 3] {
        let (lo, hi) = range(k);
        assert!(lo < 0.1 && hi > 0.9, "p{k} range [{lo}, {hi}]");
    }
    // Exchange symmetry keeps the singly occupied states equal and small.
    for r in &s.records {
        assert!((r.populations[1] - r.populations[2]).abs() < 1e-10);
        assert!(r.populations[1] <= 0.25 + 1e-10);
    }
}

#[test]
fn series_records_are_consistent() {
    let grid = TimeGrid::new(0.0, 20.0, 801).unwrap();
    for p in reference_parameters() {
        let s = simulate_series(&p, &ground(), grid).unwrap();
        assert_eq!(s.records.len(), grid.n_points());
        for (i, r) in s.records.iter().enumerate() {
            assert_eq!(r.t, grid.time(i));
            let sum: f64 = r.populations.iter().sum();
            assert!((sum - 1.0).abs() < 1e-10, "{p:?} t={}", r.t);
            if p.gamma == 0.0 {
                assert!((r.purity - 1.0).abs() < 1e-9, "{p:?} t={}", r.t);
            }
        }
    }
}

#[test]
fn mems_events_sit_at_half_probability() {
    let settings = DetectorSettings::default();
    for em in [6.0, 60.0] {
        let p = CircuitParams::with_energies(30.0, 30.0, em);
        let s = simulate_series(&p, &ground(), reference_grid()).unwrap();
        let events = detect_mems_events(&s, settings.dev_tol, settings.zeta_min);
        assert!(!events.is_empty(), "E_m = {em}");
        for e in events {
            let r = cpb_core::analysis::record_at(&s.plan, e.t).unwrap();
            assert!(e.deviation <= settings.dev_tol);
            assert!(e.zeta >= settings.zeta_min);
            assert!((r.populations[0] - 0.5).abs() <= settings.dev_tol);
            assert!((r.populations[3] - 0.5).abs() <= settings.dev_tol);
            assert!((r.concurrence - 2.0 * e.zeta).abs() <= 2.0 * settings.dev_tol);
        }
    }
}

#[test]
fn esd_intervals_are_sorted_disjoint_and_below_threshold() {
    let tol = 1e-6;
    for p in reference_parameters() {
        let s = simulate_series(&p, &ground(), reference_grid()).unwrap();
        let intervals = detect_esd_intervals(&s, tol);
        for w in intervals.windows(2) {
            assert!(w[0].t_end < w[1].t_start, "{p:?}");
        }
        for iv in &intervals {
            assert!(iv.t_end > iv.t_start);
            assert!(iv.t_start >= s.grid.t_start() && iv.t_end <= s.grid.t_end());
            for r in &s.records {
                if r.t > iv.t_start && r.t < iv.t_end {
                    assert!(r.concurrence < tol, "{p:?} t={}", r.t);
                }
            }
        }
        // Every grid run of two or more sub-threshold points is covered.
        for (i, pair) in s.records.windows(2).enumerate() {
            if pair.iter().all(|r| r.concurrence < tol) {
                let t = s.grid.time(i);
                assert!(
                    intervals.iter().any(|iv| iv.t_start <= t && t <= iv.t_end),
                    "{p:?} uncovered at {t}"
                );
            }
        }
    }
}

#[test]
fn predictions_are_linear_in_n() {
    let p = CircuitParams::with_energies(30.0, 5.0, 6.0);
    let times = predict_mems_times(&p, 8).unwrap();
    for (n, t) in times.iter().enumerate() {
        assert_eq!(*t, (n + 1) as f64 * times[0]);
    }
}

#[test]
fn peak_concurrence_falls_with_coupling() {
    let base = CircuitParams::with_energies(30.0, 2.0, 0.0);
    let points = sweep(
        &base,
        SweepAxis::Em,
        &[200.0, 60.0, 5.0, 0.0],
        &ground(),
        reference_grid(),
        &DetectorSettings::default(),
    )
    .unwrap();
    let peaks: Vec<f64> = points
        .iter()
        .map(|pt| pt.summary.peak_concurrence)
        .collect();
    assert!(peaks.windows(2).all(|w| w[1] <= w[0]), "{peaks:?}");
    assert!(peaks[3] < 1e-12);
    // The uncoupled point is dead throughout.
    let last = &points[3].summary;
    assert!((last.esd_total_length - 20.0).abs() < 1e-12);
    assert_eq!(last.t_first_peak, None);
}

#[test]
fn decoherence_damps_successive_maxima() {
    let base = CircuitParams::with_energies(30.0, 5.0, 200.0);
    let gammas = [0.01, 0.1, 0.8];
    let points = sweep(
        &base,
        SweepAxis::Gamma,
        &gammas,
        &ground(),
        reference_grid(),
        &DetectorSettings::default(),
    )
    .unwrap();
    let first: Vec<f64> = points
        .iter()
        .map(|pt| concurrence_peaks(&pt.series, 1e-6)[0].value)
        .collect();
    assert!(first.windows(2).all(|w| w[1] < w[0]), "{first:?}");
    for pt in &points {
        let peaks = concurrence_peaks(&pt.series, 1e-6);
        assert!(peaks.windows(2).all(|w| w[1].value < w[0].value));
    }
}

#[test]
fn sweep_preserves_input_order_and_matches_single_runs() {
    let base = CircuitParams::with_energies(30.0, 5.0, 60.0);
    let values = [0.8, 0.0, 0.1];
    let grid = TimeGrid::new(0.0, 10.0, 1001).unwrap();
    let settings = DetectorSettings::default();
    let points = sweep(&base, SweepAxis::Gamma, &values, &ground(), grid, &settings).unwrap();
    for (pt, &v) in points.iter().zip(values.iter()) {
        assert_eq!(pt.summary.axis_value, v);
        let s = simulate_series(&base.with_gamma(v), &ground(), grid).unwrap();
        assert_eq!(pt.series.records, s.records);
        assert_eq!(pt.summary, summarize(&s, v, &settings));
    }
}

#[test]
fn invalid_axis_is_reported() {
    let err = "bogus".parse::<SweepAxis>().unwrap_err();
    assert!(err.to_string().contains("bogus"));
}
