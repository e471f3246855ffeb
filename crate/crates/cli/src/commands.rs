// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! The four subcommands. Each builds its output in memory, then writes it.

use std::path::{Path, PathBuf};

use cpb_core::{
    detect_esd_intervals, detect_mems_events, predict_mems_times, simulate_series, sweep,
    DetectorSettings, EsdInterval, MemsEvent, SweepAxis, SweepPoint, TimeSeries,
};

use crate::args::{EsdArgs, MemsArgs, SimulateArgs, SweepArgs};
use crate::config::{parse_values, resolve_detector, Layers, RunConfig};
use crate::error::{CliError, Result};
use crate::format::{csv_text, emit, fmt_num, fmt_opt};
use crate::svg::{Chart, Curve};

pub const SERIES_HEADER: [&str; 8] = [
    "t",
    "p00",
    "p01",
    "p10",
    "p11",
    "zeta",
    "concurrence",
    "purity",
];
pub const SWEEP_HEADER: [&str; 6] = [
    "axis_value",
    "peak_concurrence",
    "t_first_peak",
    "esd_total_length",
    "first_mems_t",
    "first_mems_zeta",
];
pub const MEMS_HEADER: [&str; 5] = ["n", "predicted_t", "detected_t", "zeta", "deviation"];
pub const ESD_HEADER: [&str; 3] = ["t_start", "t_end", "length"];
pub const DEGENERATE_NOTE: &str = "note: prediction degenerate";

/// Cap on the number of predicted rows when `--n-max` is not given.
const MAX_DEFAULT_PREDICTIONS: usize = 10_000;

fn series_values(r: &cpb_core::SeriesRecord) -> [f64; 8] {
    let p = r.populations;
    [r.t, p[0], p[1], p[2], p[3], r.zeta, r.concurrence, r.purity]
}

pub fn series_csv(series: &TimeSeries) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = series
        .records
        .iter()
        .map(|r| series_values(r).iter().map(|&x| fmt_num(x)).collect())
        .collect();
    csv_text(&[], &SERIES_HEADER, &rows)
}

fn write_svg(path: &Path, chart: &Chart) -> Result<()> {
    std::fs::write(path, chart.render()).map_err(|e| CliError::io(path, e))
}

pub fn simulate_chart(series: &TimeSeries, columns: &[usize]) -> Chart {
    Chart {
        title: "time evolution".into(),
        x_label: "λt".into(),
        y_label: "value".into(),
        curves: columns
            .iter()
            .map(|&k| Curve {
                label: SERIES_HEADER[k].to_string(),
                points: series
                    .records
                    .iter()
                    .map(|r| {
                        let v = series_values(r);
                        (v[0], v[k])
                    })
                    .collect(),
            })
            .collect(),
        bands: Vec::new(),
    }
}

fn parse_columns(text: Option<String>) -> Result<Vec<usize>> {
    let Some(text) = text else {
        return Ok((1..SERIES_HEADER.len()).collect());
    };
    text.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| match SERIES_HEADER[1..].iter().position(|h| *h == c) {
            Some(k) => Ok(k + 1),
            None => Err(CliError::config(
                "columns",
                format!(
                    "unknown column `{c}`; expected one of {}",
                    SERIES_HEADER[1..].join(", ")
                ),
            )),
        })
        .collect()
}

pub fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let layers = Layers::from_args(&args.common)?;
    let cfg = RunConfig::resolve(&args.common, &layers)?;
    let svg = layers.path("svg", &args.svg);
    let columns = parse_columns(layers.string("columns", &args.columns))?;
    let series = simulate_series(&cfg.params, &cfg.initial_state, cfg.grid)?;
    emit(cfg.out.as_deref(), &series_csv(&series)?)?;
    if let Some(path) = svg {
        write_svg(&path, &simulate_chart(&series, &columns))?;
    }
    Ok(())
}

pub fn sweep_csv(points: &[SweepPoint]) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|pt| {
            let s = &pt.summary;
            vec![
                fmt_num(s.axis_value),
                fmt_num(s.peak_concurrence),
                fmt_opt(s.t_first_peak),
                fmt_num(s.esd_total_length),
                fmt_opt(s.first_mems.map(|e| e.t)),
                fmt_opt(s.first_mems.map(|e| e.zeta)),
            ]
        })
        .collect();
    csv_text(&[], &SWEEP_HEADER, &rows)
}

/// File name of the full series for sweep entry `index`.
pub fn series_file_name(index: usize, axis: SweepAxis, value: f64) -> String {
    format!("{index:03}_{axis}_{}.csv", fmt_num(value))
}

pub fn run_sweep(args: &SweepArgs) -> Result<()> {
    let layers = Layers::from_args(&args.common)?;
    let cfg = RunConfig::resolve(&args.common, &layers)?;
    let settings = resolve_detector(&args.detector, &layers)?;
    let axis: SweepAxis = layers
        .string("axis", &args.axis)
        .ok_or_else(|| CliError::config("axis", "required for sweep"))?
        .parse()?;
    let values_text = layers
        .string("values", &args.values)
        .ok_or_else(|| CliError::config("values", "required for sweep"))?;
    let values = parse_values("values", &values_text)?;

    let points = sweep(
        &cfg.params,
        axis,
        &values,
        &cfg.initial_state,
        cfg.grid,
        &settings,
    )?;
    emit(cfg.out.as_deref(), &sweep_csv(&points)?)?;

    if let Some(dir) = layers.path("series-dir", &args.series_dir) {
        std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        for (i, pt) in points.iter().enumerate() {
            let path: PathBuf = dir.join(series_file_name(i, axis, pt.summary.axis_value));
            std::fs::write(&path, series_csv(&pt.series)?).map_err(|e| CliError::io(&path, e))?;
        }
    }
    if let Some(path) = layers.path("svg", &args.svg) {
        let chart = Chart {
            title: format!("concurrence, {axis} sweep"),
            x_label: "λt".into(),
            y_label: "concurrence".into(),
            curves: points
                .iter()
                .map(|pt| Curve {
                    label: format!("{axis} = {}", fmt_num(pt.summary.axis_value)),
                    points: pt
                        .series
                        .records
                        .iter()
                        .map(|r| (r.t, r.concurrence))
                        .collect(),
                })
                .collect(),
            bands: Vec::new(),
        };
        write_svg(&path, &chart)?;
    }
    Ok(())
}

/// One row of the MEMS table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemsRow {
    pub n: usize,
    pub predicted: Option<f64>,
    pub detected: Option<MemsEvent>,
}

/// Pairs each predicted time with the nearest detected event lying within
/// half a predicted period. Without a prediction, lists the events alone.
pub fn mems_table(predicted: Option<&[f64]>, events: &[MemsEvent]) -> Vec<MemsRow> {
    let Some(times) = predicted else {
        return events
            .iter()
            .enumerate()
            .map(|(i, e)| MemsRow {
                n: i + 1,
                predicted: None,
                detected: Some(*e),
            })
            .collect();
    };
    let half_period = times.first().map_or(0.0, |t1| 0.5 * t1);
    times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let detected = events
                .iter()
                .filter(|e| (e.t - t).abs() <= half_period)
                .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
                .copied();
            MemsRow {
                n: i + 1,
                predicted: Some(t),
                detected,
            }
        })
        .collect()
}

pub fn mems_csv(rows: &[MemsRow], degenerate: bool) -> Result<Vec<u8>> {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                fmt_opt(r.predicted),
                fmt_opt(r.detected.map(|e| e.t)),
                fmt_opt(r.detected.map(|e| e.zeta)),
                fmt_opt(r.detected.map(|e| e.deviation)),
            ]
        })
        .collect();
    let preamble: &[&str] = if degenerate { &[DEGENERATE_NOTE] } else { &[] };
    csv_text(preamble, &MEMS_HEADER, &body)
}

pub fn run_mems(args: &MemsArgs) -> Result<()> {
    let layers = Layers::from_args(&args.common)?;
    let cfg = RunConfig::resolve(&args.common, &layers)?;
    let settings: DetectorSettings = resolve_detector(&args.detector, &layers)?;
    let n_max = layers.get("n-max", args.n_max)?;
    if n_max == Some(0) {
        return Err(CliError::config("n-max", "must be at least 1"));
    }

    let series = simulate_series(&cfg.params, &cfg.initial_state, cfg.grid)?;
    let events = detect_mems_events(&series, settings.dev_tol, settings.zeta_min);

    let predicted = match predict_mems_times(&cfg.params, 1) {
        Ok(first) => {
            let n = n_max.unwrap_or_else(|| {
                let fit = (cfg.grid.t_end() / first[0]).floor();
                (fit as usize).clamp(1, MAX_DEFAULT_PREDICTIONS)
            });
            Some(predict_mems_times(&cfg.params, n)?)
        }
        Err(cpb_core::Error::DegeneratePrediction) => None,
        Err(e) => return Err(e.into()),
    };
    let rows = mems_table(predicted.as_deref(), &events);
    emit(cfg.out.as_deref(), &mems_csv(&rows, predicted.is_none())?)
}

pub fn esd_csv(intervals: &[EsdInterval]) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = intervals
        .iter()
        .map(|iv| vec![fmt_num(iv.t_start), fmt_num(iv.t_end), fmt_num(iv.length())])
        .collect();
    csv_text(&[], &ESD_HEADER, &rows)
}

pub fn run_esd(args: &EsdArgs) -> Result<()> {
    let layers = Layers::from_args(&args.common)?;
    let cfg = RunConfig::resolve(&args.common, &layers)?;
    let settings = resolve_detector(&args.detector, &layers)?;
    let series = simulate_series(&cfg.params, &cfg.initial_state, cfg.grid)?;
    let intervals = detect_esd_intervals(&series, settings.zero_tol);
    emit(cfg.out.as_deref(), &esd_csv(&intervals)?)?;
    if let Some(path) = layers.path("svg", &args.svg) {
        let mut chart = simulate_chart(&series, &[6]);
        chart.title = "concurrence with sudden-death intervals".into();
        chart.y_label = "concurrence".into();
        chart.bands = intervals.iter().map(|iv| (iv.t_start, iv.t_end)).collect();
        write_svg(&path, &chart)?;
    }
    Ok(())
}
