// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Time series over a uniform grid and the features read off them: MEMS
//! events, MEMS time prediction, sudden-death intervals, concurrence peaks
//! and parameter sweeps.
//!
//! Every refinement step (event times, interval endpoints, peaks) evaluates
//! the closed-form engine directly rather than interpolating the series.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::circuit::CircuitParams;
use crate::dynamics::{populations, DensityMatrix, EvolutionPlan};
use crate::entanglement::{concurrence, entanglement_record, mems_measure};
use crate::error::{Error, Result};

/// Uniform grid of `n_points` scaled times from `t_start` to `t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_points: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if t_start < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "t_start = {t_start} is negative"
            )));
        }
        if t_end <= t_start {
            return Err(Error::InvalidGrid(format!(
                "t_end = {t_end} must exceed t_start = {t_start}"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        Ok(Self {
            t_start,
            t_end,
            n_points,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_points - 1) as f64
    }

    /// `i`-th grid time; the last point is exactly `t_end`.
    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.t_end
        } else {
            self.t_start + i as f64 * self.spacing()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.time(i))
    }
}

/// Observables at one grid time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRecord {
    pub t: f64,
    /// `ρ_00, ρ_01, ρ_10, ρ_11`.
    pub populations: [f64; 4],
    pub zeta: f64,
    pub concurrence: f64,
    pub purity: f64,
    pub mems_deviation: f64,
}

/// Evaluates every observable of `ρ(t)`.
pub fn record_at(plan: &EvolutionPlan, t: f64) -> Result<SeriesRecord> {
    let rho = plan.evolve(t)?;
    let e = entanglement_record(&rho)?;
    Ok(SeriesRecord {
        t,
        populations: populations(&rho),
        zeta: e.zeta,
        concurrence: e.concurrence,
        purity: e.purity,
        mems_deviation: e.mems_deviation,
    })
}

#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub grid: TimeGrid,
    pub records: Vec<SeriesRecord>,
    /// Plan the series was produced from; used for refinement.
    pub plan: EvolutionPlan,
}

impl TimeSeries {
    pub fn concurrences(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.concurrence)
    }

    pub fn peak_concurrence(&self) -> f64 {
        self.concurrences().fold(0.0, f64::max)
    }
}

/// Closed-form series for a circuit. The Hamiltonian is diagonalized once.
pub fn simulate_series(
    p: &CircuitParams,
    rho0: &DensityMatrix,
    grid: TimeGrid,
) -> Result<TimeSeries> {
    p.validate()?;
    let plan = EvolutionPlan::new(&p.scaled_hamiltonian(), rho0, p.gamma)?;
    simulate_plan(plan, grid)
}

/// Closed-form series from an existing plan. Grid points are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn simulate_plan(plan: EvolutionPlan, grid: TimeGrid) -> Result<TimeSeries> {
    let records = (0..grid.n_points())
        .into_par_iter()
        .map(|i| record_at(&plan, grid.time(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TimeSeries {
        grid,
        records,
        plan,
    })
}

const GOLDEN_ITERATIONS: usize = 80;

/// Golden-section minimization of `f` on `[a, b]`; returns `(t, f(t))`.
fn golden_minimize(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERATIONS {
        if b - a <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// A time at which `ρ` has the MEMS form within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemsEvent {
    pub t: f64,
    pub zeta: f64,
    pub deviation: f64,
}

/// Local minima of the MEMS deviation that fall within `dev_tol` and carry
/// `ζ ≥ zeta_min`. Each minimum is refined by golden-section search between
/// its grid neighbours.
pub fn detect_mems_events(series: &TimeSeries, dev_tol: f64, zeta_min: f64) -> Vec<MemsEvent> {
    let recs = &series.records;
    let n = recs.len();
    let dev = |i: usize| recs[i].mems_deviation;
    let deviation_at = |t: f64| {
        series
            .plan
            .evolve(t)
            .map(|rho| mems_measure(&rho).1)
            .unwrap_or(f64::INFINITY)
    };

    let mut events: Vec<MemsEvent> = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || dev(i) < dev(i - 1);
        let right_ok = i + 1 == n || dev(i) <= dev(i + 1);
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = recs[i.saturating_sub(1)].t;
        let hi = recs[(i + 1).min(n - 1)].t;
        let (mut t, mut d) = (recs[i].t, dev(i));
        if hi > lo {
            let (tr, dr) = golden_minimize(lo, hi, deviation_at);
            if dr < d {
                t = tr;
                d = dr;
            }
        }
        if d > dev_tol {
            continue;
        }
        let Ok(rho) = series.plan.evolve(t) else {
            continue;
        };
        let (zeta, deviation) = mems_measure(&rho);
        if zeta < zeta_min {
            continue;
        }
        if events.last().is_some_and(|e| (e.t - t).abs() < 1e-12) {
            continue;
        }
        events.push(MemsEvent { t, zeta, deviation });
    }
    events
}

/// Scaled times `λt_n = nπ / (√((E_J1+E_J2)² + E_m²/4) − √((E_J1−E_J2)² + E_m²/4))`
/// for `n = 1..=n_max`, energies in units of `λ`.
pub fn predict_mems_times(p: &CircuitParams, n_max: usize) -> Result<Vec<f64>> {
    p.validate()?;
    if p.ej1 * p.ej2 == 0.0 {
        return Err(Error::DegeneratePrediction);
    }
    let (j1, j2, m) = (
        p.ej1 / p.time_scale,
        p.ej2 / p.time_scale,
        p.em / p.time_scale,
    );
    let quarter_m2 = m * m / 4.0;
    let denominator =
        ((j1 + j2).powi(2) + quarter_m2).sqrt() - ((j1 - j2).powi(2) + quarter_m2).sqrt();
    if denominator.is_nan() || denominator <= 0.0 {
        return Err(Error::DegeneratePrediction);
    }
    let t1 = std::f64::consts::PI / denominator;
    Ok((1..=n_max).map(|n| n as f64 * t1).collect())
}

/// A stretch of scaled time over which the concurrence stays below the
/// zero threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsdInterval {
    pub t_start: f64,
    pub t_end: f64,
}

impl EsdInterval {
    pub fn length(&self) -> f64 {
        self.t_end - self.t_start
    }
}

fn bisect_threshold(plan: &EvolutionPlan, mut above: f64, mut below: f64, zero_tol: f64) -> f64 {
    let is_below = |t: f64| {
        plan.evolve(t)
            .and_then(|rho| concurrence(&rho))
            .map(|c| c < zero_tol)
            .unwrap_or(false)
    };
    for _ in 0..60 {
        let mid = 0.5 * (above + below);
        if mid == above || mid == below {
            break;
        }
        if is_below(mid) {
            below = mid;
        } else {
            above = mid;
        }
    }
    below
}

/// Maximal runs of at least two consecutive grid points with concurrence
/// below `zero_tol`. Endpoints interior to the grid are refined by
/// bisection on `C(t) - zero_tol`.
pub fn detect_esd_intervals(series: &TimeSeries, zero_tol: f64) -> Vec<EsdInterval> {
    let recs = &series.records;
    let n = recs.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if recs[i].concurrence >= zero_tol {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < n && recs[i + 1].concurrence < zero_tol {
            i += 1;
        }
        let end = i;
        i += 1;
        if end == start {
            continue;
        }
        let t_start = if start == 0 {
            recs[0].t
        } else {
            bisect_threshold(&series.plan, recs[start - 1].t, recs[start].t, zero_tol)
        };
        let t_end = if end + 1 == n {
            recs[end].t
        } else {
            bisect_threshold(&series.plan, recs[end + 1].t, recs[end].t, zero_tol)
        };
        out.push(EsdInterval { t_start, t_end });
    }
    out
}

/// A local maximum of the concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrencePeak {
    pub t: f64,
    pub value: f64,
}

/// Interior local maxima of the concurrence above `zero_tol`, in time
/// order, each refined by golden-section search between grid neighbours.
pub fn concurrence_peaks(series: &TimeSeries, zero_tol: f64) -> Vec<ConcurrencePeak> {
    let recs = &series.records;
    let neg_c = |t: f64| {
        -series
            .plan
            .evolve(t)
            .and_then(|rho| concurrence(&rho))
            .unwrap_or(0.0)
    };
    let mut out = Vec::new();
    for i in 1..recs.len().saturating_sub(1) {
        let c = recs[i].concurrence;
        if c > recs[i - 1].concurrence && c >= recs[i + 1].concurrence && c > zero_tol {
            let (t, v) = golden_minimize(recs[i - 1].t, recs[i + 1].t, neg_c);
            let peak = if -v > c {
                ConcurrencePeak { t, value: -v }
            } else {
                ConcurrencePeak {
                    t: recs[i].t,
                    value: c,
                }
            };
            out.push(peak);
        }
    }
    out
}

/// Parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Ej1,
    Ej2,
    Em,
    Gamma,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Ej1 => "ej1",
            Self::Ej2 => "ej2",
            Self::Em => "em",
            Self::Gamma => "gamma",
        }
    }

    pub fn apply(&self, base: &CircuitParams, value: f64) -> CircuitParams {
        let mut p = *base;
        match self {
            Self::Ej1 => p.ej1 = value,
            Self::Ej2 => p.ej2 = value,
            Self::Em => p.em = value,
            Self::Gamma => p.gamma = value,
        }
        p
    }
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ej1" => Ok(Self::Ej1),
            "ej2" => Ok(Self::Ej2),
            "em" => Ok(Self::Em),
            "gamma" => Ok(Self::Gamma),
            other => Err(Error::InvalidAxis(other.to_string())),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Thresholds for the feature detectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSettings {
    pub dev_tol: f64,
    pub zeta_min: f64,
    pub zero_tol: f64,
}

impl Default for DetectorSettings {
    fn default() -> Self {
        Self {
            dev_tol: 0.05,
            zeta_min: 0.05,
            zero_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub axis_value: f64,
    pub peak_concurrence: f64,
    /// Time of the first local concurrence maximum.
    pub t_first_peak: Option<f64>,
    /// Summed length of all sudden-death intervals.
    pub esd_total_length: f64,
    pub first_mems: Option<MemsEvent>,
}

pub fn summarize(
    series: &TimeSeries,
    axis_value: f64,
    settings: &DetectorSettings,
) -> SweepSummary {
    SweepSummary {
        axis_value,
        peak_concurrence: series.peak_concurrence(),
        t_first_peak: concurrence_peaks(series, settings.zero_tol)
            .first()
            .map(|p| p.t),
        esd_total_length: detect_esd_intervals(series, settings.zero_tol)
            .iter()
            .map(EsdInterval::length)
            .sum(),
        first_mems: detect_mems_events(series, settings.dev_tol, settings.zeta_min)
            .first()
            .copied(),
    }
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub params: CircuitParams,
    pub series: TimeSeries,
    pub summary: SweepSummary,
}

/// One series and summary per value of `axis`, in input order.
pub fn sweep(
    base: &CircuitParams,
    axis: SweepAxis,
    values: &[f64],
    rho0: &DensityMatrix,
    grid: TimeGrid,
    settings: &DetectorSettings,
) -> Result<Vec<SweepPoint>> {
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "values",
            reason: format!("{bad} is not finite"),
        });
    }
    values
        .par_iter()
        .map(|&value| {
            let params = axis.apply(base, value);
            let series = simulate_series(&params, rho0, grid)?;
            let summary = summarize(&series, value, settings);
            Ok(SweepPoint {
                params,
                series,
                summary,
            })
        })
        .collect()
}
