//! Pass/fail separation statistics over nonoverlapping time windows, and
//! the half-life sweep that drives the whole comparison.
//!
//! Bills are bucketed by introduction month into consecutive windows
//! (4 months wide by default) anchored at the analysis start month. Per
//! window we compare the mean bill-level score of passed and failed bills;
//! the relative difference `(mean_passed - mean_failed) / mean_failed` is
//! the headline separation statistic, summarized as its unweighted mean
//! over windows (a pooled all-bills variant is available behind a flag).

use rayon::prelude::*;

use crate::centrality::{centrality_series, CentralityOptions};
use crate::error::{Error, Result};
use crate::influence::{bill_scores, combine, party_influence, BillScore, PartyInfluence};
use crate::ingest::{BillRecord, Chamber, LegislatorRoster};
use crate::series::ScoreSeries;
use crate::tempnet::{build_monthly, CoTensors, DecayRate, DecayedTensor};
use crate::time::{congress_by_month, MonthIndex, MonthRange, YearMonth};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregation {
    Mean,
    Max,
}

impl Aggregation {
    pub fn pick(self, score: &BillScore) -> f64 {
        match self {
            Aggregation::Mean => score.score_mean,
            Aggregation::Max => score.score_max,
        }
    }
}

impl std::fmt::Display for Aggregation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Aggregation::Mean => "mean",
            Aggregation::Max => "max",
        })
    }
}

impl std::str::FromStr for Aggregation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mean" => Ok(Aggregation::Mean),
            "max" => Ok(Aggregation::Max),
            other => Err(format!("unknown aggregation: {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Influence,
    Eigenvector,
    Closeness,
    Strength,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Influence,
        Measure::Eigenvector,
        Measure::Closeness,
        Measure::Strength,
    ];
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Measure::Influence => "influence",
            Measure::Eigenvector => "eigenvector",
            Measure::Closeness => "closeness",
            Measure::Strength => "strength",
        })
    }
}

impl std::str::FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "influence" => Ok(Measure::Influence),
            "eigenvector" => Ok(Measure::Eigenvector),
            "closeness" => Ok(Measure::Closeness),
            "strength" => Ok(Measure::Strength),
            other => Err(format!("unknown measure: {other:?}")),
        }
    }
}

/// How the overall relative difference is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelDiffMode {
    /// Unweighted mean of per-window relative differences (default).
    WindowAveraged,
    /// One relative difference over all bills in the span.
    Pooled,
}

impl std::str::FromStr for RelDiffMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "window_averaged" => Ok(RelDiffMode::WindowAveraged),
            "pooled" => Ok(RelDiffMode::Pooled),
            other => Err(format!("unknown rel-diff mode: {other:?}")),
        }
    }
}

/// Pass/fail separation for one window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowStat {
    pub window_index: usize,
    pub window_start: YearMonth,
    pub n_passed: usize,
    pub n_failed: usize,
    pub mean_passed: Option<f64>,
    pub mean_failed: Option<f64>,
    /// Standard error: sample standard deviation (n-1 denominator) / sqrt(n).
    /// Undefined below two samples.
    pub se_passed: Option<f64>,
    pub se_failed: Option<f64>,
    /// Defined only when both sides are populated and mean_failed > 0.
    pub rel_diff: Option<f64>,
    /// True for a trailing window shorter than the configured width.
    pub partial: bool,
}

fn mean_and_se(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (Some(mean), None);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (Some(mean), Some(var.sqrt() / n.sqrt()))
}

/// Bucket bill scores into consecutive `window_months`-wide windows and
/// compute per-window pass/fail means, standard errors, and relative
/// differences. Every bill lands in exactly one window; a trailing partial
/// window is kept and flagged.
pub fn window_stats(
    scores: &[BillScore],
    window_months: u32,
    aggregation: Aggregation,
    range: &MonthRange,
) -> Result<Vec<WindowStat>> {
    if window_months < 1 {
        return Err(Error::Config("window_months must be at least 1".into()));
    }
    if scores.is_empty() {
        return Ok(Vec::new());
    }
    let n_windows = range.horizon.div_ceil(window_months) as usize;
    let mut passed: Vec<Vec<f64>> = vec![Vec::new(); n_windows];
    let mut failed: Vec<Vec<f64>> = vec![Vec::new(); n_windows];
    for score in scores {
        if score.t.get() < 1 || score.t.get() > range.horizon {
            return Err(Error::Config(format!(
                "bill {} at month {} outside range horizon {}",
                score.bill_id, score.t, range.horizon
            )));
        }
        let w = (score.t.get() - 1) / window_months;
        let value = aggregation.pick(score);
        if score.passed_house {
            passed[w as usize].push(value);
        } else {
            failed[w as usize].push(value);
        }
    }

    Ok((0..n_windows)
        .map(|w| {
            let start_month = MonthIndex(w as u32 * window_months + 1);
            let (mean_passed, se_passed) = mean_and_se(&passed[w]);
            let (mean_failed, se_failed) = mean_and_se(&failed[w]);
            let rel_diff = match (mean_passed, mean_failed) {
                (Some(mp), Some(mf)) if mf > 0.0 => Some((mp - mf) / mf),
                _ => None,
            };
            let window_end = (w as u32 + 1) * window_months;
            WindowStat {
                window_index: w,
                window_start: range.month_of(start_month),
                n_passed: passed[w].len(),
                n_failed: failed[w].len(),
                mean_passed,
                mean_failed,
                se_passed,
                se_failed,
                rel_diff,
                partial: window_end > range.horizon,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistBin {
    pub lo: f64,
    pub count: usize,
}

/// Fixed-width histogram over the observed relative differences.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Histogram {
    pub bin_width: f64,
    pub bins: Vec<HistBin>,
}

/// Distribution summary of the per-window relative differences.
#[derive(Debug, Clone)]
pub struct RelDiffSummary {
    pub histogram: Histogram,
    pub mean: f64,
    /// Standard error over windows; NaN below two windows.
    pub se: f64,
    pub n_windows: usize,
}

/// Histogram plus mean/standard error of the defined per-window relative
/// differences. Errors when no window has a defined value.
pub fn relative_difference_distribution(
    stats: &[WindowStat],
    bin_width: f64,
) -> Result<RelDiffSummary> {
    if !bin_width.is_finite() || bin_width <= 0.0 {
        return Err(Error::Config(format!(
            "bin width must be positive, got {bin_width}"
        )));
    }
    let values: Vec<f64> = stats.iter().filter_map(|w| w.rel_diff).collect();
    if values.is_empty() {
        return Err(Error::Data(
            "no window has a defined relative difference".into(),
        ));
    }
    let (mean, se) = mean_and_se(&values);
    let lo_bin = values
        .iter()
        .map(|v| (v / bin_width).floor() as i64)
        .min()
        .unwrap();
    let hi_bin = values
        .iter()
        .map(|v| (v / bin_width).floor() as i64)
        .max()
        .unwrap();
    let mut bins: Vec<HistBin> = (lo_bin..=hi_bin)
        .map(|b| HistBin {
            lo: b as f64 * bin_width,
            count: 0,
        })
        .collect();
    for v in &values {
        let b = ((v / bin_width).floor() as i64 - lo_bin) as usize;
        bins[b].count += 1;
    }
    Ok(RelDiffSummary {
        histogram: Histogram { bin_width, bins },
        mean: mean.unwrap(),
        se: se.unwrap_or(f64::NAN),
        n_windows: values.len(),
    })
}

/// Sweep configuration; defaults follow the analysis conventions
/// (half-lives 6/12/24, 4-month windows, all measures, both aggregations).
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub half_lives: Vec<f64>,
    pub measures: Vec<Measure>,
    pub aggregations: Vec<Aggregation>,
    pub window_months: u32,
    pub rel_diff_mode: RelDiffMode,
    pub congress_reset: bool,
    pub bin_width: f64,
    pub centrality: CentralityOptions,
    /// Retain per-legislator series and decayed tensors for export.
    pub keep_series: bool,
    pub keep_tensors: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            half_lives: vec![6.0, 12.0, 24.0],
            measures: Measure::ALL.to_vec(),
            aggregations: vec![Aggregation::Mean, Aggregation::Max],
            window_months: 4,
            rel_diff_mode: RelDiffMode::WindowAveraged,
            congress_reset: false,
            bin_width: 0.05,
            centrality: CentralityOptions::default(),
            keep_series: false,
            keep_tensors: false,
        }
    }
}

/// Results for one (measure, aggregation, half-life) combination.
#[derive(Debug, Clone)]
pub struct ConfigResult {
    pub measure: Measure,
    pub aggregation: Aggregation,
    pub half_life: f64,
    pub windows: Vec<WindowStat>,
    pub histogram: Histogram,
    pub mean_rel_diff: f64,
    /// Dispersion of per-window relative differences; NaN in pooled mode.
    pub se_rel_diff: f64,
    pub n_windows_used: usize,
}

/// Per-half-life series retained when `keep_series` is set.
#[derive(Debug)]
pub struct HalfLifeSeries {
    pub half_life: f64,
    pub party: Option<PartyInfluence>,
    pub influence: Option<ScoreSeries>,
    pub eigenvector: Option<ScoreSeries>,
    pub closeness: Option<ScoreSeries>,
    pub strength: Option<ScoreSeries>,
    pub bill_scores: Vec<(Measure, Vec<BillScore>)>,
}

#[derive(Debug)]
pub struct SweepResult {
    pub range: MonthRange,
    pub configs: Vec<ConfigResult>,
    pub series: Vec<HalfLifeSeries>,
    pub tensors: Vec<(f64, DecayedTensor)>,
    pub warnings: Vec<String>,
}

/// Inputs shared across every sweep configuration: the undecayed monthly
/// tensors and the month-to-Congress map.
pub struct PreparedInputs {
    pub co: CoTensors,
    pub congress_by_month: Vec<u16>,
    pub chamber: Chamber,
}

pub fn prepare_inputs(
    bills: &[BillRecord],
    chamber: Chamber,
    range: Option<MonthRange>,
) -> Result<PreparedInputs> {
    let range = match range {
        Some(r) => r,
        None => MonthRange::covering(bills.iter().map(|b| b.introduced_date))
            .ok_or_else(|| Error::Data("no bills to analyze".into()))?,
    };
    let co = build_monthly(bills, &range)?;
    let month_congress = congress_by_month(
        bills
            .iter()
            .map(|b| (range.index_of_date(b.introduced_date).unwrap(), b.congress)),
        &range,
    )?;
    Ok(PreparedInputs {
        co,
        congress_by_month: month_congress,
        chamber,
    })
}

/// Months at which a new Congress begins (other than the first month).
fn congress_reset_points(congress_by_month: &[u16]) -> Vec<MonthIndex> {
    congress_by_month
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, _)| MonthIndex(i as u32 + 2))
        .collect()
}

/// Run the full comparison: for every half-life build the decayed tensors
/// once, derive every requested measure from them, aggregate to bills,
/// window, and summarize. Configurations are reported in
/// half-life-major, then measure, then aggregation order.
pub fn half_life_sweep(
    bills: &[BillRecord],
    roster: &LegislatorRoster,
    chamber: Chamber,
    cfg: &SweepConfig,
) -> Result<SweepResult> {
    if cfg.half_lives.is_empty() {
        return Err(Error::Config("at least one half-life is required".into()));
    }
    if cfg.measures.is_empty() {
        return Err(Error::Config("at least one measure is required".into()));
    }
    if cfg.aggregations.is_empty() {
        return Err(Error::Config("at least one aggregation is required".into()));
    }
    let prepared = prepare_inputs(bills, chamber, None)?;
    let range = prepared.co.range;
    let resets = if cfg.congress_reset {
        congress_reset_points(&prepared.congress_by_month)
    } else {
        Vec::new()
    };

    let mut result = SweepResult {
        range,
        configs: Vec::new(),
        series: Vec::new(),
        tensors: Vec::new(),
        warnings: Vec::new(),
    };

    let want = |m: Measure| cfg.measures.contains(&m);

    for &half_life in &cfg.half_lives {
        let rate = DecayRate::from_half_life(half_life)?;
        let tensor = DecayedTensor::build(&prepared.co, rate, &resets)?;

        let mut party = None;
        let mut influence = None;
        if want(Measure::Influence) {
            let p = party_influence(&tensor, roster, &prepared.congress_by_month, chamber)?;
            influence = Some(combine(&p));
            party = Some(p);
        }
        let mut cents = centrality_series(
            &tensor,
            want(Measure::Eigenvector),
            want(Measure::Closeness),
            want(Measure::Strength),
            cfg.centrality,
        )?;
        result.warnings.append(&mut cents.warnings);

        let mut per_measure: Vec<(Measure, Vec<BillScore>)> = Vec::new();
        for &measure in &cfg.measures {
            let series: &ScoreSeries = match measure {
                Measure::Influence => influence.as_ref().expect("requested"),
                Measure::Eigenvector => cents.eigenvector.as_ref().expect("requested"),
                Measure::Closeness => cents.closeness.as_ref().expect("requested"),
                Measure::Strength => cents.strength.as_ref().expect("requested"),
            };
            let scored = bill_scores(bills, series)?;
            if scored.skipped_empty > 0 {
                result.warnings.push(format!(
                    "half-life {half_life}, {measure}: skipped {} bill(s) with empty participant sets",
                    scored.skipped_empty
                ));
            }
            per_measure.push((measure, scored.scores));
        }

        // Windowing is cheap but embarrassingly parallel across configs.
        let combos: Vec<(usize, Aggregation)> = (0..per_measure.len())
            .flat_map(|mi| cfg.aggregations.iter().map(move |&a| (mi, a)))
            .collect();
        let config_results: Vec<Result<ConfigResult>> = combos
            .par_iter()
            .map(|&(mi, aggregation)| {
                let (measure, scores) = &per_measure[mi];
                let label = |e: Error| {
                    Error::Data(format!(
                        "{measure}/{aggregation} at half-life {half_life}: {e}"
                    ))
                };
                let windows =
                    window_stats(scores, cfg.window_months, aggregation, &range).map_err(label)?;
                let summary =
                    relative_difference_distribution(&windows, cfg.bin_width).map_err(label)?;
                let (mean_rel_diff, se_rel_diff) = match cfg.rel_diff_mode {
                    RelDiffMode::WindowAveraged => (summary.mean, summary.se),
                    RelDiffMode::Pooled => (
                        pooled_rel_diff(scores, aggregation).map_err(label)?,
                        f64::NAN,
                    ),
                };
                Ok(ConfigResult {
                    measure: *measure,
                    aggregation,
                    half_life,
                    windows,
                    histogram: summary.histogram,
                    mean_rel_diff,
                    se_rel_diff,
                    n_windows_used: summary.n_windows,
                })
            })
            .collect();
        for cr in config_results {
            result.configs.push(cr?);
        }

        if cfg.keep_series {
            result.series.push(HalfLifeSeries {
                half_life,
                party,
                influence,
                eigenvector: cents.eigenvector,
                closeness: cents.closeness,
                strength: cents.strength,
                bill_scores: per_measure,
            });
        }
        if cfg.keep_tensors {
            result.tensors.push((half_life, tensor));
        }
    }
    Ok(result)
}

fn pooled_rel_diff(scores: &[BillScore], aggregation: Aggregation) -> Result<f64> {
    let passed: Vec<f64> = scores
        .iter()
        .filter(|s| s.passed_house)
        .map(|s| aggregation.pick(s))
        .collect();
    let failed: Vec<f64> = scores
        .iter()
        .filter(|s| !s.passed_house)
        .map(|s| aggregation.pick(s))
        .collect();
    match (mean_and_se(&passed).0, mean_and_se(&failed).0) {
        (Some(mp), Some(mf)) if mf > 0.0 => Ok((mp - mf) / mf),
        _ => Err(Error::Data(
            "pooled relative difference undefined: a side is empty or the failed mean is zero"
                .into(),
        )),
    }
}
