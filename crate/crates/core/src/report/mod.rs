//! Report bundle emission: delimiter-separated tables with provenance
//! footers, optional SVG plots, and the raw series/tensor exports.
//!
//! Every report carries a header row and ends with one comment line naming
//! the config hash and input digests, so identical runs can be verified
//! byte for byte.

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::analysis::{ConfigResult, SweepResult, WindowStat};
use crate::error::{Error, Result};
use crate::influence::{BillScore, PartyInfluence};
use crate::series::ScoreSeries;
use crate::tempnet::DecayedTensor;

/// Provenance identifiers stamped into every report footer.
#[derive(Debug, Clone)]
pub struct RunMeta {
    pub config_hash: String,
    pub bills_digest: String,
    pub roster_digest: String,
}

impl RunMeta {
    /// Hash the canonical config text and the raw input bytes. The config
    /// text should cover analytic settings only (not output paths), so
    /// equal analyses produce equal footers wherever they are written.
    pub fn new(config_canonical: &str, bills_bytes: &[u8], roster_bytes: &[u8]) -> Self {
        Self {
            config_hash: digest16(config_canonical.as_bytes()),
            bills_digest: digest16(bills_bytes),
            roster_digest: digest16(roster_bytes),
        }
    }

    fn footer(&self) -> String {
        format!(
            "# provenance config={} bills={} roster={}\n",
            self.config_hash, self.bills_digest, self.roster_digest
        )
    }
}

/// First 16 hex characters of the SHA-256 of `bytes`.
pub fn digest16(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(16);
    for byte in hash.iter().take(8) {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BundleOptions {
    pub plots: bool,
    pub export_series: bool,
    pub export_bill_scores: bool,
    pub dump_tensors: bool,
}

fn fmt_stat(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.6}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_stat).unwrap_or_default()
}

fn fmt_weight(v: f64) -> String {
    format!("{v:.9}")
}

/// Half-life rendered without a trailing ".0" for round values, for stable
/// file names and summary rows.
pub fn fmt_half_life(hl: f64) -> String {
    if hl.fract() == 0.0 && hl.abs() < 1e15 {
        format!("{}", hl as i64)
    } else {
        format!("{hl}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn window_flags(w: &WindowStat) -> String {
    let mut flags = Vec::new();
    if w.partial {
        flags.push("partial");
    }
    if w.n_passed == 0 {
        flags.push("no_passed");
    }
    if w.n_failed == 0 {
        flags.push("no_failed");
    }
    if w.rel_diff.is_none() && w.n_passed > 0 && w.n_failed > 0 {
        flags.push("zero_failed_mean");
    }
    if flags.is_empty() {
        "ok".to_string()
    } else {
        flags.join(";")
    }
}

fn config_stem(c: &ConfigResult) -> String {
    format!(
        "{}_{}_h{}",
        c.measure,
        c.aggregation,
        fmt_half_life(c.half_life)
    )
}

pub fn summary_csv(sweep: &SweepResult, meta: &RunMeta) -> String {
    let mut out =
        String::from("measure,aggregation,half_life,mean_rel_diff,se_rel_diff,n_windows\n");
    for c in &sweep.configs {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.measure,
            c.aggregation,
            fmt_half_life(c.half_life),
            fmt_stat(c.mean_rel_diff),
            fmt_stat(c.se_rel_diff),
            c.n_windows_used
        );
    }
    out.push_str(&meta.footer());
    out
}

pub fn windows_csv(config: &ConfigResult, meta: &RunMeta) -> String {
    let mut out = String::from(
        "window_index,window_start,n_passed,n_failed,mean_passed,se_passed,mean_failed,se_failed,rel_diff,flags\n",
    );
    for w in &config.windows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            w.window_index,
            w.window_start,
            w.n_passed,
            w.n_failed,
            fmt_opt(w.mean_passed),
            fmt_opt(w.se_passed),
            fmt_opt(w.mean_failed),
            fmt_opt(w.se_failed),
            fmt_opt(w.rel_diff),
            window_flags(w)
        );
    }
    out.push_str(&meta.footer());
    out
}

pub fn histogram_csv(config: &ConfigResult, meta: &RunMeta) -> String {
    let mut out = String::from("bin_lo,bin_hi,count\n");
    for bin in &config.histogram.bins {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_stat(bin.lo),
            fmt_stat(bin.lo + config.histogram.bin_width),
            bin.count
        );
    }
    out.push_str(&meta.footer());
    out
}

/// Influence export: `(t, canonical_id, p_dems, p_reps, influence)`.
pub fn influence_csv(party: &PartyInfluence, meta: &RunMeta) -> String {
    let mut out = String::from("t,canonical_id,p_dems,p_reps,influence\n");
    for t in party.tensor_range.iter() {
        let mut rows: Vec<(&str, f64, f64)> = party
            .month_entries(t)
            .iter()
            .map(|e| (party.interner.name(e.leg), e.p_dems, e.p_reps))
            .collect();
        rows.sort_by_key(|&(name, _, _)| name);
        for (name, p_dems, p_reps) in rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                t,
                csv_field(name),
                fmt_weight(p_dems),
                fmt_weight(p_reps),
                fmt_weight(p_dems + p_reps)
            );
        }
    }
    out.push_str(&meta.footer());
    out
}

/// Centrality export: `(t, canonical_id, measure, value)` for every series
/// retained for a half-life.
pub fn centrality_csv(series: &[(&str, &ScoreSeries)], meta: &RunMeta) -> String {
    let mut out = String::from("t,canonical_id,measure,value\n");
    if let Some((_, first)) = series.first() {
        for t in first.range.iter() {
            for &(label, s) in series {
                let mut rows: Vec<(&str, f64)> = s
                    .month_entries(t)
                    .iter()
                    .map(|&(leg, v)| (s.interner.name(leg), v))
                    .collect();
                rows.sort_by_key(|&(name, _)| name);
                for (name, v) in rows {
                    let _ = writeln!(out, "{t},{},{label},{}", csv_field(name), fmt_weight(v));
                }
            }
        }
    }
    out.push_str(&meta.footer());
    out
}

/// Bill-score export:
/// `(bill_id, t, score_mean, score_max, n_cosponsors, passed_house)`.
pub fn bill_scores_csv(scores: &[BillScore], meta: &RunMeta) -> String {
    let mut out = String::from("bill_id,t,score_mean,score_max,n_cosponsors,passed_house\n");
    for s in scores {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&s.bill_id),
            s.t,
            fmt_weight(s.score_mean),
            fmt_weight(s.score_max),
            s.n_cosponsors,
            s.passed_house
        );
    }
    out.push_str(&meta.footer());
    out
}

/// Tensor dump: `(t, i, j, weight)` triples for one variant, one row per
/// stored pair, canonical ids in sorted order.
pub fn tensor_csv(tensor: &DecayedTensor, variant: TensorVariant, meta: &RunMeta) -> String {
    let mut out = String::from("t,i,j,weight\n");
    for month in tensor.months() {
        let mut rows: Vec<(&str, &str, f64)> = month
            .iter()
            .map(|(key, pass, tot)| {
                let (a, b) = key.nodes();
                let (na, nb) = (tensor.interner.name(a), tensor.interner.name(b));
                let w = match variant {
                    TensorVariant::Pass => pass,
                    TensorVariant::Tot => tot,
                };
                if na <= nb {
                    (na, nb, w)
                } else {
                    (nb, na, w)
                }
            })
            .collect();
        rows.sort_by_key(|&(a, b, _)| (a, b));
        for (a, b, w) in rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                month.t,
                csv_field(a),
                csv_field(b),
                fmt_weight(w)
            );
        }
    }
    out.push_str(&meta.footer());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorVariant {
    Pass,
    Tot,
}

/// Summary table mirroring the per-Congress statistics.
pub fn summary_table_csv(rows: &[crate::ingest::SummaryRow], meta: &RunMeta) -> String {
    let mut out = String::from(
        "congress,n_bills,pct_passed_house,pct_enacted,mean_cosponsors_per_bill,max_cosponsors_per_bill,mean_bills_per_cosponsor,max_bills_per_cosponsor\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.2},{:.2},{:.2},{},{:.2},{}",
            r.congress,
            r.n_bills,
            r.pct_passed_house,
            r.pct_enacted,
            r.mean_cosponsors_per_bill,
            r.max_cosponsors_per_bill,
            r.mean_bills_per_cosponsor,
            r.max_bills_per_cosponsor
        );
    }
    out.push_str(&meta.footer());
    out
}

/// Write the full report bundle for a sweep. On any error, files already
/// written by this call are removed so no partial bundle is left behind.
/// Returns the written paths in a deterministic order.
pub fn write_bundle(
    out_dir: &Path,
    sweep: &SweepResult,
    meta: &RunMeta,
    opts: BundleOptions,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    if let Err(err) = write_bundle_inner(out_dir, sweep, meta, opts, &mut written) {
        for path in &written {
            let _ = fs::remove_file(path);
        }
        return Err(err);
    }
    Ok(written)
}

fn write_bundle_inner(
    out_dir: &Path,
    sweep: &SweepResult,
    meta: &RunMeta,
    opts: BundleOptions,
    written: &mut Vec<PathBuf>,
) -> Result<()> {
    let mut emit = |name: String, contents: String| -> Result<()> {
        let path = out_dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };

    emit("summary.csv".into(), summary_csv(sweep, meta))?;
    for config in &sweep.configs {
        let stem = config_stem(config);
        emit(format!("windows_{stem}.csv"), windows_csv(config, meta))?;
        emit(format!("hist_{stem}.csv"), histogram_csv(config, meta))?;
        if opts.plots {
            emit(
                format!("plot_windows_{stem}.svg"),
                svg::window_timeseries(config),
            )?;
            emit(format!("plot_hist_{stem}.svg"), svg::histogram(config))?;
        }
    }
    for series in &sweep.series {
        let hl = fmt_half_life(series.half_life);
        if opts.export_series {
            if let Some(party) = &series.party {
                emit(format!("influence_h{hl}.csv"), influence_csv(party, meta))?;
            }
            let mut centralities: Vec<(&str, &ScoreSeries)> = Vec::new();
            if let Some(s) = &series.eigenvector {
                centralities.push(("eigenvector", s));
            }
            if let Some(s) = &series.closeness {
                centralities.push(("closeness", s));
            }
            if let Some(s) = &series.strength {
                centralities.push(("strength", s));
            }
            if !centralities.is_empty() {
                emit(
                    format!("centrality_h{hl}.csv"),
                    centrality_csv(&centralities, meta),
                )?;
            }
        }
        if opts.export_bill_scores {
            for (measure, scores) in &series.bill_scores {
                emit(
                    format!("bill_scores_{measure}_h{hl}.csv"),
                    bill_scores_csv(scores, meta),
                )?;
            }
        }
    }
    if opts.dump_tensors {
        for (hl, tensor) in &sweep.tensors {
            let hl = fmt_half_life(*hl);
            emit(
                format!("tensor_pass_h{hl}.csv"),
                tensor_csv(tensor, TensorVariant::Pass, meta),
            )?;
            emit(
                format!("tensor_tot_h{hl}.csv"),
                tensor_csv(tensor, TensorVariant::Tot, meta),
            )?;
        }
    }
    if !sweep.warnings.is_empty() {
        let mut text = String::new();
        for w in &sweep.warnings {
            text.push_str(w);
            text.push('\n');
        }
        emit("warnings.txt".into(), text)?;
    }
    Ok(())
}

pub use svg::{histogram as histogram_svg, window_timeseries as window_timeseries_svg};
