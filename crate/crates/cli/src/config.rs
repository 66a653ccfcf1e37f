//! Run configuration: defaults, config-file parsing, and precedence.
//!
//! Every flag has a documented default. Values resolve in the order
//! command-line flag > config file > default. The config file is flat
//! `key = value` text (UTF-8, `#` comments); keys use the flag names with
//! either `-` or `_`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use legnet::{
    Aggregation, CentralityOptions, Chamber, ClosenessDistance, Error, Measure, RelDiffMode,
    Result, SweepConfig, SynthConfig,
};

/// Fully resolved configuration for the analysis subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub bills_path: Option<PathBuf>,
    pub roster_path: Option<PathBuf>,
    pub alias_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub chamber: Chamber,
    pub half_lives: Vec<f64>,
    pub window_months: u32,
    pub measures: Vec<Measure>,
    pub aggregations: Vec<Aggregation>,
    pub rel_diff_mode: RelDiffMode,
    pub closeness_distance: ClosenessDistance,
    pub congress_reset: bool,
    pub plots: bool,
    pub export_series: bool,
    pub export_bill_scores: bool,
    pub dump_tensors: bool,
    pub synth: SynthConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            bills_path: None,
            roster_path: None,
            alias_path: None,
            output_dir: PathBuf::from("out"),
            chamber: Chamber::House,
            half_lives: vec![6.0, 12.0, 24.0],
            window_months: 4,
            measures: Measure::ALL.to_vec(),
            aggregations: vec![Aggregation::Mean, Aggregation::Max],
            rel_diff_mode: RelDiffMode::WindowAveraged,
            closeness_distance: ClosenessDistance::Reciprocal,
            congress_reset: false,
            plots: false,
            export_series: false,
            export_bill_scores: false,
            dump_tensors: false,
            synth: SynthConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            half_lives: self.half_lives.clone(),
            measures: self.measures.clone(),
            aggregations: self.aggregations.clone(),
            window_months: self.window_months,
            rel_diff_mode: self.rel_diff_mode,
            congress_reset: self.congress_reset,
            bin_width: 0.05,
            centrality: CentralityOptions {
                distance: self.closeness_distance,
                ..CentralityOptions::default()
            },
            keep_series: self.export_series,
            keep_tensors: self.dump_tensors,
        }
    }

    /// Canonical text of the analytic settings, hashed into report footers.
    /// Paths are excluded so equal analyses match wherever files live.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "chamber={}", self.chamber);
        let _ = writeln!(
            out,
            "half_lives={}",
            self.half_lives
                .iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(out, "window_months={}", self.window_months);
        let _ = writeln!(
            out,
            "measures={}",
            self.measures
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(
            out,
            "aggregations={}",
            self.aggregations
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(
            out,
            "rel_diff_mode={}",
            match self.rel_diff_mode {
                RelDiffMode::WindowAveraged => "window_averaged",
                RelDiffMode::Pooled => "pooled",
            }
        );
        let _ = writeln!(
            out,
            "closeness_distance={}",
            match self.closeness_distance {
                ClosenessDistance::Reciprocal => "reciprocal",
                ClosenessDistance::Hops => "hops",
            }
        );
        let _ = writeln!(out, "congress_reset={}", self.congress_reset);
        out
    }
}

/// Key = value pairs from a config file, with normalized keys.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "bills_path",
    "roster_path",
    "alias_path",
    "output_dir",
    "chamber",
    "half_lives",
    "window_months",
    "measures",
    "aggregations",
    "rel_diff_mode",
    "closeness_distance",
    "congress_reset",
    "plots",
    "export_series",
    "export_bill_scores",
    "dump_tensors",
    "seed",
    "n_legislators",
    "party_split",
    "n_months",
    "bills_per_month",
    "cosponsors_min",
    "cosponsors_max",
    "base_pass_prob",
    "influence_boost",
    "elite_set_size",
    "elite_weight",
];

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "config file line {}: expected `key = value`, got {raw:?}",
                    idx + 1
                )));
            };
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "config file line {}: unknown key {key:?}",
                    idx + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::Config(format!("config key {key}: {e}"))),
        }
    }

    fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|item| {
                    item.trim()
                        .parse::<T>()
                        .map_err(|e| Error::Config(format!("config key {key}: {e}")))
                })
                .collect::<Result<Vec<T>>>()
                .map(Some),
        }
    }
}

/// Layer precedence onto one field: flag, then file, then default.
macro_rules! resolve_field {
    ($target:expr, $flag:expr, $file:expr) => {
        if let Some(v) = $flag.clone() {
            $target = v;
        } else if let Some(v) = $file? {
            $target = v;
        }
    };
}

/// Optional flags shared by the subcommands; `None` means "not given".
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonFlags {
    /// Flat key = value config file; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Line-delimited bill records (one JSON object per line).
    #[arg(long)]
    pub bills_path: Option<PathBuf>,

    /// Roster CSV (canonical_id,congress,chamber,party).
    #[arg(long)]
    pub roster_path: Option<PathBuf>,

    /// Alias-map CSV (alias_id,canonical_id).
    #[arg(long)]
    pub alias_path: Option<PathBuf>,

    /// Directory for reports and generated files [default: out].
    #[arg(long)]
    pub output_dir: Option<PathBuf>,

    /// Chamber to analyze [default: House].
    #[arg(long)]
    pub chamber: Option<Chamber>,

    /// Decay half-lives in months [default: 6,12,24].
    #[arg(long, value_delimiter = ',')]
    pub half_lives: Option<Vec<f64>>,

    /// Window width in months [default: 4].
    #[arg(long)]
    pub window_months: Option<u32>,

    /// Measures to compute [default: influence,eigenvector,closeness,strength].
    #[arg(long, value_delimiter = ',')]
    pub measures: Option<Vec<Measure>>,

    /// Bill-level aggregations [default: mean,max].
    #[arg(long, value_delimiter = ',')]
    pub aggregations: Option<Vec<Aggregation>>,

    /// Overall rel-diff mode: window_averaged or pooled [default: window_averaged].
    #[arg(long)]
    pub rel_diff_mode: Option<RelDiffMode>,

    /// Shortest-path lengths: reciprocal or hops [default: reciprocal].
    #[arg(long)]
    pub closeness_distance: Option<ClosenessDistance>,

    /// Reset decayed history at each new Congress [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub congress_reset: Option<bool>,

    /// Emit SVG plots alongside the tables [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub plots: Option<bool>,

    /// Export per-legislator influence/centrality series [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub export_series: Option<bool>,

    /// Export per-bill score tables [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub export_bill_scores: Option<bool>,

    /// Dump decayed tensors as (t,i,j,weight) tables [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub dump_tensors: Option<bool>,
}

/// Generator flags; `None` means "not given".
#[derive(Debug, Clone, Default, clap::Args)]
pub struct SynthFlags {
    /// Generator seed [default: 42].
    #[arg(long)]
    pub seed: Option<u64>,

    /// Number of legislators [default: 50].
    #[arg(long)]
    pub n_legislators: Option<u32>,

    /// Fraction of Democrats [default: 0.5].
    #[arg(long)]
    pub party_split: Option<f64>,

    /// Months in the span [default: 60].
    #[arg(long)]
    pub n_months: Option<u32>,

    /// Bills introduced per month [default: 30].
    #[arg(long)]
    pub bills_per_month: Option<u32>,

    /// Smallest participant set, sponsor included [default: 3].
    #[arg(long)]
    pub cosponsors_min: Option<u32>,

    /// Largest participant set [default: 10].
    #[arg(long)]
    pub cosponsors_max: Option<u32>,

    /// Baseline passage probability [default: 0.1].
    #[arg(long)]
    pub base_pass_prob: Option<f64>,

    /// Extra passage probability when an elite participates [default: 0.3].
    #[arg(long)]
    pub influence_boost: Option<f64>,

    /// Number of planted elite legislators [default: 5].
    #[arg(long)]
    pub elite_set_size: Option<u32>,

    /// Sampling over-representation of elites [default: 3].
    #[arg(long)]
    pub elite_weight: Option<f64>,
}

pub fn resolve(common: &CommonFlags, synth: Option<&SynthFlags>) -> Result<RunConfig> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = RunConfig::default();

    resolve_field!(
        cfg.bills_path,
        common.bills_path.clone().map(Some),
        file.get::<PathBuf>("bills_path").map(|v| v.map(Some))
    );
    resolve_field!(
        cfg.roster_path,
        common.roster_path.clone().map(Some),
        file.get::<PathBuf>("roster_path").map(|v| v.map(Some))
    );
    resolve_field!(
        cfg.alias_path,
        common.alias_path.clone().map(Some),
        file.get::<PathBuf>("alias_path").map(|v| v.map(Some))
    );
    resolve_field!(cfg.output_dir, common.output_dir, file.get("output_dir"));
    resolve_field!(cfg.chamber, common.chamber, file.get("chamber"));
    resolve_field!(
        cfg.half_lives,
        common.half_lives,
        file.get_list("half_lives")
    );
    resolve_field!(
        cfg.window_months,
        common.window_months,
        file.get("window_months")
    );
    resolve_field!(cfg.measures, common.measures, file.get_list("measures"));
    resolve_field!(
        cfg.aggregations,
        common.aggregations,
        file.get_list("aggregations")
    );
    resolve_field!(
        cfg.rel_diff_mode,
        common.rel_diff_mode,
        file.get("rel_diff_mode")
    );
    resolve_field!(
        cfg.closeness_distance,
        common.closeness_distance,
        file.get("closeness_distance")
    );
    resolve_field!(
        cfg.congress_reset,
        common.congress_reset,
        file.get("congress_reset")
    );
    resolve_field!(cfg.plots, common.plots, file.get("plots"));
    resolve_field!(
        cfg.export_series,
        common.export_series,
        file.get("export_series")
    );
    resolve_field!(
        cfg.export_bill_scores,
        common.export_bill_scores,
        file.get("export_bill_scores")
    );
    resolve_field!(
        cfg.dump_tensors,
        common.dump_tensors,
        file.get("dump_tensors")
    );

    if let Some(synth) = synth {
        resolve_field!(cfg.synth.seed, synth.seed, file.get("seed"));
        resolve_field!(
            cfg.synth.n_legislators,
            synth.n_legislators,
            file.get("n_legislators")
        );
        resolve_field!(
            cfg.synth.party_split,
            synth.party_split,
            file.get("party_split")
        );
        resolve_field!(cfg.synth.n_months, synth.n_months, file.get("n_months"));
        resolve_field!(
            cfg.synth.bills_per_month,
            synth.bills_per_month,
            file.get("bills_per_month")
        );
        resolve_field!(
            cfg.synth.cosponsors_min,
            synth.cosponsors_min,
            file.get("cosponsors_min")
        );
        resolve_field!(
            cfg.synth.cosponsors_max,
            synth.cosponsors_max,
            file.get("cosponsors_max")
        );
        resolve_field!(
            cfg.synth.base_pass_prob,
            synth.base_pass_prob,
            file.get("base_pass_prob")
        );
        resolve_field!(
            cfg.synth.influence_boost,
            synth.influence_boost,
            file.get("influence_boost")
        );
        resolve_field!(
            cfg.synth.elite_set_size,
            synth.elite_set_size,
            file.get("elite_set_size")
        );
        resolve_field!(
            cfg.synth.elite_weight,
            synth.elite_weight,
            file.get("elite_weight")
        );
    }

    if cfg.half_lives.is_empty() || cfg.half_lives.iter().any(|&h| !h.is_finite() || h <= 0.0) {
        return Err(Error::Config(
            "half_lives must be a nonempty list of positive numbers".into(),
        ));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documentation() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.half_lives, vec![6.0, 12.0, 24.0]);
        assert_eq!(cfg.window_months, 4);
        assert_eq!(cfg.measures.len(), 4);
        assert_eq!(cfg.aggregations.len(), 2);
        assert_eq!(cfg.chamber, Chamber::House);
        assert!(!cfg.congress_reset);
    }

    #[test]
    fn file_values_override_defaults_and_flags_override_file() {
        let file = FileConfig::parse("window-months = 6\nhalf_lives = 3, 9\n").unwrap();
        assert_eq!(file.get::<u32>("window_months").unwrap(), Some(6));
        let common = CommonFlags {
            config: None,
            window_months: Some(2),
            half_lives: None,
            ..CommonFlags::default()
        };
        let mut cfg = RunConfig::default();
        let apply = || -> Result<RunConfig> {
            resolve_field!(
                cfg.window_months,
                common.window_months,
                file.get("window_months")
            );
            resolve_field!(
                cfg.half_lives,
                common.half_lives,
                file.get_list("half_lives")
            );
            Ok(cfg)
        };
        let cfg = apply().unwrap();
        assert_eq!(cfg.window_months, 2, "flag wins");
        assert_eq!(cfg.half_lives, vec![3.0, 9.0], "file beats default");
    }

    #[test]
    fn unknown_config_key_is_rejected() {
        assert!(FileConfig::parse("no_such_key = 1\n").is_err());
        assert!(FileConfig::parse("not a pair\n").is_err());
        assert!(FileConfig::parse("# comment\n\nseed = 9\n").is_ok());
    }

    #[test]
    fn canonical_text_is_stable() {
        let a = RunConfig::default().canonical_text();
        let b = RunConfig::default().canonical_text();
        assert_eq!(a, b);
        assert!(a.contains("half_lives=6,12,24"));
        assert!(!a.contains("output"), "paths are excluded");
    }
}
