//! Temporal cosponsorship-network analysis for legislative bills.
//!
//! The pipeline ingests bill and roster records, builds monthly legislator
//! co-occurrence tensors with exponential decay, derives a party-normalized
//! influence score per legislator per month, computes three network
//! centrality baselines (eigenvector, closeness, strength) over the
//! pass-ratio network, aggregates scores to the bill level, and measures
//! how well each score separates bills that pass the House from bills that
//! fail, across nonoverlapping time windows and a sweep of decay
//! half-lives.

pub mod analysis;
pub mod centrality;
pub mod error;
pub mod influence;
pub mod ingest;
pub mod intern;
pub mod report;
pub mod series;
pub mod synthgen;
pub mod tempnet;
pub mod time;

pub use analysis::{
    half_life_sweep, relative_difference_distribution, window_stats, Aggregation, ConfigResult,
    Histogram, Measure, RelDiffMode, SweepConfig, SweepResult, WindowStat,
};
pub use centrality::{
    centrality_bill_scores, centrality_series, closeness, eigenvector, largest_component,
    ratio_network, strength, CentralityOptions, CentralitySeries, ClosenessDistance, LccView,
    RatioNetwork,
};
pub use error::{Error, Result};
pub use influence::{
    bill_scores, combine, party_influence, BillScore, InfluenceSeries, PartyInfluence, ScoredBills,
};
pub use ingest::{
    filter_bills, parse_bills, reconcile_ids, summarize, BillRecord, BillType, Chamber,
    LegislatorRoster, Party, RosterSources, SummaryRow,
};
pub use intern::{Interner, LegId};
pub use series::ScoreSeries;
pub use synthgen::{generate, CounterRng, SynthConfig};
pub use tempnet::{
    build_monthly, decay_accumulate, decay_accumulate_with_resets, CoTensors, DecayRate,
    DecayedTensor, MonthlyCooccurrence, PairKey, PairWeights,
};
pub use time::{MonthIndex, MonthRange, YearMonth};
