//! Raw record ingestion: bill parsing, chamber/type filtering, legislator
//! identity reconciliation, and per-Congress summary statistics.

mod parse;
mod roster;
mod summary;

pub use parse::{parse_bills, parse_bills_path, write_bills_jsonl, ParseOutcome, RecordError};
pub use roster::{
    parse_alias_csv, parse_alias_path, parse_roster_csv, parse_roster_path, reconcile_ids,
    write_alias_csv, write_roster_csv, AliasRecord, LegislatorRoster, ReconcileOutcome,
    RosterRecord, RosterSources,
};
pub use summary::{summarize, SummaryRow};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chamber {
    House,
    Senate,
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Chamber {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "House" | "house" => Ok(Chamber::House),
            "Senate" | "senate" => Ok(Chamber::Senate),
            other => Err(format!("unknown chamber: {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BillType {
    Bill,
    SimpleResolution,
    ConcurrentResolution,
    JointResolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    Democrat,
    Republican,
    Other,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Party {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Democrat" | "D" => Ok(Party::Democrat),
            "Republican" | "R" => Ok(Party::Republican),
            "Other" | "I" => Ok(Party::Other),
            other => Err(format!("unknown party: {other:?}")),
        }
    }
}

/// One proposed bill, as parsed from the line-delimited input.
///
/// `cosponsor_ids` is held sorted and deduplicated. The sponsor is merged
/// with the cosponsors into a single undirected participant set downstream;
/// see [`BillRecord::participants`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BillRecord {
    pub bill_id: String,
    pub congress: u16,
    pub chamber: Chamber,
    pub bill_type: BillType,
    pub introduced_date: NaiveDate,
    pub sponsor_id: String,
    pub cosponsor_ids: Vec<String>,
    pub passed_house: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed_house_date: Option<NaiveDate>,
    pub enacted: bool,
}

impl BillRecord {
    /// The bill's participant set: sponsor and cosponsors on equal footing,
    /// deduplicated and sorted. An empty sponsor id (a sponsor dropped during
    /// reconciliation) is excluded.
    pub fn participants(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .cosponsor_ids
            .iter()
            .map(String::as_str)
            .filter(|s| !s.is_empty())
            .collect();
        if !self.sponsor_id.is_empty() {
            out.push(self.sponsor_id.as_str());
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Keep exactly the records with `bill_type = Bill` in the given chamber,
/// preserving input order. Idempotent.
pub fn filter_bills(bills: Vec<BillRecord>, chamber: Chamber) -> Vec<BillRecord> {
    bills
        .into_iter()
        .filter(|b| b.bill_type == BillType::Bill && b.chamber == chamber)
        .collect()
}
