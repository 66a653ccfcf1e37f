//! Per-Congress summary statistics over the filtered bill set.

use std::collections::HashMap;

use super::BillRecord;

/// One row of the summary table. "Cosponsor" is counted in the inclusive
/// sense throughout: the sponsor is a member of every bill's participant
/// set.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub congress: u16,
    pub n_bills: usize,
    pub pct_passed_house: f64,
    pub pct_enacted: f64,
    pub mean_cosponsors_per_bill: f64,
    pub max_cosponsors_per_bill: usize,
    pub mean_bills_per_cosponsor: f64,
    pub max_bills_per_cosponsor: usize,
}

/// Summarize bills per Congress: pass/enactment percentages, cosponsors per
/// bill, and bills per cosponsor. Expects input already filtered to one
/// chamber. Empty input yields an empty table.
pub fn summarize(bills: &[BillRecord]) -> Vec<SummaryRow> {
    let mut congresses: Vec<u16> = bills.iter().map(|b| b.congress).collect();
    congresses.sort_unstable();
    congresses.dedup();

    congresses
        .into_iter()
        .map(|congress| {
            let in_congress: Vec<&BillRecord> =
                bills.iter().filter(|b| b.congress == congress).collect();
            let n = in_congress.len();
            let passed = in_congress.iter().filter(|b| b.passed_house).count();
            let enacted = in_congress.iter().filter(|b| b.enacted).count();

            let mut participant_total = 0usize;
            let mut participant_max = 0usize;
            let mut bills_per: HashMap<&str, usize> = HashMap::new();
            for bill in &in_congress {
                let participants = bill.participants();
                participant_total += participants.len();
                participant_max = participant_max.max(participants.len());
                for p in participants {
                    *bills_per.entry(p).or_default() += 1;
                }
            }
            let n_legislators = bills_per.len();
            let bills_total: usize = bills_per.values().sum();
            let bills_max = bills_per.values().copied().max().unwrap_or(0);

            SummaryRow {
                congress,
                n_bills: n,
                pct_passed_house: 100.0 * passed as f64 / n as f64,
                pct_enacted: 100.0 * enacted as f64 / n as f64,
                mean_cosponsors_per_bill: participant_total as f64 / n as f64,
                max_cosponsors_per_bill: participant_max,
                mean_bills_per_cosponsor: if n_legislators == 0 {
                    0.0
                } else {
                    bills_total as f64 / n_legislators as f64
                },
                max_bills_per_cosponsor: bills_max,
            }
        })
        .collect()
}
