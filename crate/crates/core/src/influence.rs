//! Party-normalized legislator influence and bill-level aggregation.
//!
//! For legislator i at month t, the influence with each party is the ratio
//! of decayed passed-bill weight to decayed total-bill weight summed over
//! that party's members, divided by the party's House seat count:
//!
//! ```text
//! P[t,i]_party = (1 / N_party) * sum_p C_pass[t,i,p] / sum_p C_tot[t,i,p]
//! I[t,i]       = P[t,i]_Dems + P[t,i]_Reps
//! ```
//!
//! A zero denominator (no shared history with a party) yields P = 0.
//! Members with party `Other` are excluded from the column sums and from
//! both seat counts; their own scores are still computed from their
//! Democrat and Republican relationships.

use crate::error::{Error, Result};
use crate::ingest::{BillRecord, Chamber, LegislatorRoster, Party};
use crate::intern::LegId;
use crate::series::ScoreSeries;
use crate::tempnet::DecayedTensor;
use crate::time::MonthIndex;

/// Per-party influence components for one legislator at one month.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartyEntry {
    pub leg: LegId,
    pub p_dems: f64,
    pub p_reps: f64,
}

/// Party-influence series plus the per-month seat counts that normalize it.
#[derive(Debug, Clone)]
pub struct PartyInfluence {
    pub tensor_range: crate::time::MonthRange,
    pub interner: crate::intern::Interner,
    /// One vec per month, sorted by `LegId`; only legislators with shared
    /// history appear.
    months: Vec<Vec<PartyEntry>>,
    pub n_dems: Vec<u32>,
    pub n_reps: Vec<u32>,
}

impl PartyInfluence {
    pub fn month_entries(&self, t: MonthIndex) -> &[PartyEntry] {
        &self.months[t.slot()]
    }

    pub fn get(&self, t: MonthIndex, leg: LegId) -> Option<PartyEntry> {
        let month = &self.months[t.slot()];
        month
            .binary_search_by_key(&leg, |e| e.leg)
            .ok()
            .map(|pos| month[pos])
    }
}

/// Combined influence series I = P_Dems + P_Reps.
pub type InfluenceSeries = ScoreSeries;

/// Compute P_Dems / P_Reps for every legislator with shared history at each
/// month. `congress_by_month` maps month slots to Congress numbers for
/// roster lookups; a month whose Congress has no roster coverage is a
/// configuration error.
pub fn party_influence(
    tensor: &DecayedTensor,
    roster: &LegislatorRoster,
    congress_by_month: &[u16],
    chamber: Chamber,
) -> Result<PartyInfluence> {
    if congress_by_month.len() != tensor.range.horizon as usize {
        return Err(Error::Config(format!(
            "congress map covers {} months, tensor has {}",
            congress_by_month.len(),
            tensor.range.horizon
        )));
    }
    let n_nodes = tensor.interner.len();

    // Party of each interned node per congress, restricted to the analysis
    // chamber. Congress numbers repeat across months, so cache per congress.
    let mut congresses: Vec<u16> = congress_by_month.to_vec();
    congresses.sort_unstable();
    congresses.dedup();
    let mut party_tables: std::collections::HashMap<u16, Vec<Option<Party>>> =
        std::collections::HashMap::new();
    for &congress in &congresses {
        if !roster.has_congress(congress) {
            return Err(Error::Config(format!(
                "no roster coverage for congress {congress}"
            )));
        }
        let table: Vec<Option<Party>> = tensor
            .interner
            .ids()
            .map(|id| {
                let name = tensor.interner.name(id);
                match roster.chamber_of(name, congress) {
                    Some(c) if c == chamber => roster.party_of(name, congress),
                    _ => None,
                }
            })
            .collect();
        party_tables.insert(congress, table);
    }

    let mut months = Vec::with_capacity(congress_by_month.len());
    let mut n_dems_out = Vec::with_capacity(congress_by_month.len());
    let mut n_reps_out = Vec::with_capacity(congress_by_month.len());
    // Per node: [pass_d, tot_d, pass_r, tot_r].
    let mut sums = vec![[0.0f64; 4]; n_nodes];

    for (slot, &congress) in congress_by_month.iter().enumerate() {
        let table = &party_tables[&congress];
        let (n_dems, n_reps) = roster.party_counts(congress, chamber);
        n_dems_out.push(n_dems);
        n_reps_out.push(n_reps);

        for s in sums.iter_mut() {
            *s = [0.0; 4];
        }
        let month = tensor.month(MonthIndex(slot as u32 + 1));
        for (key, pass, tot) in month.iter() {
            let (a, b) = key.nodes();
            if let Some(p) = table[b.idx()] {
                accumulate(&mut sums[a.idx()], p, pass, tot);
            }
            if let Some(p) = table[a.idx()] {
                accumulate(&mut sums[b.idx()], p, pass, tot);
            }
        }

        let mut entries = Vec::new();
        for (idx, s) in sums.iter().enumerate() {
            let [pass_d, tot_d, pass_r, tot_r] = *s;
            if tot_d <= 0.0 && tot_r <= 0.0 {
                continue;
            }
            let p_dems = party_ratio(pass_d, tot_d, n_dems);
            let p_reps = party_ratio(pass_r, tot_r, n_reps);
            entries.push(PartyEntry {
                leg: LegId(idx as u32),
                p_dems,
                p_reps,
            });
        }
        months.push(entries);
    }

    Ok(PartyInfluence {
        tensor_range: tensor.range,
        interner: tensor.interner.clone(),
        months,
        n_dems: n_dems_out,
        n_reps: n_reps_out,
    })
}

fn accumulate(sums: &mut [f64; 4], party: Party, pass: f64, tot: f64) {
    match party {
        Party::Democrat => {
            sums[0] += pass;
            sums[1] += tot;
        }
        Party::Republican => {
            sums[2] += pass;
            sums[3] += tot;
        }
        Party::Other => {}
    }
}

fn party_ratio(pass: f64, tot: f64, n_party: u32) -> f64 {
    if tot <= 0.0 || n_party == 0 {
        0.0
    } else {
        (pass / tot) / n_party as f64
    }
}

/// Sum the party components into the combined influence score I.
pub fn combine(party: &PartyInfluence) -> InfluenceSeries {
    let months = party
        .months
        .iter()
        .map(|entries| {
            entries
                .iter()
                .map(|e| (e.leg, e.p_dems + e.p_reps))
                .collect()
        })
        .collect();
    ScoreSeries::new(party.tensor_range, party.interner.clone(), months)
}

/// Mean and max participant score for one bill at its introduction month.
#[derive(Debug, Clone, PartialEq)]
pub struct BillScore {
    pub bill_id: String,
    pub t: MonthIndex,
    pub score_mean: f64,
    pub score_max: f64,
    pub n_cosponsors: usize,
    pub passed_house: bool,
}

#[derive(Debug, Default)]
pub struct ScoredBills {
    pub scores: Vec<BillScore>,
    /// Bills skipped because their participant set was empty.
    pub skipped_empty: usize,
}

/// Aggregate a score series to the bill level. Participants missing from
/// the series (including legislators outside a month's largest component)
/// contribute 0.
pub fn bill_scores(bills: &[BillRecord], series: &ScoreSeries) -> Result<ScoredBills> {
    let mut out = ScoredBills::default();
    for bill in bills {
        let t = series.range.index_of_date(bill.introduced_date)?;
        let participants = bill.participants();
        if participants.is_empty() {
            out.skipped_empty += 1;
            continue;
        }
        let mut sum = 0.0;
        let mut max = f64::NEG_INFINITY;
        for name in &participants {
            let v = series.get_by_name(t, name).unwrap_or(0.0);
            sum += v;
            max = max.max(v);
        }
        out.scores.push(BillScore {
            bill_id: bill.bill_id.clone(),
            t,
            score_mean: sum / participants.len() as f64,
            score_max: max,
            n_cosponsors: participants.len(),
            passed_house: bill.passed_house,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::fixtures::bill;
    use crate::ingest::RosterRecord;
    use crate::intern::Interner;
    use crate::tempnet::{build_monthly, DecayRate};
    use crate::time::{MonthRange, YearMonth};

    fn roster(entries: &[(&str, Party)], congress: u16) -> LegislatorRoster {
        let records: Vec<RosterRecord> = entries
            .iter()
            .map(|&(id, party)| RosterRecord {
                canonical_id: id.to_string(),
                congress,
                chamber: Chamber::House,
                party,
            })
            .collect();
        LegislatorRoster::from_records(&records).unwrap()
    }

    fn tensor_for(bills: &[BillRecord], months: u32) -> DecayedTensor {
        let range = MonthRange::new(YearMonth::new(2009, 1), months);
        let co = build_monthly(bills, &range).unwrap();
        DecayedTensor::build(&co, DecayRate::from_half_life(6.0).unwrap(), &[]).unwrap()
    }

    #[test]
    fn unit_ratio_with_single_democrat() {
        // One Democrat d, one Republican r. Legislator i shares one passed
        // bill (of one total) with d and nothing with r.
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "i", &["d"], true)];
        let roster = roster(
            &[
                ("i", Party::Other),
                ("d", Party::Democrat),
                ("r", Party::Republican),
            ],
            111,
        );
        let tensor = tensor_for(&bills, 1);
        let p = party_influence(&tensor, &roster, &[111], Chamber::House).unwrap();
        let i = tensor.interner.get("i").unwrap();
        let entry = p.get(MonthIndex(1), i).unwrap();
        assert!(
            (entry.p_dems - 1.0).abs() < 1e-12,
            "1/1 ratio over N_dems=1"
        );
        assert_eq!(entry.p_reps, 0.0);
    }

    #[test]
    fn half_passed_ratio() {
        let bills = vec![
            bill("hr1", 111, (2009, 1, 5), "i", &["d"], true),
            bill("hr2", 111, (2009, 1, 6), "i", &["d"], false),
        ];
        let roster = roster(
            &[
                ("i", Party::Other),
                ("d", Party::Democrat),
                ("r", Party::Republican),
            ],
            111,
        );
        let tensor = tensor_for(&bills, 1);
        let p = party_influence(&tensor, &roster, &[111], Chamber::House).unwrap();
        let i = tensor.interner.get("i").unwrap();
        let entry = p.get(MonthIndex(1), i).unwrap();
        assert!((entry.p_dems - 0.5).abs() < 1e-12);
    }

    #[test]
    fn no_history_means_no_entry_and_zero_score() {
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "a", &["b"], true)];
        let roster = roster(
            &[
                ("a", Party::Democrat),
                ("b", Party::Democrat),
                ("loner", Party::Republican),
            ],
            111,
        );
        let tensor = tensor_for(&bills, 1);
        let p = party_influence(&tensor, &roster, &[111], Chamber::House).unwrap();
        let inf = combine(&p);
        assert_eq!(inf.get_by_name(MonthIndex(1), "loner"), None);
    }

    #[test]
    fn combine_adds_components() {
        let range = MonthRange::new(YearMonth::new(2009, 1), 1);
        let mut interner = Interner::new();
        let x = interner.intern("x");
        let p = PartyInfluence {
            tensor_range: range,
            interner,
            months: vec![vec![PartyEntry {
                leg: x,
                p_dems: 0.3,
                p_reps: 0.2,
            }]],
            n_dems: vec![10],
            n_reps: vec![10],
        };
        let inf = combine(&p);
        assert!((inf.get(MonthIndex(1), x).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn other_party_members_are_excluded_from_columns_and_counts() {
        // i shares a passed bill with o (party Other): no influence accrues.
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "i", &["o"], true)];
        let roster = roster(
            &[
                ("i", Party::Democrat),
                ("o", Party::Other),
                ("d", Party::Democrat),
            ],
            111,
        );
        let tensor = tensor_for(&bills, 1);
        let p = party_influence(&tensor, &roster, &[111], Chamber::House).unwrap();
        let i = tensor.interner.get("i").unwrap();
        assert!(p.get(MonthIndex(1), i).is_none());
        // o's own score still accrues from its Democrat relationship with i.
        let o = tensor.interner.get("o").unwrap();
        let entry = p.get(MonthIndex(1), o).unwrap();
        assert!(
            (entry.p_dems - 0.5).abs() < 1e-12,
            "1/1 ratio over N_dems=2"
        );
    }

    #[test]
    fn missing_congress_coverage_is_config_error() {
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "a", &["b"], true)];
        let roster = roster(&[("a", Party::Democrat), ("b", Party::Democrat)], 112);
        let tensor = tensor_for(&bills, 1);
        assert!(party_influence(&tensor, &roster, &[111], Chamber::House).is_err());
    }

    #[test]
    fn bill_scores_mean_and_max() {
        let range = MonthRange::new(YearMonth::new(2009, 1), 1);
        let mut interner = Interner::new();
        let a = interner.intern("a");
        let b = interner.intern("b");
        interner.intern("c");
        let series = ScoreSeries::new(range, interner, vec![vec![(a, 0.2), (b, 0.4)]]);
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "a", &["b"], true)];
        let scored = bill_scores(&bills, &series).unwrap();
        assert_eq!(scored.scores.len(), 1);
        let s = &scored.scores[0];
        assert!((s.score_mean - 0.3).abs() < 1e-15);
        assert!((s.score_max - 0.4).abs() < 1e-15);
        assert_eq!(s.n_cosponsors, 2);
    }

    #[test]
    fn missing_participants_score_zero() {
        let range = MonthRange::new(YearMonth::new(2009, 1), 1);
        let mut interner = Interner::new();
        let c = interner.intern("c");
        let series = ScoreSeries::new(range, interner, vec![vec![(c, 0.9)]]);
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "a", &["b", "c"], false)];
        let scored = bill_scores(&bills, &series).unwrap();
        let s = &scored.scores[0];
        assert!((s.score_mean - 0.3).abs() < 1e-15);
        assert!((s.score_max - 0.9).abs() < 1e-15);
    }

    #[test]
    fn single_participant_mean_equals_max() {
        let range = MonthRange::new(YearMonth::new(2009, 1), 1);
        let mut interner = Interner::new();
        let a = interner.intern("a");
        let series = ScoreSeries::new(range, interner, vec![vec![(a, 0.7)]]);
        let bills = vec![bill("hr1", 111, (2009, 1, 5), "a", &[], true)];
        let scored = bill_scores(&bills, &series).unwrap();
        assert_eq!(scored.scores[0].score_mean, scored.scores[0].score_max);
    }

    #[test]
    fn empty_participant_set_is_skipped() {
        let range = MonthRange::new(YearMonth::new(2009, 1), 1);
        let series = ScoreSeries::empty(range, Interner::new());
        let mut b = bill("hr1", 111, (2009, 1, 5), "", &[], true);
        b.sponsor_id = String::new();
        let scored = bill_scores(&[b], &series).unwrap();
        assert!(scored.scores.is_empty());
        assert_eq!(scored.skipped_empty, 1);
    }

    #[test]
    fn all_passed_history_pins_ratio_at_exactly_one_over_n() {
        // Every shared bill of i passes; each nonzero-denominator party
        // ratio must equal 1/N_party with no rounding slack.
        let bills = vec![
            bill("hr1", 111, (2009, 1, 5), "i", &["d1"], true),
            bill("hr2", 111, (2009, 2, 5), "i", &["d2", "r1"], true),
            bill("hr3", 111, (2009, 3, 5), "i", &["d1", "d2"], true),
        ];
        let roster = roster(
            &[
                ("i", Party::Other),
                ("d1", Party::Democrat),
                ("d2", Party::Democrat),
                ("r1", Party::Republican),
            ],
            111,
        );
        let tensor = tensor_for(&bills, 3);
        let p = party_influence(&tensor, &roster, &[111, 111, 111], Chamber::House).unwrap();
        let i = tensor.interner.get("i").unwrap();
        let entry = p.get(MonthIndex(3), i).unwrap();
        assert_eq!(entry.p_dems, 1.0 / 2.0);
        assert_eq!(entry.p_reps, 1.0 / 1.0);
        // Maximal components attain the combined upper bound exactly.
        let inf = combine(&p);
        assert_eq!(inf.get(MonthIndex(3), i), Some(1.0 / 2.0 + 1.0 / 1.0));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        // Tiny random pipelines: a handful of bills over a handful of
        // legislators and months.
        fn arb_instance() -> impl Strategy<Value = (u32, Vec<(u32, Vec<u8>, bool)>)> {
            (2..=6u32, 1..=6u32).prop_flat_map(|(n_legs, months)| {
                let bills = proptest::collection::vec(
                    (
                        1..=months,
                        proptest::collection::btree_set(
                            0..n_legs as u8,
                            2..=n_legs.min(4) as usize,
                        ),
                        proptest::bool::ANY,
                    ),
                    1..=8,
                );
                (Just(n_legs), bills).prop_map(|(n, bills)| {
                    (
                        n,
                        bills
                            .into_iter()
                            .map(|(t, set, p)| (t, set.into_iter().collect(), p))
                            .collect(),
                    )
                })
            })
        }

        fn run_pipeline(
            n_legs: u32,
            months: u32,
            bills: &[(u32, Vec<u8>, bool)],
            name_of: &dyn Fn(u8) -> String,
        ) -> (InfluenceSeries, LegislatorRoster) {
            let records: Vec<crate::ingest::RosterRecord> = (0..n_legs as u8)
                .map(|i| crate::ingest::RosterRecord {
                    canonical_id: name_of(i),
                    congress: 111,
                    chamber: Chamber::House,
                    party: if i % 2 == 0 {
                        Party::Democrat
                    } else {
                        Party::Republican
                    },
                })
                .collect();
            let roster = LegislatorRoster::from_records(&records).unwrap();
            let bill_records: Vec<BillRecord> = bills
                .iter()
                .enumerate()
                .map(|(idx, (t, set, passed))| {
                    let ym = YearMonth::new(2009, 1).plus_months(*t as i64 - 1);
                    let mut b = bill(
                        &format!("b{idx}"),
                        111,
                        (ym.year, ym.month as u32, 5),
                        &name_of(set[0]),
                        &[],
                        *passed,
                    );
                    b.cosponsor_ids = set[1..].iter().map(|&i| name_of(i)).collect();
                    b.cosponsor_ids.sort();
                    b
                })
                .collect();
            let range = MonthRange::new(YearMonth::new(2009, 1), months);
            let co = build_monthly(&bill_records, &range).unwrap();
            let tensor =
                DecayedTensor::build(&co, DecayRate::from_half_life(6.0).unwrap(), &[]).unwrap();
            let congress_map = vec![111u16; months as usize];
            let p = party_influence(&tensor, &roster, &congress_map, Chamber::House).unwrap();
            (combine(&p), roster)
        }

        proptest! {
            #[test]
            fn relabeling_permutes_influence_consistently((n_legs, bills) in arb_instance()) {
                let months = 6;
                // Identity labels vs reversed labels; parties follow the
                // physical legislator, not the label.
                let forward = |i: u8| format!("p{i}");
                let backward = move |i: u8| format!("p{}", n_legs as u8 - 1 - i);
                let relabeled: Vec<(u32, Vec<u8>, bool)> = bills
                    .iter()
                    .map(|(t, set, p)| {
                        let mut set: Vec<u8> =
                            set.iter().map(|&i| n_legs as u8 - 1 - i).collect();
                        set.sort_unstable();
                        (*t, set, *p)
                    })
                    .collect();
                let (series_a, _) = run_pipeline(n_legs, months, &bills, &forward);
                // In the relabeled run legislator `n-1-i` plays i's role, so
                // give it i's party by flipping the parity convention.
                let records: Vec<crate::ingest::RosterRecord> = (0..n_legs as u8)
                    .map(|i| crate::ingest::RosterRecord {
                        canonical_id: forward(i),
                        congress: 111,
                        chamber: Chamber::House,
                        party: if (n_legs as u8 - 1 - i).is_multiple_of(2) {
                            Party::Democrat
                        } else {
                            Party::Republican
                        },
                    })
                    .collect();
                let roster_b = LegislatorRoster::from_records(&records).unwrap();
                let bill_records: Vec<BillRecord> = relabeled
                    .iter()
                    .enumerate()
                    .map(|(idx, (t, set, passed))| {
                        let ym = YearMonth::new(2009, 1).plus_months(*t as i64 - 1);
                        let mut b = bill(
                            &format!("b{idx}"),
                            111,
                            (ym.year, ym.month as u32, 5),
                            &forward(set[0]),
                            &[],
                            *passed,
                        );
                        b.cosponsor_ids = set[1..].iter().map(|&i| forward(i)).collect();
                        b.cosponsor_ids.sort();
                        b
                    })
                    .collect();
                let range = MonthRange::new(YearMonth::new(2009, 1), months);
                let co = build_monthly(&bill_records, &range).unwrap();
                let tensor = DecayedTensor::build(
                    &co,
                    DecayRate::from_half_life(6.0).unwrap(),
                    &[],
                )
                .unwrap();
                let p = party_influence(&tensor, &roster_b, &vec![111; months as usize], Chamber::House).unwrap();
                let series_b = combine(&p);

                for t in 1..=months {
                    for i in 0..n_legs as u8 {
                        let a = series_a
                            .get_by_name(MonthIndex(t), &forward(i))
                            .unwrap_or(0.0);
                        let b = series_b
                            .get_by_name(MonthIndex(t), &backward(i))
                            .unwrap_or(0.0);
                        prop_assert!(
                            (a - b).abs() < 1e-12,
                            "t={t} leg={i}: {a} vs {b}"
                        );
                    }
                }
            }

            #[test]
            fn bill_score_max_dominates_mean(
                values in proptest::collection::vec(0.0..1.0f64, 1..12),
            ) {
                let range = MonthRange::new(YearMonth::new(2009, 1), 1);
                let mut interner = Interner::new();
                let entries: Vec<(crate::intern::LegId, f64)> = values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (interner.intern(&format!("m{i:02}")), v))
                    .collect();
                let series = ScoreSeries::new(range, interner, vec![entries]);
                let names: Vec<String> = (0..values.len()).map(|i| format!("m{i:02}")).collect();
                let mut b = bill("hr1", 111, (2009, 1, 5), &names[0], &[], false);
                b.cosponsor_ids = names[1..].to_vec();
                let scored = bill_scores(&[b], &series).unwrap();
                let s = &scored.scores[0];
                prop_assert!(s.score_max >= s.score_mean);
                let all_equal = values.iter().all(|&v| v == values[0]);
                let gap = s.score_max - s.score_mean;
                if all_equal {
                    prop_assert!(gap.abs() < 1e-15);
                } else {
                    prop_assert!(gap > 0.0, "distinct values must separate max from mean");
                }
            }
        }
    }
}
