//! Legislator rosters and identity reconciliation.
//!
//! Bills arrive with whatever ids the upstream data carries; the roster
//! fixes a single canonical id per physical person plus their per-Congress
//! chamber and party. An alias map folds alternate ids onto canonical ones.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{BillRecord, Chamber, Party};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosterRecord {
    pub canonical_id: String,
    pub congress: u16,
    pub chamber: Chamber,
    pub party: Party,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasRecord {
    pub alias_id: String,
    pub canonical_id: String,
}

/// Raw roster inputs before reconciliation.
#[derive(Debug, Clone, Default)]
pub struct RosterSources {
    pub entries: Vec<RosterRecord>,
    pub aliases: Vec<AliasRecord>,
}

/// Canonical legislator identities with per-Congress chamber and party.
#[derive(Debug, Clone)]
pub struct LegislatorRoster {
    canonical: Vec<String>,
    index: HashMap<String, u32>,
    entries: HashMap<(u32, u16), (Chamber, Party)>,
}

impl LegislatorRoster {
    pub fn from_records(records: &[RosterRecord]) -> Result<Self> {
        let mut canonical: Vec<String> = records.iter().map(|r| r.canonical_id.clone()).collect();
        canonical.sort_unstable();
        canonical.dedup();
        let index: HashMap<String, u32> = canonical
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let mut entries = HashMap::new();
        for r in records {
            let id = index[&r.canonical_id];
            if entries
                .insert((id, r.congress), (r.chamber, r.party))
                .is_some()
            {
                return Err(Error::Data(format!(
                    "duplicate roster entry for {} in congress {}",
                    r.canonical_id, r.congress
                )));
            }
        }
        Ok(Self {
            canonical,
            index,
            entries,
        })
    }

    pub fn contains(&self, canonical_id: &str) -> bool {
        self.index.contains_key(canonical_id)
    }

    /// Number of distinct canonical legislators.
    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn canonical_ids(&self) -> impl Iterator<Item = &str> {
        self.canonical.iter().map(String::as_str)
    }

    pub fn party_of(&self, canonical_id: &str, congress: u16) -> Option<Party> {
        let id = *self.index.get(canonical_id)?;
        self.entries.get(&(id, congress)).map(|&(_, p)| p)
    }

    pub fn chamber_of(&self, canonical_id: &str, congress: u16) -> Option<Chamber> {
        let id = *self.index.get(canonical_id)?;
        self.entries.get(&(id, congress)).map(|&(c, _)| c)
    }

    pub fn has_congress(&self, congress: u16) -> bool {
        self.entries.keys().any(|&(_, c)| c == congress)
    }

    /// Democrat and Republican seat counts for one chamber of one Congress.
    /// `Other` members are excluded from both counts.
    pub fn party_counts(&self, congress: u16, chamber: Chamber) -> (u32, u32) {
        let mut dems = 0;
        let mut reps = 0;
        for (&(_, c), &(ch, party)) in &self.entries {
            if c != congress || ch != chamber {
                continue;
            }
            match party {
                Party::Democrat => dems += 1,
                Party::Republican => reps += 1,
                Party::Other => {}
            }
        }
        (dems, reps)
    }

    pub fn records(&self) -> Vec<RosterRecord> {
        let mut out: Vec<RosterRecord> = self
            .entries
            .iter()
            .map(|(&(id, congress), &(chamber, party))| RosterRecord {
                canonical_id: self.canonical[id as usize].clone(),
                congress,
                chamber,
                party,
            })
            .collect();
        out.sort_by(|a, b| (&a.canonical_id, a.congress).cmp(&(&b.canonical_id, b.congress)));
        out
    }
}

/// Outcome of identity reconciliation. Unresolvable ids drop the affected
/// participant, never the bill; every drop is counted here.
#[derive(Debug)]
pub struct ReconcileOutcome {
    pub bills: Vec<BillRecord>,
    pub roster: LegislatorRoster,
    /// Unresolved raw id -> number of bill participations dropped.
    pub unresolved: BTreeMap<String, usize>,
    pub dropped_participants: usize,
}

/// Replace every sponsor/cosponsor id with its canonical id.
///
/// A raw id resolves if it is itself a canonical roster id or if the alias
/// map sends it to one. A dropped sponsor leaves `sponsor_id` empty; the
/// participant set handles that case.
pub fn reconcile_ids(bills: Vec<BillRecord>, sources: &RosterSources) -> Result<ReconcileOutcome> {
    let roster = LegislatorRoster::from_records(&sources.entries)?;
    let mut alias_map: HashMap<&str, &str> = HashMap::new();
    for a in &sources.aliases {
        if !roster.contains(&a.canonical_id) {
            return Err(Error::Data(format!(
                "alias {} points at unknown canonical id {}",
                a.alias_id, a.canonical_id
            )));
        }
        alias_map.insert(a.alias_id.as_str(), a.canonical_id.as_str());
    }

    let resolve = |raw: &str| -> Option<String> {
        if roster.contains(raw) {
            Some(raw.to_string())
        } else {
            alias_map.get(raw).map(|s| s.to_string())
        }
    };

    let mut unresolved: BTreeMap<String, usize> = BTreeMap::new();
    let mut dropped = 0usize;
    let bills = bills
        .into_iter()
        .map(|mut bill| {
            match resolve(&bill.sponsor_id) {
                Some(id) => bill.sponsor_id = id,
                None => {
                    *unresolved.entry(bill.sponsor_id.clone()).or_default() += 1;
                    dropped += 1;
                    bill.sponsor_id = String::new();
                }
            }
            let mut cosponsors = Vec::with_capacity(bill.cosponsor_ids.len());
            for raw in bill.cosponsor_ids.drain(..) {
                match resolve(&raw) {
                    Some(id) => cosponsors.push(id),
                    None => {
                        *unresolved.entry(raw).or_default() += 1;
                        dropped += 1;
                    }
                }
            }
            cosponsors.sort_unstable();
            cosponsors.dedup();
            bill.cosponsor_ids = cosponsors;
            bill
        })
        .collect();

    Ok(ReconcileOutcome {
        bills,
        roster,
        unresolved,
        dropped_participants: dropped,
    })
}

/// Parse roster records from CSV with header
/// `canonical_id,congress,chamber,party`.
pub fn parse_roster_csv(reader: impl Read) -> Result<Vec<RosterRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for record in rdr.deserialize() {
        let rec: RosterRecord = record.map_err(|e| Error::Data(format!("roster csv: {e}")))?;
        out.push(rec);
    }
    Ok(out)
}

/// Parse alias records from CSV with header `alias_id,canonical_id`.
pub fn parse_alias_csv(reader: impl Read) -> Result<Vec<AliasRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for record in rdr.deserialize() {
        let rec: AliasRecord = record.map_err(|e| Error::Data(format!("alias csv: {e}")))?;
        out.push(rec);
    }
    Ok(out)
}

/// Serialize roster records to the tabular input format.
pub fn write_roster_csv(records: &[RosterRecord], mut writer: impl std::io::Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Data(format!("write roster: {e}"));
    writer
        .write_all(b"canonical_id,congress,chamber,party\n")
        .map_err(io)?;
    for r in records {
        writeln!(
            writer,
            "{},{},{},{}",
            r.canonical_id, r.congress, r.chamber, r.party
        )
        .map_err(io)?;
    }
    Ok(())
}

/// Serialize alias records to the alias-map input format.
pub fn write_alias_csv(records: &[AliasRecord], mut writer: impl std::io::Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Data(format!("write aliases: {e}"));
    writer.write_all(b"alias_id,canonical_id\n").map_err(io)?;
    for r in records {
        writeln!(writer, "{},{}", r.alias_id, r.canonical_id).map_err(io)?;
    }
    Ok(())
}

pub fn parse_roster_path(path: impl AsRef<Path>) -> Result<Vec<RosterRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_roster_csv(file)
}

pub fn parse_alias_path(path: impl AsRef<Path>) -> Result<Vec<AliasRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_alias_csv(file)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::bill;
    use super::*;

    fn roster_records(ids: &[&str], congress: u16) -> Vec<RosterRecord> {
        ids.iter()
            .enumerate()
            .map(|(i, id)| RosterRecord {
                canonical_id: id.to_string(),
                congress,
                chamber: Chamber::House,
                party: if i % 2 == 0 {
                    Party::Democrat
                } else {
                    Party::Republican
                },
            })
            .collect()
    }

    #[test]
    fn aliases_collapse_to_one_canonical_id() {
        let mut entries = roster_records(&["A", "B"], 111);
        entries.extend(roster_records(&["A", "B"], 112));
        let sources = RosterSources {
            entries,
            aliases: vec![AliasRecord {
                alias_id: "A-old".into(),
                canonical_id: "A".into(),
            }],
        };
        let bills = vec![
            bill("hr1", 111, (2009, 2, 1), "A-old", &["B"], true),
            bill("hr2", 112, (2011, 2, 1), "A", &["B"], false),
        ];
        let out = reconcile_ids(bills, &sources).unwrap();
        assert_eq!(out.bills[0].sponsor_id, "A");
        assert_eq!(out.bills[1].sponsor_id, "A");
        assert!(out.unresolved.is_empty());
        assert_eq!(out.bills.len(), 2);
    }

    #[test]
    fn unresolved_participant_is_dropped_with_report() {
        let sources = RosterSources {
            entries: roster_records(&["A", "B"], 111),
            aliases: vec![],
        };
        let bills = vec![bill("hr1", 111, (2009, 2, 1), "A", &["B", "ghost"], true)];
        let out = reconcile_ids(bills, &sources).unwrap();
        assert_eq!(out.bills.len(), 1);
        assert_eq!(out.bills[0].cosponsor_ids, vec!["B"]);
        assert_eq!(out.unresolved.get("ghost"), Some(&1));
        assert_eq!(out.dropped_participants, 1);
    }

    #[test]
    fn unresolved_sponsor_leaves_bill_with_remaining_participants() {
        let sources = RosterSources {
            entries: roster_records(&["B"], 111),
            aliases: vec![],
        };
        let bills = vec![bill("hr1", 111, (2009, 2, 1), "ghost", &["B"], false)];
        let out = reconcile_ids(bills, &sources).unwrap();
        assert_eq!(out.bills[0].sponsor_id, "");
        assert_eq!(out.bills[0].participants(), vec!["B"]);
        assert_eq!(out.dropped_participants, 1);
    }

    #[test]
    fn five_legislators_two_aliased_yield_five_canonical_ids() {
        let entries = roster_records(&["L1", "L2", "L3", "L4", "L5"], 111);
        let sources = RosterSources {
            entries,
            aliases: vec![
                AliasRecord {
                    alias_id: "X1".into(),
                    canonical_id: "L1".into(),
                },
                AliasRecord {
                    alias_id: "X2".into(),
                    canonical_id: "L2".into(),
                },
            ],
        };
        let bills = vec![bill(
            "hr1",
            111,
            (2009, 2, 1),
            "X1",
            &["X2", "L3", "L4", "L5"],
            true,
        )];
        let out = reconcile_ids(bills, &sources).unwrap();
        assert_eq!(out.roster.len(), 5);
        assert_eq!(
            out.bills[0].participants(),
            vec!["L1", "L2", "L3", "L4", "L5"]
        );
    }

    #[test]
    fn reconciliation_preserves_bill_count() {
        let sources = RosterSources {
            entries: roster_records(&["A"], 111),
            aliases: vec![],
        };
        let bills: Vec<_> = (0..5)
            .map(|i| {
                bill(
                    &format!("hr{i}"),
                    111,
                    (2009, 2, 1),
                    "A",
                    &["nobody"],
                    false,
                )
            })
            .collect();
        let out = reconcile_ids(bills, &sources).unwrap();
        assert_eq!(out.bills.len(), 5);
    }

    #[test]
    fn duplicate_roster_entry_is_invalid_data() {
        let mut entries = roster_records(&["A"], 111);
        entries.push(RosterRecord {
            canonical_id: "A".into(),
            congress: 111,
            chamber: Chamber::House,
            party: Party::Republican,
        });
        assert!(LegislatorRoster::from_records(&entries).is_err());
    }

    #[test]
    fn party_counts_exclude_other() {
        let mut entries = roster_records(&["A", "B", "C"], 111);
        entries.push(RosterRecord {
            canonical_id: "D".into(),
            congress: 111,
            chamber: Chamber::House,
            party: Party::Other,
        });
        let roster = LegislatorRoster::from_records(&entries).unwrap();
        // A, C Democrat; B Republican; D Other.
        assert_eq!(roster.party_counts(111, Chamber::House), (2, 1));
        assert_eq!(roster.party_counts(112, Chamber::House), (0, 0));
    }

    #[test]
    fn csv_round_trip() {
        let csv_text =
            "canonical_id,congress,chamber,party\nA,111,House,Democrat\nB,111,House,Republican\n";
        let records = parse_roster_csv(csv_text.as_bytes()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[1].party, Party::Republican);
        let aliases = parse_alias_csv("alias_id,canonical_id\nid9,A\n".as_bytes()).unwrap();
        assert_eq!(aliases[0].alias_id, "id9");
    }
}
