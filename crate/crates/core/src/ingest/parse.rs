//! Line-delimited bill record parsing.
//!
//! Input is one JSON object per line, UTF-8. A malformed line is a
//! record-level error: it is reported with its line number and the run
//! continues. Structural invariants (a pass date on a bill that did not
//! pass, an introduction date outside the stated Congress) are also
//! record-level errors.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::time::congress_date_bounds;

use super::BillRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct ParseOutcome {
    pub bills: Vec<BillRecord>,
    pub errors: Vec<RecordError>,
}

impl ParseOutcome {
    pub fn error_count(&self) -> usize {
        self.errors.len()
    }
}

/// Parse bill records from a line-delimited stream.
pub fn parse_bills(reader: impl BufRead) -> Result<ParseOutcome> {
    let mut outcome = ParseOutcome::default();
    let mut seen_ids = std::collections::HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Data(format!("read failed at line {line_no}: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(&line) {
            Ok(bill) => {
                if !seen_ids.insert(bill.bill_id.clone()) {
                    outcome.errors.push(RecordError {
                        line: line_no,
                        message: format!("duplicate bill_id {}", bill.bill_id),
                    });
                } else {
                    outcome.bills.push(bill);
                }
            }
            Err(message) => outcome.errors.push(RecordError {
                line: line_no,
                message,
            }),
        }
    }
    Ok(outcome)
}

pub fn parse_bills_path(path: impl AsRef<Path>) -> Result<ParseOutcome> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_bills(BufReader::new(file))
}

/// Serialize bills to the line-delimited input format, one JSON object per
/// line. Inverse of [`parse_bills`] for well-formed records.
pub fn write_bills_jsonl(bills: &[BillRecord], mut writer: impl std::io::Write) -> Result<()> {
    for bill in bills {
        let line = serde_json::to_string(bill)
            .map_err(|e| Error::Data(format!("serialize bill {}: {e}", bill.bill_id)))?;
        writer
            .write_all(line.as_bytes())
            .and_then(|_| writer.write_all(b"\n"))
            .map_err(|e| Error::Data(format!("write bills: {e}")))?;
    }
    Ok(())
}

fn parse_record(line: &str) -> std::result::Result<BillRecord, String> {
    let mut bill: BillRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if bill.bill_id.is_empty() {
        return Err("bill_id is empty".into());
    }
    if bill.sponsor_id.is_empty() {
        return Err("sponsor_id is empty".into());
    }
    if !bill.passed_house && bill.passed_house_date.is_some() {
        return Err(format!(
            "bill {}: passed_house_date present but passed_house is false",
            bill.bill_id
        ));
    }
    let (lo, hi) = congress_date_bounds(bill.congress);
    if bill.introduced_date < lo || bill.introduced_date > hi {
        return Err(format!(
            "bill {}: introduced {} outside congress {} ({lo}..{hi})",
            bill.bill_id, bill.introduced_date, bill.congress
        ));
    }
    bill.cosponsor_ids.sort_unstable();
    bill.cosponsor_ids.dedup();
    Ok(bill)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    const GOOD: &str = r#"{"bill_id":"hr1-111","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-01-06","sponsor_id":"L1","cosponsor_ids":["L2","L3","L2"],"passed_house":true,"passed_house_date":"2009-02-04","enacted":false}"#;

    #[test]
    fn empty_stream_parses_to_empty_list() {
        let out = parse_bills(Cursor::new("")).unwrap();
        assert!(out.bills.is_empty());
        assert_eq!(out.error_count(), 0);
    }

    #[test]
    fn duplicate_cosponsors_are_deduplicated() {
        let out = parse_bills(Cursor::new(GOOD)).unwrap();
        assert_eq!(out.bills.len(), 1);
        assert_eq!(out.bills[0].cosponsor_ids, vec!["L2", "L3"]);
        let repeated = r#"{"bill_id":"hr2-111","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-01-06","sponsor_id":"L1","cosponsor_ids":["L2","L2"],"passed_house":false,"enacted":false}"#;
        let out = parse_bills(Cursor::new(repeated)).unwrap();
        assert_eq!(out.bills[0].cosponsor_ids, vec!["L2"]);
    }

    #[test]
    fn malformed_line_is_reported_with_line_number_and_run_continues() {
        let second = GOOD.replace("hr1-111", "hr9-111");
        let input = format!("{GOOD}\nnot json\n{second}\n");
        let out = parse_bills(Cursor::new(input)).unwrap();
        assert_eq!(out.bills.len(), 2);
        assert_eq!(out.error_count(), 1);
        assert_eq!(out.errors[0].line, 2);
    }

    #[test]
    fn missing_mandatory_field_is_a_record_error() {
        let missing_sponsor = r#"{"bill_id":"hr3-111","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-01-06","cosponsor_ids":[],"passed_house":false,"enacted":false}"#;
        let out = parse_bills(Cursor::new(missing_sponsor)).unwrap();
        assert!(out.bills.is_empty());
        assert_eq!(out.error_count(), 1);
        assert!(out.errors[0].message.contains("sponsor_id"));
    }

    #[test]
    fn duplicate_bill_ids_are_record_errors() {
        let input = format!("{GOOD}\n{GOOD}\n");
        let out = parse_bills(Cursor::new(input)).unwrap();
        assert_eq!(out.bills.len(), 1);
        assert_eq!(out.error_count(), 1);
        assert!(out.errors[0].message.contains("duplicate bill_id"));
    }

    #[test]
    fn pass_date_without_pass_flag_is_rejected() {
        let bad = r#"{"bill_id":"hr4-111","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2009-01-06","sponsor_id":"L1","cosponsor_ids":[],"passed_house":false,"passed_house_date":"2009-02-04","enacted":false}"#;
        let out = parse_bills(Cursor::new(bad)).unwrap();
        assert_eq!(out.error_count(), 1);
        assert!(out.errors[0].message.contains("passed_house_date"));
    }

    #[test]
    fn introduction_outside_congress_range_is_rejected() {
        let bad = r#"{"bill_id":"hr5-111","congress":111,"chamber":"House","bill_type":"Bill","introduced_date":"2012-06-01","sponsor_id":"L1","cosponsor_ids":[],"passed_house":false,"enacted":false}"#;
        let out = parse_bills(Cursor::new(bad)).unwrap();
        assert_eq!(out.error_count(), 1);
        assert!(out.errors[0].message.contains("outside congress"));
    }

    #[test]
    fn parse_preserves_count_across_bill_types() {
        let mut input = String::new();
        for i in 0..7 {
            input.push_str(&GOOD.replace("hr1-111", &format!("hr{i}-111")));
            input.push('\n');
        }
        for i in 0..3 {
            input.push_str(&format!(
                r#"{{"bill_id":"hres{i}-111","congress":111,"chamber":"House","bill_type":"SimpleResolution","introduced_date":"2009-01-06","sponsor_id":"L1","cosponsor_ids":[],"passed_house":false,"enacted":false}}"#
            ));
            input.push('\n');
        }
        let out = parse_bills(Cursor::new(input)).unwrap();
        assert_eq!(out.bills.len(), 10);
    }
}
