//! Month indexing for the analysis range.
//!
//! All tensors and series are keyed by [`MonthIndex`], a 1-based count of
//! calendar months from the analysis start month. A bill introduced on any
//! day of a month belongs wholly to that month.

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A calendar (year, month) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YearMonth {
    pub year: i32,
    pub month: u8,
}

impl YearMonth {
    pub fn new(year: i32, month: u8) -> Self {
        assert!((1..=12).contains(&month), "month out of range: {month}");
        Self { year, month }
    }

    pub fn of_date(date: NaiveDate) -> Self {
        Self {
            year: date.year(),
            month: date.month() as u8,
        }
    }

    /// Months elapsed since year 0, used for month arithmetic.
    fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    fn from_ordinal(ordinal: i64) -> Self {
        let year = ordinal.div_euclid(12);
        let month = ordinal.rem_euclid(12) + 1;
        Self::new(year as i32, month as u8)
    }

    pub fn plus_months(self, months: i64) -> Self {
        Self::from_ordinal(self.ordinal() + months)
    }

    /// Signed month difference `self - other`.
    pub fn months_since(self, other: YearMonth) -> i64 {
        self.ordinal() - other.ordinal()
    }

    pub fn first_day(self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, self.month as u32, 1).expect("valid year-month")
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// 1-based month index within the analysis range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonthIndex(pub u32);

impl MonthIndex {
    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based offset into per-month vectors.
    pub fn slot(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for MonthIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The contiguous month span an analysis runs over.
///
/// `start` maps to `MonthIndex(1)`; `horizon` is the number of months.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonthRange {
    pub start: YearMonth,
    pub horizon: u32,
}

impl MonthRange {
    pub fn new(start: YearMonth, horizon: u32) -> Self {
        assert!(horizon >= 1, "horizon must be at least 1 month");
        Self { start, horizon }
    }

    /// Smallest range covering every introduction date in `dates`.
    pub fn covering(dates: impl IntoIterator<Item = NaiveDate>) -> Option<Self> {
        let mut min: Option<YearMonth> = None;
        let mut max: Option<YearMonth> = None;
        for d in dates {
            let ym = YearMonth::of_date(d);
            min = Some(min.map_or(ym, |m| m.min(ym)));
            max = Some(max.map_or(ym, |m| m.max(ym)));
        }
        let (min, max) = (min?, max?);
        let horizon = max.months_since(min) as u32 + 1;
        Some(Self::new(min, horizon))
    }

    pub fn index_of(&self, ym: YearMonth) -> Result<MonthIndex> {
        let delta = ym.months_since(self.start);
        if delta < 0 || delta >= self.horizon as i64 {
            return Err(Error::Config(format!(
                "month {ym} outside analysis range {} + {} months",
                self.start, self.horizon
            )));
        }
        Ok(MonthIndex(delta as u32 + 1))
    }

    pub fn index_of_date(&self, date: NaiveDate) -> Result<MonthIndex> {
        self.index_of(YearMonth::of_date(date))
    }

    pub fn month_of(&self, t: MonthIndex) -> YearMonth {
        debug_assert!(t.0 >= 1 && t.0 <= self.horizon);
        self.start.plus_months(t.0 as i64 - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = MonthIndex> {
        (1..=self.horizon).map(MonthIndex)
    }
}

/// Generous date bounds for a Congress: January 1 of its first year through
/// January 31 two years later. Sessions formally convene and adjourn on
/// January 3, but introduction dates at the boundaries vary by a few weeks.
pub fn congress_date_bounds(congress: u16) -> (NaiveDate, NaiveDate) {
    let first_year = 1789 + 2 * (congress as i32 - 1);
    let lo = NaiveDate::from_ymd_opt(first_year, 1, 1).expect("valid date");
    let hi = NaiveDate::from_ymd_opt(first_year + 2, 1, 31).expect("valid date");
    (lo, hi)
}

/// Map each month of the range to the Congress whose bills dominate it.
///
/// Data-driven rather than calendar-driven: per month we take the maximum
/// congress number among bills introduced in that month (sessions do not
/// interleave, so the maximum is the sitting congress), then fill empty
/// months by carrying the last known value forward and the first known
/// value backward.
pub fn congress_by_month(
    months_and_congresses: impl IntoIterator<Item = (MonthIndex, u16)>,
    range: &MonthRange,
) -> Result<Vec<u16>> {
    let mut per_month: Vec<Option<u16>> = vec![None; range.horizon as usize];
    for (t, congress) in months_and_congresses {
        let slot = t.slot();
        per_month[slot] = Some(per_month[slot].map_or(congress, |c| c.max(congress)));
    }
    let first_known = per_month.iter().flatten().next().copied().ok_or_else(|| {
        Error::Config("no bills in range; cannot map months to congresses".into())
    })?;
    let mut out = Vec::with_capacity(per_month.len());
    let mut last = first_known;
    for slot in per_month {
        if let Some(c) = slot {
            last = c;
        }
        out.push(last);
    }
    Ok(out)
}
