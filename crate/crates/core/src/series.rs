//! Per-month per-legislator scalar score series.
//!
//! Influence and the three centrality baselines all produce the same shape
//! of data: a sparse map from (month, legislator) to a nonnegative score.
//! Absent entries read as 0.

use crate::intern::{Interner, LegId};
use crate::time::{MonthIndex, MonthRange};

#[derive(Debug, Clone)]
pub struct ScoreSeries {
    pub range: MonthRange,
    pub interner: Interner,
    /// One vec per month, sorted by `LegId`.
    months: Vec<Vec<(LegId, f64)>>,
}

impl ScoreSeries {
    pub fn new(range: MonthRange, interner: Interner, months: Vec<Vec<(LegId, f64)>>) -> Self {
        debug_assert_eq!(months.len(), range.horizon as usize);
        debug_assert!(months.iter().all(|m| m.windows(2).all(|w| w[0].0 < w[1].0)));
        Self {
            range,
            interner,
            months,
        }
    }

    pub fn empty(range: MonthRange, interner: Interner) -> Self {
        let months = vec![Vec::new(); range.horizon as usize];
        Self {
            range,
            interner,
            months,
        }
    }

    pub fn get(&self, t: MonthIndex, leg: LegId) -> Option<f64> {
        let month = self.months.get(t.slot())?;
        month
            .binary_search_by_key(&leg, |&(id, _)| id)
            .ok()
            .map(|pos| month[pos].1)
    }

    /// Score with the absent-means-zero convention.
    pub fn get_or_zero(&self, t: MonthIndex, leg: LegId) -> f64 {
        self.get(t, leg).unwrap_or(0.0)
    }

    pub fn get_by_name(&self, t: MonthIndex, name: &str) -> Option<f64> {
        let leg = self.interner.get(name)?;
        self.get(t, leg)
    }

    pub fn month_entries(&self, t: MonthIndex) -> &[(LegId, f64)] {
        &self.months[t.slot()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (MonthIndex, LegId, f64)> + '_ {
        self.months.iter().enumerate().flat_map(|(slot, entries)| {
            let t = MonthIndex(slot as u32 + 1);
            entries.iter().map(move |&(leg, v)| (t, leg, v))
        })
    }

    pub fn len(&self) -> usize {
        self.months.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.months.iter().all(Vec::is_empty)
    }
}
