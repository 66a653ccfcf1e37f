//! Monthly co-occurrence tensors and their exponentially decayed
//! accumulation.
//!
//! For every month t we count, per unordered legislator pair, the bills
//! introduced that month that include both legislators: once over all bills
//! (`tot`) and once over the bills that eventually pass in the House
//! (`pass`). Pass credit is assigned at the introduction month regardless of
//! when passage occurs. The decayed cumulative weight of a pair at month t
//! is
//!
//! ```text
//! C[t,i,j] = sum_{n=1..t} e^{k (t-n)} * A[n,i,j]
//! ```
//!
//! computed by the recurrence `C[t] = e^k * C[t-1] + A[t]`, where
//! `k = ln(0.5) / half_life_months` is negative.
//!
//! Pairs are stored sparsely, canonically ordered (i < j) and sorted, so
//! every accumulation below iterates in a fixed order and full runs are
//! reproducible bit-for-bit.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ingest::BillRecord;
use crate::intern::{Interner, LegId};
use crate::time::{MonthIndex, MonthRange};

/// An unordered legislator pair packed as `(min << 32) | max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey(u64);

impl PairKey {
    pub fn new(a: LegId, b: LegId) -> Self {
        assert_ne!(a, b, "self-pairs are excluded");
        let (lo, hi) = if a.0 < b.0 { (a.0, b.0) } else { (b.0, a.0) };
        PairKey(((lo as u64) << 32) | hi as u64)
    }

    pub fn nodes(self) -> (LegId, LegId) {
        (LegId((self.0 >> 32) as u32), LegId(self.0 as u32))
    }
}

/// Sparse symmetric pair counts for one month, one variant (pass or tot).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonthlyCooccurrence {
    pub t: MonthIndex,
    keys: Vec<PairKey>,
    counts: Vec<u32>,
}

impl MonthlyCooccurrence {
    pub fn empty(t: MonthIndex) -> Self {
        Self {
            t,
            keys: Vec::new(),
            counts: Vec::new(),
        }
    }

    /// Build from raw symmetric pair counts; repeated pairs accumulate.
    pub fn from_pairs(t: MonthIndex, pairs: impl IntoIterator<Item = (LegId, LegId, u32)>) -> Self {
        let mut map: HashMap<PairKey, u32> = HashMap::new();
        for (a, b, count) in pairs {
            *map.entry(PairKey::new(a, b)).or_default() += count;
        }
        Self::from_map(t, map)
    }

    fn from_map(t: MonthIndex, map: HashMap<PairKey, u32>) -> Self {
        let mut pairs: Vec<(PairKey, u32)> = map.into_iter().collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        let (keys, counts) = pairs.into_iter().unzip();
        Self { t, keys, counts }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Count for an unordered pair; symmetric lookup.
    pub fn count(&self, a: LegId, b: LegId) -> u32 {
        let key = PairKey::new(a, b);
        match self.keys.binary_search(&key) {
            Ok(pos) => self.counts[pos],
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (PairKey, u32)> + '_ {
        self.keys.iter().copied().zip(self.counts.iter().copied())
    }
}

/// Sparse symmetric decayed weights for one month, one variant.
#[derive(Debug, Clone)]
pub struct PairWeights {
    pub t: MonthIndex,
    keys: Vec<PairKey>,
    weights: Vec<f64>,
}

impl PairWeights {
    pub fn weight(&self, a: LegId, b: LegId) -> f64 {
        let key = PairKey::new(a, b);
        match self.keys.binary_search(&key) {
            Ok(pos) => self.weights[pos],
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (PairKey, f64)> + '_ {
        self.keys.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Exponential decay rate fixed by a half-life in months.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRate {
    half_life_months: f64,
    k: f64,
}

impl DecayRate {
    pub fn from_half_life(half_life_months: f64) -> Result<Self> {
        if !half_life_months.is_finite() || half_life_months <= 0.0 {
            return Err(Error::Config(format!(
                "half-life must be positive and finite, got {half_life_months}"
            )));
        }
        Ok(Self {
            half_life_months,
            k: 0.5f64.ln() / half_life_months,
        })
    }

    pub fn half_life_months(&self) -> f64 {
        self.half_life_months
    }

    /// The (negative) decay constant k.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Weight retained after `elapsed_months`.
    pub fn factor(&self, elapsed_months: f64) -> f64 {
        (self.k * elapsed_months).exp()
    }

    /// The per-month multiplier e^k applied by the recurrence.
    pub fn monthly_factor(&self) -> f64 {
        self.k.exp()
    }
}

/// Both co-occurrence tensor variants over a shared node universe.
#[derive(Debug, Clone)]
pub struct CoTensors {
    pub interner: Interner,
    pub range: MonthRange,
    pub pass: Vec<MonthlyCooccurrence>,
    pub tot: Vec<MonthlyCooccurrence>,
}

/// Build the monthly pair-count tensors A_pass / A_tot.
///
/// Every unordered pair from a bill's participant set increments `tot` at
/// the bill's introduction month; if the bill passed the House it also
/// increments `pass`. Bills with fewer than two participants contribute no
/// pairs. A bill introduced outside `range` is a configuration error.
pub fn build_monthly(bills: &[BillRecord], range: &MonthRange) -> Result<CoTensors> {
    let mut interner = Interner::new();
    let horizon = range.horizon as usize;
    let mut pass_maps: Vec<HashMap<PairKey, u32>> = vec![HashMap::new(); horizon];
    let mut tot_maps: Vec<HashMap<PairKey, u32>> = vec![HashMap::new(); horizon];

    for bill in bills {
        let t = range.index_of_date(bill.introduced_date)?;
        let participants = bill.participants();
        let ids: Vec<LegId> = participants.iter().map(|p| interner.intern(p)).collect();
        let slot = t.slot();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let key = PairKey::new(a, b);
                *tot_maps[slot].entry(key).or_default() += 1;
                if bill.passed_house {
                    *pass_maps[slot].entry(key).or_default() += 1;
                }
            }
        }
    }

    let to_months = |maps: Vec<HashMap<PairKey, u32>>| {
        maps.into_iter()
            .enumerate()
            .map(|(i, m)| MonthlyCooccurrence::from_map(MonthIndex(i as u32 + 1), m))
            .collect()
    };
    Ok(CoTensors {
        interner,
        range: *range,
        pass: to_months(pass_maps),
        tot: to_months(tot_maps),
    })
}

/// Decayed cumulative weights via the month recurrence, one variant.
///
/// Months must be contiguous from 1. `resets` lists month indices at which
/// accumulated history is cleared before that month's events are added
/// (used for per-Congress resets); pass an empty slice for full-span
/// accumulation.
pub fn decay_accumulate_with_resets(
    monthly: &[MonthlyCooccurrence],
    rate: DecayRate,
    resets: &[MonthIndex],
) -> Result<Vec<PairWeights>> {
    for (i, m) in monthly.iter().enumerate() {
        if m.t.get() as usize != i + 1 {
            return Err(Error::Config(format!(
                "non-contiguous month sequence: slot {} holds month {}",
                i + 1,
                m.t
            )));
        }
    }
    let factor = rate.monthly_factor();
    let mut running: Vec<(PairKey, f64)> = Vec::new();
    let mut out = Vec::with_capacity(monthly.len());
    for month in monthly {
        if resets.contains(&month.t) {
            running.clear();
        }
        for w in running.iter_mut() {
            w.1 *= factor;
        }
        running = merge_add(&running, month);
        out.push(PairWeights {
            t: month.t,
            keys: running.iter().map(|&(k, _)| k).collect(),
            weights: running.iter().map(|&(_, w)| w).collect(),
        });
    }
    Ok(out)
}

/// Full-span decayed accumulation: `C[t] = e^k * C[t-1] + A[t]`.
pub fn decay_accumulate(
    monthly: &[MonthlyCooccurrence],
    rate: DecayRate,
) -> Result<Vec<PairWeights>> {
    decay_accumulate_with_resets(monthly, rate, &[])
}

fn merge_add(running: &[(PairKey, f64)], add: &MonthlyCooccurrence) -> Vec<(PairKey, f64)> {
    let mut out = Vec::with_capacity(running.len() + add.len());
    let mut i = 0;
    let mut j = 0;
    while i < running.len() && j < add.len() {
        let (rk, rw) = running[i];
        let ak = add.keys[j];
        match rk.cmp(&ak) {
            std::cmp::Ordering::Less => {
                out.push((rk, rw));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((ak, add.counts[j] as f64));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((rk, rw + add.counts[j] as f64));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&running[i..]);
    out.extend((j..add.len()).map(|j| (add.keys[j], add.counts[j] as f64)));
    out
}

/// One month of the combined decayed tensor: shared sorted key support with
/// pass and tot weights side by side. The support is the union of both
/// variants, so `tot == 0.0` can only occur for keys never observed in
/// either (not stored).
#[derive(Debug, Clone)]
pub struct DecayedMonth {
    pub t: MonthIndex,
    keys: Vec<PairKey>,
    pass: Vec<f64>,
    tot: Vec<f64>,
}

impl DecayedMonth {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn pass_weight(&self, a: LegId, b: LegId) -> f64 {
        match self.keys.binary_search(&PairKey::new(a, b)) {
            Ok(pos) => self.pass[pos],
            Err(_) => 0.0,
        }
    }

    pub fn tot_weight(&self, a: LegId, b: LegId) -> f64 {
        match self.keys.binary_search(&PairKey::new(a, b)) {
            Ok(pos) => self.tot[pos],
            Err(_) => 0.0,
        }
    }

    /// Iterate `(pair, pass, tot)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (PairKey, f64, f64)> + '_ {
        self.keys
            .iter()
            .zip(self.pass.iter())
            .zip(self.tot.iter())
            .map(|((&k, &p), &t)| (k, p, t))
    }
}

/// Per-month decayed tensors C_pass / C_tot over a shared node universe.
#[derive(Debug, Clone)]
pub struct DecayedTensor {
    pub interner: Interner,
    pub range: MonthRange,
    pub rate: DecayRate,
    months: Vec<DecayedMonth>,
}

impl DecayedTensor {
    /// Decay-accumulate both variants of `co` and zip them onto a shared
    /// support per month.
    pub fn build(co: &CoTensors, rate: DecayRate, resets: &[MonthIndex]) -> Result<Self> {
        let pass = decay_accumulate_with_resets(&co.pass, rate, resets)?;
        let tot = decay_accumulate_with_resets(&co.tot, rate, resets)?;
        let months = pass
            .into_iter()
            .zip(tot)
            .map(|(p, t)| zip_variants(p, t))
            .collect();
        Ok(Self {
            interner: co.interner.clone(),
            range: co.range,
            rate,
            months,
        })
    }

    pub fn month(&self, t: MonthIndex) -> &DecayedMonth {
        &self.months[t.slot()]
    }

    pub fn months(&self) -> &[DecayedMonth] {
        &self.months
    }
}

fn zip_variants(pass: PairWeights, tot: PairWeights) -> DecayedMonth {
    debug_assert_eq!(pass.t, tot.t);
    let mut keys = Vec::with_capacity(tot.keys.len());
    let mut p_out = Vec::with_capacity(tot.keys.len());
    let mut t_out = Vec::with_capacity(tot.keys.len());
    let mut i = 0;
    let mut j = 0;
    while i < pass.keys.len() || j < tot.keys.len() {
        let pk = pass.keys.get(i);
        let tk = tot.keys.get(j);
        match (pk, tk) {
            (Some(&a), Some(&b)) if a == b => {
                keys.push(a);
                p_out.push(pass.weights[i]);
                t_out.push(tot.weights[j]);
                i += 1;
                j += 1;
            }
            (Some(&a), Some(&b)) if a < b => {
                keys.push(a);
                p_out.push(pass.weights[i]);
                t_out.push(0.0);
                i += 1;
            }
            (Some(_), Some(&b)) => {
                keys.push(b);
                p_out.push(0.0);
                t_out.push(tot.weights[j]);
                j += 1;
            }
            (Some(&a), None) => {
                keys.push(a);
                p_out.push(pass.weights[i]);
                t_out.push(0.0);
                i += 1;
            }
            (None, Some(&b)) => {
                keys.push(b);
                p_out.push(0.0);
                t_out.push(tot.weights[j]);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    DecayedMonth {
        t: tot.t,
        keys,
        pass: p_out,
        tot: t_out,
    }
}
