//! Deterministic synthetic congress datasets for tests, oracles, and demos.
//!
//! Generation is driven by a counter-based SplitMix64 stream, so a fixed
//! config reproduces byte-identical output on every platform. A planted
//! elite subset of legislators raises a bill's passage probability when any
//! of them participates, so elites accrue a distinctively high pass ratio
//! that the pipeline should recover. `elite_weight` can additionally
//! over-represent elites when participant sets are drawn; the default keeps
//! it at 1 because elite presence in most bills saturates the max
//! aggregation and washes out the max-versus-mean contrast.

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::ingest::{BillRecord, BillType, Chamber, LegislatorRoster, Party, RosterRecord};
use crate::time::YearMonth;

/// SplitMix64: `state_n = seed + n * GOLDEN`, finalized by two
/// xor-shift-multiply rounds. Stateless per draw index, which keeps the
/// stream independent of platform word order or iteration strategy.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        let mut z = self.seed.wrapping_add(self.counter.wrapping_mul(GOLDEN));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, n). Modulo bias is negligible for the small n used
    /// here.
    pub fn next_range(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_legislators: u32,
    /// Fraction of legislators assigned to the Democrat party.
    pub party_split: f64,
    pub n_months: u32,
    pub bills_per_month: u32,
    /// Participant set size is uniform in [cosponsors_min, cosponsors_max],
    /// counting the sponsor.
    pub cosponsors_min: u32,
    pub cosponsors_max: u32,
    pub base_pass_prob: f64,
    /// Added to the pass probability when any elite member participates.
    pub influence_boost: f64,
    pub elite_set_size: u32,
    /// Sampling weight of elite members relative to everyone else.
    pub elite_weight: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            n_legislators: 50,
            party_split: 0.5,
            n_months: 60,
            bills_per_month: 30,
            cosponsors_min: 3,
            cosponsors_max: 8,
            base_pass_prob: 0.1,
            influence_boost: 0.3,
            elite_set_size: 5,
            elite_weight: 1.0,
        }
    }
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be in [0, 1], got {v}")))
            }
        };
        prob("party_split", self.party_split)?;
        prob("base_pass_prob", self.base_pass_prob)?;
        prob("influence_boost", self.influence_boost)?;
        if self.base_pass_prob + self.influence_boost > 1.0 {
            return Err(Error::Config(
                "base_pass_prob + influence_boost must not exceed 1".into(),
            ));
        }
        if self.n_legislators == 0 || self.n_months == 0 {
            return Err(Error::Config(
                "need at least one legislator and one month".into(),
            ));
        }
        if self.cosponsors_min < 1 || self.cosponsors_min > self.cosponsors_max {
            return Err(Error::Config(format!(
                "invalid participant size range [{}, {}]",
                self.cosponsors_min, self.cosponsors_max
            )));
        }
        if self.cosponsors_max > self.n_legislators {
            return Err(Error::Config(format!(
                "cosponsors_max {} exceeds n_legislators {}",
                self.cosponsors_max, self.n_legislators
            )));
        }
        if self.elite_set_size > self.n_legislators {
            return Err(Error::Config("elite_set_size exceeds n_legislators".into()));
        }
        if !self.elite_weight.is_finite() || self.elite_weight < 1.0 {
            return Err(Error::Config(format!(
                "elite_weight must be at least 1, got {}",
                self.elite_weight
            )));
        }
        Ok(())
    }

    /// Elite member indices, spread evenly across the id range (and thereby
    /// across both parties).
    pub fn elite_indices(&self) -> Vec<u32> {
        (0..self.elite_set_size)
            .map(|j| (j as u64 * self.n_legislators as u64 / self.elite_set_size as u64) as u32)
            .collect()
    }
}

/// The generator's fixed anchor month; month 1 of every synthetic dataset.
pub const SYNTH_START: YearMonth = YearMonth {
    year: 2009,
    month: 1,
};
const FIRST_CONGRESS: u16 = 111;
const ENACT_GIVEN_PASS: f64 = 0.3;

fn leg_name(i: u32) -> String {
    format!("leg{i:04}")
}

/// Generate a deterministic synthetic dataset conforming to the ingest
/// schema. Passage is Bernoulli at `base_pass_prob`, raised by
/// `influence_boost` when an elite member participates.
pub fn generate(config: &SynthConfig) -> Result<(Vec<BillRecord>, LegislatorRoster)> {
    config.validate()?;
    let n = config.n_legislators;
    let n_dems = (n as f64 * config.party_split).round() as u32;
    let elites = config.elite_indices();
    let is_elite = |i: u32| elites.binary_search(&i).is_ok();

    // Two-year congresses starting at the anchor month.
    let n_congresses = config.n_months.div_ceil(24);
    let mut roster_records = Vec::new();
    for c in 0..n_congresses {
        for i in 0..n {
            roster_records.push(RosterRecord {
                canonical_id: leg_name(i),
                congress: FIRST_CONGRESS + c as u16,
                chamber: Chamber::House,
                party: if i < n_dems {
                    Party::Democrat
                } else {
                    Party::Republican
                },
            });
        }
    }
    let roster = LegislatorRoster::from_records(&roster_records)?;

    let mut rng = CounterRng::new(config.seed);
    let mut bills = Vec::with_capacity((config.n_months * config.bills_per_month) as usize);
    let mut bill_counter = 0u32;
    for m in 0..config.n_months {
        let ym = SYNTH_START.plus_months(m as i64);
        let congress = FIRST_CONGRESS + (m / 24) as u16;
        for _ in 0..config.bills_per_month {
            bill_counter += 1;
            let day = 1 + rng.next_range(28) as u32;
            let introduced = NaiveDate::from_ymd_opt(ym.year, ym.month as u32, day)
                .expect("day 1..=28 is valid in every month");

            let size = config.cosponsors_min
                + rng.next_range((config.cosponsors_max - config.cosponsors_min + 1) as u64) as u32;
            let participants = draw_participants(&mut rng, n, size, config.elite_weight, &is_elite);
            let has_elite = participants.iter().any(|&i| is_elite(i));

            let pass_prob = config.base_pass_prob
                + if has_elite {
                    config.influence_boost
                } else {
                    0.0
                };
            let passed = rng.next_f64() < pass_prob;
            let passed_house_date = if passed {
                let offset = 30 + rng.next_range(150) as i64;
                Some(introduced + chrono::Duration::days(offset))
            } else {
                None
            };
            let enacted = passed && rng.next_f64() < ENACT_GIVEN_PASS;

            let sponsor = participants[0];
            let mut cosponsor_ids: Vec<String> =
                participants[1..].iter().map(|&i| leg_name(i)).collect();
            cosponsor_ids.sort_unstable();
            bills.push(BillRecord {
                bill_id: format!("syn{bill_counter:06}"),
                congress,
                chamber: Chamber::House,
                bill_type: BillType::Bill,
                introduced_date: introduced,
                sponsor_id: leg_name(sponsor),
                cosponsor_ids,
                passed_house: passed,
                passed_house_date,
                enacted,
            });
        }
    }
    Ok((bills, roster))
}

/// Weighted sampling without replacement; the first draw is the sponsor.
fn draw_participants(
    rng: &mut CounterRng,
    n: u32,
    size: u32,
    elite_weight: f64,
    is_elite: &dyn Fn(u32) -> bool,
) -> Vec<u32> {
    let mut pool: Vec<(u32, f64)> = (0..n)
        .map(|i| (i, if is_elite(i) { elite_weight } else { 1.0 }))
        .collect();
    let mut total: f64 = pool.iter().map(|&(_, w)| w).sum();
    let mut out = Vec::with_capacity(size as usize);
    for _ in 0..size {
        let mut target = rng.next_f64() * total;
        let mut chosen = pool.len() - 1;
        for (pos, &(_, w)) in pool.iter().enumerate() {
            if target < w {
                chosen = pos;
                break;
            }
            target -= w;
        }
        let (idx, w) = pool.swap_remove(chosen);
        total -= w;
        out.push(idx);
    }
    out
}
