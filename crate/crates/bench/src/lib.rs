//! Shared fixtures for the pipeline benchmarks.

use legnet::{generate, BillRecord, LegislatorRoster, SynthConfig};

/// A mid-sized deterministic dataset: 120 legislators over 48 months.
pub fn bench_dataset() -> (Vec<BillRecord>, LegislatorRoster) {
    let config = SynthConfig {
        seed: 7,
        n_legislators: 120,
        n_months: 48,
        bills_per_month: 40,
        cosponsors_min: 3,
        cosponsors_max: 18,
        ..SynthConfig::default()
    };
    generate(&config).expect("valid bench config")
}
