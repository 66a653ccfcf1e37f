//! Command-line entry point for the cosponsorship influence pipeline.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 computation error.

mod config;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use legnet::ingest::{self, ParseOutcome, ReconcileOutcome, RosterSources};
use legnet::report::{self, BundleOptions, RunMeta};
use legnet::{filter_bills, half_life_sweep, summarize, BillRecord, Error, Result};

use config::{resolve, CommonFlags, RunConfig, SynthFlags};

#[derive(Parser)]
#[command(
    name = "legnet",
    version,
    about = "Cosponsorship-network influence analysis"
)]
enum Cli {
    /// Per-Congress summary statistics of the filtered bill set.
    Summarize {
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Full pipeline: tensors, influence, centrality baselines, windowed
    /// pass/fail separation, report bundle.
    Run {
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Generate a deterministic synthetic dataset in the ingest formats.
    Generate {
        #[command(flatten)]
        common: CommonFlags,
        #[command(flatten)]
        synth: SynthFlags,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Keep clap's rendering but pin the documented usage exit code.
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli {
        Cli::Summarize { common } => resolve(&common, None).and_then(|cfg| cmd_summarize(&cfg)),
        Cli::Run { common } => resolve(&common, None).and_then(|cfg| cmd_run(&cfg)),
        Cli::Generate { common, synth } => {
            resolve(&common, Some(&synth)).and_then(|cfg| cmd_generate(&cfg))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Config(_) => 1,
                Error::Io { .. } | Error::Data(_) => 2,
                Error::Compute(_) => 3,
            })
        }
    }
}

struct LoadedBills {
    bills: Vec<BillRecord>,
    bills_bytes: Vec<u8>,
    roster_bytes: Vec<u8>,
    roster: Option<legnet::LegislatorRoster>,
}

fn load_bills(cfg: &RunConfig, require_roster: bool) -> Result<LoadedBills> {
    let bills_path = cfg
        .bills_path
        .as_ref()
        .ok_or_else(|| Error::Config("--bills-path is required".into()))?;
    let bills_bytes = fs::read(bills_path).map_err(|e| Error::io(bills_path, e))?;
    let ParseOutcome { bills, errors } = ingest::parse_bills(bills_bytes.as_slice())?;
    if !errors.is_empty() {
        eprintln!("{} malformed record(s) skipped:", errors.len());
        for err in errors.iter().take(5) {
            eprintln!("  line {}: {}", err.line, err.message);
        }
        if errors.len() > 5 {
            eprintln!("  ... and {} more", errors.len() - 5);
        }
    }
    let bills = filter_bills(bills, cfg.chamber);

    let mut roster_bytes = Vec::new();
    let mut roster = None;
    let mut bills = bills;
    if let Some(roster_path) = &cfg.roster_path {
        roster_bytes = fs::read(roster_path).map_err(|e| Error::io(roster_path, e))?;
        let entries = ingest::parse_roster_csv(roster_bytes.as_slice())?;
        let aliases = match &cfg.alias_path {
            Some(path) => {
                let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
                roster_bytes.extend_from_slice(&bytes);
                ingest::parse_alias_csv(bytes.as_slice())?
            }
            None => Vec::new(),
        };
        let sources = RosterSources { entries, aliases };
        let ReconcileOutcome {
            bills: reconciled,
            roster: resolved,
            unresolved,
            dropped_participants,
        } = ingest::reconcile_ids(bills, &sources)?;
        if dropped_participants > 0 {
            eprintln!(
                "warning: dropped {dropped_participants} participation(s) across {} unresolved id(s)",
                unresolved.len()
            );
        }
        bills = reconciled;
        roster = Some(resolved);
    } else if require_roster {
        return Err(Error::Config(
            "--roster-path is required for this command".into(),
        ));
    }
    Ok(LoadedBills {
        bills,
        bills_bytes,
        roster_bytes,
        roster,
    })
}

fn cmd_summarize(cfg: &RunConfig) -> Result<()> {
    let loaded = load_bills(cfg, false)?;
    let rows = summarize(&loaded.bills);
    let meta = RunMeta::new(
        &cfg.canonical_text(),
        &loaded.bills_bytes,
        &loaded.roster_bytes,
    );
    let table = report::summary_table_csv(&rows, &meta);
    print!("{table}");
    write_to_dir(&cfg.output_dir, "summary_table.csv", &table)?;
    Ok(())
}

fn cmd_run(cfg: &RunConfig) -> Result<()> {
    let loaded = load_bills(cfg, true)?;
    let roster = loaded.roster.expect("required above");
    let sweep = half_life_sweep(&loaded.bills, &roster, cfg.chamber, &cfg.sweep_config())?;
    for warning in &sweep.warnings {
        eprintln!("warning: {warning}");
    }
    let meta = RunMeta::new(
        &cfg.canonical_text(),
        &loaded.bills_bytes,
        &loaded.roster_bytes,
    );
    let opts = BundleOptions {
        plots: cfg.plots,
        export_series: cfg.export_series,
        export_bill_scores: cfg.export_bill_scores,
        dump_tensors: cfg.dump_tensors,
    };
    let written = report::write_bundle(&cfg.output_dir, &sweep, &meta, opts)?;
    println!(
        "wrote {} file(s) to {}",
        written.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn cmd_generate(cfg: &RunConfig) -> Result<()> {
    let (bills, roster) = legnet::generate(&cfg.synth)?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;

    let mut bills_out = Vec::new();
    ingest::write_bills_jsonl(&bills, &mut bills_out)?;
    write_to_dir(
        &cfg.output_dir,
        "bills.jsonl",
        std::str::from_utf8(&bills_out).expect("utf8"),
    )?;

    let mut roster_out = Vec::new();
    ingest::write_roster_csv(&roster.records(), &mut roster_out)?;
    write_to_dir(
        &cfg.output_dir,
        "roster.csv",
        std::str::from_utf8(&roster_out).expect("utf8"),
    )?;

    let mut alias_out = Vec::new();
    ingest::write_alias_csv(&[], &mut alias_out)?;
    write_to_dir(
        &cfg.output_dir,
        "aliases.csv",
        std::str::from_utf8(&alias_out).expect("utf8"),
    )?;

    println!(
        "generated {} bills for {} legislators in {}",
        bills.len(),
        roster.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn write_to_dir(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))
}
