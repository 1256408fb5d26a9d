//! A small classical/entangled gap sweep written as CSV to stdout.
//!
//! `cargo run --release --example gap_sweep -- [samples] [seed] > gap.csv`

use xorgap::experiments::{self, SweepConfig};

fn main() -> xorgap::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().map_or(4, |s| s.parse().expect("samples"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let cfg = SweepConfig::new(vec![1, 2], samples, seed);
    let outcome = experiments::gap_sweep(&cfg)?;
    experiments::write_gap_csv(std::io::stdout().lock(), &outcome.rows, true)?;
    for (n, m) in experiments::median_ratios(&outcome.rows) {
        eprintln!("n = {n}: median ratio_estimate {m:.4}");
    }
    Ok(())
}
