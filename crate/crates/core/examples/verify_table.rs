//! Verification over a dimension range, written as CSV to stdout.
//!
//!     cargo run --example verify_table -- 40

use lpbound::report::{rows, write_csv};
use lpbound::sweep::{verify_range, SweepConfig};

fn main() -> lpbound::error::Result<()> {
    let d_max: usize = std::env::args()
        .nth(1)
        .map_or(40, |s| s.parse().expect("d_max"));
    let alphas = [0.05, 0.2, 0.45, 0.5, 0.55, 0.7, 0.95, 1.01, 1.1, 1.5, 2.0];
    let records = verify_range(3, d_max, &alphas, &SweepConfig::default())?;
    let unconfirmed = records.iter().filter(|r| !r.confirmed).count();
    write_csv(std::io::stdout().lock(), &rows(&records))?;
    eprintln!("{} records, {unconfirmed} unconfirmed", records.len());
    Ok(())
}
