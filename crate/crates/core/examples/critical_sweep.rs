//! Global extremum over all multiplicity splits for one (d, α), with the
//! winning three-value point.
//!
//!     cargo run --example critical_sweep -- 12 0.7

use lpbound::sweep::{enumerate_splits, m_numeric, SweepConfig};

fn main() -> lpbound::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(12, |s| s.parse().expect("d"));
    let alpha: f64 = args.get(1).map_or(0.7, |s| s.parse().expect("alpha"));

    let rec = m_numeric(d, alpha, &SweepConfig::default())?;
    let best = rec.best_candidate;
    println!("{} splits searched", enumerate_splits(d)?.len());
    println!("m_num    {:.15}", rec.m_numeric);
    println!(
        "branches two-point {:.15}, spread {:.15}",
        rec.theory_two_point, rec.theory_spread
    );
    println!(
        "matched  {} (confirmed: {})",
        rec.matched_branch.as_str(),
        rec.confirmed
    );
    println!(
        "best     split {} t = {:?} values ({:.6}, {:.6}, {:.6})",
        best.split, best.t, best.s0, best.s1, best.s2
    );
    Ok(())
}
