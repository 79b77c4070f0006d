//! Closed-form constant M(d, α) and the branch it comes from.
//!
//!     cargo run --example conjectured_constant -- 7 1.5

use lpbound::theory::{branch_spread, branch_two_point, extremal_vector, m_theory};

fn main() -> lpbound::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(7, |s| s.parse().expect("d"));
    let alpha: f64 = args.get(1).map_or(1.5, |s| s.parse().expect("alpha"));

    let m = m_theory(d, alpha)?;
    println!("d = {d}, alpha = {alpha}");
    println!("two-point  {:.15}", branch_two_point(alpha)?);
    println!("spread     {:.15}", branch_spread(d, alpha)?);
    println!("M          {:.15} ({:?})", m.value, m.branch);
    println!("extremizer {:?}", extremal_vector(d, alpha)?.coords());
    Ok(())
}
