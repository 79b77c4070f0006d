//! The d = 3 objective as a function of one angle: direct values, the cosine
//! series, and the checks behind the α > 2 maximizer.
//!
//!     cargo run --example three_dimensional_case -- 3

use std::f64::consts::FRAC_PI_6;

use lpbound::trig3::{
    derivative_ratio_scan, m_phi, theorem_chain_check, FourierConfig, FourierSeries,
};

fn main() -> lpbound::error::Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map_or(3.0, |s| s.parse().expect("alpha"));
    let series = FourierSeries::new(alpha, &FourierConfig::default())?;
    println!("{:>8} {:>20} {:>20}", "phi", "M(phi)", "series");
    for i in 0..=6 {
        let phi = FRAC_PI_6 * i as f64 / 6.0;
        println!(
            "{phi:8.4} {:20.15} {:20.15}",
            m_phi(alpha, phi),
            series.eval(phi)
        );
    }
    if alpha > 2.0 {
        let scan = derivative_ratio_scan(alpha, 10_000)?;
        println!(
            "min -M'/sin 6phi = {:.6} at phi = {:.4}",
            scan.min_ratio, scan.argmin_phi
        );
        let chain = theorem_chain_check(alpha, 10_000)?;
        println!("monotonicity chain passed: {}", chain.passed());
    }
    Ok(())
}
