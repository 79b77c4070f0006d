//! Multi-start search on the sphere, compared with the closed form.
//!
//!     cargo run --example brute_force_oracle -- 8 2.5

use lpbound::oracle::{oracle_general, oracle_shannon, OracleConfig};
use lpbound::theory::{m_theory, shannon_min, OptimizationMode};

fn main() -> lpbound::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(8, |s| s.parse().expect("d"));
    let alpha: f64 = args.get(1).map_or(2.5, |s| s.parse().expect("alpha"));
    let cfg = OracleConfig::default();

    let mode = OptimizationMode::for_alpha(alpha)?;
    let out = oracle_general(d, alpha, mode, &cfg)?;
    println!("oracle  {:.15} at {:?}", out.value, out.point);
    println!("theory  {:.15}", m_theory(d, alpha)?.value);
    println!(
        "max constraint residual {:.1e}",
        out.max_feasibility_residual
    );

    let h = oracle_shannon(d, &cfg)?;
    println!(
        "entropy oracle {:.15}, closed form {:.15}",
        h.value,
        shannon_min(d)?
    );
    Ok(())
}
