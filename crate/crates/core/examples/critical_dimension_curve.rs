//! Prints the `alpha dalpha` table of the critical dimension.
//!
//!     cargo run --example critical_dimension_curve > dalpha.txt

use lpbound::report::{dcurve_table, linspace};
use lpbound::theory::d_star_shannon;

fn main() -> lpbound::error::Result<()> {
    print!("{}", dcurve_table(&linspace(0.52, 3.0, 125))?);
    eprintln!("Shannon limit d* = {:.10}", d_star_shannon());
    Ok(())
}
