//! Ratio ‖x‖_{2α}/‖x‖₂ against the sharp bound for a few vectors.
//!
//!     cargo run --example check_vectors

use lpbound::theory::{check_inequality, HyperplaneVector};

fn main() -> lpbound::error::Result<()> {
    let vectors = [
        vec![1.0, -1.0, 0.0, 0.0, 0.0],
        vec![4.0, -1.0, -1.0, -1.0, -1.0],
        vec![3.0, 1.0, -2.0, -1.0, -1.0],
    ];
    for alpha in [0.7, 1.5, 3.0] {
        for v in &vectors {
            let x = HyperplaneVector::new(v.clone())?;
            let c = check_inequality(&x, alpha)?;
            println!(
                "alpha {alpha:<4} {v:?}: ratio {:.10} bound {:.10} {:?}",
                c.ratio,
                c.bound,
                c.verdict()
            );
        }
    }
    Ok(())
}
