//! Numerical verification of the sharp constant in `‖x‖_{2α} ≤ M(d, α)^{1/(2α)} ‖x‖₂`
//! (reversed for `α < 1`) on the zero-sum hyperplane of `ℝ^d`.

pub mod cli;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod report;
pub mod sweep;
pub mod theory;
pub mod trig3;
