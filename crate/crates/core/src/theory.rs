//! Closed-form side of the inequality: the conjectured constant `M(d, α)`,
//! the critical dimension `d(α)`, the entropy minima, the extremal vectors,
//! and a checker for arbitrary vectors of the zero-sum hyperplane.
//!
//! With `x` on the unit sphere of `L = {x : Σ x_j = 0}` the conjecture reads
//! `Σ |x_j|^{2α} ≤ M(d, α)` for `α > 1` and `≥` for `α < 1`, where `M` is the
//! larger (resp. smaller) of two candidate values:
//!
//! * the *two-point* value `2^{1-α}`, attained at `(1/√2, -1/√2, 0, …, 0)`;
//! * the *spread* value `d^{-α}((d-1)^α + (d-1)^{1-α})`, attained at
//!   `(√((d-1)/d), -1/√((d-1)d), …)`.
//!
//! The switch happens at the critical dimension `d(α)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{bisect, log_add_exp};

/// Values closer than this are reported as a [`Branch::Tie`].
pub const TIE_TOL: f64 = 1e-12;

/// Slack allowed by [`check_inequality`] on either side of the bound.
pub const INEQUALITY_SLACK: f64 = 1e-12;

/// Which extremal configuration realises the conjectured constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    TwoPoint,
    Spread,
    /// Both candidates agree to within [`TIE_TOL`].
    Tie,
}

/// Whether the power sum is maximised (`α > 1`) or minimised (`α < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OptimizationMode {
    Maximize,
    Minimize,
}

impl OptimizationMode {
    pub fn for_alpha(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if alpha > 1.0 {
            Ok(Self::Maximize)
        } else if alpha < 1.0 {
            Ok(Self::Minimize)
        } else {
            domain("alpha = 1 has no optimization mode (the power sum is constant)")
        }
    }

    /// True if `candidate` is strictly better than `incumbent` by more than `tol`.
    pub fn improves(self, candidate: f64, incumbent: f64, tol: f64) -> bool {
        match self {
            Self::Maximize => candidate > incumbent + tol,
            Self::Minimize => candidate < incumbent - tol,
        }
    }

    /// The better of two values.
    pub fn pick(self, a: f64, b: f64) -> f64 {
        match self {
            Self::Maximize => a.max(b),
            Self::Minimize => a.min(b),
        }
    }

    /// `+1` for maximisation, `-1` for minimisation.
    pub fn sign(self) -> f64 {
        match self {
            Self::Maximize => 1.0,
            Self::Minimize => -1.0,
        }
    }
}

/// A validated `(d, α)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    d: usize,
    alpha: f64,
}

impl Instance {
    pub fn new(d: usize, alpha: f64) -> Result<Self> {
        check_dim(d)?;
        check_alpha(alpha)?;
        Ok(Self { d, alpha })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Fails for `α = 1`.
    pub fn mode(&self) -> Result<OptimizationMode> {
        OptimizationMode::for_alpha(self.alpha)
    }

    pub fn theory(&self) -> Result<TheoryValue> {
        m_theory(self.d, self.alpha)
    }
}

/// The conjectured constant together with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryValue {
    pub value: f64,
    pub branch: Branch,
}

/// The critical dimension `d(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CriticalDimension {
    Finite(f64),
    /// `α ≤ 1/2`: the two-point value wins in every dimension.
    Infinite,
}

impl CriticalDimension {
    pub fn value(&self) -> f64 {
        match self {
            Self::Finite(d) => *d,
            Self::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }
}

/// A nonzero vector of the zero-sum hyperplane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneVector {
    coords: Vec<f64>,
}

impl HyperplaneVector {
    /// Relative tolerance on `Σ x_j` accepted by [`HyperplaneVector::new`].
    pub const SUM_TOL: f64 = 1e-9;

    /// Accepts `coords` if they are finite, not all zero, and sum to zero within
    /// `SUM_TOL * max(1, ‖x‖₁)`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation("non-finite coordinate".into()));
        }
        let l1: f64 = coords.iter().map(|c| c.abs()).sum();
        if l1 == 0.0 {
            return Err(Error::Validation("zero vector".into()));
        }
        let sum: f64 = coords.iter().sum();
        if sum.abs() > Self::SUM_TOL * l1.max(1.0) {
            return Err(Error::Validation(format!(
                "vector is off the zero-sum hyperplane (sum = {sum:e})"
            )));
        }
        Ok(Self { coords })
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn sum(&self) -> f64 {
        self.coords.iter().sum()
    }

    pub fn norm2(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// `Σ |x_j|^{2α}`.
    pub fn power_sum(&self, alpha: f64) -> f64 {
        self.coords.iter().map(|c| c.abs().powf(2.0 * alpha)).sum()
    }

    /// Rescaled copy with unit Euclidean norm.
    pub fn normalized(&self) -> Self {
        let n = self.norm2();
        Self {
            coords: self.coords.iter().map(|c| c / n).collect(),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return domain(format!("alpha must be positive and finite, got {alpha}"));
    }
    Ok(())
}

fn check_dim(d: usize) -> Result<()> {
    if d < 3 {
        return domain(format!("dimension must be at least 3, got {d}"));
    }
    Ok(())
}

fn check_renyi_alpha(alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return domain("alpha = 1 is the Shannon case; use shannon_min");
    }
    Ok(())
}

/// `2^{1-α}`.
pub fn branch_two_point(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(((1.0 - alpha) * std::f64::consts::LN_2).exp())
}

/// `ln` of the spread value for real `d > 2`.
fn ln_spread(d: f64, alpha: f64) -> f64 {
    // α ln((d-1)/d) + ln(1 + (d-1)^{1-2α})
    let ln_dm1 = (d - 2.0).ln_1p();
    alpha * (-1.0 / d).ln_1p() + log_add_exp(0.0, (1.0 - 2.0 * alpha) * ln_dm1)
}

/// `d^{-α}((d-1)^α + (d-1)^{1-α})`, evaluated in log space.
pub fn branch_spread(d: usize, alpha: f64) -> Result<f64> {
    check_dim(d)?;
    check_alpha(alpha)?;
    Ok(ln_spread(d as f64, alpha).exp())
}

/// Sign-defining function of the critical dimension, in log space:
/// `ln spread(d) - ln 2^{1-α}`.
fn crossing_gap(d: f64, alpha: f64) -> f64 {
    ln_spread(d, alpha) - (1.0 - alpha) * std::f64::consts::LN_2
}

/// Largest root `d(α) > 2` of `2^{1-α} = d^{-α}((d-1)^α + (d-1)^{1-α})`.
///
/// The gap function vanishes at `d = 2` as well, so the scan starts just
/// above 2 and walks `d - 2` up geometrically until the sign flips, then
/// bisects. At `α = 1` the equation degenerates; the one-sided limit
/// [`d_star_shannon`] is returned. For `α` so close to `1/2` that the root
/// exceeds the `f64` range, `Finite(f64::MAX)` is returned.
pub fn critical_dimension(alpha: f64) -> Result<CriticalDimension> {
    check_alpha(alpha)?;
    if alpha <= 0.5 {
        return Ok(CriticalDimension::Infinite);
    }
    if alpha == 1.0 {
        return Ok(CriticalDimension::Finite(d_star_shannon()));
    }
    let gap = |d: f64| crossing_gap(d, alpha);
    Ok(match scan_bracket(gap) {
        Some((lo, hi)) => CriticalDimension::Finite(bisect(gap, lo, hi, 1e-14)),
        None => CriticalDimension::Finite(f64::MAX),
    })
}

/// Walks `d = 2 + e` with `e` growing geometrically from `1e-6` until `f`
/// changes sign.
fn scan_bracket(f: impl Fn(f64) -> f64) -> Option<(f64, f64)> {
    let mut e = 1e-6;
    let mut prev = 2.0 + e;
    let first = f(prev).signum();
    while e < 1e300 {
        e *= 1.25;
        let d = 2.0 + e;
        if f(d).signum() != first {
            return Some((prev, d));
        }
        prev = d;
    }
    None
}

/// Root `> 2` of `ln(d/2) = ((d-2)/d) ln(d-1)`, the `α → 1` limit of `d(α)`.
pub fn d_star_shannon() -> f64 {
    let (lo, hi) = scan_bracket(shannon_gap).expect("Shannon gap changes sign");
    bisect(shannon_gap, lo, hi, 1e-10)
}

/// `ln(d/2) - ((d-2)/d) ln(d-1)`.
pub fn shannon_gap(d: f64) -> f64 {
    (d / 2.0).ln() - (d - 2.0) / d * (d - 2.0).ln_1p()
}

/// The conjectured constant `M(d, α)`.
pub fn m_theory(d: usize, alpha: f64) -> Result<TheoryValue> {
    check_dim(d)?;
    check_renyi_alpha(alpha)?;
    let two = branch_two_point(alpha)?;
    if alpha <= 0.5 {
        return Ok(TheoryValue {
            value: two,
            branch: Branch::TwoPoint,
        });
    }
    let spread = branch_spread(d, alpha)?;
    if (two - spread).abs() <= TIE_TOL {
        return Ok(TheoryValue {
            value: two,
            branch: Branch::Tie,
        });
    }
    let critical = critical_dimension(alpha)?.value();
    Ok(if (d as f64) <= critical {
        TheoryValue {
            value: two,
            branch: Branch::TwoPoint,
        }
    } else {
        TheoryValue {
            value: spread,
            branch: Branch::Spread,
        }
    })
}

/// Minimal α-Rényi entropy (natural log) of `(x_1², …, x_d²)` over unit `x ∈ L`.
pub fn renyi_min(d: usize, alpha: f64) -> Result<f64> {
    let m = m_theory(d, alpha)?;
    Ok(m.value.ln() / (1.0 - alpha))
}

/// Minimal Shannon entropy of `(x_1², …, x_d²)` over unit `x ∈ L`.
pub fn shannon_min(d: usize) -> Result<f64> {
    check_dim(d)?;
    let df = d as f64;
    Ok(if d <= 6 {
        std::f64::consts::LN_2
    } else {
        df.ln() - (df - 2.0) / df * (df - 1.0).ln()
    })
}

/// The unit vector attaining the conjectured constant.
pub fn extremal_vector(d: usize, alpha: f64) -> Result<HyperplaneVector> {
    let theory = m_theory(d, alpha)?;
    let mut coords = vec![0.0; d];
    match theory.branch {
        Branch::TwoPoint | Branch::Tie => {
            coords[0] = std::f64::consts::FRAC_1_SQRT_2;
            coords[1] = -std::f64::consts::FRAC_1_SQRT_2;
        }
        Branch::Spread => {
            let df = d as f64;
            coords[0] = ((df - 1.0) / df).sqrt();
            let tail = -(1.0 / ((df - 1.0) * df)).sqrt();
            coords[1..].iter_mut().for_each(|c| *c = tail);
        }
    }
    Ok(HyperplaneVector::from_raw(coords))
}

/// Outcome of [`check_inequality`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    /// `‖x‖_{2α} / ‖x‖₂`.
    pub ratio: f64,
    /// `M(d, α)^{1/(2α)}`.
    pub bound: f64,
    pub satisfied: bool,
}

/// Coarse classification of an [`InequalityCheck`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equality,
    Satisfied,
    Violated,
}

impl InequalityCheck {
    /// Relative distance below which the check counts as attained equality.
    pub const EQUALITY_TOL: f64 = 1e-9;

    pub fn verdict(&self) -> Verdict {
        if !self.satisfied {
            Verdict::Violated
        } else if (self.ratio - self.bound).abs() <= Self::EQUALITY_TOL * self.bound {
            Verdict::Equality
        } else {
            Verdict::Satisfied
        }
    }
}

/// Evaluates `‖x‖_{2α} ≤ M^{1/(2α)} ‖x‖₂` (`α ≥ 1`) or `≥` (`α < 1`).
///
/// `α = 1` is accepted and is an identity with bound 1.
pub fn check_inequality(x: &HyperplaneVector, alpha: f64) -> Result<InequalityCheck> {
    check_alpha(alpha)?;
    let d = x.dim();
    check_dim(d)?;
    let unit = x.normalized();
    let p = 2.0 * alpha;
    let ratio = unit.power_sum(alpha).powf(1.0 / p);
    let m = if alpha == 1.0 {
        1.0
    } else {
        m_theory(d, alpha)?.value
    };
    let bound = m.powf(1.0 / p);
    let satisfied = if alpha >= 1.0 {
        ratio <= bound + INEQUALITY_SLACK
    } else {
        ratio >= bound - INEQUALITY_SLACK
    };
    Ok(InequalityCheck {
        ratio,
        bound,
        satisfied,
    })
}
