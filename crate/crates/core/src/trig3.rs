//! The three-dimensional case.
//!
//! A unit vector of the plane `x1 + x2 + x3 = 0` is
//! `x_j = √(2/3) cos(φ + 2π(j-1)/3)`, so the power sum becomes a function
//! `M(φ)` of one angle with period `π/3`. This module evaluates `M` directly
//! and through its cosine series in `6kφ`, scans `M'(φ)/sin 6φ`, and checks the
//! monotonicity chain `g_α → u → u1·u2` used for `α > 2`.

use std::f64::consts::{FRAC_PI_6, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::theory::HyperplaneVector;

/// Hard cap on inner-series terms.
const MAX_SERIES_TERMS: usize = 200_000_000;

/// Truncation settings of the cosine series of `M(φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierConfig {
    /// Number of harmonics `cos 6kφ`, `k = 1..=k_max`.
    pub k_max: usize,
    /// Inner series stop once terms are decreasing and below this magnitude.
    pub term_tol: f64,
}

impl Default for FourierConfig {
    fn default() -> Self {
        Self {
            k_max: 64,
            term_tol: 1e-15,
        }
    }
}

impl FourierConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_max < 8 {
            return domain(format!("k_max must be >= 8, got {}", self.k_max));
        }
        if !(self.term_tol > 0.0 && self.term_tol <= 1e-14) {
            return domain(format!(
                "term_tol must be in (0, 1e-14], got {}",
                self.term_tol
            ));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return domain(format!("alpha must be positive and finite, got {alpha}"));
    }
    Ok(())
}

/// `x_j = √(2/3) cos(φ + 2π(j-1)/3)`, `j = 1, 2, 3`.
pub fn trig_vector(phi: f64) -> HyperplaneVector {
    let r = (2.0f64 / 3.0).sqrt();
    HyperplaneVector::from_raw(
        (0..3)
            .map(|j| r * (phi + TAU * j as f64 / 3.0).cos())
            .collect(),
    )
}

/// `M(φ) = Σ_j |x_j(φ)|^{2α}`.
pub fn m_phi(alpha: f64, phi: f64) -> f64 {
    trig_vector(phi).power_sum(alpha)
}

/// `(1/m) Σ_{j<m} cos(φ + 4πLj/m)`: equals `cos φ` when `2L/m` is an integer
/// and vanishes otherwise.
pub fn harmonic_average(phi: f64, l: usize, m: usize) -> f64 {
    let step = 2.0 * TAU * l as f64 / m as f64;
    (0..m).map(|j| (phi + step * j as f64).cos()).sum::<f64>() / m as f64
}

/// Sums a series of same-sign-pattern terms given its first term and the ratio
/// `t_{n+1} / t_n`. Stops once the terms have started shrinking and dropped
/// below `tol`; leading terms can be tiny and still grow by orders of
/// magnitude before they peak.
fn sum_by_ratio(first: f64, ratio: impl Fn(usize) -> f64, tol: f64) -> f64 {
    let mut term = first;
    let mut sum = 0.0;
    for n in 0..MAX_SERIES_TERMS {
        sum += term;
        if term == 0.0 {
            break;
        }
        let r = ratio(n);
        if r.abs() < 1.0 && term.abs() < tol {
            break;
        }
        term *= r;
    }
    sum
}

/// `C0(α) = Σ_{n≥1} α(α-1)⋯(α-2n+1) / (n!)² · 2^{-2n}`.
pub fn fourier_c0(alpha: f64, term_tol: f64) -> f64 {
    // t_1 = α(α-1)/4; t_{n+1}/t_n = (α-2n)(α-2n-1) / (4 (n+1)²)
    let first = alpha * (alpha - 1.0) / 4.0;
    sum_by_ratio(
        first,
        |i| {
            let n = (i + 1) as f64;
            (alpha - 2.0 * n) * (alpha - 2.0 * n - 1.0) / (4.0 * (n + 1.0) * (n + 1.0))
        },
        term_tol,
    )
}

/// Coefficient of `cos 6kφ` inside the bracket:
/// `Σ_{n≥0} α(α-1)⋯(α-2n-3k+1) / (n! (n+3k)!) · 2^{-(2n+3k-1)}`.
pub fn fourier_harmonic(alpha: f64, k: usize, term_tol: f64) -> f64 {
    let m = 3 * k;
    // t_0 = 2 Π_{i<3k} (α-i) / (2(i+1))
    let first = 2.0
        * (0..m)
            .map(|i| (alpha - i as f64) / (2.0 * (i + 1) as f64))
            .product::<f64>();
    let mf = m as f64;
    sum_by_ratio(
        first,
        |i| {
            let n = i as f64;
            (alpha - 2.0 * n - mf) * (alpha - 2.0 * n - mf - 1.0)
                / (4.0 * (n + 1.0) * (n + 1.0 + mf))
        },
        term_tol,
    )
}

/// Truncated cosine series of `M(φ)` for one `α`, coefficients precomputed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    pub alpha: f64,
    pub c0: f64,
    /// `harmonics[k-1]` multiplies `cos 6kφ`.
    pub harmonics: Vec<f64>,
}

impl FourierSeries {
    pub fn new(alpha: f64, cfg: &FourierConfig) -> Result<Self> {
        check_alpha(alpha)?;
        cfg.validate()?;
        Ok(Self {
            alpha,
            c0: fourier_c0(alpha, cfg.term_tol),
            harmonics: (1..=cfg.k_max)
                .map(|k| fourier_harmonic(alpha, k, cfg.term_tol))
                .collect(),
        })
    }

    /// `3^{1-α} [1 + C0 + Σ_k S_k cos 6kφ]`.
    pub fn eval(&self, phi: f64) -> f64 {
        let tail: f64 = self
            .harmonics
            .iter()
            .enumerate()
            .map(|(i, s)| s * (6.0 * (i + 1) as f64 * phi).cos())
            .sum();
        3f64.powf(1.0 - self.alpha) * (1.0 + self.c0 + tail)
    }
}

/// `M(φ)` through its truncated cosine series.
pub fn m_phi_fourier(alpha: f64, phi: f64, cfg: &FourierConfig) -> Result<f64> {
    Ok(FourierSeries::new(alpha, cfg)?.eval(phi))
}

/// Output of [`derivative_ratio_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeScan {
    /// `min -M'(φ) / sin 6φ` over the interior grid of `(0, π/6)`.
    pub min_ratio: f64,
    pub argmin_phi: f64,
    /// `M'(φ) ≤ 1e-9` at every grid point.
    pub all_negative_derivative: bool,
}

/// Central-difference scan of `-M'(φ)/sin 6φ` on `(0, π/6)` for `α > 2`.
pub fn derivative_ratio_scan(alpha: f64, grid_n: usize) -> Result<DerivativeScan> {
    if !(alpha > 2.0 && alpha.is_finite()) {
        return domain(format!(
            "derivative_ratio_scan needs alpha > 2, got {alpha}"
        ));
    }
    if grid_n < 1000 {
        return domain(format!("grid_n must be >= 1000, got {grid_n}"));
    }
    const H: f64 = 1e-6;
    let step = FRAC_PI_6 / grid_n as f64;
    let mut scan = DerivativeScan {
        min_ratio: f64::INFINITY,
        argmin_phi: f64::NAN,
        all_negative_derivative: true,
    };
    for i in 1..grid_n {
        let phi = i as f64 * step;
        let dm = (m_phi(alpha, phi + H) - m_phi(alpha, phi - H)) / (2.0 * H);
        let ratio = -dm / (6.0 * phi).sin();
        if ratio < scan.min_ratio {
            scan.min_ratio = ratio;
            scan.argmin_phi = phi;
        }
        if dm > 1e-9 {
            scan.all_negative_derivative = false;
        }
    }
    Ok(scan)
}

/// Below this `x` the quotient `g_α` is replaced by its Taylor expansion.
const G_TAYLOR_SWITCH: f64 = 1e-4;

/// `g_α(x) = ((1+x)^{2α} + (1-x)^{2α} - 2) / ((1+x²/3)^α - 1)` on `[0, 1]`.
///
/// Near `0` both sides vanish to second order; there the expansion
/// `6(2α-1) + 2(α-1)(α-2)(2α-1) x²` is used.
pub fn g_alpha(x: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 2.0 && alpha.is_finite()) {
        return domain(format!("g_alpha needs alpha > 2, got {alpha}"));
    }
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("g_alpha needs x in [0, 1], got {x}"));
    }
    Ok(g_unchecked(x, alpha))
}

fn g_unchecked(x: f64, alpha: f64) -> f64 {
    let k = 2.0 * alpha - 1.0;
    if x < G_TAYLOR_SWITCH {
        return 6.0 * k + 2.0 * (alpha - 1.0) * (alpha - 2.0) * k * x * x;
    }
    let p = 2.0 * alpha;
    let num = (p * x.ln_1p()).exp_m1() + (p * (-x).ln_1p()).exp_m1();
    let den = (alpha * (x * x / 3.0).ln_1p()).exp_m1();
    num / den
}

/// `((1+x)^{2(α-1)} + (1-x)^{2(α-1)}) / ((1+x)² + (1-x)²)^{α-1}`.
pub fn u1(x: f64, alpha: f64) -> f64 {
    let a = alpha - 1.0;
    ((1.0 + x).powf(2.0 * a) + (1.0 - x).powf(2.0 * a)) / (2.0 * (1.0 + x * x)).powf(a)
}

/// `((1+x)² + (1-x)²)^{α-1} / ((1+x²/3)^{α-2} (1 + (2α-1)x²/3))`, so that
/// `3(2α-1) u1 u2` is the ratio of second derivatives behind `g_α`.
pub fn u2(x: f64, alpha: f64) -> f64 {
    let x2 = x * x;
    (2.0 * (1.0 + x2)).powf(alpha - 1.0)
        / ((1.0 + x2 / 3.0).powf(alpha - 2.0) * (1.0 + (2.0 * alpha - 1.0) * x2 / 3.0))
}

/// Closed form of `(ln u2)'`:
/// `8x³(α-1)(α-2) / ((1+x²)(3+x²)(3+(2α-1)x²))`.
pub fn u2_log_derivative(x: f64, alpha: f64) -> f64 {
    let x2 = x * x;
    8.0 * x2 * x * (alpha - 1.0) * (alpha - 2.0)
        / ((1.0 + x2) * (3.0 + x2) * (3.0 + (2.0 * alpha - 1.0) * x2))
}

/// Grid evidence for the `α > 2` monotonicity argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub alpha: f64,
    pub grid_n: usize,
    /// Smallest consecutive difference of `g_α` on the grid.
    pub g_min_step: f64,
    /// `max g_α - (4^α + 2)`.
    pub g_max_excess: f64,
    pub u1_min_step: f64,
    pub u2_min_step: f64,
    /// Largest `|closed form - central difference|` of `(ln u2)'`.
    pub log_derivative_max_error: f64,
    pub g_monotone: bool,
    pub g_bounded: bool,
    pub u_monotone: bool,
    pub log_derivative_matches: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.g_monotone && self.g_bounded && self.u_monotone && self.log_derivative_matches
    }
}

fn min_step(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Checks on a uniform grid of `[0, 1]`: `g_α` nondecreasing, `g_α ≤ 4^α + 2`,
/// `u1` and `u2` nondecreasing, and the closed-form `(ln u2)'` against a
/// central difference.
pub fn theorem_chain_check(alpha: f64, grid_n: usize) -> Result<ChainReport> {
    if !(alpha > 2.0 && alpha.is_finite()) {
        return domain(format!("theorem_chain_check needs alpha > 2, got {alpha}"));
    }
    if grid_n < 2 {
        return domain("grid_n must be at least 2");
    }
    const SLACK: f64 = 1e-9;
    const H: f64 = 1e-6;
    let xs: Vec<f64> = (0..=grid_n).map(|i| i as f64 / grid_n as f64).collect();
    let g: Vec<f64> = xs.iter().map(|&x| g_unchecked(x, alpha)).collect();
    let v1: Vec<f64> = xs.iter().map(|&x| u1(x, alpha)).collect();
    let v2: Vec<f64> = xs.iter().map(|&x| u2(x, alpha)).collect();
    let bound = 4f64.powf(alpha) + 2.0;
    let g_max_excess = g
        .iter()
        .map(|v| v - bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let log_derivative_max_error = xs
        .iter()
        .filter(|&&x| (H..=1.0 - H).contains(&x))
        .map(|&x| {
            let fd = ((u2(x + H, alpha)).ln() - (u2(x - H, alpha)).ln()) / (2.0 * H);
            (fd - u2_log_derivative(x, alpha)).abs()
        })
        .fold(0.0, f64::max);
    let g_min_step = min_step(&g);
    let u1_min_step = min_step(&v1);
    let u2_min_step = min_step(&v2);
    Ok(ChainReport {
        alpha,
        grid_n,
        g_min_step,
        g_max_excess,
        u1_min_step,
        u2_min_step,
        log_derivative_max_error,
        g_monotone: g_min_step >= -SLACK,
        g_bounded: g_max_excess <= SLACK,
        u_monotone: u1_min_step >= -SLACK && u2_min_step >= -SLACK,
        log_derivative_matches: log_derivative_max_error <= 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn trig_vector_special_angles() {
        let x = trig_vector(FRAC_PI_6);
        let c = x.coords();
        assert!((c[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((c[1] + FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(c[2].abs() < 1e-15);
        let x = trig_vector(0.0);
        let c = x.coords();
        assert!((c[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((c[1] + 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((c[2] + 1.0 / 6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn m_phi_values() {
        for phi in [0.0, 0.1, 0.7, 2.0] {
            assert!((m_phi(2.0, phi) - 0.5).abs() < 1e-15);
        }
        assert!((m_phi(1.5, FRAC_PI_6) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((m_phi(3.0, 0.0) - 11.0 / 36.0).abs() < 1e-15);
    }

    #[test]
    fn c0_values() {
        // only n = 1 survives at α = 2
        assert_eq!(fourier_c0(2.0, 1e-15), 0.5);
        assert_eq!(fourier_c0(1.0, 1e-15), 0.0);
        // integer α terminates: at α = 3 terms n = 1 (3·2/4) only, n = 2 has factor (3-3)
        assert!((fourier_c0(3.0, 1e-15) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn series_constant_at_alpha_two() {
        let s = FourierSeries::new(2.0, &FourierConfig::default()).unwrap();
        assert!(s.harmonics.iter().all(|&h| h == 0.0));
        assert!((s.eval(0.3) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn series_matches_direct_for_smooth_cases() {
        let cfg = FourierConfig::default();
        let v = m_phi_fourier(2.5, 0.1, &cfg).unwrap();
        assert!(
            (v - m_phi(2.5, 0.1)).abs() < 1e-8,
            "{}",
            v - m_phi(2.5, 0.1)
        );
        let s = FourierSeries::new(4.0, &cfg).unwrap();
        for phi in [0.0, 0.2, 0.5] {
            assert!((s.eval(phi) - m_phi(4.0, phi)).abs() < 1e-13);
        }
    }

    #[test]
    fn fourier_config_invariants() {
        assert!(FourierConfig {
            k_max: 4,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(FourierConfig {
            term_tol: 1e-10,
            ..Default::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn derivative_scan() {
        let s = derivative_ratio_scan(3.0, 10_000).unwrap();
        assert!(s.min_ratio > 0.0 && s.all_negative_derivative);
        let s = derivative_ratio_scan(2.1, 10_000).unwrap();
        assert!(s.min_ratio > 0.0);
        assert!(derivative_ratio_scan(1.5, 10_000).is_err());
    }

    #[test]
    fn g_alpha_values() {
        let g1 = g_alpha(1.0, 3.0).unwrap();
        assert!((g1 - 62.0 * 27.0 / 37.0).abs() < 1e-12);
        assert!((g_alpha(0.0, 3.0).unwrap() - 30.0).abs() < 1e-15);
        // both sides of the Taylor switch agree
        let below = g_alpha(G_TAYLOR_SWITCH * (1.0 - 1e-9), 3.0).unwrap();
        let above = g_alpha(G_TAYLOR_SWITCH, 3.0).unwrap();
        assert!((below - above).abs() < 1e-9, "{below} {above}");
        for a in [2.1f64, 3.0, 5.0, 7.5] {
            let lhs = (4f64.powf(a) + 2.0) * ((4.0f64 / 3.0).powf(a) - 1.0) - (4f64.powf(a) - 2.0);
            let rhs = (4.0f64 / 3.0).powf(a) * (4f64.powf(a) + 2.0) - 2.0 * 4f64.powf(a);
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs() && rhs > 0.0);
            assert!(g_alpha(1.0, a).unwrap() < 4f64.powf(a) + 2.0);
        }
        assert!(g_alpha(0.5, 2.0).is_err());
        assert!(g_alpha(1.5, 3.0).is_err());
    }

    #[test]
    fn u2_log_derivative_vanishes_at_two() {
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(u2_log_derivative(x, 2.0), 0.0);
        }
        let (x, a, h) = (0.5, 5.0, 1e-6);
        let fd = (u2(x + h, a).ln() - u2(x - h, a).ln()) / (2.0 * h);
        assert!((fd - u2_log_derivative(x, a)).abs() < 1e-8);
    }

    #[test]
    fn chain_check_alpha_three() {
        let r = theorem_chain_check(3.0, 10_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(theorem_chain_check(2.0, 100).is_err());
    }
}
