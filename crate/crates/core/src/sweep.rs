//! Structured critical-point sweep.
//!
//! At a Lagrange critical point of `Σ |x_j|^{2α}` on the unit sphere of the
//! zero-sum hyperplane every coordinate solves the same scalar equation, which
//! has at most three roots. Up to permutation a critical point is therefore
//! `(s0 × k0, s1 × k1, s2 × k2)` for some [`Split`]. Eliminating `s0` with the
//! linear constraint leaves a positive definite quadratic form in `(s1, s2)`;
//! diagonalising it maps the remaining constraint onto a circle, so each split
//! reduces to a one-dimensional periodic problem in an angle `t`.
//!
//! [`m_numeric`] runs that reduction over every split of a dimension and
//! compares the extremum with both closed-form branches.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{golden_max, golden_min};
use crate::theory::{branch_spread, branch_two_point, OptimizationMode};

/// Relative tolerance under which two split extrema count as the same value;
/// the lexicographically smaller split wins such ties.
const TIE_REL: f64 = 1e-14;

/// Multiplicities of the three coordinate values of a critical point.
///
/// Ordering is lexicographic in `(k0, k1, k2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Split {
    pub k0: usize,
    pub k1: usize,
    pub k2: usize,
}

impl Split {
    pub fn new(k0: usize, k1: usize, k2: usize) -> Result<Self> {
        if k0 == 0 || k2 == 0 || k1 > k2 {
            return domain(format!(
                "invalid split ({k0},{k1},{k2}): need k0 >= 1, k2 >= 1, k1 <= k2"
            ));
        }
        Ok(Self { k0, k1, k2 })
    }

    pub fn d(&self) -> usize {
        self.k0 + self.k1 + self.k2
    }

    fn weights(&self) -> [f64; 3] {
        [self.k0 as f64, self.k1 as f64, self.k2 as f64]
    }
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.k0, self.k1, self.k2)
    }
}

/// All splits of `d` with `k0 >= 1`, `k2 >= 1`, `k1 <= k2`, in lexicographic order.
pub fn enumerate_splits(d: usize) -> Result<Vec<Split>> {
    if d < 3 {
        return domain(format!("dimension must be at least 3, got {d}"));
    }
    let mut out = Vec::with_capacity(d * d / 4 + d);
    for k0 in 1..d {
        for k1 in 0..=(d - k0) {
            let k2 = d - k0 - k1;
            if k2 >= 1 && k1 <= k2 {
                out.push(Split { k0, k1, k2 });
            }
        }
    }
    Ok(out)
}

/// Diagonalisation of `q(s1, s2) = A s1² + 2B s1 s2 + C s2²`, the constraint
/// `Σ k_i s_i² = 1` after eliminating `s0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub discriminant: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
}

/// Coefficients and eigen-decomposition of the constraint form of `split`.
///
/// `λ2` is taken as `det / λ1` rather than `(T - √D) / 2k0`, which loses
/// digits when `λ2 ≪ λ1`. Splits with `k1 = 0` are rejected; their
/// constraint set is two points, see [`two_value_candidate`].
pub fn diagonalize(split: Split) -> Result<DiagonalForm> {
    if split.k1 == 0 {
        return domain(format!("split {split} has k1 = 0; use two_value_candidate"));
    }
    let [k0, k1, k2] = split.weights();
    let d = k0 + k1 + k2;
    let a = k1 * (k1 + k0) / k0;
    let b = k1 * k2 / k0;
    let c = k2 * (k2 + k0) / k0;
    let trace_num = k0 * (k1 + k2) + k1 * k1 + k2 * k2;
    let discriminant = trace_num * trace_num - 4.0 * k0 * k1 * k2 * d;
    let lambda1 = (trace_num + discriminant.max(0.0).sqrt()) / (2.0 * k0);
    let lambda2 = (k1 * k2 * d / k0) / lambda1;
    let norm = (b * b + (a - lambda1).powi(2)).sqrt();
    let u1 = b / norm;
    let v1 = (lambda1 - a) / norm;
    Ok(DiagonalForm {
        a,
        b,
        c,
        discriminant,
        lambda1,
        lambda2,
        u1,
        u2: -v1,
        v1,
        v2: u1,
    })
}

/// A feasible three-value point `(s0 × k0, s1 × k1, s2 × k2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalCandidate {
    pub split: Split,
    /// Circle angle in `[0, 2π)`; `None` for two-value candidates.
    pub t: Option<f64>,
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    /// `Σ k_i |s_i|^{2α}` once evaluated.
    pub value: Option<f64>,
}

impl CriticalCandidate {
    /// `Σ k_i s_i`.
    pub fn linear_residual(&self) -> f64 {
        let [k0, k1, k2] = self.split.weights();
        k0 * self.s0 + k1 * self.s1 + k2 * self.s2
    }

    /// `Σ k_i s_i² - 1`.
    pub fn quadratic_residual(&self) -> f64 {
        let [k0, k1, k2] = self.split.weights();
        k0 * self.s0 * self.s0 + k1 * self.s1 * self.s1 + k2 * self.s2 * self.s2 - 1.0
    }

    /// The full `d`-dimensional vector.
    pub fn expand(&self) -> Vec<f64> {
        let s = &self.split;
        let mut x = Vec::with_capacity(s.d());
        x.extend(std::iter::repeat_n(self.s0, s.k0));
        x.extend(std::iter::repeat_n(self.s1, s.k1));
        x.extend(std::iter::repeat_n(self.s2, s.k2));
        x
    }

    pub fn evaluated(mut self, alpha: f64) -> Self {
        self.value = Some(objective(&self.split, &self, alpha));
        self
    }
}

/// The point of the constraint circle at angle `t`.
pub fn candidate_vector(form: &DiagonalForm, split: Split, t: f64) -> CriticalCandidate {
    let c1 = t.cos() / form.lambda1.sqrt();
    let c2 = t.sin() / form.lambda2.sqrt();
    let s1 = form.u1 * c1 + form.u2 * c2;
    let s2 = form.v1 * c1 + form.v2 * c2;
    let [k0, k1, k2] = split.weights();
    CriticalCandidate {
        split,
        t: Some(t.rem_euclid(TAU)),
        s0: -(k1 * s1 + k2 * s2) / k0,
        s1,
        s2,
        value: None,
    }
}

/// The two-value point of split `(k0, 0, k2)` with `s2 > 0 > s0`.
pub fn two_value_candidate(k0: usize, k2: usize) -> Result<CriticalCandidate> {
    if k0 == 0 || k2 == 0 || k0 + k2 < 3 {
        return domain(format!("invalid two-value split ({k0},0,{k2})"));
    }
    let (s0, s2) = two_value_pair(k0 as f64, k2 as f64);
    Ok(CriticalCandidate {
        split: Split { k0, k1: 0, k2 },
        t: None,
        s0,
        s1: 0.0,
        s2,
        value: None,
    })
}

/// `(a, b)` with `ka·a + kb·b = 0`, `ka·a² + kb·b² = 1`, `a < 0 < b`.
fn two_value_pair(ka: f64, kb: f64) -> (f64, f64) {
    let n = ka + kb;
    (-(kb / (ka * n)).sqrt(), (ka / (kb * n)).sqrt())
}

/// `Σ k_i |s_i|^{2α}`.
pub fn objective(split: &Split, candidate: &CriticalCandidate, alpha: f64) -> f64 {
    let p = 2.0 * alpha;
    let [k0, k1, k2] = split.weights();
    k0 * candidate.s0.abs().powf(p)
        + k1 * candidate.s1.abs().powf(p)
        + k2 * candidate.s2.abs().powf(p)
}

/// Tunables of the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Coarse grid size over `[0, 2π)`.
    pub grid_points: usize,
    /// Golden-section stopping width in `t`.
    pub refine_tol: f64,
    /// Confirmation tolerance on `|M_num - M_branch|`.
    pub eps: f64,
    /// Worker threads used by [`verify_range`].
    pub parallelism: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid_points: 512,
            refine_tol: 1e-10,
            eps: 1e-8,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 64 {
            return Err(Error::Config(format!(
                "grid_points must be >= 64, got {}",
                self.grid_points
            )));
        }
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::Config(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.refine_tol.is_nan() || self.refine_tol <= 0.0 {
            return Err(Error::Config(format!(
                "refine_tol must be positive, got {}",
                self.refine_tol
            )));
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be >= 1".into()));
        }
        Ok(())
    }
}

/// `s_i(t) = a_i cos t + b_i sin t` for one split.
struct CircleMap {
    split: Split,
    form: DiagonalForm,
    a: [f64; 3],
    b: [f64; 3],
    w: [f64; 3],
}

impl CircleMap {
    fn new(split: Split) -> Result<Self> {
        let form = diagonalize(split)?;
        let w = split.weights();
        let r1 = form.lambda1.sqrt().recip();
        let r2 = form.lambda2.sqrt().recip();
        let (a1, b1) = (form.u1 * r1, form.u2 * r2);
        let (a2, b2) = (form.v1 * r1, form.v2 * r2);
        let a0 = -(w[1] * a1 + w[2] * a2) / w[0];
        let b0 = -(w[1] * b1 + w[2] * b2) / w[0];
        Ok(Self {
            split,
            form,
            a: [a0, a1, a2],
            b: [b0, b1, b2],
            w,
        })
    }

    fn value(&self, t: f64, p: f64) -> f64 {
        let (sin, cos) = t.sin_cos();
        (0..3)
            .map(|i| self.w[i] * (self.a[i] * cos + self.b[i] * sin).abs().powf(p))
            .sum()
    }

    /// Points where group `i` vanishes, with the other two groups rebuilt in
    /// closed form so that the zero is exact.
    fn zero_crossings(&self) -> impl Iterator<Item = CriticalCandidate> + '_ {
        (0..3).flat_map(move |i| {
            let t0 = (-self.a[i]).atan2(self.b[i]);
            [t0, t0 + PI].into_iter().map(move |t| {
                let mut c = candidate_vector(&self.form, self.split, t);
                let (j, l) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let mut s = [c.s0, c.s1, c.s2];
                let (neg, pos) = two_value_pair(self.w[j], self.w[l]);
                let flip = if s[j] <= 0.0 { 1.0 } else { -1.0 };
                s[i] = 0.0;
                s[j] = flip * neg;
                s[l] = flip * pos;
                c.s0 = s[0];
                c.s1 = s[1];
                c.s2 = s[2];
                c
            })
        })
    }
}

/// Extremum of `f(t) = Σ k_i |s_i(t)|^{2α}` over the constraint circle of `split`.
///
/// A uniform grid of `cfg.grid_points` angles is refined by golden-section
/// search around every grid-local extremum. The exact zero crossings of each
/// `s_i(t)` are evaluated as well: for `α ≤ 1/2` the objective has cusps
/// there and a bracketing search cannot reach them to useful accuracy.
pub fn optimize_split(
    split: Split,
    alpha: f64,
    mode: OptimizationMode,
    cfg: &SweepConfig,
) -> Result<CriticalCandidate> {
    cfg.validate()?;
    if split.k1 == 0 {
        return Ok(two_value_candidate(split.k0, split.k2)?.evaluated(alpha));
    }
    let map = CircleMap::new(split)?;
    let p = 2.0 * alpha;
    let n = cfg.grid_points;
    let h = TAU / n as f64;
    let grid: Vec<f64> = (0..n).map(|i| map.value(i as f64 * h, p)).collect();
    let sgn = mode.sign();

    let mut best_t = 0.0;
    let mut best_v = grid[0];
    let mut consider = |t: f64, v: f64| {
        if mode.improves(v, best_v, 0.0) {
            best_t = t;
            best_v = v;
        }
    };
    for i in 0..n {
        let prev = grid[(i + n - 1) % n];
        let next = grid[(i + 1) % n];
        if sgn * grid[i] >= sgn * prev && sgn * grid[i] >= sgn * next {
            let t = i as f64 * h;
            let f = |t: f64| map.value(t, p);
            let (tr, vr) = match mode {
                OptimizationMode::Maximize => golden_max(f, t - h, t + h, cfg.refine_tol),
                OptimizationMode::Minimize => golden_min(f, t - h, t + h, cfg.refine_tol),
            };
            consider(tr, vr);
        }
    }
    let mut best = candidate_vector(&map.form, split, best_t).evaluated(alpha);
    for c in map.zero_crossings() {
        let c = c.evaluated(alpha);
        if mode.improves(c.value.unwrap(), best.value.unwrap(), 0.0) {
            best = c;
        }
    }
    Ok(best)
}

/// Which closed-form branch the numeric extremum matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchedBranch {
    TwoPoint,
    Spread,
    Both,
    None,
}

impl MatchedBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TwoPoint => "TwoPoint",
            Self::Spread => "Spread",
            Self::Both => "Both",
            Self::None => "None",
        }
    }
}

/// Result of verifying one `(d, α)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub d: usize,
    pub alpha: f64,
    pub m_numeric: f64,
    pub theory_two_point: f64,
    pub theory_spread: f64,
    /// `|M_num - spread|`.
    pub delta1: f64,
    /// `|M_num - two-point|`.
    pub delta2: f64,
    pub confirmed: bool,
    pub matched_branch: MatchedBranch,
    pub best_candidate: CriticalCandidate,
}

/// Global numeric extremum over all splits of `d`, checked against both branches.
pub fn m_numeric(d: usize, alpha: f64, cfg: &SweepConfig) -> Result<VerificationRecord> {
    cfg.validate()?;
    let mode = OptimizationMode::for_alpha(alpha)?;
    let splits = enumerate_splits(d)?;
    let per_split: Vec<CriticalCandidate> = splits
        .par_iter()
        .map(|&s| optimize_split(s, alpha, mode, cfg))
        .collect::<Result<_>>()?;

    // sequential reduction in split order keeps ties deterministic
    let mut best = per_split[0];
    for c in &per_split[1..] {
        let (v, b) = (c.value.unwrap(), best.value.unwrap());
        if mode.improves(v, b, TIE_REL * b.abs().max(1.0)) {
            best = *c;
        }
    }
    let m = best.value.unwrap();
    let two = branch_two_point(alpha)?;
    let spread = branch_spread(d, alpha)?;
    let delta1 = (m - spread).abs();
    let delta2 = (m - two).abs();
    let (valid1, valid2) = (delta1 <= cfg.eps, delta2 <= cfg.eps);
    let matched_branch = match (valid1, valid2) {
        (true, true) => MatchedBranch::Both,
        (true, false) => MatchedBranch::Spread,
        (false, true) => MatchedBranch::TwoPoint,
        (false, false) => MatchedBranch::None,
    };
    Ok(VerificationRecord {
        d,
        alpha,
        m_numeric: m,
        theory_two_point: two,
        theory_spread: spread,
        delta1,
        delta2,
        confirmed: valid1 || valid2,
        matched_branch,
        best_candidate: best,
    })
}

/// One record per `(d, α)`, α-major, run on a pool of `cfg.parallelism` threads.
pub fn verify_range(
    d_min: usize,
    d_max: usize,
    alphas: &[f64],
    cfg: &SweepConfig,
) -> Result<Vec<VerificationRecord>> {
    cfg.validate()?;
    if d_min < 3 || d_min > d_max {
        return domain(format!("need 3 <= d_min <= d_max, got {d_min}..{d_max}"));
    }
    for &a in alphas {
        OptimizationMode::for_alpha(a)?;
    }
    let pairs: Vec<(f64, usize)> = alphas
        .iter()
        .flat_map(|&a| (d_min..=d_max).map(move |d| (a, d)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| {
        pairs
            .par_iter()
            .map(|&(a, d)| m_numeric(d, a, cfg))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(k0: usize, k1: usize, k2: usize) -> Split {
        Split::new(k0, k1, k2).unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(
            enumerate_splits(3).unwrap(),
            vec![split(1, 0, 2), split(1, 1, 1), split(2, 0, 1)]
        );
        assert_eq!(
            enumerate_splits(4).unwrap(),
            vec![
                split(1, 0, 3),
                split(1, 1, 2),
                split(2, 0, 2),
                split(2, 1, 1),
                split(3, 0, 1)
            ]
        );
        assert!(enumerate_splits(2).is_err());
    }

    #[test]
    fn enumerate_count_quadratic() {
        for d in [10usize, 57, 200] {
            let splits = enumerate_splits(d).unwrap();
            // for each k0, k1 ranges over 0..=floor((d-k0)/2)
            let expected: usize = (1..d).map(|k0| (d - k0) / 2 + 1).sum();
            assert_eq!(splits.len(), expected);
            let approx = (d * d) as f64 / 4.0;
            assert!((splits.len() as f64 - approx).abs() < d as f64);
            assert!(splits.windows(2).all(|w| w[0] < w[1]));
            assert!(splits
                .iter()
                .all(|s| s.d() == d && s.k0 >= 1 && s.k2 >= 1 && s.k1 <= s.k2));
        }
    }

    #[test]
    fn split_validation() {
        assert!(Split::new(0, 1, 2).is_err());
        assert!(Split::new(1, 2, 1).is_err());
        assert!(Split::new(1, 0, 0).is_err());
    }

    #[test]
    fn diagonalize_hand_values() {
        let f = diagonalize(split(1, 1, 1)).unwrap();
        assert_eq!((f.a, f.b, f.c), (2.0, 1.0, 2.0));
        assert_eq!(f.discriminant, 4.0);
        assert!((f.lambda1 - 3.0).abs() < 1e-15 && (f.lambda2 - 1.0).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.u1 - r).abs() < 1e-15 && (f.v1 - r).abs() < 1e-15);
        assert_eq!((f.u2, f.v2), (-f.v1, f.u1));

        let f = diagonalize(split(2, 1, 1)).unwrap();
        assert_eq!((f.a, f.b, f.c), (1.5, 0.5, 1.5));
        assert_eq!(f.discriminant, 4.0);
        assert!((f.lambda1 - 2.0).abs() < 1e-15 && (f.lambda2 - 1.0).abs() < 1e-15);

        assert!(diagonalize(split(1, 0, 2)).is_err());
    }

    #[test]
    fn circle_point_at_zero_angle() {
        let s = split(1, 1, 1);
        let f = diagonalize(s).unwrap();
        let c = candidate_vector(&f, s, 0.0);
        let r6 = 1.0 / 6f64.sqrt();
        assert!((c.s1 - r6).abs() < 1e-15 && (c.s2 - r6).abs() < 1e-15);
        assert!((c.s0 + 2.0 * r6).abs() < 1e-15);
    }

    #[test]
    fn circle_reaches_two_point_configuration() {
        // solve for (cos t/√λ1, sin t/√λ2) giving (s1, s2) = (0, 1/√2)
        let s = split(1, 1, 1);
        let f = diagonalize(s).unwrap();
        let (s1, s2) = (0.0, std::f64::consts::FRAC_1_SQRT_2);
        // rotation is orthogonal: c = Rᵀ s
        let c1 = f.u1 * s1 + f.v1 * s2;
        let c2 = f.u2 * s1 + f.v2 * s2;
        let t = (c2 * f.lambda2.sqrt()).atan2(c1 * f.lambda1.sqrt());
        let c = candidate_vector(&f, s, t);
        assert!((c.s0 + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(c.s1.abs() < 1e-15);
        assert!((c.s2 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn two_value_closed_form() {
        let c = two_value_candidate(1, 2).unwrap();
        assert!((c.s2 - (1.0f64 / 6.0).sqrt()).abs() < 1e-15);
        assert!((c.s0 + (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let d = 9;
        let c = two_value_candidate(d - 1, 1).unwrap();
        assert!((c.s2 - ((d as f64 - 1.0) / d as f64).sqrt()).abs() < 1e-15);
        assert!(c.linear_residual().abs() < 1e-15 && c.quadratic_residual().abs() < 1e-15);
        assert!(two_value_candidate(0, 3).is_err());
    }

    #[test]
    fn objective_values() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = split(1, 1, 1);
        let c = CriticalCandidate {
            split: s,
            t: None,
            s0: -r,
            s1: 0.0,
            s2: r,
            value: None,
        };
        assert!((objective(&s, &c, 2.0) - 0.5).abs() < 1e-15);

        let c = two_value_candidate(6, 1).unwrap();
        let v = objective(&c.split, &c, 2.0);
        assert!((v - branch_spread(7, 2.0).unwrap()).abs() < 1e-15);
        assert!((v - (36.0 + 1.0 / 6.0) / 49.0).abs() < 1e-15);

        let f = diagonalize(split(2, 3, 4)).unwrap();
        for k in 0..20 {
            let c = candidate_vector(&f, split(2, 3, 4), 0.31 * k as f64);
            assert!((objective(&c.split, &c, 1.0) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn optimize_d3_known_maximizers() {
        let cfg = SweepConfig::default();
        let s = split(1, 1, 1);
        let c = optimize_split(s, 1.5, OptimizationMode::Maximize, &cfg).unwrap();
        assert!((c.value.unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        // two-point: one coordinate is zero
        assert!([c.s0, c.s1, c.s2].iter().any(|s| s.abs() < 1e-6));
        let c = optimize_split(s, 3.0, OptimizationMode::Maximize, &cfg).unwrap();
        assert!((c.value.unwrap() - 11.0 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn objective_constant_at_alpha_two_in_d3() {
        let s = split(1, 1, 1);
        let f = diagonalize(s).unwrap();
        let vals: Vec<f64> = (0..512)
            .map(|i| {
                let c = candidate_vector(&f, s, TAU * i as f64 / 512.0);
                objective(&s, &c, 2.0)
            })
            .collect();
        let (lo, hi) = vals
            .iter()
            .fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
        assert!(hi - lo <= 1e-12, "{}", hi - lo);
    }

    #[test]
    fn m_numeric_examples() {
        let cfg = SweepConfig::default();
        let r = m_numeric(3, 2.0, &cfg).unwrap();
        assert!((r.m_numeric - 0.5).abs() < 1e-12);
        assert_eq!(r.matched_branch, MatchedBranch::Both);

        let r = m_numeric(10, 1.5, &cfg).unwrap();
        assert!((r.m_numeric - branch_spread(10, 1.5).unwrap()).abs() < 1e-12);
        assert_eq!(r.matched_branch, MatchedBranch::Spread);

        let r = m_numeric(7, 0.55, &cfg).unwrap();
        assert!((r.m_numeric - 2f64.powf(0.45)).abs() < 1e-12);
        assert_eq!(r.matched_branch, MatchedBranch::TwoPoint);
        assert!(m_numeric(7, 1.0, &cfg).is_err());
    }

    #[test]
    fn small_alpha_reaches_cusp_exactly() {
        let cfg = SweepConfig::default();
        for d in [3, 4, 9] {
            let r = m_numeric(d, 0.05, &cfg).unwrap();
            assert!(r.delta2 < 1e-12, "d={d}: {}", r.delta2);
        }
    }

    #[test]
    fn verify_range_edges() {
        let cfg = SweepConfig::default();
        assert!(verify_range(3, 10, &[], &cfg).unwrap().is_empty());
        assert!(verify_range(2, 10, &[1.5], &cfg).is_err());
        assert!(verify_range(5, 4, &[1.5], &cfg).is_err());
        assert!(verify_range(3, 4, &[1.0], &cfg).is_err());
        let recs = verify_range(3, 10, &[3.0], &cfg).unwrap();
        assert_eq!(recs.len(), 8);
        assert!(recs
            .iter()
            .all(|r| r.confirmed && r.matched_branch == MatchedBranch::Spread));
    }

    #[test]
    fn config_validation() {
        let cfg = SweepConfig {
            grid_points: 32,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SweepConfig {
            eps: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
