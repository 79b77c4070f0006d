//! Brute-force extremisation on the unit sphere of the zero-sum hyperplane.
//!
//! Nothing here uses the three-value structure exploited by
//! [`crate::sweep`]; the oracle only knows the objective, its gradient and the
//! two constraints. It is probabilistic evidence, not a certificate.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{golden_max, golden_min};
use crate::theory::OptimizationMode;
use crate::trig3::m_phi;

/// Magnitude floor used when a gradient is singular at zero coordinates.
const GRADIENT_FLOOR: f64 = 1e-12;

/// Armijo sufficient-increase constant.
const ARMIJO: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Local search stops once an accepted step is shorter than this.
    pub step_tol: f64,
    /// Angle grid size of [`oracle_d3`].
    pub grid_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 20_000,
            seed: 0x5eed,
            step_tol: 1e-13,
            grid_n: 100_000,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 8 {
            return Err(Error::Config(format!(
                "restarts must be >= 8, got {}",
                self.restarts
            )));
        }
        if self.grid_n < 10_000 {
            return Err(Error::Config(format!(
                "grid_n must be >= 10^4, got {}",
                self.grid_n
            )));
        }
        if self.max_iters == 0 || self.step_tol.is_nan() || self.step_tol <= 0.0 {
            return Err(Error::Config(
                "max_iters and step_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Extremum of `M(φ)` for `d = 3` by a dense angle grid plus golden refinement.
///
/// `M` has period `π/3` and is even about `0` and `π/6`, so the grid covers
/// `[0, π/3]` and the returned angle is folded into `[0, π/6]`.
pub fn oracle_d3(alpha: f64, mode: OptimizationMode, grid_n: usize) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return domain(format!(
            "oracle_d3 needs alpha > 0, alpha != 1; got {alpha}"
        ));
    }
    if grid_n < 2 {
        return domain("grid_n must be at least 2");
    }
    let h = FRAC_PI_3 / grid_n as f64;
    let sgn = mode.sign();
    let mut best_i = 0;
    let mut best_v = sgn * m_phi(alpha, 0.0);
    for i in 1..=grid_n {
        let v = sgn * m_phi(alpha, i as f64 * h);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let centre = best_i as f64 * h;
    let f = |phi: f64| m_phi(alpha, phi);
    let (phi, value) = match mode {
        OptimizationMode::Maximize => golden_max(f, centre - h, centre + h, 1e-12),
        OptimizationMode::Minimize => golden_min(f, centre - h, centre + h, 1e-12),
    };
    // keep the grid point if refinement did not help (flat M at α = 2)
    let (phi, value) = if sgn * value >= best_v {
        (phi, value)
    } else {
        (centre, sgn * best_v)
    };
    let folded = phi.rem_euclid(FRAC_PI_3);
    let folded = if folded > FRAC_PI_6 {
        FRAC_PI_3 - folded
    } else {
        folded
    };
    Ok((value, folded))
}

/// A smooth-enough objective on the sphere.
trait SphereObjective: Sync {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64], g: &mut [f64]);
}

/// `Σ |x_j|^p` with `p = 2α`.
struct PowerSum {
    p: f64,
}

impl SphereObjective for PowerSum {
    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v.abs().powf(self.p)).sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (gi, &xi) in g.iter_mut().zip(x) {
            let mag = if self.p < 1.0 {
                xi.abs().max(GRADIENT_FLOOR)
            } else {
                xi.abs()
            };
            *gi = self.p * xi.signum() * mag.powf(self.p - 1.0);
        }
    }
}

/// Shannon entropy `-Σ x_j² ln x_j²` of the squared coordinates.
struct SquaredEntropy;

impl SphereObjective for SquaredEntropy {
    fn value(&self, x: &[f64]) -> f64 {
        x.iter()
            .map(|v| {
                let q = v * v;
                if q > 0.0 {
                    -q * q.ln()
                } else {
                    0.0
                }
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (gi, &xi) in g.iter_mut().zip(x) {
            let mag = xi.abs().max(GRADIENT_FLOOR);
            *gi = -2.0 * xi * ((mag * mag).ln() + 1.0);
        }
    }
}

/// Best point found by [`oracle_general`] or [`oracle_shannon`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub value: f64,
    pub point: Vec<f64>,
    /// Largest `max(|Σx|, |Σx² - 1|)` over every accepted iterate of every restart.
    pub max_feasibility_residual: f64,
}

/// Subtracts the mean over `active` coordinates, zeroes the rest, and scales to
/// unit norm. Returns false for a (numerically) zero vector.
fn retract(x: &mut [f64], active: &[bool]) -> bool {
    let n_active = active.iter().filter(|&&a| a).count() as f64;
    let mean = x
        .iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(v, _)| v)
        .sum::<f64>()
        / n_active;
    for (v, &a) in x.iter_mut().zip(active) {
        *v = if a { *v - mean } else { 0.0 };
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-300 {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

fn feasibility_residual(x: &[f64]) -> f64 {
    let s: f64 = x.iter().sum();
    let q: f64 = x.iter().map(|v| v * v).sum();
    s.abs().max((q - 1.0).abs())
}

struct LocalResult {
    x: Vec<f64>,
    value: f64,
    max_residual: f64,
}

/// Projected gradient ascent (`sgn = 1`) or descent (`sgn = -1`) with
/// backtracking, restricted to the coordinates marked `active`.
fn local_search(
    obj: &dyn SphereObjective,
    mut x: Vec<f64>,
    active: &[bool],
    sgn: f64,
    cfg: &OracleConfig,
) -> LocalResult {
    let d = x.len();
    let n_active = active.iter().filter(|&&a| a).count() as f64;
    let mut g = vec![0.0; d];
    let mut y = vec![0.0; d];
    let mut f = obj.value(&x);
    let mut eta = 0.1;
    let mut max_residual = feasibility_residual(&x);

    for _ in 0..cfg.max_iters {
        obj.gradient(&x, &mut g);
        // tangent space of {Σx = 0, ‖x‖ = 1} on the active coordinates
        let mean = g
            .iter()
            .zip(active)
            .filter(|(_, &a)| a)
            .map(|(v, _)| v)
            .sum::<f64>()
            / n_active;
        for (gi, &a) in g.iter_mut().zip(active) {
            *gi = if a { *gi - mean } else { 0.0 };
        }
        let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
        for (gi, &xi) in g.iter_mut().zip(&x) {
            *gi -= radial * xi;
        }
        let gn2: f64 = g.iter().map(|v| v * v).sum();
        if gn2 == 0.0 {
            break;
        }

        let mut accepted = None;
        while eta * gn2.sqrt() >= cfg.step_tol {
            for i in 0..d {
                y[i] = x[i] + sgn * eta * g[i];
            }
            if retract(&mut y, active) {
                let fy = obj.value(&y);
                if sgn * (fy - f) >= ARMIJO * eta * gn2 {
                    accepted = Some(fy);
                    break;
                }
            }
            eta *= 0.5;
        }
        let Some(fy) = accepted else { break };
        let step = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        std::mem::swap(&mut x, &mut y);
        f = fy;
        max_residual = max_residual.max(feasibility_residual(&x));
        eta = (eta * 2.0).min(1e6);
        if step < cfg.step_tol {
            break;
        }
    }
    LocalResult {
        x,
        value: f,
        max_residual,
    }
}

/// One restart: a full-support local search from a random start, then greedy
/// support reduction (zero the smallest active coordinate and search again)
/// while that keeps improving. Minimisers with exact zeros are only reached
/// in the limit by gradient steps; the reduction lands on them directly.
fn restart(
    obj: &dyn SphereObjective,
    d: usize,
    mode: OptimizationMode,
    cfg: &OracleConfig,
    index: usize,
) -> LocalResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut x: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mut active = vec![true; d];
    while !retract(&mut x, &active) {
        x = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
    }
    let sgn = mode.sign();
    let mut best = local_search(obj, x, &active, sgn, cfg);
    let mut max_residual = best.max_residual;

    while active.iter().filter(|&&a| a).count() > 2 {
        let (j, _) = best
            .x
            .iter()
            .enumerate()
            .filter(|(i, _)| active[*i])
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        let mut trial_active = active.clone();
        trial_active[j] = false;
        let mut start = best.x.clone();
        if !retract(&mut start, &trial_active) {
            break;
        }
        let trial = local_search(obj, start, &trial_active, sgn, cfg);
        max_residual = max_residual.max(trial.max_residual);
        if mode.improves(trial.value, best.value, 0.0) {
            best = trial;
            active = trial_active;
        } else {
            break;
        }
    }
    best.max_residual = max_residual;
    best
}

fn multi_start(
    obj: &dyn SphereObjective,
    d: usize,
    mode: OptimizationMode,
    cfg: &OracleConfig,
) -> OracleOutcome {
    let results: Vec<LocalResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| restart(obj, d, mode, cfg, r))
        .collect();
    let max_residual = results.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let best = results
        .into_iter()
        .reduce(|a, b| {
            if mode.improves(b.value, a.value, 0.0) {
                b
            } else {
                a
            }
        })
        .expect("restarts >= 8");
    OracleOutcome {
        value: best.value,
        point: best.x,
        max_feasibility_residual: max_residual,
    }
}

/// Extremum of `Σ |x_j|^{2α}` over unit `x` with `Σ x_j = 0`, by multi-start
/// projected gradient search. Deterministic for a given `cfg.seed`.
pub fn oracle_general(
    d: usize,
    alpha: f64,
    mode: OptimizationMode,
    cfg: &OracleConfig,
) -> Result<OracleOutcome> {
    cfg.validate()?;
    if d < 3 {
        return domain(format!("dimension must be at least 3, got {d}"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return domain(format!("oracle needs alpha > 0, alpha != 1; got {alpha}"));
    }
    Ok(multi_start(&PowerSum { p: 2.0 * alpha }, d, mode, cfg))
}

/// Minimum of the Shannon entropy of `(x_1², …, x_d²)` over the same set.
pub fn oracle_shannon(d: usize, cfg: &OracleConfig) -> Result<OracleOutcome> {
    cfg.validate()?;
    if d < 3 {
        return domain(format!("dimension must be at least 3, got {d}"));
    }
    Ok(multi_start(
        &SquaredEntropy,
        d,
        OptimizationMode::Minimize,
        cfg,
    ))
}
