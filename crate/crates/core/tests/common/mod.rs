//! Property checks shared by the property suite and the acceptance run.

#![allow(dead_code)]

use lpbound::sweep::{candidate_vector, diagonalize, objective, Split};
use lpbound::theory::{check_inequality, m_theory, HyperplaneVector};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Splits of `3 ≤ d ≤ max_d` with `k1 ≥ 1`.
pub fn split_with_middle(max_d: usize) -> impl Strategy<Value = Split> {
    (3..=max_d)
        .prop_flat_map(|d| (Just(d), 1..=d - 2))
        .prop_flat_map(|(d, k0)| (Just(d), Just(k0), 1..=(d - k0) / 2))
        .prop_map(|(d, k0, k1)| Split::new(k0, k1, d - k0 - k1).unwrap())
}

/// Nonzero vectors of `d ∈ [3, max_d]` projected onto the zero-sum hyperplane.
pub fn hyperplane_vector(max_d: usize) -> impl Strategy<Value = Vec<f64>> {
    (3..=max_d)
        .prop_flat_map(|d| prop::collection::vec(-1.0f64..1.0, d))
        .prop_map(|mut x| {
            let mean = x.iter().sum::<f64>() / x.len() as f64;
            x.iter_mut().for_each(|v| *v -= mean);
            x
        })
        .prop_filter("nonzero", |x| x.iter().map(|v| v * v).sum::<f64>() > 1e-6)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// Circle points satisfy both constraints.
pub fn candidate_feasibility(cases: u32) -> Result<(), String> {
    run(
        cases,
        (split_with_middle(60), 0.0..std::f64::consts::TAU),
        |(split, t)| {
            let form = diagonalize(split).unwrap();
            let c = candidate_vector(&form, split, t);
            prop_assert!(
                c.linear_residual().abs() <= 1e-12,
                "linear {}",
                c.linear_residual()
            );
            prop_assert!(
                c.quadratic_residual().abs() <= 1e-12,
                "quadratic {}",
                c.quadratic_residual()
            );
            Ok(())
        },
    )
}

/// `λ1 + λ2 = A + C` and `λ1 λ2 = k1 k2 d / k0`.
pub fn eigen_identities(cases: u32) -> Result<(), String> {
    run(cases, split_with_middle(400), |split| {
        let f = diagonalize(split).unwrap();
        let (k0, k1, k2) = (split.k0 as f64, split.k1 as f64, split.k2 as f64);
        let det = k1 * k2 * split.d() as f64 / k0;
        let trace = f.a + f.c;
        prop_assert!((f.lambda1 + f.lambda2 - trace).abs() <= 1e-12 * trace);
        prop_assert!((f.lambda1 * f.lambda2 - det).abs() <= 1e-10 * det);
        prop_assert!((f.a * f.c - f.b * f.b - det).abs() <= 1e-10 * det);
        prop_assert!(f.lambda1 >= f.lambda2 && f.lambda2 > 0.0);
        Ok(())
    })
}

/// The power sum ignores coordinate order and a global sign, and the sweep
/// objective equals the power sum of the expanded candidate.
pub fn objective_symmetry(cases: u32) -> Result<(), String> {
    let strategy = (hyperplane_vector(12), 0.1f64..5.0, any::<u64>());
    run(cases, strategy, |(x, alpha, shuffle)| {
        let v = HyperplaneVector::new(x.clone()).unwrap();
        let base = v.power_sum(alpha);
        let mut perm = x.clone();
        let n = perm.len();
        let mut s = shuffle;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s = s.rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15;
        }
        let neg: Vec<f64> = x.iter().map(|c| -c).collect();
        let tol = 1e-13 * base.max(1.0);
        prop_assert!((HyperplaneVector::new(perm).unwrap().power_sum(alpha) - base).abs() <= tol);
        prop_assert!((HyperplaneVector::new(neg).unwrap().power_sum(alpha) - base).abs() <= tol);
        Ok(())
    })?;
    run(
        cases,
        (
            split_with_middle(40),
            0.0..std::f64::consts::TAU,
            0.1f64..5.0,
        ),
        |(split, t, alpha)| {
            let c = candidate_vector(&diagonalize(split).unwrap(), split, t);
            let direct = HyperplaneVector::new(c.expand()).unwrap().power_sum(alpha);
            let grouped = objective(&split, &c, alpha);
            prop_assert!((direct - grouped).abs() <= 1e-12 * direct.max(1.0));
            Ok(())
        },
    )
}

/// Padding with a zero embeds `d` into `d + 1` without changing the power sum,
/// so the extremum can only grow (`α > 1`) or shrink (`α < 1`) with `d`.
pub fn embedding_monotonicity(cases: u32) -> Result<(), String> {
    let alpha = prop_oneof![0.05f64..0.999, 1.001f64..6.0];
    run(cases, (3usize..300, alpha), |(d, alpha)| {
        let here = m_theory(d, alpha).unwrap().value;
        let next = m_theory(d + 1, alpha).unwrap().value;
        let tol = 1e-12 * here;
        if alpha > 1.0 {
            prop_assert!(next >= here - tol, "d={d} alpha={alpha}: {next} < {here}");
        } else {
            prop_assert!(next <= here + tol, "d={d} alpha={alpha}: {next} > {here}");
        }
        Ok(())
    })?;
    run(cases, (hyperplane_vector(10), 0.1f64..5.0), |(x, alpha)| {
        let base = HyperplaneVector::new(x.clone()).unwrap().power_sum(alpha);
        let mut padded = x;
        padded.push(0.0);
        let up = HyperplaneVector::new(padded).unwrap().power_sum(alpha);
        prop_assert!((up - base).abs() <= 1e-15 * base.max(1.0));
        Ok(())
    })
}

/// Random hyperplane vectors never violate the inequality.
pub fn inequality_on_random_vectors(cases: u32) -> Result<(), String> {
    let strategy = (
        hyperplane_vector(10),
        prop_oneof![Just(0.7f64), Just(1.5f64)],
    );
    run(cases, strategy, |(x, alpha)| {
        let v = HyperplaneVector::new(x).unwrap();
        let c = check_inequality(&v, alpha).unwrap();
        prop_assert!(
            c.satisfied,
            "ratio {} bound {} alpha {}",
            c.ratio,
            c.bound,
            alpha
        );
        Ok(())
    })
}
