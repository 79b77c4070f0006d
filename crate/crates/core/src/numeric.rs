//! One-dimensional root finding and extremum refinement.

/// Golden-section ratio `(3 - sqrt 5) / 2`.
const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Bisection on a bracket `[lo, hi]` with `f(lo) * f(hi) <= 0`.
///
/// Stops once the bracket is narrower than `tol * max(1, |lo|)` or can no
/// longer be split in floating point.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol * lo.abs().max(1.0) {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x, f(x))` for the best point seen, including the end points.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (fa, fb) = (f(a), f(b));
    let (mut a, mut b) = (a, b);
    let mut x1 = a + GOLDEN * (b - a);
    let mut x2 = b - GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0;
    while b - a > tol && iters < 200 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - GOLDEN * (b - a);
            f2 = f(x2);
        }
        iters += 1;
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for (x, fx) in [(a, fa), (b, fb)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, fx) = golden_max(|x| -f(x), a, b, tol);
    (x, -fx)
}

/// `ln(exp(a) + exp(b))` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn golden_finds_interior_and_endpoint() {
        let (x, fx) = golden_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6 && fx.abs() < 1e-12);
        let (x, _) = golden_max(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 1.0);
        let (x, fx) = golden_min(|x: f64| (x - 0.25).abs(), 0.0, 1.0, 1e-14);
        assert!((x - 0.25).abs() < 1e-12 && fx < 1e-12);
    }

    #[test]
    fn log_add_exp_large_arguments() {
        assert!((log_add_exp(1000.0, 1000.0) - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert!((log_add_exp(0.0, -800.0)).abs() < 1e-300);
    }
}
