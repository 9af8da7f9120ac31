//! Derivative-free scalar root finding on a bracket.
//!
//! The search first scans the bracket on a grid that is geometric in
//! `x − lo` (the boundary equation is singular at the lower end), takes the
//! leftmost sign change, bisects it down, and polishes with safeguarded
//! secant steps that never leave the current bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Points in the sign-change scan.
    pub scan_points: usize,
    /// Bisection returns early once `|f(x)|` is at or below this and the
    /// bracket has collapsed.
    pub f_tol: f64,
    /// Stop once the bracket is narrower than this (relative to `|x|`).
    pub x_rel_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            scan_points: 96,
            f_tol: 1e-12,
            x_rel_tol: 4.0 * f64::EPSILON,
            max_iter: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    /// Sign changes seen during the scan; more than one means the returned
    /// root is the leftmost of several.
    pub sign_changes: usize,
}

/// Scan points in `(lo, hi]`, geometric in the offset from `lo`.
fn scan_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let span = hi - lo;
    let first = (span * 1e-12).max(f64::EPSILON * lo.abs().max(1.0));
    let ratio = (span / first).powf(1.0 / (n - 1) as f64);
    let mut xs: Vec<f64> = (0..n).map(|k| lo + first * ratio.powi(k as i32)).collect();
    xs[n - 1] = hi;
    xs
}

/// Finds the smallest root of `f` in `[lo, hi]`.
pub fn leftmost_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, opts: &RootOptions) -> Result<Root> {
    if !(lo < hi) {
        return Err(Error::Boundary(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut xs = vec![lo];
    xs.extend(scan_grid(lo, hi, opts.scan_points.max(2)));
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    if let Some(k) = fs.iter().position(|v| !v.is_finite()) {
        return Err(Error::Boundary(format!("non-finite residual at x = {}", xs[k])));
    }
    if let Some(k) = fs.iter().position(|&v| v == 0.0) {
        let changes = count_sign_changes(&fs);
        return Ok(Root {
            x: xs[k],
            residual: 0.0,
            sign_changes: changes.max(1),
        });
    }
    let changes = count_sign_changes(&fs);
    let k = (0..fs.len() - 1)
        .find(|&k| fs[k].signum() != fs[k + 1].signum())
        .ok_or_else(|| {
            Error::Boundary(format!(
                "no sign change on [{lo}, {hi}] (f(lo) = {:e}, f(hi) = {:e})",
                fs[0],
                fs[fs.len() - 1]
            ))
        })?;
    let root = refine(&f, xs[k], xs[k + 1], fs[k], fs[k + 1], opts);
    Ok(Root {
        sign_changes: changes,
        ..root
    })
}

fn count_sign_changes(fs: &[f64]) -> usize {
    fs.windows(2)
        .filter(|w| w[0] != 0.0 && w[1] != 0.0 && w[0].signum() != w[1].signum())
        .count()
}

/// Bisection to a narrow bracket followed by bracket-preserving secant steps.
fn refine(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, opts: &RootOptions) -> Root {
    let done = |a: f64, b: f64| (b - a).abs() <= opts.x_rel_tol * a.abs().max(b.abs()).max(1e-300);
    let mut iter = 0;
    // Bisection until the bracket is ~1e-6 relative; the secant phase takes over.
    while iter < opts.max_iter && (b - a).abs() > 1e-6 * a.abs().max(b.abs()) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || fm.abs() <= opts.f_tol && done(a, b) {
            return Root { x: m, residual: fm, sign_changes: 1 };
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
        iter += 1;
    }
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    while iter < opts.max_iter && !done(a, b) {
        let mut x = b - fb * (b - a) / (fb - fa);
        if !(x > a.min(b) && x < a.max(b)) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            break;
        }
        // Illinois-style update keeps the bracket shrinking from both ends.
        if fx.signum() == fb.signum() {
            fa *= 0.5;
        } else {
            a = b;
            fa = fb;
        }
        b = x;
        fb = fx;
        iter += 1;
    }
    Root {
        x: best.0,
        residual: best.1,
        sign_changes: 1,
    }
}

/// Plain bisection on a bracket with a sign change; used where an
/// implementation-independent check is wanted.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo.signum() == fhi.signum() {
        return Err(Error::Boundary(format!(
            "bisection bracket [{lo}, {hi}] has no sign change"
        )));
    }
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_root() {
        let r = leftmost_root(|x| x * x - 2.0, 0.0, 3.0, &RootOptions::default()).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-14);
        assert!(r.residual.abs() <= 1e-12);
        assert_eq!(r.sign_changes, 1);
    }

    #[test]
    fn picks_leftmost_of_several() {
        let f = |x: f64| (x - 1.5) * (x - 2.5) * (x - 3.5);
        let r = leftmost_root(f, 1.0, 4.0, &RootOptions::default()).unwrap();
        assert!((r.x - 1.5).abs() < 1e-12);
        assert_eq!(r.sign_changes, 3);
    }

    #[test]
    fn log_singular_lower_end() {
        // ln(x − 1) + 3 has its root at 1 + e⁻³, close to the singular end.
        let f = |x: f64| (x - 1.0).ln() + 3.0;
        let r = leftmost_root(f, 1.0 + 1e-9, 50.0, &RootOptions::default()).unwrap();
        assert!((r.x - (1.0 + (-3f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn reports_missing_sign_change() {
        let err = leftmost_root(|x| x * x + 1.0, -1.0, 1.0, &RootOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Boundary(_)));
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 50).is_err());
    }

    #[test]
    fn bisection_converges() {
        let x = bisect(|x| x.cos() - x, 0.0, 1.0, 200).unwrap();
        assert!((x - 0.739_085_133_215_160_6).abs() < 1e-15);
    }
}
