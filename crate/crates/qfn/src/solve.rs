//! Bracketed scalar root finding: bisection with secant steps accepted when they
//! stay inside the bracket and shrink it fast enough.

use crate::error::{Error, Result};

/// Root of `f` on `[lo, hi]`, which must bracket a sign change.
pub fn bracket_root(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Solver(format!("no sign change on [{lo:e}, {hi:e}]: f(lo)={fa:e}, f(hi)={fb:e}")));
    }
    for _ in 0..400 {
        let width = b - a;
        if width.abs() <= xtol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        let mut x = b - fb * (b - a) / (fb - fa);
        let lo_edge = a + 0.05 * width;
        let hi_edge = b - 0.05 * width;
        if !(x > lo_edge && x < hi_edge) {
            x = 0.5 * (a + b);
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // force a bisection when one side has stalled
        let m = 0.5 * (a + b);
        if (b - a) > 0.5 * width {
            let fm = f(m)?;
            if fm == 0.0 {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

/// Grow `hi` geometrically until `f(hi)` differs in sign from `f(lo)`.
pub fn expand_upper(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, mut hi: f64, limit: f64) -> Result<f64> {
    let s = f(lo)?.signum();
    while hi <= limit {
        if f(hi)?.signum() != s {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::Solver(format!("no sign change found up to {limit:e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bracket_root(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(bracket_root(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12), Err(Error::Solver(_))));
    }
}
