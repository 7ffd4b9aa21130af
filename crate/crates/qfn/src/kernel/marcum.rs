//! Gaussian Q and generalized Marcum Q via the Poisson-weighted gamma series.

use super::gamma::ln_gamma_pos;
use super::incgamma::{gamma_p, gamma_q};
use crate::error::{domain, Error, Result};
use crate::sum::Acc;

/// Gaussian tail Q(x) = ½ erfc(x/√2).
pub fn gaussian_q(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

const MAX_TERMS: usize = 200_000;

fn check(m: f64, a: f64, b: f64) -> Result<()> {
    if !(m > 0.0) || !(a >= 0.0) || !(b >= 0.0) {
        return domain(format!("marcum_q needs m > 0, a, b >= 0 (m={m}, a={a}, b={b})"));
    }
    Ok(())
}

// Σ_l Poisson(l; a²/2) f(m+l), positive terms throughout
fn poisson_sum(m: f64, a: f64, f: impl Fn(f64) -> Result<f64>, increasing: bool) -> Result<f64> {
    let lam = 0.5 * a * a;
    if lam == 0.0 {
        return f(m);
    }
    let ln_lam = lam.ln();
    let mut acc = Acc::new();
    for l in 0..MAX_TERMS {
        let lf = l as f64;
        let w = (-lam + lf * ln_lam - ln_gamma_pos(lf + 1.0)).exp();
        let v = f(m + lf)?;
        acc.add(w * v);
        let s = acc.value();
        if lf > lam {
            let tail = if increasing { w } else { w * v };
            if tail <= 1e-17 * s || (w < 1e-300 && s == 0.0) {
                return Ok(s);
            }
        }
    }
    Err(Error::Convergence { what: "Marcum Q series", terms: MAX_TERMS })
}

/// Generalized Marcum Q_m(a,b).
pub fn marcum_q(m: f64, a: f64, b: f64) -> Result<f64> {
    check(m, a, b)?;
    if b == 0.0 {
        return Ok(1.0);
    }
    if m == 0.5 {
        return Ok((gaussian_q(b + a) + gaussian_q(b - a)).min(1.0));
    }
    let y = 0.5 * b * b;
    poisson_sum(m, a, |s| gamma_q(s, y), true)
}

/// Complement 1 - Q_m(a,b), summed directly to keep relative accuracy when small.
pub fn marcum_p(m: f64, a: f64, b: f64) -> Result<f64> {
    check(m, a, b)?;
    if b == 0.0 {
        return Ok(0.0);
    }
    let y = 0.5 * b * b;
    poisson_sum(m, a, |s| gamma_p(s, y), false)
}

/// ⌈x⌉₀.₅ = ⌈x − ½⌉ + ½.
pub fn half_ceil(x: f64) -> f64 {
    (x - 0.5).ceil() + 0.5
}

/// ⌊x⌋₀.₅ = ⌊x + ½⌋ − ½.
pub fn half_floor(x: f64) -> f64 {
    (x + 0.5).floor() - 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_q_values() {
        assert_eq!(gaussian_q(0.0), 0.5);
        assert_eq!(gaussian_q(40.0), 0.0);
    }

    #[test]
    fn marcum_edges() {
        assert_eq!(marcum_q(2.3, 1.0, 0.0).unwrap(), 1.0);
        for &b in &[0.3, 1.0, 2.5] {
            let q = marcum_q(1.0, 0.0, b).unwrap();
            assert!((q - (-b * b / 2.0_f64).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn half_order_identity() {
        let lhs = marcum_q(0.5, 0.7, 1.1).unwrap();
        let rhs = gaussian_q(1.8) + gaussian_q(0.4);
        assert!((lhs - rhs).abs() < 1e-15);
        // the series agrees with the erfc form
        let y = 0.5f64 * 1.1 * 1.1;
        let series = poisson_sum(0.5, 0.7, |s| gamma_q(s, y), true).unwrap();
        assert!((series - rhs).abs() < 1e-14);
    }

    #[test]
    fn complement() {
        let q = marcum_q(1.7, 1.3, 2.2).unwrap();
        let p = marcum_p(1.7, 1.3, 2.2).unwrap();
        assert!((p + q - 1.0).abs() < 1e-14);
    }

    #[test]
    fn half_rounding() {
        assert_eq!(half_ceil(1.2), 1.5);
        assert_eq!(half_floor(1.7), 1.5);
        assert_eq!(half_ceil(2.5), 2.5);
        assert_eq!(half_floor(2.5), 2.5);
        assert_eq!(half_floor(0.3), -0.5);
    }
}
