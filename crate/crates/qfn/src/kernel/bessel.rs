//! Modified Bessel function of the first kind for real order nu >= -1.

use super::gamma::{gamma_unchecked, ln_gamma_pos};
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

const MAX_TERMS: usize = 20_000;

/// I_ν(x), or e^{-x} I_ν(x) when `scaled` is set. I₋₁ is taken as I₁.
pub fn bessel_i(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    if !(x >= 0.0) || !(nu >= -1.0) {
        return domain(format!("bessel_i needs nu >= -1, x >= 0 (nu={nu}, x={x})"));
    }
    if x == 0.0 && nu < 0.0 && nu != -1.0 {
        return Err(Error::Range(format!("I_{nu}(0) is infinite")));
    }
    let s = i_scaled(nu, x);
    if scaled {
        return Ok(s);
    }
    if x > 700.0 {
        return Err(Error::Range(format!("I_{nu}({x}) overflows; use the scaled form")));
    }
    Ok(s * x.exp())
}

/// e^{-x} I_ν(x) without argument checks (nu >= -1, x >= 0).
pub(crate) fn i_scaled(nu: f64, x: f64) -> f64 {
    let nu = if nu == -1.0 { 1.0 } else { nu };
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let twice = 2.0 * nu;
    if twice == twice.floor() && (twice as i64) % 2 != 0 {
        let n = nu - 0.5;
        if n < 0.0 || x >= (n + 1.0) * (n + 1.0) {
            return half_integer_scaled(nu, x);
        }
    }
    if x >= 25.0 && x >= 0.5 * nu * nu + 10.0 {
        if let Some(v) = asymptotic_scaled(nu, x) {
            return v;
        }
    }
    series_scaled(nu, x)
}

/// ln I_ν(x) for x > 0.
pub(crate) fn ln_i(nu: f64, x: f64) -> f64 {
    x + i_scaled(nu, x).ln()
}

fn series_scaled(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let q = h * h;
    // log of the leading term, scaled by e^{-x}
    let mut lead = nu * h.ln() - ln_gamma_pos(nu + 1.0) - x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if sum > 1e250 {
            sum *= 1e-250;
            term *= 1e-250;
            lead += 250.0 * std::f64::consts::LN_10;
        }
        if term < 1e-17 * sum && kf > h {
            break;
        }
    }
    (lead + sum.ln()).exp()
}

fn asymptotic_scaled(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (8.0 * kf * x);
        if term == 0.0 {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
        if term.abs() > prev {
            return None;
        }
        prev = term.abs();
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
    }
    None
}

/// e^{-x} I_{n+1/2}(x) from the terminating expansion; also covers n = -1.
fn half_integer_scaled(nu: f64, x: f64) -> f64 {
    let e2 = (-2.0 * x).exp();
    if nu == -0.5 {
        return (1.0 + e2) / (2.0 * PI * x).sqrt();
    }
    let n = (nu - 0.5).round() as i64;
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    for k in 0..=n {
        let kf = k as f64;
        let c = gamma_unchecked((n + k + 1) as f64)
            / (gamma_unchecked(kf + 1.0) * gamma_unchecked((n - k + 1) as f64))
            / (2.0 * x).powi(k as i32);
        let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += c * (sk - sign_n * e2);
    }
    sum / (2.0 * PI * x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_at_zero() {
        assert_eq!(bessel_i(0.0, 0.0, false).unwrap(), 1.0);
        assert_eq!(bessel_i(2.0, 0.0, false).unwrap(), 0.0);
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.2, 1.0, 3.0, 9.0, 40.0] {
            let want = (2.0 / (PI * x)).sqrt() * x.sinh();
            let got = bessel_i(0.5, x, false).unwrap();
            assert!((got / want - 1.0).abs() < 1e-14, "{x}: {got} {want}");
        }
    }

    #[test]
    fn minus_one_is_one() {
        assert_eq!(bessel_i(-1.0, 2.3, false).unwrap(), bessel_i(1.0, 2.3, false).unwrap());
    }

    #[test]
    fn overflow_directs_to_scaled() {
        assert!(matches!(bessel_i(0.0, 800.0, false), Err(Error::Range(_))));
        assert!(bessel_i(0.0, 800.0, true).unwrap() > 0.0);
    }
}
