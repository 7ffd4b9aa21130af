//! Incomplete Toronto function T_B(m,n,r) = 2 r^{n−m+1} e^{−r²} ∫₀^B t^{m−n} e^{−t²} I_n(2rt) dt.

use crate::error::{domain, Error, Result};
use crate::hyper::{kdf_f1110, kummer_1f1};
use crate::kernel::{gamma_unchecked, half_ceil, half_floor, ln_gamma_pos, ln_lower_inc_gamma, lower_inc_gamma, marcum_p, rgamma};
use crate::nuttall::{gross_factor, nuttall_integer, nuttall_series, NuttallQuery};
use crate::oracle;
use crate::sum::Acc;
use crate::types::{EvalResult, Interval, Method};
use std::f64::consts::{PI, SQRT_2};

pub const DEFAULT_P: usize = 20;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorontoQuery {
    pub m: f64,
    pub n: f64,
    pub r: f64,
    /// Upper integration limit B.
    pub b: f64,
}

impl TorontoQuery {
    pub fn new(m: f64, n: f64, r: f64, b: f64) -> Self {
        TorontoQuery { m, n, r, b }
    }

    fn check(&self) -> Result<()> {
        let TorontoQuery { m, n, r, b } = *self;
        if !(b > 0.0) || !b.is_finite() || !(r >= 0.0) || !r.is_finite() || !(n >= -1.0) || !n.is_finite() || !(m > -1.0) || !m.is_finite()
        {
            return domain(format!("Toronto query needs B > 0, r >= 0, n >= -1, m > -1 (got {self:?})"));
        }
        Ok(())
    }
}

fn series_term(q: &TorontoQuery, k: usize) -> Result<f64> {
    let kf = k as f64;
    let nk = q.n + kf + 1.0;
    if nk <= 0.0 && nk == nk.floor() {
        return Ok(0.0);
    }
    let pow = 2.0 * (q.n + kf) - q.m + 1.0;
    let lr = if q.r == 0.0 {
        if pow == 0.0 {
            0.0
        } else {
            return Ok(0.0);
        }
    } else {
        pow * q.r.ln()
    };
    let lg = ln_lower_inc_gamma(0.5 * (q.m + 1.0) + kf, q.b * q.b)?;
    Ok((lr + lg - ln_gamma_pos(kf + 1.0) - ln_gamma_pos(nk) - q.r * q.r).exp())
}

/// Exact series Σ_k r^{2(n+k)−m+1} γ((m+1)/2+k, B²) / (k! Γ(n+k+1) e^{r²}).
pub fn toronto_series(q: &TorontoQuery, tol: f64) -> Result<EvalResult> {
    q.check()?;
    let lam = q.r * q.r;
    let mut acc = Acc::new();
    let mut prev = f64::INFINITY;
    for k in 0..MAX_TERMS {
        let t = series_term(q, k)?;
        acc.add(t);
        if q.r == 0.0 && k > 0 {
            return Ok(EvalResult::new(acc.value(), Method::Series, 0.0, 1));
        }
        let s = acc.value();
        if (k as f64) > lam && t <= prev && t <= tol * s {
            let est = 2.0 * t + 1e-16 * s * ((k + 1) as f64).sqrt();
            return Ok(EvalResult::new(s, Method::Series, est, k + 1));
        }
        if t > 0.0 {
            prev = t;
        }
    }
    Err(Error::Convergence { what: "Toronto series", terms: MAX_TERMS })
}

/// Truncated series with Gross factors, k = 0..=p.
pub fn toronto_poly(q: &TorontoQuery, p: usize) -> Result<EvalResult> {
    q.check()?;
    if p == 0 {
        return domain("poly route needs p >= 1");
    }
    let mut acc = Acc::new();
    for k in 0..=p {
        acc.add(gross_factor(p, k) * series_term(q, k)?);
    }
    let v = acc.value();
    let exact = toronto_series(q, 1e-17)?.value;
    Ok(EvalResult::new(v, Method::Poly, exact - v, p + 1))
}

/// First `terms` terms of the exact series, without Gross factors.
pub fn toronto_partial(q: &TorontoQuery, terms: usize) -> Result<EvalResult> {
    q.check()?;
    let mut acc = Acc::new();
    for k in 0..terms {
        acc.add(series_term(q, k)?);
    }
    let v = acc.value();
    Ok(EvalResult::new(v, Method::Series, toronto_series(q, 1e-17)?.value - v, terms))
}

fn is_int(x: f64) -> bool {
    x == x.floor()
}

fn is_half_int(x: f64) -> bool {
    let t = 2.0 * x;
    t == t.floor() && (t as i64).rem_euclid(2) == 1
}

// ∫₀^u v^j e^{−v²} dv for any real u
fn signed_half_gamma(j: usize, u: f64) -> Result<f64> {
    if u == 0.0 {
        return Ok(0.0);
    }
    let g = 0.5 * lower_inc_gamma(0.5 * (j as f64 + 1.0), u * u)?;
    Ok(if u < 0.0 && j.is_multiple_of(2) { -g } else { g })
}

/// Closed form for integer m and half-integer n with m ≥ 2n, from the terminating
/// expansion of I_n and a binomial shift of t ∓ r.
pub fn toronto_halfint(q: &TorontoQuery) -> Result<EvalResult> {
    q.check()?;
    let TorontoQuery { m, n, r, b } = *q;
    if !is_int(m) || m < 0.0 || !is_half_int(n) || n < -0.5 || m < 2.0 * n || !(r > 0.0) {
        return domain(format!("halfint route needs integer m >= 2n, half-integer n >= -1/2, r > 0 (got {q:?})"));
    }
    let (kmax, sign_tail) = if n == -0.5 {
        (0usize, 1.0)
    } else {
        let k = (n - 0.5).round() as usize;
        // (−1)^{n+1/2}
        (k, if (k + 1).is_multiple_of(2) { 1.0 } else { -1.0 })
    };
    let big_l = (m - n - 0.5).round() as usize;
    let mut acc = Acc::new();
    for k in 0..=kmax {
        let kf = k as f64;
        let ck = if n == -0.5 { 1.0 } else { gamma_unchecked(n + kf + 0.5) / (gamma_unchecked(kf + 1.0) * gamma_unchecked(n - kf + 0.5)) };
        let c = r.powf(n - m + 0.5 - kf) * ck / (PI.sqrt() * 4f64.powi(k as i32));
        let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
        let pw = big_l - k;
        let mut binom = 1.0;
        for j in 0..=pw {
            if j > 0 {
                binom *= (pw - j + 1) as f64 / j as f64;
            }
            let e = (pw - j) as i32;
            // t = u + r over u ∈ [−r, B−r]; t = u − r over u ∈ [r, B+r]
            let near = binom * r.powi(e) * (signed_half_gamma(j, b - r)? - signed_half_gamma(j, -r)?);
            let far = binom * (-r).powi(e) * (signed_half_gamma(j, b + r)? - signed_half_gamma(j, r)?);
            acc.add(c * sk * near);
            acc.add(c * sign_tail * far);
        }
    }
    let v = acc.value();
    let est = 1e-15 * acc.abs();
    if est > 1e-9 * v.abs().max(1e-300) && est > 1e-12 {
        return Err(Error::LossOfSignificance("half-integer Toronto closed form"));
    }
    Ok(EvalResult::new(v, Method::Halfint, est, kmax + 1))
}

// Γ((m+1)/2) ₁F₁(n+(1−m)/2; n+1; −r²) r^{2n+1−m} / Γ(n+1), the complete Toronto function
fn complete(m: f64, n: f64, r: f64) -> Result<f64> {
    Ok(gamma_unchecked(0.5 * (m + 1.0)) * kummer_1f1(n + 0.5 * (1.0 - m), n + 1.0, -r * r)? * r.powf(2.0 * n + 1.0 - m) * rgamma(n + 1.0))
}

fn combine_with_nuttall(q: &TorontoQuery, nut: f64, method: Method) -> Result<EvalResult> {
    let TorontoQuery { m, n, r, .. } = *q;
    let c = complete(m, n, r)?;
    let s = r.powf(n - m + 1.0) * 2f64.powf(0.5 * (n - m + 1.0)) * nut;
    let v = c - s;
    let est = 1e-15 * (c.abs() + s.abs());
    if est > 1e-9 && est > 1e-6 * v.abs() {
        return Err(Error::LossOfSignificance("Toronto-Nuttall difference"));
    }
    Ok(EvalResult::new(v, method, est, 0))
}

/// Odd-m closed form: complete Toronto minus an integer-index Nuttall function,
/// the latter reduced to Marcum Q by the index recursion. Needs odd m > 2n, n ∈ ℕ.
pub fn toronto_odd(q: &TorontoQuery) -> Result<EvalResult> {
    q.check()?;
    let TorontoQuery { m, n, r, b } = *q;
    let odd = is_int(m) && (m as i64).rem_euclid(2) == 1;
    if !odd || m < 1.0 || !is_int(n) || n < 0.0 || m <= 2.0 * n || !(r > 0.0) {
        return domain(format!("odd route needs odd integer m > 2n, integer n >= 0, r > 0 (got {q:?})"));
    }
    let nut = nuttall_integer((m - n) as i64, n as i64, SQRT_2 * r, SQRT_2 * b)?;
    combine_with_nuttall(q, nut, Method::Odd)
}

/// The same composition with the Nuttall function from its exact series, any real m, n.
pub fn toronto_via_nuttall(q: &TorontoQuery) -> Result<EvalResult> {
    q.check()?;
    if !(q.n > -1.0) || !(q.r > 0.0) {
        return domain("via_nuttall route needs n > -1 and r > 0");
    }
    let nq = NuttallQuery::new(q.m - q.n, q.n, SQRT_2 * q.r, SQRT_2 * q.b);
    let nut = nuttall_series(&nq, 1e-17)?.value;
    combine_with_nuttall(q, nut, Method::ViaNuttall)
}

/// KdF closed form 2 r^{2n−m+1} B^{m+1} F((m+1)/2; (m+3)/2, n+1; r²B², −B²) / (n! (m+1) e^{r²}).
pub fn toronto_kdf(q: &TorontoQuery) -> Result<EvalResult> {
    q.check()?;
    let TorontoQuery { m, n, r, b } = *q;
    if !(n > -1.0) {
        return domain("KdF route needs n > -1");
    }
    let pow = 2.0 * n - m + 1.0;
    let rp = if r == 0.0 {
        if pow == 0.0 {
            1.0
        } else {
            return Ok(EvalResult::new(0.0, Method::Kdf, 0.0, 0));
        }
    } else {
        r.powf(pow)
    };
    let a = 0.5 * (m + 1.0);
    let f = kdf_f1110(a, a + 1.0, n + 1.0, r * r * b * b, -b * b)?;
    let v = 2.0 * rp * b.powf(m + 1.0) * rgamma(n + 1.0) / (m + 1.0) * (-r * r).exp() * f;
    Ok(EvalResult::new(v, Method::Kdf, 1e-15 * v.abs(), 0))
}

pub fn toronto_eval(q: &TorontoQuery, method: Method, p: usize) -> Result<EvalResult> {
    match method {
        Method::Halfint => toronto_halfint(q),
        Method::Odd => toronto_odd(q),
        Method::Kdf => toronto_kdf(q),
        Method::Poly => toronto_poly(q, p),
        Method::Series => toronto_series(q, 1e-16),
        Method::ViaNuttall => toronto_via_nuttall(q),
        Method::Oracle => {
            q.check()?;
            Ok(EvalResult::new(oracle::toronto(q.m, q.n, q.r, q.b)?, Method::Oracle, 1e-12, 0))
        }
        other => domain(format!("Toronto function has no {other} route")),
    }
}

fn best(q: &TorontoQuery) -> Result<f64> {
    match toronto_halfint(q) {
        Ok(r) => Ok(r.value),
        Err(_) => Ok(toronto_series(q, 1e-17)?.value),
    }
}

/// Rounded-index interval [T(⌊m⌋, ⌈n⌉₀.₅), T(⌈m⌉, ⌊n⌋₀.₅)].
pub fn toronto_bounds(q: &TorontoQuery) -> Result<Interval> {
    q.check()?;
    if !(q.m >= 0.0) || !(q.n >= 0.0) || q.m < q.n {
        return domain("Toronto bounds need m >= n >= 0");
    }
    let lo = best(&TorontoQuery { m: q.m.floor(), n: half_ceil(q.n), ..*q })?;
    let hi = best(&TorontoQuery { m: q.m.ceil(), n: half_floor(q.n), ..*q })?;
    Ok(Interval { lo, hi })
}

/// Truncation bound T(⌈m⌉, ⌊n⌋₀.₅) − poly_p.
pub fn toronto_trunc_bound(q: &TorontoQuery, p: usize) -> Result<f64> {
    q.check()?;
    if q.m <= q.n {
        return domain("Toronto truncation bound needs m > n");
    }
    let hi = best(&TorontoQuery { m: q.m.ceil(), n: half_floor(q.n), ..*q })?;
    Ok(hi - toronto_poly(q, p)?.value)
}

/// Upper approximation Γ((m+1)/2) ₁F₁((m+1)/2, n+1, r²) / (r^{m−2n−1} Γ(n+1) e^{r²}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperApprox {
    pub value: f64,
    /// Whether m, n, r ≤ B/2 (the domain the approximation is advertised for).
    /// The value is the B → ∞ limit, so it majorizes T_B everywhere.
    pub in_stated_domain: bool,
}

pub fn toronto_upper_approx(q: &TorontoQuery) -> Result<UpperApprox> {
    q.check()?;
    if !(q.r > 0.0) || !(q.n > -1.0) {
        return domain("upper approximation needs r > 0, n > -1");
    }
    let value = complete(q.m, q.n, q.r)?;
    let half = 0.5 * q.b;
    Ok(UpperApprox { value, in_stated_domain: q.m <= half && q.n <= half && q.r <= half })
}

/// T_B(m, (m−1)/2, r) = 1 − Q_{(m+1)/2}(r√2, B√2).
pub fn toronto_marcum_special(m: f64, r: f64, b: f64) -> Result<f64> {
    if !(b > 0.0) || !(m > -1.0) || !(r >= 0.0) {
        return domain("Marcum special case needs B > 0, m > -1, r >= 0");
    }
    marcum_p(0.5 * (m + 1.0), SQRT_2 * r, SQRT_2 * b)
}

/// Routes whose preconditions hold for `q`.
pub fn toronto_routes(q: &TorontoQuery) -> Vec<Method> {
    [Method::Halfint, Method::Odd, Method::Kdf, Method::ViaNuttall, Method::Series]
        .into_iter()
        .filter(|&m| !matches!(toronto_eval(q, m, DEFAULT_P), Err(Error::Domain(_))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_r_limit() {
        let q = TorontoQuery::new(1.0, 0.0, 0.0, 1.3);
        let want = -(-1.69f64).exp_m1();
        assert!((toronto_series(&q, 1e-16).unwrap().value - want).abs() < 1e-15);
        assert!((toronto_marcum_special(1.0, 0.0, 1.3).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn odd_needs_odd_m() {
        assert!(toronto_odd(&TorontoQuery::new(4.0, 1.0, 2.0, 3.0)).is_err());
        assert!(toronto_odd(&TorontoQuery::new(3.0, 1.0, 2.0, 3.0)).is_ok());
    }
}
