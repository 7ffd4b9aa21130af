//! Kummer 1F1, Gauss 2F1, Humbert Φ1 and the Kampé de Fériet F^{1,0}_{1,1}.

use crate::error::{domain, Error, Result};
use crate::sum::Acc;

const MAX_1F1: usize = 10_000;
const MAX_2F1: usize = 2_000_000;
const MAX_DIAG: usize = 10_000;

fn nonpositive_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; x).
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if nonpositive_int(b) {
        return domain(format!("1F1 lower parameter {b} is a non-positive integer"));
    }
    if x == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if x < 0.0 {
        return Ok(x.exp() * series_1f1(b - a, b, -x)?);
    }
    series_1f1(a, b, x)
}

fn series_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut acc = Acc::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..MAX_1F1 {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        acc.add(term);
        if term == 0.0 {
            return Ok(acc.value());
        }
        let past = kf > (a.abs() + x) && kf > b.abs();
        if past && term.abs() < 1e-17 * acc.value().abs() {
            return Ok(acc.value());
        }
    }
    Err(Error::Convergence { what: "1F1 series", terms: MAX_1F1 })
}

/// Gauss hypergeometric ₂F₁(a, b; c; x) for |x| < 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if nonpositive_int(c) {
        return domain(format!("2F1 lower parameter {c} is a non-positive integer"));
    }
    if !(x.abs() < 1.0) {
        return domain(format!("2F1 argument |{x}| >= 1"));
    }
    if x < -0.5 {
        // Pfaff transformation
        let z = x / (x - 1.0);
        return Ok((1.0 - x).powf(-a) * series_2f1(a, c - b, c, z)?);
    }
    series_2f1(a, b, c, x)
}

fn series_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut acc = Acc::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..MAX_2F1 {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) * x / ((c + kf) * (kf + 1.0));
        term *= ratio;
        acc.add(term);
        if term == 0.0 {
            return Ok(acc.value());
        }
        let r = ratio.abs();
        if kf > a.abs() + b.abs() + c.abs() && r < 1.0 {
            let tail = term.abs() * r / (1.0 - r);
            if tail < 1e-17 * acc.value().abs() {
                return Ok(acc.value());
            }
        }
    }
    Err(Error::Convergence { what: "2F1 series", terms: MAX_2F1 })
}

// Σ_s d_s Σ_{i+j=s} u_i v_j with d_s = (a)_s/(c)_s, summed by diagonals.
fn diagonal_sum(a: f64, c: f64, mut next_u: impl FnMut(usize) -> f64, y: f64, what: &'static str) -> Result<(f64, f64)> {
    let mut u: Vec<f64> = vec![1.0];
    let mut v: Vec<f64> = vec![1.0];
    let mut d = 1.0;
    let mut total = Acc::new();
    let mut quiet = 0;
    let mut prev = f64::INFINITY;
    for s in 0..MAX_DIAG {
        if s > 0 {
            let sf = (s - 1) as f64;
            d *= (a + sf) / (c + sf);
            let un = u[s - 1] * next_u(s - 1);
            u.push(un);
            v.push(v[s - 1] * y / s as f64);
        }
        let mut diag = Acc::new();
        for i in 0..=s {
            diag.add(u[i] * v[s - i]);
        }
        let ds = d * diag.value();
        total.add(ds);
        let t = total.value().abs();
        if ds.abs() < 1e-16 * t && ds.abs() <= prev {
            quiet += 1;
            if quiet >= 3 {
                return Ok((total.value(), total.abs()));
            }
        } else {
            quiet = 0;
        }
        prev = ds.abs();
        if d == 0.0 {
            return Ok((total.value(), total.abs()));
        }
    }
    Err(Error::Convergence { what, terms: MAX_DIAG })
}

/// Humbert Φ₁(a, b; c; x, y) = Σ (a)_{m+n}(b)_m x^m y^n / ((c)_{m+n} m! n!), |x| < 1.
pub fn humbert_phi1(a: f64, b: f64, c: f64, x: f64, y: f64) -> Result<f64> {
    if nonpositive_int(c) {
        return domain(format!("Phi1 lower parameter {c} is a non-positive integer"));
    }
    if !(x.abs() < 1.0) {
        return domain(format!("Phi1 needs |x| < 1, got {x}"));
    }
    let (val, abs) = diagonal_sum(a, c, |m| (b + m as f64) * x / (m as f64 + 1.0), y, "Phi1")?;
    if val.abs() < 1e-8 * abs {
        return Err(Error::LossOfSignificance("Phi1 double series"));
    }
    Ok(val)
}

/// Kampé de Fériet F^{1,0}_{1,1}(a; c, b; x, y) = Σ (a)_{l+i} x^l y^i / ((c)_{l+i}(b)_l l! i!).
pub fn kdf_f1110(a: f64, c: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    if nonpositive_int(c) || nonpositive_int(b) {
        return domain(format!("KdF lower parameters c={c}, b={b} include a non-positive integer"));
    }
    if y <= 0.0 && x >= 0.0 && c > a && a > 0.0 && b > 0.0 {
        return kdf_rows(a, c, b, x, y);
    }
    let (val, abs) = diagonal_sum(a, c, |l| x / ((b + l as f64) * (l as f64 + 1.0)), y, "KdF")?;
    if val.abs() < 1e-8 * abs {
        return Err(Error::LossOfSignificance("KdF double series"));
    }
    Ok(val)
}

// Row l: (a)_l x^l/((c)_l (b)_l l!) · ₁F₁(a+l; c+l; y), inner function Kummer-transformed
// to e^y ₁F₁(c−a; c+l; −y) so every term is non-negative.
fn kdf_rows(a: f64, c: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    let ey = y.exp();
    let mut acc = Acc::new();
    let mut coef = 1.0;
    for l in 0..MAX_DIAG {
        let lf = l as f64;
        if l > 0 {
            let k = lf - 1.0;
            coef *= (a + k) * x / ((c + k) * (b + k) * lf);
        }
        let row = coef * ey * series_1f1(c - a, c + lf, -y)?;
        acc.add(row);
        if coef == 0.0 || (lf * lf > x && row < 1e-17 * acc.value()) {
            return Ok(acc.value());
        }
    }
    Err(Error::Convergence { what: "KdF rows", terms: MAX_DIAG })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn kummer_identities() {
        assert_eq!(kummer_1f1(1.3, 2.1, 0.0).unwrap(), 1.0);
        for &x in &[-7.0, -0.5, 0.3, 4.0, 30.0] {
            assert!(close(kummer_1f1(2.2, 2.2, x).unwrap(), f64::exp(x), 1e-13));
        }
        assert!(kummer_1f1(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn gauss_identities() {
        assert_eq!(gauss_2f1(1.0, 2.0, 3.0, 0.0).unwrap(), 1.0);
        for &x in &[-0.9, -0.3, 0.2, 0.7, 0.95] {
            let want = -f64::ln(1.0 - x) / x;
            assert!(close(gauss_2f1(1.0, 1.0, 2.0, x).unwrap(), want, 1e-12), "{x}");
        }
        let x = 1.0 / 2.89;
        assert!(close(gauss_2f1(1.5, 2.0, 2.0, x).unwrap(), (1.0 - x).powf(-1.5), 1e-13));
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn phi1_collapses() {
        assert_eq!(humbert_phi1(0.5, 1.0, 1.0, 0.0, 0.0).unwrap(), 1.0);
        let a = humbert_phi1(0.7, 1.2, 1.9, 0.0, 2.5).unwrap();
        assert!(close(a, kummer_1f1(0.7, 1.9, 2.5).unwrap(), 1e-13));
        let b = humbert_phi1(0.7, 1.2, 1.9, 0.6, 0.0).unwrap();
        assert!(close(b, gauss_2f1(0.7, 1.2, 1.9, 0.6).unwrap(), 1e-12));
        assert!(humbert_phi1(0.5, 1.0, 1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn kdf_collapses() {
        assert_eq!(kdf_f1110(1.5, 2.5, 1.5, 0.0, 0.0).unwrap(), 1.0);
        for &y in &[-9.0, -1.0, 2.0] {
            let f = kdf_f1110(1.5, 2.5, 1.5, 0.0, y).unwrap();
            assert!(close(f, kummer_1f1(1.5, 2.5, y).unwrap(), 1e-12), "{y}");
        }
    }

    #[test]
    fn kdf_paths_agree() {
        // row path (y < 0) against diagonal path on the same moderate point
        let rows = kdf_f1110(1.5, 2.5, 1.5, 2.0, -1.0).unwrap();
        let (diag, _) = diagonal_sum(1.5, 2.5, |l| 2.0 / ((1.5 + l as f64) * (l as f64 + 1.0)), -1.0, "t").unwrap();
        assert!(close(rows, diag, 1e-13));
    }
}
