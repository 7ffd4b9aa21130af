//! Closed forms for special cases of the KdF F¹·⁰₁,₁ and Humbert Φ₁ functions, checked
//! against the double series.

use crate::error::{domain, Error, Result};
use crate::hyper::{gauss_2f1, humbert_phi1, kdf_f1110, kummer_1f1};
use crate::ilhi::{ilhi_series, IlhiQuery};
use crate::kernel::{gamma_unchecked, marcum_q};
use crate::nuttall::{nuttall_series, NuttallQuery};
use crate::toronto::{toronto_series, TorontoQuery};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// F(a; a+1, b; x, −y) through the incomplete Toronto function.
    Cor1,
    /// F(a; a+1, b; x, −y) through ₁F₁ and the Nuttall Q-function.
    Cor2,
    /// Φ₁(a, 1, 2a; x, y) through ₂F₁ and an ILHI.
    Cor3,
    /// Φ₁(½, 1, 1; x, y) through Marcum Q₁.
    Cor4,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Cor1 => "cor1",
            IdentityId::Cor2 => "cor2",
            IdentityId::Cor3 => "cor3",
            IdentityId::Cor4 => "cor4",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// |lhs − rhs| / max(1, |lhs|)
    pub residual: f64,
}

impl IdentityReport {
    fn new(id: IdentityId, point: &[f64], lhs: f64, rhs: f64) -> Self {
        let residual = (lhs - rhs).abs() / lhs.abs().max(1.0);
        IdentityReport { id, point: point.to_vec(), lhs, rhs, residual }
    }
}

// Condition number of a difference, capped so residuals stay meaningful.
const MAX_CANCEL: f64 = 1e6;

fn difference(big: f64, small: f64, what: &'static str) -> Result<f64> {
    let d = big - small;
    if big.abs() + small.abs() > MAX_CANCEL * d.abs() {
        return Err(Error::LossOfSignificance(what));
    }
    Ok(d)
}

fn kdf_domain(a: f64, b: f64, x: f64, y: f64) -> Result<()> {
    if !(a > 0.0) || !(b > 0.0) || !(x > 0.0) || !(y > 0.0) || ![a, b, x, y].iter().all(|v| v.is_finite()) {
        return domain(format!("KdF identities need a, b, x, y > 0 (got a={a}, b={b}, x={x}, y={y})"));
    }
    Ok(())
}

/// F(a; a+1, b; x, −y) = a Γ(b) T_{√y}(2a−1, b−1, √(x/y)) e^{x/y} / (x^{b−a} y^{2a−b}).
pub fn check_kdf_toronto(a: f64, b: f64, x: f64, y: f64) -> Result<IdentityReport> {
    kdf_domain(a, b, x, y)?;
    let lhs = kdf_f1110(a, a + 1.0, b, x, -y)?;
    let ratio = x / y;
    let t = toronto_series(&TorontoQuery::new(2.0 * a - 1.0, b - 1.0, ratio.sqrt(), y.sqrt()), 1e-17)?.value;
    let rhs = a * gamma_unchecked(b) * t * ratio.exp() / (x.powf(b - a) * y.powf(2.0 * a - b));
    Ok(IdentityReport::new(IdentityId::Cor1, &[a, b, x, y], lhs, rhs))
}

/// The same KdF value through ₁F₁ minus a Nuttall Q-function.
pub fn check_kdf_nuttall(a: f64, b: f64, x: f64, y: f64) -> Result<IdentityReport> {
    kdf_domain(a, b, x, y)?;
    let lhs = kdf_f1110(a, a + 1.0, b, x, -y)?;
    let ratio = x / y;
    let q = nuttall_series(&NuttallQuery::new(2.0 * a - b, b - 1.0, (2.0 * ratio).sqrt(), (2.0 * y).sqrt()), 1e-17)?.value;
    let first = a * gamma_unchecked(a) * kummer_1f1(b - a, b, -ratio)? * ratio.exp() / y.powf(a);
    let second =
        a * gamma_unchecked(b) * q * ratio.exp() / (y.powf(a - 0.5 * (b - 1.0)) * x.powf(0.5 * (b - 1.0)) * 2f64.powf(a - 0.5 * (b + 1.0)));
    let rhs = difference(first, second, "KdF-Nuttall right-hand side")?;
    Ok(IdentityReport::new(IdentityId::Cor2, &[a, b, x, y], lhs, rhs))
}

/// Both KdF identities at (a, b, x, y); each side reports or refuses on its own.
pub fn check_kdf_identities(a: f64, b: f64, x: f64, y: f64) -> [Result<IdentityReport>; 2] {
    [check_kdf_toronto(a, b, x, y), check_kdf_nuttall(a, b, x, y)]
}

/// Φ₁(a, 1, 2a; x, y) identity; needs a > 0, 0 < x < 1, y > 0.
pub fn check_humbert_general(a: f64, x: f64, y: f64) -> Result<IdentityReport> {
    if !(a > 0.0) || !(x > 0.0 && x < 1.0) || !(y > 0.0) || !y.is_finite() {
        return domain(format!("Humbert identity needs a > 0, 0 < x < 1, y > 0 (got a={a}, x={x}, y={y})"));
    }
    let lhs = humbert_phi1(a, 1.0, 2.0 * a, x, y)?;
    let ie = ilhi_series(&IlhiQuery::new(0.5 - a, a - 0.5, 2.0 / x - 1.0, 0.5 * y), 1e-17)?.value;
    let e = (y / x).exp();
    let head = gauss_2f1(a, 1.0, 2.0 * a, x)? * e;
    let rhs = difference(head, 2f64.powf(a + 0.5) * gamma_unchecked(a + 0.5) * e / x * ie, "Φ₁-ILHI right-hand side")?;
    Ok(IdentityReport::new(IdentityId::Cor3, &[a, x, y], lhs, rhs))
}

/// Φ₁(½, 1, 1; x, y) identity; needs 0 < x < 1, y > 0 (both radicands are then non-negative).
pub fn check_humbert_marcum(x: f64, y: f64) -> Result<IdentityReport> {
    if !(x > 0.0 && x < 1.0) || !(y > 0.0) || !y.is_finite() {
        return domain(format!("Marcum form of Φ₁ needs 0 < x < 1, y > 0 (got x={x}, y={y})"));
    }
    let lhs = humbert_phi1(0.5, 1.0, 1.0, x, y)?;
    let s = (1.0 - x).sqrt();
    let b = (y / x * (1.0 + s) - 0.5 * y).sqrt();
    // 1 − √(1−x) ≥ x/2 on (0,1); clamp rounding noise
    let c = (y / x * (1.0 - s) - 0.5 * y).max(0.0).sqrt();
    let e = (y / x).exp();
    let rhs =
        difference(e * gauss_2f1(0.5, 1.0, 1.0, x)?, e * (marcum_q(1.0, b, c)? - marcum_q(1.0, c, b)?) / s, "Φ₁-Marcum right-hand side")?;
    Ok(IdentityReport::new(IdentityId::Cor4, &[x, y], lhs, rhs))
}

/// Both Humbert identities; Cor 3 at the given a, Cor 4 at the same (x, y).
pub fn check_humbert_identities(a: f64, x: f64, y: f64) -> [Result<IdentityReport>; 2] {
    [check_humbert_general(a, x, y), check_humbert_marcum(x, y)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_point() {
        for r in check_kdf_identities(1.0, 1.0, 0.25, 0.25) {
            let r = r.unwrap();
            assert!(r.residual < 1e-12, "{r:?}");
        }
        for r in check_humbert_identities(1.0, 0.5, 1.0) {
            let r = r.unwrap();
            assert!(r.residual < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn refusals() {
        assert!(check_kdf_identities(-0.2, 1.0, 1.0, 1.0).iter().all(|r| r.is_err()));
        // e^{x/y} = e^{180} on both sides of the difference
        let [t, n] = check_kdf_identities(1.0, 1.0, 36.0, 0.2);
        assert!(t.unwrap().residual < 1e-12);
        assert!(matches!(n, Err(Error::LossOfSignificance(_))));
        assert!(check_humbert_marcum(-0.5, 1.0).is_err());
        assert!(check_humbert_general(1.0, 1.0, 1.0).is_err());
    }
}
