//! Closed forms whose printed shape differs from their derivation: the implemented
//! shape must match the defining integral and the printed one must not.

use qfn::kernel::{gamma, lower_inc_gamma};
use qfn::oracle;
use qfn::toronto::{toronto_halfint, toronto_kdf, TorontoQuery};

fn fact(n: usize) -> f64 {
    gamma(n as f64 + 1.0).unwrap()
}

// Double sum with prefactor r^{−2k−l} and un-shifted gamma arguments, as printed.
fn printed_halfint(m: usize, n: f64, r: f64, b: f64) -> f64 {
    let big_l = (m as f64 - n - 0.5) as usize;
    let kmax = (n - 0.5) as usize;
    let mut s = 0.0;
    for k in 0..=kmax {
        for l in 0..=big_l.saturating_sub(k) {
            let c = gamma(n + k as f64 + 0.5).unwrap() * fact(big_l - k) * 4f64.powi(-(k as i32)) * r.powi(-(2 * k as i32) - l as i32)
                / (2.0 * std::f64::consts::PI.sqrt() * fact(k) * fact(l) * gamma(n - k as f64 + 0.5).unwrap() * fact(big_l - k - l));
            let a = 0.5 * (l as f64 + 1.0);
            let sign_ml = if (m + l).is_multiple_of(2) { 1.0 } else { -1.0 };
            let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += c * (sign_ml * lower_inc_gamma(a, (b + r).powi(2)).unwrap() + sign_k * lower_inc_gamma(a, (b - r).powi(2)).unwrap());
        }
    }
    s
}

#[test]
fn halfint_matches_integral_not_print() {
    for &(m, n, r, b) in &[(3usize, 0.5, 0.8, 1.5), (4, 1.5, 1.2, 2.0), (5, 0.5, 2.0, 1.0)] {
        let q = TorontoQuery::new(m as f64, n, r, b);
        let exact = oracle::toronto(m as f64, n, r, b).unwrap();
        let ours = toronto_halfint(&q).unwrap().value;
        assert!((ours - exact).abs() < 1e-11 * exact.abs().max(1e-3), "{q:?}: {ours} vs {exact}");
        let printed = printed_halfint(m, n, r, b);
        assert!((printed - exact).abs() > 1e-3 * exact.abs(), "{q:?}: printed form {printed} unexpectedly matches");
    }
}

#[test]
fn kdf_exponent_sign() {
    for &(m, n, r, b) in &[(1.0, 0.0, 1.0, 1.0), (2.5, 0.5, 0.7, 2.0), (4.0, 1.0, 1.5, 1.2)] {
        let q = TorontoQuery::new(m, n, r, b);
        let exact = oracle::toronto(m, n, r, b).unwrap();
        let ours = toronto_kdf(&q).unwrap().value;
        assert!((ours - exact).abs() < 1e-11 * exact, "{q:?}");
        // the printed form carries e^{+r²} in place of e^{−r²}
        let printed = ours * (2.0 * r * r).exp();
        assert!((printed - exact).abs() > 0.1 * exact);
    }
}
