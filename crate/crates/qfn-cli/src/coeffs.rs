//! MIMO eigenvalue-density coefficients from JSON.

use qfn::capacity::MimoCoeffs;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    m: usize,
    n: usize,
    t: usize,
    omega: Vec<f64>,
    c: Vec<Vec<f64>>,
    k_norm: f64,
    #[serde(default)]
    k_factor: Option<f64>,
}

/// Parses and validates a coefficient document. `k_factor` may come from the
/// document or the caller; the caller wins.
pub fn parse_coeffs(text: &str, k_factor: Option<f64>) -> Result<MimoCoeffs, String> {
    let d: Doc = serde_json::from_str(text).map_err(|e| format!("coefficient file: {e}"))?;
    let k = k_factor.or(d.k_factor).ok_or("coefficient file: no k_factor in the document and none given with --k-factor")?;
    let c = MimoCoeffs { m: d.m, n: d.n, t: d.t, omega: d.omega, c: d.c, k_norm: d.k_norm, k_factor: k };
    c.validate().map_err(|e| format!("coefficient file: {e}"))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_are_explicit() {
        let good = r#"{"m":2,"n":2,"t":0,"omega":[],"c":[[2,-1],[-1,1]],"k_norm":1}"#;
        assert!(parse_coeffs(good, Some(0.0)).is_ok());
        assert!(parse_coeffs(good, None).unwrap_err().contains("k_factor"));
        let bad = r#"{"m":2,"n":2,"t":0,"omega":[],"c":[[2,-1]],"k_norm":1,"k_factor":0}"#;
        assert!(parse_coeffs(bad, None).unwrap_err().contains("2 x 2"));
        let extra = r#"{"m":1,"n":1,"t":0,"omega":[],"c":[[1]],"k_norm":1,"k_factor":0,"x":1}"#;
        assert!(parse_coeffs(extra, None).unwrap_err().contains("unknown field"));
    }
}
