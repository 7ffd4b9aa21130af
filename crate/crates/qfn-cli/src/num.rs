//! Strict numeric flag parsing and the dB boundary.

/// Plain decimal with optional exponent; rejects inf, nan, hex and stray characters.
pub fn parse_decimal(s: &str) -> Result<f64, String> {
    let t = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], Some(&t[i + 1..])),
        None => (t, None),
    };
    let digits = mant.chars().filter(|c| c.is_ascii_digit()).count();
    let dots = mant.chars().filter(|&c| c == '.').count();
    let mant_ok = digits > 0 && dots <= 1 && mant.chars().all(|c| c.is_ascii_digit() || c == '.');
    let exp_ok = exp.is_none_or(|e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
    });
    if !mant_ok || !exp_ok {
        return Err(format!("'{s}' is not a decimal number"));
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a decimal number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is out of range"));
    }
    Ok(v)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strictness() {
        for ok in ["1", "-0.5", ".25", "3.", "1e-3", "+2E+4"] {
            assert!(parse_decimal(ok).is_ok(), "{ok}");
        }
        for bad in ["inf", "NaN", "0x10", "1e", "--1", "1.2.3", "", " 1", "1e400"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }
}
