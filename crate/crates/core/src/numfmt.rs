//! Fixed-precision number formatting for machine-readable output.

/// Significant digits used in CSV and JSON output.
pub const MACHINE_DIGITS: usize = 12;

/// Formats `x` with `digits` significant digits, trimming trailing zeros.
/// Plain decimal notation is used for moderate magnitudes, scientific
/// notation otherwise. The result always parses back as `f64`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits > 0);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // Round first so the exponent reflects carries like 9.99.. -> 10.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let plain = format!("{:.*}", decimals, x);
        trim_zeros(&plain).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    fmt_sig(x, digits).parse().unwrap_or(x)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
