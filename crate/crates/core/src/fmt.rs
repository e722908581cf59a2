//! Fixed-precision number formatting for CSV output.

/// Formats `x` in plain decimal notation with `digits` significant digits.
/// Non-finite values print as `NaN`, `inf` or `-inf`.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1) as i32;
    let exp = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding may carry into a new leading digit (9.9999996 -> 10.000000).
    let carried = s.parse::<f64>().map_or(false, |r| r.abs() >= 10f64.powi(exp + 1));
    if decimals > 0 && carried {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

/// [`sig`] with the 7 significant digits used by every report.
pub fn num(x: f64) -> String {
    sig(x, 7)
}
