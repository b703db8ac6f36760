//! Text rendering of numbers shared by CSV and report output.

/// Significant digits kept in every emitted float.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Renders `x` rounded to 12 significant digits, shortest form.
///
/// Plain decimal for magnitudes in `[1e-4, 1e12)` and zero, exponent form
/// otherwise. Infinities render as `inf`/`-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("exponent form parses");
    let mag = rounded.abs();
    if (1e-4..1e12).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn format_bool(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn format_opt_bool(b: Option<bool>) -> &'static str {
    b.map(format_bool).unwrap_or_default()
}

/// Linear power from decibels.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
