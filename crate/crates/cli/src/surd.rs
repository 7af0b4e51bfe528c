//! Recognizes the handful of closed-form constants that show up in
//! determinants, traces and Schmidt coefficients of the standard bases.

const MATCH_TOL: f64 = 1e-9;

fn table() -> [(&'static str, f64); 9] {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    [
        ("1/√2", 1.0 / s2),
        ("1/√3", 1.0 / s3),
        ("1/√6", 1.0 / s6),
        ("2/√6", 2.0 / s6),
        ("1/2", 0.5),
        ("√3/4", s3 / 4.0),
        ("1/(3√3)", 1.0 / (3.0 * s3)),
        ("1/(3√6)", 1.0 / (3.0 * s6)),
        ("√3/2", s3 / 2.0),
    ]
}

/// The surd within 1e-9 of `x`, with a leading minus sign if negative.
pub fn recognize(x: f64) -> Option<String> {
    let (sign, mag) = if x < 0.0 { ("-", -x) } else { ("", x) };
    table()
        .iter()
        .find(|(_, v)| (mag - v).abs() <= MATCH_TOL)
        .map(|(name, _)| format!("{sign}{name}"))
}

/// `0.70710678 (≈ 1/√2)`, or just the number.
pub fn annotate(x: f64) -> String {
    let shown = if x == 0.0 { 0.0 } else { x };
    match recognize(x) {
        Some(name) => format!("{shown:.8} (≈ {name})"),
        None => format!("{shown:.8}"),
    }
}
