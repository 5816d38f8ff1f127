//! Shared helpers for printing sums of terms.

use crate::scalar::Scalar;

/// Joins `(coefficient, body)` pairs as `a - 2*b + c`; a body of `"1"` prints as the bare
/// coefficient. The empty sum prints as `0`.
pub(crate) fn format_sum(terms: impl IntoIterator<Item = (Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let negative = c.is_printed_negative();
        let magnitude = if negative { -c } else { c };
        let piece = if body == "1" {
            magnitude.to_string()
        } else if magnitude.is_one() {
            body
        } else {
            format!("{magnitude}*{body}")
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&piece),
            (true, true) => {
                out.push('-');
                out.push_str(&piece);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&piece);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&piece);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Joins nonempty factor strings with `*`, falling back to `1`.
pub(crate) fn join_factors(parts: impl IntoIterator<Item = String>) -> String {
    let parts: Vec<String> = parts.into_iter().filter(|p| p != "1").collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
