use super::{is_finite, ExprError};
use crate::ComplexValue;

/// Parses a single-token complex literal such as `2`, `-0.5`, `i`, `-3i`,
/// `0.5-0.25i` or `1e-3+2e-2i`.
pub fn parse_complex(text: &str) -> Result<ComplexValue, ExprError> {
    let s = text.trim();
    let bad = || ExprError::BadLiteral(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let value = if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not leading and not an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (parse_real(&body[..k]).ok_or_else(bad)?, &body[k..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => parse_real(other).ok_or_else(bad)?,
        };
        ComplexValue::new(re, im)
    } else {
        ComplexValue::new(parse_real(s).ok_or_else(bad)?, 0.0)
    };
    if !is_finite(value) {
        return Err(bad());
    }
    Ok(value)
}

fn parse_real(s: &str) -> Option<f64> {
    // reject words Rust's parser accepts ("inf", "NaN")
    if !s
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return None;
    }
    s.parse().ok()
}

/// Comma- or semicolon-separated complex literals.
pub fn parse_complex_list(text: &str) -> Result<Vec<ComplexValue>, ExprError> {
    text.split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_complex)
        .collect()
}

/// Inverse of [`parse_complex`]; exact round trip.
pub(crate) fn format_complex(c: ComplexValue) -> String {
    if c.im == 0.0 {
        format!("{:?}", c.re)
    } else {
        let sign = if c.im.is_sign_negative() { "-" } else { "+" };
        format!("{:?}{sign}{:?}i", c.re, c.im.abs())
    }
}
