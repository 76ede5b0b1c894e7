use serde_json::{json, Value};

/// `v` with `digits` significant digits, positional when the exponent is
/// moderate and scientific otherwise.
pub fn significant(v: f64, digits: u8) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let d = digits.clamp(1, 15) as i32;
    let sci = format!("{:.*e}", (d - 1) as usize, v);
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let decimals = (d - 1 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A JSON number rounded to `digits` significant digits; non-finite values
/// become null.
pub fn number(v: f64, digits: u8) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = significant(v, digits).parse().unwrap_or(v);
    json!(rounded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(significant(6.429652716758629, 15), "6.42965271675863");
        assert_eq!(significant(-16.23484850566707, 6), "-16.2348");
        assert_eq!(significant(52.0, 15), "52");
        assert_eq!(significant(1.5e-9, 3), "1.50e-9");
        assert_eq!(significant(0.0, 4), "0");
    }
}
