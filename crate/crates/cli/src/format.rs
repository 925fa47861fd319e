//! C-style `%.12e` formatting, so output is byte-stable across platforms.

/// `x` as `d.dddddddddddde±XX`. Negative zero prints as zero.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{:.12e}", x + 0.0);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Joins a header and rows into CSV text with LF endings.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        assert_eq!(sci(0.0), "0.000000000000e+00");
        assert_eq!(sci(-0.0), "0.000000000000e+00");
        assert_eq!(sci(-0.0833333333333), "-8.333333333330e-02");
        assert_eq!(sci(123456.0), "1.234560000000e+05");
        assert_eq!(sci(1e-300), "1.000000000000e-300");
        assert_eq!(sci(1.0), "1.000000000000e+00");
        assert_eq!(sci(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let text = csv(&["a", "b"], &[vec!["1".into(), "2".into()]]);
        assert_eq!(text, "a,b\n1,2\n");
    }
}
