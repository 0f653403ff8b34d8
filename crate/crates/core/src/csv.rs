//! Bit-stable float formatting for CSV outputs (C printf conventions).

fn non_finite(x: f64) -> Option<String> {
    if x.is_nan() {
        Some("nan".into())
    } else if x.is_infinite() {
        Some(if x > 0.0 { "inf".into() } else { "-inf".into() })
    } else {
        None
    }
}

/// Splits Rust's `{:.p$e}` output into mantissa and exponent.
fn sci_parts(x: f64, precision: usize) -> (String, i32) {
    let s = format!("{:.*e}", precision, x);
    let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
    (mantissa.to_string(), exp.parse().expect("integer exponent"))
}

fn c_exponent(exp: i32) -> String {
    format!("e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

fn strip_fraction_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.16e`: 17 significant digits, always scientific.
pub fn format_sci17(x: f64) -> String {
    if let Some(s) = non_finite(x) {
        return s;
    }
    let (mantissa, exp) = sci_parts(x, 16);
    format!("{mantissa}{}", c_exponent(exp))
}

/// `%.17g`: shortest of fixed/scientific at 17 significant digits, trailing
/// zeros removed.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if let Some(s) = non_finite(x) {
        return s;
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let (mantissa, exp) = sci_parts(x, (P - 1) as usize);
    if (-4..P).contains(&exp) {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, x);
        strip_fraction_zeros(&fixed).to_string()
    } else {
        format!("{}{}", strip_fraction_zeros(&mantissa), c_exponent(exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.5), "0.5");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(std::f64::consts::PI), "3.1415926535897931");
        assert_eq!(format_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(format_g17(2.5e-5), "2.5000000000000001e-05");
        assert_eq!(format_g17(1e17), "1e+17");
        assert_eq!(format_g17(123456.0), "123456");
        assert_eq!(format_g17(-0.25), "-0.25");
        assert_eq!(format_g17(0.0), "0");
        assert_eq!(format_g17(1e-4), "0.0001");
    }

    #[test]
    fn sci17_matches_printf() {
        assert_eq!(format_sci17(1.0), "1.0000000000000000e+00");
        assert_eq!(format_sci17(0.0), "0.0000000000000000e+00");
        assert_eq!(format_sci17(std::f64::consts::PI), "3.1415926535897931e+00");
        assert_eq!(format_sci17(-2.5e-120), "-2.5000000000000000e-120");
        assert_eq!(format_sci17(f64::NAN), "nan");
    }

    #[test]
    fn both_round_trip() {
        for &x in &[0.1, 1.0 / 3.0, 6.02214076e23, 1.5e-300, -7.25, 0.785_398_163_397_448_2] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
            assert_eq!(format_sci17(x).parse::<f64>().unwrap(), x);
        }
    }
}
