//! Number formatting and CSV emission shared by all subcommands.

use std::io::Write;

/// Significant digits in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Formats like C's `%.9g`: fixed notation for decimal exponents in
/// [−5, 9), scientific otherwise, trailing zeros removed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let p = SIGNIFICANT_DIGITS - 1;
    let sci = format!("{x:.p$e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (p as i32 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to the same digits `fmt_sig` prints, for JSON output.
pub fn sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_sig(x).parse().unwrap_or(x)
    } else {
        x
    }
}

pub fn sig3(v: [f64; 3]) -> [f64; 3] {
    v.map(sig)
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt_sig(2e-3), "0.002");
        assert_eq!(fmt_sig(887.0), "887");
        assert_eq!(fmt_sig(1.0f64.exp().recip()), "0.367879441");
        assert_eq!(fmt_sig(1.3983e-10), "1.3983e-10");
        assert_eq!(fmt_sig(-8.2132107017), "-8.2132107");
        assert_eq!(fmt_sig(123456789.0), "123456789");
        assert_eq!(fmt_sig(1234567890.0), "1.23456789e9");
        assert_eq!(fmt_sig(9.9999999999), "10");
        assert_eq!(fmt_sig(1e-5), "0.00001");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn sig_roundtrips_printed_value() {
        let x = 1.0f64 / 7.0;
        assert_eq!(sig(x), 0.142857143);
    }
}
