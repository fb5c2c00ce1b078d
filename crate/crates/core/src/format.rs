//! Fixed-field text output in the layout the reference program prints.

use crate::game::RoundSummary;
use crate::khinchin::FrequencyReport;

/// Significant digits of default C++ stream output.
const SIG_DIGITS: i32 = 6;

/// Renders `x` like C's `%g` (6 significant digits, trailing zeros trimmed).
///
/// Exact decimal ties round away from zero, as the reference program's
/// runtime printed them (4.328125 is shown as "4.32813").
///
/// ```
/// use khinchin::format::format_g;
/// assert_eq!(format_g(0.76), "0.76");
/// assert_eq!(format_g(1.942634), "1.94263");
/// assert_eq!(format_g(4.328125), "4.32813");
/// assert_eq!(format_g(33554432.0), "3.35544e+07");
/// ```
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return if x.is_sign_negative() { "-nan" } else { "nan" }.to_string();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf" } else { "inf" }.to_string();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x == 0.0 {
        return format!("{sign}0");
    }

    let (digits, exp) = round_significant(x.abs());
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let body = if (-4..SIG_DIGITS).contains(&exp) {
        fixed_notation(&text, exp)
    } else {
        let (lead, rest) = text.split_at(1);
        let mantissa = trim_zeros(&format!("{lead}.{rest}")).to_string();
        let exp_sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{exp_sign}{:02}", exp.abs())
    };
    format!("{sign}{body}")
}

/// The first [`SIG_DIGITS`] significant digits of positive finite `x`,
/// rounded half away from zero, with the decimal exponent of the first digit.
fn round_significant(x: f64) -> (Vec<u8>, i32) {
    // Every f64 has a terminating decimal expansion of at most 767
    // significant digits, so 800 digits after the point are exact.
    let sci = format!("{x:.800e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let mut exp: i32 = exp.parse().expect("integer exponent");
    let all: Vec<u8> = mantissa
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();

    let mut digits = all[..SIG_DIGITS as usize].to_vec();
    if all[SIG_DIGITS as usize] >= 5 {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                digits.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    (digits, exp)
}

fn fixed_notation(text: &str, exp: i32) -> String {
    let s = if exp < 0 {
        format!("0.{}{text}", "0".repeat((-exp - 1) as usize))
    } else {
        let int_len = exp as usize + 1;
        format!("{}.{}", &text[..int_len], &text[int_len..])
    };
    trim_zeros(&s).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `g = <games> d = <delta> r = <rounds> f1 = <f1> f2 = <f2> s = <seed>`
pub fn format_summary(report: &FrequencyReport) -> String {
    format!(
        "g = {} d = {} r = {} f1 = {} f2 = {} s = {}",
        report.games,
        format_g(report.delta),
        report.rounds,
        format_g(report.f1()),
        format_g(report.f2()),
        report.seed
    )
}

/// `G = <g_mean> A = <a_mean>`
pub fn format_details(round: &RoundSummary) -> String {
    format!(
        "G = {} A = {}",
        format_g(round.g_mean),
        format_g(round.a_mean)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_fixed_range() {
        let cases = [
            (0.05, "0.05"),
            (0.76, "0.76"),
            (0.16, "0.16"),
            (0.7, "0.7"),
            (1.0, "1"),
            (2.0, "2"),
            (1.942634, "1.94263"),
            (6.978516, "6.97852"),
            (7.0 / 3.0, "2.33333"),
            (14.17822, "14.1782"),
            (10.02783, "10.0278"),
            (2048.0, "2048"),
            (123456.0, "123456"),
            (999999.4, "999999"),
            (0.0001, "0.0001"),
            (0.000123456, "0.000123456"),
            (-2.5, "-2.5"),
            (0.0, "0"),
            (4.328125, "4.32813"),
            (-4.328125, "-4.32813"),
            (1.0000005, "1"),
            (2.5000005, "2.5"),
            (0.15625, "0.15625"),
            (99999.95, "99999.9"),
            (999999.5, "1e+06"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g(x), want, "x = {x}");
        }
    }

    #[test]
    fn g_scientific_range() {
        let cases = [
            (999999.5, "1e+06"),
            (1234567.0, "1.23457e+06"),
            (33554432.0, "3.35544e+07"),
            (0.00001, "1e-05"),
            (0.0000123456, "1.23456e-05"),
            (1e100, "1e+100"),
            (f64::MAX, "1.79769e+308"),
            (-1e-300, "-1e-300"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g(x), want, "x = {x}");
        }
    }

    #[test]
    fn g_non_finite() {
        assert_eq!(format_g(f64::INFINITY), "inf");
        assert_eq!(format_g(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_g(f64::NAN), "nan");
    }

    #[test]
    fn summary_reference_line() {
        let r = FrequencyReport::from_counts(2048, 0.05, 100, 1_234_567, 76, 16, 0);
        assert_eq!(
            format_summary(&r),
            "g = 2048 d = 0.05 r = 100 f1 = 0.76 f2 = 0.16 s = 1234567"
        );
        let r = FrequencyReport::from_counts(8, 1.0, 1, 0, 1, 0, 0);
        assert_eq!(format_summary(&r), "g = 8 d = 1 r = 1 f1 = 1 f2 = 0 s = 0");
    }

    #[test]
    fn details_reference_line() {
        let r = RoundSummary {
            games: 2048,
            sum_tails: 0,
            g_mean: 1.942634,
            a_mean: 6.978516,
            saturated: false,
        };
        assert_eq!(format_details(&r), "G = 1.94263 A = 6.97852");
        let r = RoundSummary {
            g_mean: 2.0,
            a_mean: 7.0 / 3.0,
            ..r
        };
        assert_eq!(format_details(&r), "G = 2 A = 2.33333");
    }
}
