//! Command-line complex numbers: `re`, `imI`, `re+imI` or `re-imI`, with
//! `i` accepted for `I` and a bare `I` meaning the unit.

use std::str::FromStr;

use lerch_core::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex(pub ComplexValue);

impl FromStr for Complex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("`{s}` is not a number of the form re, imI or re+imI");
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix(['i', 'I']) else {
            return t.parse().map(|re| Complex(ComplexValue::new(re, 0.0))).map_err(|_| bad());
        };
        // split before the last sign that is not an exponent sign
        let split = body
            .char_indices()
            .filter(|&(i, ch)| (ch == '+' || ch == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
            .map(|(i, _)| i)
            .next_back();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re.is_empty() { 0.0 } else { re.parse().map_err(|_| bad())? };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().map_err(|_| bad())?,
        };
        Ok(Complex(ComplexValue::new(re, im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> (f64, f64) {
        let z = s.parse::<Complex>().unwrap().0;
        (z.re, z.im)
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(p("2"), (2.0, 0.0));
        assert_eq!(p("-0.5"), (-0.5, 0.0));
        assert_eq!(p("-1+3I"), (-1.0, 3.0));
        assert_eq!(p("-1-3i"), (-1.0, -3.0));
        assert_eq!(p("2.5I"), (0.0, 2.5));
        assert_eq!(p("I"), (0.0, 1.0));
        assert_eq!(p("-I"), (0.0, -1.0));
        assert_eq!(p("1-I"), (1.0, -1.0));
        assert_eq!(p("1e-3+2e+1I"), (1e-3, 20.0));
        assert_eq!(p("-1e-3"), (-1e-3, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1+", "1+2", "1+xI", "I2"] {
            assert!(s.parse::<Complex>().is_err(), "{s}");
        }
    }
}
