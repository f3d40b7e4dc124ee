//! Text forms for polynomials and field elements.
//!
//! Input is a comma-separated coefficient list, constant term first, each
//! coefficient the canonical integer of an `F_q` element (`0 <= c < q`):
//! `1,0,1,1` is `x^3 + x^2 + 1`.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::polyring::Poly;

pub fn parse_coeffs(s: &str, k: &FieldSpec) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    s.split(',')
        .map(|t| {
            let c: u64 = t.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))?;
            if c >= k.q() {
                return Err(Error::Parse(format!("coefficient {c} outside F_{}", k.q())));
            }
            Ok(c)
        })
        .collect()
}

pub fn parse_poly(s: &str, k: &FieldSpec) -> Result<Poly<u64>> {
    Ok(Poly::new(parse_coeffs(s, k)?, k))
}

/// Comma-separated coefficients, constant term first.
pub fn coeff_list(f: &Poly<u64>) -> String {
    if f.coeffs().is_empty() {
        return "0".into();
    }
    f.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Conventional form, highest degree first: `x^3 + 2x + 1`.
pub fn format_poly(f: &Poly<u64>) -> String {
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Pads an element's coordinates to length `n`.
pub fn parse_element(s: &str, n: usize, k: &FieldSpec) -> Result<Vec<u64>> {
    let mut v = parse_coeffs(s, k)?;
    if v.len() > n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    v.resize(n, k.zero());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let k = FieldSpec::prime(3).unwrap();
        let f = parse_poly("1,2,0,1", &k).unwrap();
        assert_eq!(format_poly(&f), "x^3 + 2x + 1");
        assert_eq!(coeff_list(&f), "1,2,0,1");
        assert_eq!(format_poly(&parse_poly("0,0", &k).unwrap()), "0");
        assert!(parse_poly("1,3", &k).is_err());
        assert!(parse_poly("1,,2", &k).is_err());
        assert_eq!(parse_element("1", 3, &k).unwrap(), vec![1, 0, 0]);
        assert!(parse_element("1,0,0,0", 3, &k).is_err());
    }
}
