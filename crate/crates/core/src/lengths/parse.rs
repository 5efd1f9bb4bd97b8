use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::LengthVector;
use crate::error::{Error, Result};

/// Parses `"3/20"`, `"0.15"`, `"12"` (optionally signed) into an exact rational.
/// Decimals are read as decimal fractions, never through a binary float.
pub fn parse_rational(token: &str) -> Result<BigRational> {
    let malformed = || Error::MalformedNumber(token.to_string());
    let t = token.trim();
    if t.is_empty() {
        return Err(malformed());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_integer(num).ok_or_else(malformed)?;
        let den = parse_integer(den).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(malformed());
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Ok(BigRational::new(num, den))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a comma- and/or whitespace-separated list of positive rationals.
/// Surrounding brackets or parentheses are tolerated.
pub fn parse_length_vector(text: &str) -> Result<LengthVector> {
    let trimmed = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    let values = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    LengthVector::new(values)
}
