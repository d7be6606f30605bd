//! Exact rational scalars and their textual forms.
//!
//! Every numeric quantity in this crate — valuations, weightings, LP
//! tableaus, integral values — is a [`Rational`]. There is no floating
//! point anywhere on a computational path; equality checks in the
//! property suites are exact, not tolerance-based.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, the scalar type of the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small integer constant as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty string is not a rational")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses an exact rational from a string.
///
/// Accepted forms: an integer (`"-3"`), a fraction (`"7/12"`), or a
/// decimal (`"2.125"`, converted via a power-of-ten denominator, so
/// `"0.1"` is exactly 1/10). Exponent notation is rejected: it is too
/// easy to write a float by accident where an exact value is required.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(s.to_string());

    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| invalid())?;
        let q: BigInt = q.trim().parse().map_err(|_| invalid())?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(p, q));
    }

    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let (sign, digits) = match int_part.as_bytes().first() {
            Some(b'-') => (-1, &int_part[1..]),
            Some(b'+') => (1, &int_part[1..]),
            _ => (1, int_part),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let int_val: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| invalid())?
        };
        let frac_val: BigInt = frac_part.parse().map_err(|_| invalid())?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude =
            Rational::from_integer(int_val) + Rational::new(frac_val, denom);
        return Ok(magnitude * Rational::from_integer(BigInt::from(sign)));
    }

    let n: BigInt = s.parse().map_err(|_| invalid())?;
    Ok(Rational::from_integer(n))
}

/// Exact inner product Σᵢ aᵢ·bᵢ. Panics if the lengths differ.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Renders `r` as `p/q` (or a bare integer when `q == 1`).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation of `r` with `sig` significant digits, for
/// human-readable output only. Computed by integer long division, so it
/// is deterministic across platforms.
pub fn approx_decimal(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let r = r.abs();
    let (num, den) = (r.numer().clone(), r.denom().clone());

    // Find the decimal exponent e with 10^e <= r < 10^(e+1).
    let mut exp: i64 = 0;
    let ten = BigInt::from(10u32);
    let mut scaled_num = num.clone();
    let mut scaled_den = den.clone();
    while scaled_num >= &scaled_den * &ten {
        scaled_den *= &ten;
        exp += 1;
    }
    while scaled_num < scaled_den {
        scaled_num *= &ten;
        exp -= 1;
    }

    // digits = round(r / 10^e * 10^(sig-1)) with sig digits total.
    let shift = BigInt::from(10u32).pow((sig as u32).saturating_sub(1));
    let scaled = &scaled_num * &shift;
    let (mut digits, rem) = num_integer::Integer::div_rem(&scaled, &scaled_den);
    if &rem * 2 >= scaled_den {
        digits += 1;
        // Rounding may carry into an extra digit (e.g. 999.95 -> 1000.0).
        if digits == BigInt::from(10u32).pow(sig as u32) {
            digits /= &ten;
            exp += 1;
        }
    }

    let ds = digits.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 0 && (exp as usize) < sig {
        let point = exp as usize + 1;
        out.push_str(&ds[..point]);
        let tail = ds[point..].trim_end_matches('0');
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
    } else if (-4..0).contains(&exp) {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(ds.trim_end_matches('0'));
    } else {
        out.push_str(&ds[..1]);
        let tail = ds[1..].trim_end_matches('0');
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}
