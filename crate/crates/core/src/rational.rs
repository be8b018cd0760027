//! Exact rational scalars and string conversions shared across the crate.
//!
//! All coefficient arithmetic is done with [`num_rational::BigRational`],
//! which keeps values reduced with a positive denominator. The helpers here
//! handle the text formats used by the CLI and the JSON interchange files:
//! integers, fractions (`-3/4`), decimals (`0.25`) and scientific notation
//! (`1e-6`).

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatParseError {
    pub input: String,
}

impl std::fmt::Display for RatParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid rational literal `{}`", self.input)
    }
}

impl std::error::Error for RatParseError {}

/// Parses `p`, `p/q`, `1.25`, `-3.5e-2` into an exact rational.
pub fn rat_from_str(s: &str) -> Result<Rat, RatParseError> {
    let err = || RatParseError {
        input: s.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    // Decimal / scientific form.
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.trim().parse().map_err(|_| err())?;
            (m.trim(), exp)
        }
        None => (s, 0i64),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['+', '-']);
    if !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (int_digits.is_empty() && frac_part.is_empty())
    {
        return Err(err());
    }
    let digits = format!("{}{}", int_digits, frac_part);
    let mut value: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    if negative {
        value = -value;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let rat = if scale >= 0 {
        Rat::from_integer(value * ten.pow(scale as u32))
    } else {
        Rat::new(value, ten.pow((-scale) as u32))
    };
    Ok(rat)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn rat_to_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` places after the point, truncated toward
/// zero. Used for the human-readable half of enclosure reports; the exact
/// endpoints always travel alongside it.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let int_part = abs.to_integer();
    let mut frac = &abs - Rat::from_integer(int_part.clone());
    let mut out = String::new();
    if negative && !r.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        let ten = Rat::from_integer(BigInt::from(10));
        for _ in 0..digits {
            frac *= &ten;
            let d = frac.to_integer();
            debug_assert!(d.sign() != Sign::Minus);
            out.push_str(&d.to_string());
            frac -= Rat::from_integer(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_fraction() {
        assert_eq!(rat_from_str("7").unwrap(), rat_i64(7));
        assert_eq!(rat_from_str("-3/6").unwrap(), rat_frac(-1, 2));
    }

    #[test]
    fn parses_decimal_and_scientific() {
        assert_eq!(rat_from_str("0.25").unwrap(), rat_frac(1, 4));
        assert_eq!(rat_from_str("1e-6").unwrap(), rat_frac(1, 1_000_000));
        assert_eq!(rat_from_str("-2.5e2").unwrap(), rat_i64(-250));
    }

    #[test]
    fn rejects_garbage() {
        assert!(rat_from_str("").is_err());
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn decimal_rendering_truncates() {
        assert_eq!(rat_to_decimal(&rat_frac(1, 3), 5), "0.33333");
        assert_eq!(rat_to_decimal(&rat_frac(-7, 2), 2), "-3.50");
        assert_eq!(rat_to_str(&rat_frac(-7, 2)), "-7/2");
    }
}
