//! Exact rational helpers and signed square roots of rationals.
//!
//! Every quantity derived from a governing sequence is rational except for
//! normalization factors and recurrence coefficients, which are square roots
//! of rationals. [`Surd`] carries such a value as `sign * sqrt(square)` so
//! products and ratios stay exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics on a zero denominator.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Input("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("malformed rational {text:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("malformed rational {text:?}")))?;
        if den.is_zero() {
            return Err(Error::Input(format!("zero denominator in {text:?}")));
        }
        return Ok(Q::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Input(format!("malformed rational {text:?}")));
        }
        let mut num: BigInt = digits.parse().expect("digits checked above");
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Q::new(num, den));
    }
    s.parse::<BigInt>()
        .map(Q::from_integer)
        .map_err(|_| Error::Input(format!("malformed rational {text:?}")))
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn format_rational(value: &Q) -> String {
    value.to_string()
}

/// Nearest `f64`; saturates to `±inf` only for astronomically large values.
pub fn to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root when `value` is the square of a rational.
pub fn exact_sqrt(value: &Q) -> Option<Q> {
    if value.is_negative() {
        return None;
    }
    let num = value.numer();
    let den = value.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

/// Integer power of a rational, `exp >= 0`.
pub fn pow(base: &Q, exp: usize) -> Q {
    num_traits::pow(base.clone(), exp)
}

/// A real number of the form `sign * sqrt(square)` with rational `square >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    sign: i8,
    square: Q,
}

impl Surd {
    pub fn zero() -> Self {
        Surd {
            sign: 0,
            square: Q::zero(),
        }
    }

    /// Positive square root of a non-negative rational.
    pub fn sqrt(square: Q) -> Result<Self> {
        match square.cmp(&Q::zero()) {
            Ordering::Less => Err(Error::Domain(format!(
                "square root of negative rational {square}"
            ))),
            Ordering::Equal => Ok(Surd::zero()),
            Ordering::Greater => Ok(Surd { sign: 1, square }),
        }
    }

    /// The rational `value` itself, viewed as a surd.
    pub fn from_rational(value: &Q) -> Self {
        let sign = match value.cmp(&Q::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => return Surd::zero(),
            Ordering::Greater => 1,
        };
        Surd {
            sign,
            square: value * value,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The exact square of the value.
    pub fn square(&self) -> &Q {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `Some(r)` when the value is rational.
    pub fn to_rational(&self) -> Option<Q> {
        exact_sqrt(&self.square).map(|r| if self.sign < 0 { -r } else { r })
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.square).sqrt()
    }

    pub fn abs(&self) -> Surd {
        Surd {
            sign: self.sign.abs(),
            square: self.square.clone(),
        }
    }

    /// `self / other` when that ratio is rational, `None` otherwise.
    pub fn ratio(&self, other: &Surd) -> Option<Q> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Q::zero());
        }
        let r = exact_sqrt(&(&self.square / &other.square))?;
        Some(if self.sign * other.sign < 0 { -r } else { r })
    }

    /// Multiplies by a rational factor.
    pub fn scale(&self, factor: &Q) -> Surd {
        self.clone() * Surd::from_rational(factor)
    }

    pub fn recip(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Surd {
            sign: self.sign,
            square: Q::one() / &self.square,
        })
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let sign = self.sign * rhs.sign;
        if sign == 0 {
            return Surd::zero();
        }
        Surd {
            sign,
            square: self.square * rhs.square,
        }
    }
}

impl Div for Surd {
    type Output = Surd;
    /// Panics when `rhs` is zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Surd) -> Surd {
        self * rhs.recip().expect("division of a surd by zero")
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            sign: -self.sign,
            square: self.square,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => write!(f, "{r}"),
            None if self.sign < 0 => write!(f, "-sqrt({})", self.square),
            None => write!(f, "sqrt({})", self.square),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert_eq!(parse_rational("0.25").unwrap(), qf(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), qf(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_as_p_over_q() {
        assert_eq!(format_rational(&qf(-2, 4)), "-1/2");
        assert_eq!(format_rational(&q(5)), "5");
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(exact_sqrt(&qf(1, 2)), None);
        assert_eq!(exact_sqrt(&q(-4)), None);
        assert_eq!(exact_sqrt(&q(0)), Some(q(0)));
    }

    #[test]
    fn surd_products_and_ratios_stay_exact() {
        let a = Surd::sqrt(qf(1, 2)).unwrap();
        let b = Surd::sqrt(q(2)).unwrap();
        assert_eq!((a.clone() * b.clone()).to_rational(), Some(q(1)));
        assert_eq!(b.ratio(&a), Some(q(2)));
        assert_eq!((-a.clone()).ratio(&a), Some(q(-1)));
        assert!(a.ratio(&Surd::sqrt(q(3)).unwrap()).is_none());
        assert!((a.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
        assert!(Surd::sqrt(q(-1)).is_err());
    }
}
