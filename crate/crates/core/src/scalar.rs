//! Exact rational scalars, the fixed scalar q, and q-combinatorics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in canonical form:
/// positive denominator, numerator and denominator coprime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, canonicalizing. Errors when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_bigints(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Integer power, inverting for negative exponents. Errors on `0^-n`.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if self.is_zero() && exp < 0 {
            return Err(Error::InvalidScalar("zero to a negative power".into()));
        }
        let e = i32::try_from(exp)
            .map_err(|_| Error::InvalidScalar(format!("exponent {exp} out of range")))?;
        Ok(Rational(self.0.pow(e)))
    }

    /// Approximation for display in plots; never used in computation.
    pub fn to_f64(&self) -> f64 {
        let num = self.0.numer();
        let den = self.0.denom();
        str::parse::<f64>(&num.to_string()).unwrap_or(f64::NAN)
            / str::parse::<f64>(&den.to_string()).unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Debug delegates to Display so matrices of rationals stay readable.
impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p"` or `"p/q"`. Non-canonical input (e.g. `"2/4"`) is
    /// accepted and canonicalized; a zero denominator is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |_| Error::InvalidScalar(format!("cannot parse rational from {s:?}"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(bad)?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim()).map_err(bad)?;
                let d = BigInt::from_str(den.trim()).map_err(bad)?;
                Self::from_bigints(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// The fixed scalar q together with the diameter d.
///
/// A rational q with |q| not in {0, 1} is never a root of unity, so the
/// standing hypothesis on q holds automatically once construction succeeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    q: Rational,
    d: usize,
}

impl QContext {
    pub fn new(q: Rational, d: usize) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidScalar("q must be nonzero".into()));
        }
        if q.abs().is_one() {
            return Err(Error::InvalidScalar("|q| must not equal 1".into()));
        }
        Ok(QContext { q, d })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Same q, different diameter.
    pub fn with_diameter(&self, d: usize) -> Self {
        QContext { q: self.q.clone(), d }
    }

    /// The q-integer (q^i - q^-i) / (q - q^-1), defined for any integer i.
    pub fn q_int(&self, i: i64) -> Rational {
        let qi = self.q.pow(i).expect("q is nonzero");
        let qmi = self.q.pow(-i).expect("q is nonzero");
        (&qi - &qmi) / self.q_minus_q_inv()
    }

    /// The q-factorial: product of q-integers [1]_q ... [i]_q.
    pub fn q_factorial(&self, i: u32) -> Rational {
        let mut acc = Rational::one();
        for n in 1..=i64::from(i) {
            acc = &acc * &self.q_int(n);
        }
        acc
    }

    /// q - q^-1, nonzero for every valid context.
    pub fn q_minus_q_inv(&self) -> Rational {
        &self.q - &self.q.recip().expect("q is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "-3/2", "21/4", "7"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(r("2/4"), r("1/2"));
        assert_eq!(r("3/-2"), r("-3/2"));
        assert_eq!(r("-0/5"), Rational::zero());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = r("-3/2");
        assert!((&a * &a.recip().unwrap()).is_one());
        let third = Rational::new(1, 3).unwrap();
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
    }

    #[test]
    fn q_int_examples() {
        let ctx = QContext::new(Rational::from_int(2), 3).unwrap();
        assert_eq!(ctx.q_int(0), Rational::zero());
        assert_eq!(ctx.q_int(1), Rational::one());
        // (8 - 1/8) / (2 - 1/2)
        assert_eq!(ctx.q_int(3), r("21/4"));
    }

    #[test]
    fn q_int_antisymmetry_and_nonvanishing() {
        for q in ["2", "-2", "1/3", "5/2"] {
            let ctx = QContext::new(r(q), 3).unwrap();
            for i in 1..=(4 * ctx.d() as i64) {
                assert_eq!(ctx.q_int(-i), -&ctx.q_int(i));
                assert!(!ctx.q_int(i).is_zero(), "[{i}]_q vanished at q = {q}");
            }
        }
    }

    #[test]
    fn q_factorial_examples() {
        let ctx = QContext::new(Rational::from_int(2), 2).unwrap();
        assert_eq!(ctx.q_factorial(0), Rational::one());
        assert_eq!(ctx.q_factorial(1), Rational::one());
        // [2]_q = (4 - 1/4)/(3/2) = 5/2
        assert_eq!(ctx.q_factorial(2), r("5/2"));
        for i in 0..8 {
            assert!(!ctx.q_factorial(i).is_zero());
        }
    }

    #[test]
    fn qcontext_rejects_degenerate_q() {
        assert!(QContext::new(Rational::zero(), 1).is_err());
        assert!(QContext::new(Rational::one(), 1).is_err());
        assert!(QContext::new(Rational::from_int(-1), 1).is_err());
        assert!(QContext::new(r("1/2"), 1).is_ok());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let v: Rational = serde_json::from_str("\"-3/2\"").unwrap();
        assert_eq!(v, r("-3/2"));
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"-3/2\"");
        assert!(serde_json::from_str::<Rational>("\"1/0\"").is_err());
    }
}
