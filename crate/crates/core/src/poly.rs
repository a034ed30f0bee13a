//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Rational;

/// Polynomial stored by ascending coefficients; the trailing coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: Vec<Rational>,
        }
        Ok(Polynomial::from_coeffs(Raw::deserialize(deserializer)?.coeffs))
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial { coeffs: vec![c] }.trimmed()
    }

    /// The monomial x.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Polynomial { coeffs }.trimmed()
    }

    /// The monic product of (x - r) over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut p = Polynomial::one();
        for r in roots {
            p = p.mul(&Polynomial::from_coeffs(vec![-r, Rational::one()]));
        }
        p
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Polynomial { coeffs }.trimmed()
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial { coeffs }.trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .trimmed()
    }

    /// All rational roots, sorted and deduplicated.
    ///
    /// Clears denominators to an integer polynomial, strips powers of x, and
    /// enumerates candidate roots p/s with p dividing the constant term and
    /// s dividing the leading coefficient.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() || self.degree() == 0 {
            return vec![];
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();

        let mut roots: Vec<Rational> = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        if low > 0 {
            roots.push(Rational::zero());
        }
        let constant = ints[low].abs();
        let leading = ints.last().expect("nonzero").abs();
        for p in divisors(&constant) {
            for s in divisors(&leading) {
                for cand in [
                    Rational::from_bigints(p.clone(), s.clone()).expect("s > 0"),
                    Rational::from_bigints(-p.clone(), s.clone()).expect("s > 0"),
                ] {
                    if self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Positive divisors of a positive integer, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if n.is_multiple_of(&k) {
            divs.push(k.clone());
            let other = n / &k;
            if other != k {
                divs.push(other);
            }
        }
        k += 1u32;
    }
    divs
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
