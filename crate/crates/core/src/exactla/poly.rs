//! Exact integer-coefficient polynomials.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! text form is descending degree, e.g. `x^3 - 2*x^2 - x + 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    /// Build from ascending-degree coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^k - 1.
    pub fn power_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    /// x - c.
    pub fn x_minus(c: i64) -> Self {
        Self::from_i64_coeffs(&[-c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        poly_mul(self, other)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Exact product.
pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() || b.is_zero() {
        return IntPolynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += ca * cb;
        }
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// Does `a` divide `b` over the integers? Returns the exact quotient when it
/// does, None otherwise. Dividing by the zero polynomial is an error.
pub fn poly_divides(a: &IntPolynomial, b: &IntPolynomial) -> Result<Option<IntPolynomial>> {
    if a.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    if b.is_zero() {
        return Ok(Some(IntPolynomial::zero()));
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db < da {
        return Ok(None);
    }
    let lead = a.coeffs.last().unwrap();
    let mut rem = b.coeffs.clone();
    let mut quot = vec![BigInt::zero(); db - da + 1];
    for k in (0..=db - da).rev() {
        let top = rem[k + da].clone();
        if top.is_zero() {
            continue;
        }
        if !(&top % lead).is_zero() {
            return Ok(None);
        }
        let q = &top / lead;
        for (i, ca) in a.coeffs.iter().enumerate() {
            let t = ca * &q;
            rem[k + i] -= t;
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(IntPolynomial::from_coeffs(quot)))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parse the display grammar: signed integer coefficients, `x^k`
    /// powers, optional `*`, unit coefficients omitted.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidInput("empty polynomial"));
        }
        let bad = Error::InvalidInput("malformed polynomial");
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut neg = false;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    neg = true;
                    pos += 1;
                }
                _ if pos == 0 => {}
                _ => return Err(bad),
            }
            let dig_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coef = if dig_start == pos {
                BigInt::one()
            } else {
                compact[dig_start..pos].parse().map_err(|_| bad.clone())?
            };
            if neg {
                coef = -coef;
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'x' {
                    return Err(bad);
                }
            }
            let exp = if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let e_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if e_start == pos {
                        return Err(bad);
                    }
                    compact[e_start..pos].parse::<usize>().map_err(|_| bad.clone())?
                } else {
                    1
                }
            } else {
                if dig_start == pos {
                    return Err(bad);
                }
                0
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coef;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}
