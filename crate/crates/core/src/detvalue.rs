//! Symbolic determinant values of the form sign * f * 2^e with f in {1, 3}.
//!
//! Exponents of interesting moduli reach the hundreds of thousands (and the
//! showcase modulus produces an exponent with 32 digits), so the value is
//! never materialized unless explicitly requested.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact determinant in symbolic form `sign * (3 if factor3 else 1) * 2^exp2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetValue {
    sign: i8,
    exp2: BigUint,
    factor3: bool,
}

impl DetValue {
    pub fn zero() -> Self {
        Self { sign: 0, exp2: BigUint::zero(), factor3: false }
    }

    /// sign * 2^exp2 with sign in {-1, +1}.
    pub fn pow2(sign: i8, exp2: BigUint) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Self { sign, exp2, factor3: false }
    }

    pub fn pow2_u64(sign: i8, exp2: u64) -> Self {
        Self::pow2(sign, BigUint::from(exp2))
    }

    /// sign * 3 * 2^exp2, the Conway-family shape.
    pub fn three_pow2(sign: i8, exp2: BigUint) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Self { sign, exp2, factor3: true }
    }

    pub fn three_pow2_u64(sign: i8, exp2: u64) -> Self {
        Self::three_pow2(sign, BigUint::from(exp2))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn exp2(&self) -> &BigUint {
        &self.exp2
    }

    pub fn has_factor3(&self) -> bool {
        self.factor3
    }

    /// Materialize as a full integer. May be astronomically large; callers
    /// guard with [`DetValue::exp2`] first.
    pub fn to_bigint(&self) -> BigInt {
        if self.sign == 0 {
            return BigInt::zero();
        }
        let e = self.exp2.to_usize().expect("exponent too large to materialize");
        let mut v = BigInt::from(1) << e;
        if self.factor3 {
            v *= 3;
        }
        if self.sign < 0 {
            v = -v;
        }
        v
    }

    /// Materialize only when the exponent is small.
    pub fn to_bigint_if_small(&self, max_exp2: u64) -> Option<BigInt> {
        if self.is_zero() || self.exp2.to_u64().is_some_and(|e| e <= max_exp2) {
            Some(self.to_bigint())
        } else {
            None
        }
    }

    /// Signed log2 for plot data: sign * exp2; None for the zero value.
    pub fn signed_log2(&self) -> Option<BigInt> {
        if self.is_zero() {
            None
        } else {
            let e = BigInt::from(self.exp2.clone());
            Some(if self.sign < 0 { -e } else { e })
        }
    }
}

impl fmt::Display for DetValue {
    /// Exact text forms: `0`, `2^K`, `-2^K`, `3*2^K`, `-3*2^K`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factor3 {
            write!(f, "3*")?;
        }
        write!(f, "2^{}", self.exp2)
    }
}

impl FromStr for DetValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (-1i8, rest),
            None => (1i8, s),
        };
        let (factor3, rest) = match rest.strip_prefix("3*") {
            Some(rest) => (true, rest),
            None => (false, rest),
        };
        let exp = rest
            .strip_prefix("2^")
            .ok_or(Error::InvalidInput("expected 0, [-][3*]2^K"))?;
        let exp2: BigUint = exp
            .parse()
            .map_err(|_| Error::InvalidInput("bad exponent in determinant value"))?;
        Ok(Self { sign, exp2, factor3 })
    }
}
