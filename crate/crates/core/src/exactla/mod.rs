//! Exact integer linear algebra: the independent oracle that every
//! closed-form determinant formula in this crate is checked against.
//!
//! Determinants and ranks use fraction-free (Bareiss) elimination, the
//! characteristic polynomial uses the division-free Berkowitz scheme. All
//! arithmetic is exact; an i128 fast path covers the common case and
//! falls back to `BigInt` on overflow.

mod matrix;
mod poly;

pub use matrix::BigMatrix;
pub use poly::{poly_divides, poly_mul, IntPolynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Classification of a characteristic-polynomial value relative to N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueClass {
    /// The value is 0.
    Zero,
    /// Nonzero multiple of N.
    Div,
    /// Not a multiple of N.
    NonDiv,
}

/// Classes of p(+1) and p(-1) relative to n: zero / multiple-of-n / neither.
pub fn pm1_class(p: &IntPolynomial, n: &BigInt) -> (ValueClass, ValueClass) {
    let classify = |x: i64| {
        let v = p.eval(&BigInt::from(x));
        if v.is_zero() {
            ValueClass::Zero
        } else if v.mod_floor(n).is_zero() {
            ValueClass::Div
        } else {
            ValueClass::NonDiv
        }
    };
    (classify(1), classify(-1))
}
