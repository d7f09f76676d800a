//! 2-adic valuation primitives.
//!
//! Everything in this crate is 2-primary: `alpha` counts binary ones, `nu_*`
//! measure the exponent of 2, and [`TruncatedValuation`] carries the
//! "exact below a bound, otherwise only a lower bound" values that appear in
//! the valuation-vector case patterns.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational coefficient. `BigRational` keeps itself in lowest terms
/// with a positive denominator, and zero is `0/1`.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeLowerIndex(i64),
}

/// The 2-adic valuation of an integer or rational: a finite exponent, or
/// `Infinity` for zero.
///
/// Variant order makes `Infinity` compare above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// Shift by an integer; `Infinity` absorbs.
    pub fn shift(self, by: i64) -> Valuation {
        self + Valuation::Finite(by)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// A valuation known exactly, or only bounded below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncatedValuation {
    Exact(i64),
    AtLeast(i64),
}

impl TruncatedValuation {
    /// Whether a concrete valuation is consistent with this assertion.
    pub fn matches(self, actual: Valuation) -> bool {
        match self {
            TruncatedValuation::Exact(v) => actual == Valuation::Finite(v),
            TruncatedValuation::AtLeast(bound) => actual >= Valuation::Finite(bound),
        }
    }

    /// Add a constant offset. Exact values shift, lower bounds shift.
    pub fn offset(self, by: i64) -> TruncatedValuation {
        match self {
            TruncatedValuation::Exact(v) => TruncatedValuation::Exact(v + by),
            TruncatedValuation::AtLeast(b) => TruncatedValuation::AtLeast(b + by),
        }
    }
}

impl fmt::Display for TruncatedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncatedValuation::Exact(v) => write!(f, "{v}"),
            TruncatedValuation::AtLeast(b) => write!(f, ">={b}"),
        }
    }
}

/// Number of ones in the binary expansion of `n`.
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

/// Exponent of 2 dividing `n`; `Infinity` for zero.
pub fn nu_int(n: i64) -> Valuation {
    if n == 0 {
        Valuation::Infinity
    } else {
        Valuation::Finite(i64::from(n.trailing_zeros()))
    }
}

pub fn nu_bigint(n: &BigInt) -> Valuation {
    match n.trailing_zeros() {
        Some(tz) => Valuation::Finite(tz as i64),
        None => Valuation::Infinity,
    }
}

/// `nu(numerator) - nu(denominator)`, `Infinity` for zero.
pub fn nu_rational(q: &Rational) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinity;
    }
    match (nu_bigint(q.numer()), nu_bigint(q.denom())) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero canonical rational has nonzero parts"),
    }
}

/// `nu(k, e)`: the exact valuation of `k` when it is below `e`, otherwise
/// only the bound `>= e`. `k = 0` always gives `AtLeast(e)`.
pub fn nu_trunc(k: u64, e: i64) -> TruncatedValuation {
    match nu_int(k as i64) {
        Valuation::Finite(v) if v < e => TruncatedValuation::Exact(v),
        _ => TruncatedValuation::AtLeast(e),
    }
}

/// 2-adic valuation of the binomial coefficient `C(top, k)`.
///
/// Computed by Kummer's theorem, never by forming the coefficient. A negative
/// upper index is reflected through `C(-n, k) = (-1)^k C(n + k - 1, k)`.
pub fn nu_binomial(top: i64, k: i64) -> Result<Valuation, DyadicError> {
    if k < 0 {
        return Err(DyadicError::NegativeLowerIndex(k));
    }
    if top < 0 {
        // C(top, k) = ±C(k - top - 1, k), and the reflected top is >= k.
        return nu_binomial(k - top - 1, k);
    }
    if k > top {
        return Ok(Valuation::Infinity);
    }
    let (top, k) = (top as u64, k as u64);
    let carries = alpha(k) + alpha(top - k) - alpha(top);
    Ok(Valuation::Finite(i64::from(carries)))
}
