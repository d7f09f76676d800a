//! Truncated formal power series with exact rational coefficients.
//!
//! Only the handful of series the immersion conditions need are built here:
//! `log(1+t)/t` and `lambda(T) = (asinh(sqrt T)/sqrt T)^2`, plus truncated
//! products and powers. Orders stay small (at most the binary length of the
//! relevant `n`), so coefficients are stored densely.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dyadic::Rational;

/// Order used when a caller does not ask for one: the highest coefficient
/// index the valuation-vector analysis inspects.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("coefficient index {index} exceeds series order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

/// Coefficients `c_0..=c_N` of a power series modulo `t^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { coeffs }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&Rational, SeriesError> {
        self.coeffs.get(index).ok_or(SeriesError::IndexOutOfRange {
            index,
            order: self.order(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul_trunc(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self.mul_same_order(other))
    }

    fn mul_same_order(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len();
        // Each coefficient is summed as an unreduced fraction and brought to
        // lowest terms once; per-term gcds dominate otherwise.
        let coeffs = (0..n)
            .map(|i| {
                let mut num = BigInt::zero();
                let mut den = BigInt::one();
                for j in 0..=i {
                    let (a, b) = (&self.coeffs[j], &other.coeffs[i - j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let term_den = a.denom() * b.denom();
                    if term_den == den {
                        num += a.numer() * b.numer();
                    } else {
                        num = num * &term_den + a.numer() * b.numer() * &den;
                        den *= term_den;
                    }
                }
                Rational::new(num, den)
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// `self^m` at the same order, by binary exponentiation.
    pub fn pow_trunc(&self, mut m: u64) -> TruncatedSeries {
        let mut result = TruncatedSeries::one(self.order());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul_same_order(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_same_order(&base);
            }
        }
        result
    }
}

impl fmt::Display for TruncatedSeries {
    /// Comma-separated coefficients in lowest terms, e.g. `1, -8/3, 68/15`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `log(1+t)/t = sum (-1)^k t^k / (k+1)`.
pub fn log_over_t_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|k| {
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            Rational::new(BigInt::from(sign), BigInt::from(k + 1))
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// `asinh(x)/x` as a series in `T = x^2`:
/// coefficient of `T^k` is `(-1)^k C(2k,k) / (4^k (2k+1))`.
fn asinh_quotient_series(order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    // central binomial over 4^k, updated by the ratio (2k+1)/(2k+2)
    let mut central = Rational::one();
    for k in 0..=order {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        coeffs.push(&central * Rational::new(BigInt::from(sign), BigInt::from(2 * k + 1)));
        central *= Rational::new(BigInt::from(2 * k + 1), BigInt::from(2 * k + 2));
    }
    TruncatedSeries { coeffs }
}

/// `lambda(T) = (asinh(sqrt T)/sqrt T)^2`, truncated at `order`.
pub fn lambda_series(order: usize) -> TruncatedSeries {
    let q = asinh_quotient_series(order);
    q.mul_same_order(&q)
}
