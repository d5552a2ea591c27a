//! Truncated formal power series over [`Rational`].
//!
//! A series stores exact coefficients for z^0 through z^order and nothing
//! beyond. Binary operations return the minimum of the operand orders, so a
//! coefficient is only ever reported when it is fully determined by the
//! inputs; precision never silently inflates.
//!
//! Logarithms of series with positive valuation do not exist, so the crate
//! never forms log f. The generating-function work needs only z·f′/f, which
//! [`TruncatedSeries::log_derivative`] computes directly from the valuation
//! decomposition f = z^v·u.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use crate::rational::{factorial, forward_value_binops, Rational};

/// Errors from the partial series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series that is zero to its retained order")]
    ZeroDivisor,
    #[error("dividend valuation {dividend} is below divisor valuation {divisor}")]
    ValuationMismatch { dividend: usize, divisor: usize },
    #[error("logarithmic derivative of a series that is zero to its retained order")]
    ZeroLogDerivative,
    #[error("composition requires an inner series with zero constant term")]
    NonzeroInnerConstant,
}

/// A formal power series truncated after z^order, with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from coefficients for z^0, z^1, …; the order is
    /// `coefficients.len() - 1`. Panics on an empty list.
    pub fn from_coefficients(coefficients: Vec<Rational>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a series carries at least the constant coefficient"
        );
        Self {
            coeffs: coefficients,
        }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// `coefficient·z^exponent` as a series of the given order.
    pub fn monomial(coefficient: Rational, exponent: usize, order: usize) -> Self {
        assert!(exponent <= order, "monomial exponent exceeds order");
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[exponent] = coefficient;
        Self { coeffs }
    }

    /// The series z.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// Σ z^k/k!.
    pub fn exp(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| Rational::one() / Rational::integer(factorial(k as u32)))
            .collect();
        Self { coeffs }
    }

    /// Σ z^{2k+1}/(2k+1)!.
    pub fn sinh(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                if k % 2 == 1 {
                    Rational::one() / Rational::integer(factorial(k as u32))
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Self { coeffs }
    }

    /// Σ_{k≥0} (−1)^k (2k)! / (4^k (k!)² (2k+1)) · z^{2k+1}, the inverse
    /// function of sinh. Requires order ≥ 1.
    pub fn arcsinh(order: usize) -> Self {
        assert!(order >= 1, "arcsinh series starts at z^1");
        let mut coeffs = vec![Rational::zero(); order + 1];
        for k in 0..=(order - 1) / 2 {
            let m = k as u32;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let numerator = Rational::integer(sign * factorial(2 * m));
            let denominator = Rational::integer(4i64)
                .pow_int(m as i64)
                .expect("positive base")
                * Rational::integer(factorial(m)).pow_int(2).expect("square")
                * Rational::integer(i64::from(2 * m + 1));
            coeffs[2 * k + 1] = numerator / denominator;
        }
        Self { coeffs }
    }

    /// Σ_{k≥1} (−1)^{k+1} z^k / k, the series of log(1+z).
    pub fn log1p(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    Rational::new(sign, k as i64).expect("k >= 1")
                }
            })
            .collect();
        Self { coeffs }
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The exact coefficient of z^k. Panics for k beyond the retained order;
    /// a coefficient that was never computed is not reported as zero.
    pub fn coefficient(&self, k: usize) -> &Rational {
        assert!(
            k <= self.order(),
            "coefficient {k} beyond retained order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` when the series is
    /// zero to its retained order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`. Panics when asked to raise the
    /// order, which would claim precision that was never computed.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot raise order {} to {order}",
            self.order()
        );
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Substitutes z ↦ factor·z, i.e. multiplies coefficient k by factor^k.
    pub fn scale_argument(&self, factor: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    power *= factor;
                }
                c * &power
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplication by the exact monomial z; the order grows by one because
    /// every result coefficient is determined.
    fn shifted_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Termwise derivative; the order drops by one. The derivative of an
    /// order-0 series is reported as the zero series of order 0, since no
    /// lower order exists.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * &Rational::integer(k as i64))
            .collect();
        Self { coeffs }
    }

    /// Exact quotient in the truncated ring. The divisor must be nonzero to
    /// its retained order and its valuation must not exceed the dividend's;
    /// the common factor z^v is cancelled before long division.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let v = divisor.valuation().ok_or(SeriesError::ZeroDivisor)?;
        match self.valuation() {
            None => {
                let order = self.order().min(divisor.order()).saturating_sub(v);
                return Ok(Self::zero(order));
            }
            Some(fv) if fv < v => {
                return Err(SeriesError::ValuationMismatch {
                    dividend: fv,
                    divisor: v,
                });
            }
            Some(_) => {}
        }
        let order = self.order().min(divisor.order()) - v;
        let lead = &divisor.coeffs[v];
        let mut quotient = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[v + k].clone();
            for j in 1..=k {
                acc -= &divisor.coeffs[v + j] * &quotient[k - j];
            }
            quotient.push(acc / lead);
        }
        Ok(Self { coeffs: quotient })
    }

    /// z·f′/f computed without forming log f: with f = z^v·u, the result is
    /// v + z·u′/u and its constant term is exactly v. The retained order is
    /// order − v (the top coefficient of z·f′/f would need one more
    /// coefficient of f than is stored).
    pub fn log_derivative(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroLogDerivative)?;
        let unit = Self {
            coeffs: self.coeffs[v..].to_vec(),
        };
        let mut result = if unit.order() == 0 {
            Self::zero(0)
        } else {
            unit.derivative().checked_div(&unit)?.shifted_up()
        };
        result.coeffs[0] = Rational::integer(v as i64);
        Ok(result)
    }

    /// f(g(z)) by Horner accumulation; g must have zero constant term so the
    /// substitution stays inside the truncated ring.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        // terms f_k g^k with k > order vanish below the truncation since g
        // has valuation >= 1
        let mut result = Self::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            result = &result * &inner + Self::constant(self.coeffs[k].clone(), order);
        }
        Ok(result)
    }

    /// f^exponent by repeated squaring at fixed order; f^0 is 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut remaining = exponent;
        while remaining > 0 {
            if remaining & 1 == 1 {
                result = &result * &base;
            }
            remaining >>= 1;
            if remaining > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            match k {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{} z", c.abs())?,
                _ => write!(f, "{} z^{k}", c.abs())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        TruncatedSeries { coeffs }
    }
}
forward_value_binops!(Add, add, TruncatedSeries);

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
            .collect();
        TruncatedSeries { coeffs }
    }
}
forward_value_binops!(Sub, sub, TruncatedSeries);

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    /// Dense Cauchy product truncated to the minimum operand order.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| {
                let mut acc = Rational::zero();
                for i in 0..=k {
                    if !self.coeffs[i].is_zero() && !rhs.coeffs[k - i].is_zero() {
                        acc += &self.coeffs[i] * &rhs.coeffs[k - i];
                    }
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}
forward_value_binops!(Mul, mul, TruncatedSeries);

impl Div<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Panics on the division errors; use [`TruncatedSeries::checked_div`]
    /// to recover.
    fn div(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}
forward_value_binops!(Div, div, TruncatedSeries);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}
