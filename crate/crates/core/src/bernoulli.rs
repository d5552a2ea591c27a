//! Bernoulli numbers B_m, Bernoulli polynomials B_m(x), their Nörlund
//! generalizations B^{(n)}_ν(x) and D^{(n)}_ν, and the rising-factorial
//! product Φ(x) = x(x+1)…(x+n−2) with its derivatives.
//!
//! The sign convention is fixed by the generating function t/(e^t−1), so
//! B_1 = −1/2. The generalized quantities are read off exactly from their
//! generating functions with [`TruncatedSeries`]:
//!
//!   B^{(n)}_ν(x) = ν! · [t^ν] (t/(e^t−1))^n · e^{xt}
//!   D^{(n)}_ν   = ν! · [t^ν] (t/sinh t)^n

use std::ops::Mul;
use std::sync::{LazyLock, Mutex};

use thiserror::Error;

use crate::rational::{binomial, factorial, forward_value_binops, Rational};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernoulliError {
    #[error("rising-factorial product needs n >= 2, got {n}")]
    DegenerateProduct { n: u32 },
}

/// A dense polynomial with rational coefficients, stored from degree 0
/// upward. The zero polynomial is the empty list; otherwise the
/// highest-degree coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn from_coefficients(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Rational::is_zero) {
            coefficients.pop();
        }
        Self {
            coeffs: coefficients,
        }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Formal derivative; the degree drops by one or the result is zero.
    pub fn derivative(&self) -> Self {
        let coeffs = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * &Rational::integer(k as i64))
            .collect();
        Self { coeffs }
    }

    /// l-fold formal derivative; identically zero once l exceeds the degree.
    pub fn nth_derivative(&self, l: u32) -> Self {
        let mut current = self.clone();
        for _ in 0..l {
            if current.is_zero() {
                break;
            }
            current = current.derivative();
        }
        current
    }
}

impl Mul<&RatPolynomial> for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPolynomial { coeffs }
    }
}
forward_value_binops!(Mul, mul, RatPolynomial);

/// Bernoulli numbers B_0…B_max, precomputed and thereafter read-only.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    numbers: Vec<Rational>,
}

impl BernoulliCache {
    pub fn up_to(max_m: u32) -> Self {
        bernoulli_numbers(max_m)
    }

    pub fn max_index(&self) -> u32 {
        (self.numbers.len() - 1) as u32
    }

    /// B_m. Panics beyond the cached range.
    pub fn number(&self, m: u32) -> &Rational {
        &self.numbers[m as usize]
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }
}

// The recurrence cost is quadratic, so each B_m is computed once per process;
// extension is serialized by the mutex.
static BERNOULLI_MEMO: LazyLock<Mutex<Vec<Rational>>> =
    LazyLock::new(|| Mutex::new(vec![Rational::one()]));

/// B_0…B_max via the recurrence Σ_{k=0}^{m} C(m+1,k)·B_k = 0, seeded B_0 = 1.
pub fn bernoulli_numbers(max_m: u32) -> BernoulliCache {
    let mut memo = BERNOULLI_MEMO.lock().expect("Bernoulli memo poisoned");
    for m in memo.len()..=max_m as usize {
        let m = m as u32;
        let mut acc = Rational::zero();
        for (k, b) in memo.iter().enumerate() {
            acc += Rational::integer(binomial(m + 1, k as i64)) * b;
        }
        let next = -acc / Rational::integer(i64::from(m) + 1);
        memo.push(next);
    }
    BernoulliCache {
        numbers: memo[..=max_m as usize].to_vec(),
    }
}

/// B_m.
pub fn bernoulli_number(m: u32) -> Rational {
    bernoulli_numbers(m).numbers[m as usize].clone()
}

/// B_m(x) = Σ_k C(m,k)·B_k·x^{m−k}.
pub fn bernoulli_polynomial(m: u32) -> RatPolynomial {
    let cache = bernoulli_numbers(m);
    let coeffs = (0..=m)
        .map(|degree| {
            let k = m - degree;
            Rational::integer(binomial(m, i64::from(degree))) * cache.number(k)
        })
        .collect();
    RatPolynomial::from_coefficients(coeffs)
}

/// The expanded monic polynomial Φ(x) = x(x+1)…(x+n−2) of degree n−1.
pub fn pochhammer_poly(n: u32) -> Result<RatPolynomial, BernoulliError> {
    if n < 2 {
        return Err(BernoulliError::DegenerateProduct { n });
    }
    let mut product = RatPolynomial::from_coefficients(vec![Rational::zero(), Rational::one()]);
    for i in 1..=n - 2 {
        let factor = RatPolynomial::from_coefficients(vec![
            Rational::integer(i64::from(i)),
            Rational::one(),
        ]);
        product = &product * &factor;
    }
    Ok(product)
}

/// B^{(n)}_ν(x) = ν! · [t^ν] (t/(e^t−1))^n · e^{xt}, exactly.
pub fn norlund_bernoulli(n: u32, nu: u32, x: &Rational) -> Rational {
    assert!(n >= 1, "generalized Bernoulli order n must be at least 1");
    let nu = nu as usize;
    // dividing out the common factor t costs one order, so work one higher
    let work = nu + 1;
    let t = TruncatedSeries::identity(work);
    let expm1 = &TruncatedSeries::exp(work) - &TruncatedSeries::one(work);
    let kernel = t
        .checked_div(&expm1)
        .expect("t and e^t - 1 share valuation 1");
    let egf = kernel.pow(n) * TruncatedSeries::exp(nu).scale_argument(x);
    egf.coefficient(nu) * Rational::integer(factorial(nu as u32))
}

/// D^{(n)}_ν = ν! · [t^ν] (t/sinh t)^n, exactly.
pub fn d_number(n: u32, nu: u32) -> Rational {
    assert!(n >= 1, "D-number order n must be at least 1");
    let nu = nu as usize;
    let work = nu + 1;
    let t = TruncatedSeries::identity(work);
    let kernel = t
        .checked_div(&TruncatedSeries::sinh(work))
        .expect("t and sinh t share valuation 1");
    kernel.pow(n).coefficient(nu) * Rational::integer(factorial(nu as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> RatPolynomial {
        RatPolynomial::from_coefficients(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn low_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn recurrence_against_generating_function() {
        // independent oracle: long division of t/(e^t - 1) versus the
        // recurrence that seeds the cache
        let work = 21;
        let t = TruncatedSeries::identity(work);
        let expm1 = &TruncatedSeries::exp(work) - &TruncatedSeries::one(work);
        let kernel = t.checked_div(&expm1).unwrap();
        for m in 0..=20u32 {
            let from_series = kernel.coefficient(m as usize) * Rational::integer(factorial(m));
            assert_eq!(bernoulli_number(m), from_series, "B_{m}");
        }
    }

    #[test]
    fn cache_exposes_odd_vanishing() {
        let cache = BernoulliCache::up_to(15);
        assert_eq!(cache.max_index(), 15);
        for k in 1..=7u32 {
            assert!(cache.number(2 * k + 1).is_zero(), "B_{} = 0", 2 * k + 1);
        }
    }

    #[test]
    fn low_bernoulli_polynomials() {
        assert_eq!(bernoulli_polynomial(1), poly(&[(-1, 2), (1, 1)]));
        assert_eq!(bernoulli_polynomial(2), poly(&[(1, 6), (-1, 1), (1, 1)]));
        for m in 0..=20u32 {
            assert_eq!(
                bernoulli_polynomial(m).eval(&Rational::zero()),
                bernoulli_number(m),
                "B_{m}(0)"
            );
        }
    }

    #[test]
    fn polynomial_evaluation() {
        let b2 = poly(&[(1, 6), (-1, 1), (1, 1)]);
        assert_eq!(b2.eval(&rat(1, 1)), rat(1, 6));
        assert_eq!(RatPolynomial::zero().eval(&rat(7, 3)), Rational::zero());
        assert_eq!(bernoulli_polynomial(4).eval(&rat(1, 1)), rat(-1, 30));
    }

    #[test]
    fn polynomial_derivatives() {
        let phi4 = poly(&[(0, 1), (2, 1), (3, 1), (1, 1)]);
        assert_eq!(phi4.derivative(), poly(&[(2, 1), (6, 1), (3, 1)]));
        assert_eq!(phi4.nth_derivative(2).eval(&rat(-1, 1)), Rational::zero());
        assert_eq!(phi4.nth_derivative(4), RatPolynomial::zero());
        assert_eq!(phi4.nth_derivative(9), RatPolynomial::zero());
    }

    #[test]
    fn polynomial_multiplication_and_trimming() {
        let a = poly(&[(1, 1), (1, 1)]);
        let b = poly(&[(2, 1), (1, 1)]);
        assert_eq!(&a * &b, poly(&[(2, 1), (3, 1), (1, 1)]));
        assert_eq!(poly(&[(1, 1), (0, 1), (0, 1)]).degree(), Some(0));
        assert_eq!(poly(&[(0, 1)]), RatPolynomial::zero());
    }

    #[test]
    fn rising_factorial_products() {
        assert_eq!(pochhammer_poly(2).unwrap(), poly(&[(0, 1), (1, 1)]));
        assert_eq!(
            pochhammer_poly(4).unwrap(),
            poly(&[(0, 1), (2, 1), (3, 1), (1, 1)])
        );
        assert_eq!(
            pochhammer_poly(1),
            Err(BernoulliError::DegenerateProduct { n: 1 })
        );
        // x = 1 - n/2 is -i for some factor index i when n >= 4 is even
        for n in [4u32, 6, 8, 10] {
            let root = rat(1, 1) - rat(i64::from(n), 2);
            assert_eq!(
                pochhammer_poly(n).unwrap().eval(&root),
                Rational::zero(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn norlund_reduces_to_bernoulli_at_n_one() {
        for nu in 0..=12u32 {
            for x in [rat(0, 1), rat(1, 2), rat(1, 1), rat(-3, 2)] {
                assert_eq!(
                    norlund_bernoulli(1, nu, &x),
                    bernoulli_polynomial(nu).eval(&x),
                    "nu = {nu}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn norlund_oracle_values() {
        assert_eq!(norlund_bernoulli(2, 2, &rat(1, 1)), rat(-1, 6));
        assert_eq!(norlund_bernoulli(4, 4, &rat(2, 1)), rat(11, 30));
        assert_eq!(norlund_bernoulli(3, 0, &rat(5, 7)), Rational::one());
    }

    #[test]
    fn norlund_symmetry_in_x() {
        for n in 1..=5u32 {
            for nu in 0..=6u32 {
                for x in [rat(0, 1), rat(1, 3), rat(2, 1)] {
                    let reflected = rat(i64::from(n), 1) - &x;
                    let sign = if nu % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                    assert_eq!(
                        norlund_bernoulli(n, nu, &reflected),
                        sign * norlund_bernoulli(n, nu, &x),
                        "n = {n}, nu = {nu}, x = {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn d_number_oracle_values() {
        assert_eq!(d_number(2, 2), rat(-2, 3));
        assert_eq!(d_number(4, 4), rat(88, 15));
        for n in 1..=5u32 {
            for k in 0..=3u32 {
                assert!(
                    d_number(n, 2 * k + 1).is_zero(),
                    "n = {n}, nu = {}",
                    2 * k + 1
                );
            }
        }
    }

    #[test]
    fn d_numbers_rescale_norlund_at_half_order() {
        for n in 1..=6u32 {
            for nu in 0..=8u32 {
                let half = rat(i64::from(n), 2);
                let scaled =
                    rat(2, 1).pow_int(i64::from(nu)).unwrap() * norlund_bernoulli(n, nu, &half);
                assert_eq!(d_number(n, nu), scaled, "n = {n}, nu = {nu}");
            }
        }
    }
}
