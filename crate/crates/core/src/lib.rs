#![doc = include_str!("../../../README.md")]
#![forbid(unsafe_code)]

pub mod bernoulli;
pub mod eta;
pub mod rational;
pub mod series;

pub use bernoulli::{
    bernoulli_number, bernoulli_numbers, bernoulli_polynomial, d_number, norlund_bernoulli,
    pochhammer_poly, BernoulliCache, BernoulliError, RatPolynomial,
};
pub use eta::{
    c_bernoulli, c_bernoulli_with_prefactor, c_dnumber, c_habel, c_weingart, compute_coefficient,
    conformal_anomaly, eta_generating_series, eta_invariant, reference_tables, verify_against,
    verify_all, EtaCoefficient, EtaError, GoldenTables, SquashingParameter, VerificationReport,
};
pub use rational::{binomial, factorial, Rational, RationalError};
pub use series::{SeriesError, TruncatedSeries};

#[cfg(doctest)]
mod book;
