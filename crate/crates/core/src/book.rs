//! Compiles every code block in the guide as a doctest, so the book cannot
//! drift from the crate it documents.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/rationals.md")]
mod rationals {}

#[doc = include_str!("../../../book/src/series.md")]
mod series {}

#[doc = include_str!("../../../book/src/bernoulli.md")]
mod bernoulli {}

#[doc = include_str!("../../../book/src/eta.md")]
mod eta {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
