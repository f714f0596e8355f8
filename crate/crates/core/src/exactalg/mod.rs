//! Exact arithmetic: rationals, Gaussian rationals, polynomials over the
//! phase-space alphabet, Bernoulli numbers and factorial helpers.

mod bernoulli;
mod combinatorics;
mod gauss;
mod poly;
mod rational;

pub use bernoulli::{bernoulli, BernoulliTable};
pub use combinatorics::{binomial, double_factorial, factorial, odd_double_factorial};
pub use gauss::GaussRational;
pub use poly::{Monomial, MultiPoly, Symbol, ALPHABET, NSYM};
pub use rational::{rational_text, big, fmt_rational, int, is_reduced, parse_rational, pow_i, rat, to_f64, Rational};
