pub mod filter;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod scalar;

pub use filter::{filter_direct_sum, filter_ring, roots_of_unity_filter};
pub use poly::{binomial_poly, poly_equal, Polynomial};
pub use rational::{binomial, binomial_int, factorial, parse_rational, rat, ratio, Rational};
pub use ring::RingElement;
pub use scalar::{sum_range, Scalar};
