pub mod matrix;
pub mod poly;
pub mod quartic;
pub mod rational;
pub mod sampling;

pub use matrix::{rank_kernel, solve_linear, RatMatrix};
pub use poly::{vars_from, Monomial, Polynomial, Vars};
pub use quartic::{multiplicity_pattern, quartic_invariants, BinaryQuartic, QuarticInvariants};
pub use rational::Rational;
pub use sampling::random_zero;
