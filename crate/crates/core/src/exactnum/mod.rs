//! Exact scalar rings: big integers, rationals and Laurent polynomials.

pub mod laurent;
pub mod scalar;

pub use laurent::{poly_eval_at_one, poly_substitute_power, q_integer, quantum_integer};
pub use laurent::{LaurentPoly, QPoly, RatPoly, Var, QUARTERS};
pub use scalar::{exact_integer_root, exact_root, int, rat, rational_to_integer, Scalar};
