//! Exact enumeration of the four determinantal symmetry classes of plane
//! partitions (all, cyclically symmetric, transpose-complementary, and both)
//! through Kasteleyn determinants of `sl(2)` representation matrices, closed
//! product formulas, and brute-force enumeration.

pub mod error;
pub mod exactnum;
pub mod hexgraph;
pub mod kasteleyn;
pub mod matrix;
pub mod oracle;
pub mod products;
pub mod reptheory;

pub use error::{Error, Result};
pub use exactnum::{LaurentPoly, QPoly, RatPoly, Scalar, Var};
pub use hexgraph::{Matching, TriCoord, WeightedGraph};
pub use kasteleyn::{CountResult, ExactValue, NormalizationTerm, Route};
pub use matrix::SparseMatrix;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use products::BoxDims;
pub use reptheory::{MatchingMatrix, Mode, RepMatrix, SymmetryClass, WeightVector};

/// `Z(a,b,c)` and friends with exact integer weights.
pub type IntGraph = WeightedGraph<BigInt>;
/// Graphs carrying the quantum weighting.
pub type QGraph = WeightedGraph<QPoly>;
/// Labelled blocks over the integers.
pub type IntMatrix = RepMatrix<BigInt>;
/// Labelled blocks over the Laurent ring in `q^{1/4}`.
pub type QMatrix = RepMatrix<QPoly>;
