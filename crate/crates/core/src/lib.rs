//! Exact symbolic toolkit for the Hochschild complex of multidifferential operators
//! over the polynomial algebra `A = Q[x1..xm]`.
//!
//! * [`poly`]: rational polynomials and multi-index combinatorics.
//! * [`multiop`]: sparse operators `Σ c(x) ∂^{α_1} ⊗ … ⊗ ∂^{α_n}` (the cochains).
//! * [`hochschild`]: partial/total composition, cup product, Gerstenhaber bracket and
//!   the Hochschild differential.
//! * [`sder`]: composites of vector fields and the order filtration of derivations.
//! * [`hkr`]: alternator, multivector fields, the HKR map, cocycle splitting, and
//!   cohomology of finite windows of the polydifferential complex.
//! * [`dsl`]: text syntax for polynomials and operators.

pub mod dsl;
pub mod error;
pub mod hkr;
pub mod hochschild;
pub mod linalg;
pub mod multiop;
pub mod poly;
pub mod random;
pub mod sder;
pub mod selftest;

pub use dsl::{parse_operator, parse_polynomial};
pub use error::{Error, ParseError, Result};
pub use hkr::{
    alt, cohomology_dims, cohomology_report, cohomology_until_stable, delta_matrix,
    enumerate_basis, mvf_to_op, op_to_mvf, split_cocycle, wedge, CocycleSplit, CohomologyReport,
    MultiVectorField, Truncation,
};
pub use hochschild::{
    associativity_defect, cup, gerstenhaber, hochschild_delta, hochschild_delta_cochain,
    hochschild_delta_via_bracket, partial_compose, total_compose, SignConvention,
};
pub use linalg::ExactMatrix;
pub use multiop::{Cochain, MultiDiffOp, OpTerm, ZeroCochain};
pub use poly::{multi_index_split_coeff, MultiIndex, Polynomial, Rational};
pub use sder::{
    expand_word, sder_decompose, word_order_check, CompositionWord, SDerDecomposition, VectorField,
};
