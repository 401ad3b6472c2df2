//! Generalized Hadamard matrices GH(q, q) and GH(q, q^2) over the additive
//! group of GF(q).
//!
//! - [`field`]: GF(p^n) arithmetic with a canonical element order.
//! - [`function`]: maps on the field, planar and additive tests.
//! - [`construct`]: `M(f)` and the block constructions.
//! - [`verify`]: brute-force row-pair verification.
//! - [`matrix_file`]: the plain-text matrix format.

pub mod construct;
pub mod error;
pub mod field;
pub mod function;
pub mod matrix_file;
pub mod verify;

pub use construct::{
    linear_blocks, matrix_m, quadratic_blocks, shifted_linear_blocks, Construction, GhMatrix,
    Provenance, DEFAULT_MAX_ORDER,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldId, FiniteField, DEFAULT_MAX_FIELD_ORDER};
pub use function::{classify_all_functions, ClassCounts, FieldFunction, FunctionClass};
pub use verify::{
    row_pair_histogram, verify_entries, verify_gh, verify_gh_with, PairFailure, VerificationReport,
    VerifyOptions,
};
