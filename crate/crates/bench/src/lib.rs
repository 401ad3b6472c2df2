//! Inputs shared by the benchmarks.

use ghforge_core::FiniteField;

/// `(p, n)` pairs benchmarked, smallest first.
pub const FIELDS: &[(u32, u32)] = &[(3, 1), (2, 2), (5, 1), (7, 1), (3, 2)];

pub fn field(p: u32, n: u32) -> FiniteField {
    FiniteField::new(p, n).expect("benchmark fields are valid")
}
