//! Maps `F -> F` stored as value tables, the quadratic and linearized
//! families, and the planar / additive classification tests.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

/// Largest number of tables [`classify_all_functions`] will enumerate.
pub const MAX_EXHAUSTIVE_TABLES: u64 = 10_000_000;

/// A total map on a finite field, `table[i] = f(a_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldFunction {
    field: FiniteField,
    table: Vec<u16>,
    origin: Option<Vec<u16>>,
}

/// Membership in the two matrix classes built from `M(f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionClass {
    /// `M(f)` is a GH(q, 1), i.e. `f` is planar.
    pub is_type_i: bool,
    /// `f(b) - f(b - a)` does not depend on `b`.
    pub is_type_ii: bool,
}

impl FieldFunction {
    pub fn from_table(field: &FiniteField, values: Vec<u16>) -> Result<Self> {
        let q = field.q();
        if values.len() != q as usize {
            return Err(Error::WrongLength {
                expected: q as usize,
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v as u32 >= q) {
            return Err(Error::EncodingOutOfRange { value: v as u64, q });
        }
        Ok(Self {
            field: field.clone(),
            table: values,
            origin: None,
        })
    }

    /// `f(x) = sum coeffs[j] * x^j`, evaluated by Horner's rule.
    ///
    /// Only degrees below q are accepted; every map on F has a unique
    /// representative there.
    pub fn from_poly(field: &FiniteField, coeffs: &[u16]) -> Result<Self> {
        let q = field.q();
        if let Some(&c) = coeffs.iter().find(|&&c| c as u32 >= q) {
            return Err(Error::EncodingOutOfRange { value: c as u64, q });
        }
        if let Some(degree) = coeffs.iter().rposition(|&c| c != 0) {
            if degree >= q as usize {
                return Err(Error::DegreeTooHigh { degree, q });
            }
        }
        let table = (0..q as u16)
            .map(|x| {
                coeffs
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| field.add_raw(field.mul_raw(acc, x), c))
            })
            .collect();
        Ok(Self {
            field: field.clone(),
            table,
            origin: Some(coeffs.to_vec()),
        })
    }

    /// `f_c(x) = c + x^2`.
    pub fn quadratic(field: &FiniteField, c: FieldElement) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::EvenCharacteristic("the quadratic family"));
        }
        Self::check_element(field, c)?;
        Self::from_poly(field, &[c.value(), 0, 1])
    }

    /// `f_c(x) = c * x`.
    pub fn linear(field: &FiniteField, c: FieldElement) -> Result<Self> {
        Self::check_element(field, c)?;
        Self::from_poly(field, &[0, c.value()])
    }

    /// `a0 + a1 x + a2 x^2 + b[0] x^p + b[1] x^(p^2) + ...`.
    ///
    /// Planar whenever the characteristic is odd and `a2 != 0`.
    pub fn quadratic_linearized(
        field: &FiniteField,
        a0: u16,
        a1: u16,
        a2: u16,
        b: &[u16],
    ) -> Result<Self> {
        let mut coeffs = vec![a0, a1, a2];
        add_frobenius_terms(field, &mut coeffs, b, 1)?;
        Self::from_poly(field, &coeffs)
    }

    /// `a + b[0] x + b[1] x^p + b[2] x^(p^2) + ...`, an affine map.
    pub fn affine_linearized(field: &FiniteField, a: u16, b: &[u16]) -> Result<Self> {
        let mut coeffs = vec![a];
        add_frobenius_terms(field, &mut coeffs, b, 0)?;
        Self::from_poly(field, &coeffs)
    }

    fn check_element(field: &FiniteField, c: FieldElement) -> Result<()> {
        if c.field_id() != field.id() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    /// Coefficients `c_0, ..., c_d` when built from a polynomial.
    pub fn origin(&self) -> Option<&[u16]> {
        self.origin.as_deref()
    }

    #[inline]
    pub fn eval_raw(&self, x: u16) -> u16 {
        self.table[x as usize]
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        Self::check_element(&self.field, x)?;
        self.field.element(self.table[x.index()] as u64)
    }

    /// True iff `x -> f(x + a) - f(x)` is a bijection for every `a != 0`.
    pub fn is_planar(&self) -> bool {
        is_planar_table(&self.field, &self.table, &mut vec![false; self.table.len()])
    }

    /// True iff `f(b) - f(b - a)` is independent of `b` for every `a`.
    ///
    /// Decided by checking that `g = f - f(0)` is additive, which needs
    /// O(q^2) evaluations instead of the O(q^3) triples of the definition.
    pub fn is_type_ii(&self) -> bool {
        is_additive_shift(&self.field, &self.table)
    }

    pub fn classify(&self) -> FunctionClass {
        FunctionClass {
            is_type_i: self.is_planar(),
            is_type_ii: self.is_type_ii(),
        }
    }
}

fn add_frobenius_terms(
    field: &FiniteField,
    coeffs: &mut Vec<u16>,
    b: &[u16],
    first_power: u32,
) -> Result<()> {
    let (p, n) = (field.p() as usize, field.n());
    if b.len() + first_power as usize > n as usize {
        return Err(Error::WrongLength {
            expected: (n - first_power) as usize,
            got: b.len(),
        });
    }
    for (i, &bi) in b.iter().enumerate() {
        let degree = p.pow(first_power + i as u32);
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] = field.add_raw(coeffs[degree], bi);
    }
    Ok(())
}

fn is_planar_table(field: &FiniteField, table: &[u16], seen: &mut [bool]) -> bool {
    let q = table.len() as u16;
    for a in 1..q {
        seen.fill(false);
        for x in 0..q {
            let d = field.sub_raw(table[field.add_raw(x, a) as usize], table[x as usize]);
            if std::mem::replace(&mut seen[d as usize], true) {
                return false;
            }
        }
    }
    true
}

fn is_additive_shift(field: &FiniteField, table: &[u16]) -> bool {
    let q = table.len() as u16;
    let f0 = table[0];
    let g = |x: u16| field.sub_raw(table[x as usize], f0);
    (1..q).all(|x| {
        let gx = g(x);
        (x..q).all(|y| g(field.add_raw(x, y)) == field.add_raw(gx, g(y)))
    })
}

/// Tallies over every one of the `q^q` maps on a field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub total: u64,
    pub type_i: u64,
    pub type_ii: u64,
    /// Maps that are both; zero for any q >= 2.
    pub both: u64,
}

impl ClassCounts {
    fn merge(self, other: Self) -> Self {
        Self {
            total: self.total + other.total,
            type_i: self.type_i + other.type_i,
            type_ii: self.type_ii + other.type_ii,
            both: self.both + other.both,
        }
    }
}

/// Enumerates all `q^q` tables in base-q counter order and counts the
/// planar and type II maps.
///
/// The range is split on the value of `f(a_{q-1})` across the rayon pool.
pub fn classify_all_functions(field: &FiniteField) -> Result<ClassCounts> {
    let q = field.q();
    let total = (q as u64)
        .checked_pow(q)
        .filter(|&t| t <= MAX_EXHAUSTIVE_TABLES)
        .ok_or(Error::ExhaustionTooLarge {
            q,
            limit: MAX_EXHAUSTIVE_TABLES,
        })?;
    let chunk = total / q as u64;
    let counts = (0..q as u16)
        .into_par_iter()
        .map(|top| {
            let mut table = vec![0u16; q as usize];
            table[q as usize - 1] = top;
            let mut seen = vec![false; q as usize];
            let mut counts = ClassCounts::default();
            for _ in 0..chunk {
                let planar = is_planar_table(field, &table, &mut seen);
                let additive = is_additive_shift(field, &table);
                counts.total += 1;
                counts.type_i += planar as u64;
                counts.type_ii += additive as u64;
                counts.both += (planar && additive) as u64;
                // base-q increment over the low q-1 digits
                for digit in table[..q as usize - 1].iter_mut() {
                    *digit += 1;
                    if *digit as u32 == q {
                        *digit = 0;
                    } else {
                        break;
                    }
                }
            }
            counts
        })
        .reduce(ClassCounts::default, ClassCounts::merge);
    debug_assert_eq!(counts.total, total);
    Ok(counts)
}
