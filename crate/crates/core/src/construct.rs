//! The difference matrix `M(f)` and the three block constructions of
//! generalized Hadamard matrices over the additive group of GF(q).
//!
//! Rows, columns and blocks are all indexed by the canonical element order,
//! so `a_0 = 0` sits in the top-left corner.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::function::FieldFunction;

/// Default cap on the order of constructed matrices.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Where a matrix came from. Serialized as the `provenance` header tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Blocks `M(a_i a_j + x^2)`: a GH(q, q) for odd q.
    QuadraticBlocks,
    /// Blocks `M((a_i + a_j) x)`: a GH(q, q).
    LinearBlocks,
    /// Outer blocks `a_i a_j J + H_q` over the linear-block matrix: a GH(q, q^2).
    ShiftedLinearBlocks,
    /// A single `M(f)`.
    MOfF,
    /// Read from elsewhere.
    External,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::QuadraticBlocks => "theorem-3.1",
            Provenance::LinearBlocks => "theorem-3.2",
            Provenance::ShiftedLinearBlocks => "theorem-3.3",
            Provenance::MOfF => "M-of-f",
            Provenance::External => "external",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "theorem-3.1" => Provenance::QuadraticBlocks,
            "theorem-3.2" => Provenance::LinearBlocks,
            "theorem-3.3" => Provenance::ShiftedLinearBlocks,
            "M-of-f" => Provenance::MOfF,
            "external" => Provenance::External,
            other => return Err(format!("unknown provenance tag {other:?}")),
        })
    }
}

/// A square matrix over GF(q), stored row-major as element encodings,
/// together with the multiplicity it claims to achieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhMatrix {
    field: FiniteField,
    order: usize,
    entries: Vec<u16>,
    claimed_lambda: usize,
    provenance: Provenance,
}

impl GhMatrix {
    /// Checks `order = q * claimed_lambda`, the entry count and entry range.
    pub fn new(
        field: &FiniteField,
        order: usize,
        entries: Vec<u16>,
        claimed_lambda: usize,
        provenance: Provenance,
    ) -> Result<Self> {
        let q = field.q();
        if order != q as usize * claimed_lambda || order == 0 {
            return Err(Error::OrderLambdaMismatch {
                order,
                q,
                lambda: claimed_lambda,
            });
        }
        if entries.len() != order * order {
            return Err(Error::WrongLength {
                expected: order * order,
                got: entries.len(),
            });
        }
        if let Some(&v) = entries.iter().find(|&&v| v as u32 >= q) {
            return Err(Error::EncodingOutOfRange { value: v as u64, q });
        }
        Ok(Self {
            field: field.clone(),
            order,
            entries,
            claimed_lambda,
            provenance,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn claimed_lambda(&self) -> usize {
        self.claimed_lambda
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[u16] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u16]> {
        self.entries.chunks_exact(self.order)
    }

    /// Overwrites one entry. Used to build mutants for negative testing.
    pub fn set(&mut self, row: usize, col: usize, value: u16) -> Result<()> {
        let q = self.q();
        if value as u32 >= q {
            return Err(Error::EncodingOutOfRange {
                value: value as u64,
                q,
            });
        }
        self.entries[row * self.order + col] = value;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let k = self.order;
        let mut entries = vec![0u16; k * k];
        for r in 0..k {
            for c in 0..k {
                entries[c * k + r] = self.entries[r * k + c];
            }
        }
        Self {
            entries,
            ..self.clone()
        }
    }

    /// The `size x size` sub-block at block coordinates `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Vec<u16> {
        let mut out = Vec::with_capacity(size * size);
        for r in 0..size {
            let start = (bi * size + r) * self.order + bj * size;
            out.extend_from_slice(&self.entries[start..start + size]);
        }
        out
    }
}

/// `M(f)`: entry `f(b - a)` at row `a`, column `b`.
pub fn matrix_m(f: &FieldFunction) -> GhMatrix {
    let field = f.field();
    let q = field.q() as usize;
    let mut entries = Vec::with_capacity(q * q);
    for a in 0..q as u16 {
        entries.extend((0..q as u16).map(|b| f.eval_raw(field.sub_raw(b, a))));
    }
    GhMatrix {
        field: field.clone(),
        order: q,
        entries,
        claimed_lambda: 1,
        provenance: Provenance::MOfF,
    }
}

/// Which block construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    QuadraticBlocks,
    LinearBlocks,
    ShiftedLinearBlocks,
}

impl Construction {
    /// Matrix order for a field of order q.
    pub fn order(self, q: u32) -> u64 {
        match self {
            Construction::QuadraticBlocks | Construction::LinearBlocks => (q as u64).pow(2),
            Construction::ShiftedLinearBlocks => (q as u64).pow(3),
        }
    }

    pub fn build(self, field: &FiniteField) -> Result<GhMatrix> {
        self.build_capped(field, DEFAULT_MAX_ORDER)
    }

    pub fn build_capped(self, field: &FiniteField, max_order: usize) -> Result<GhMatrix> {
        if self == Construction::QuadraticBlocks && field.p() == 2 {
            return Err(Error::EvenCharacteristic(
                "the quadratic block construction",
            ));
        }
        let order = self.order(field.q());
        if order > max_order as u64 {
            return Err(Error::OrderTooLarge {
                order,
                cap: max_order,
            });
        }
        match self {
            Construction::QuadraticBlocks => {
                grid_of_blocks(field, Provenance::QuadraticBlocks, |ai, aj| {
                    FieldFunction::quadratic(field, field.element(field.mul_raw(ai, aj) as u64)?)
                })
            }
            Construction::LinearBlocks => {
                grid_of_blocks(field, Provenance::LinearBlocks, |ai, aj| {
                    FieldFunction::linear(field, field.element(field.add_raw(ai, aj) as u64)?)
                })
            }
            Construction::ShiftedLinearBlocks => shifted_linear_blocks_unchecked(field),
        }
    }
}

/// GH(q, q) with block `(i, j) = M(a_i a_j + x^2)`. Odd characteristic only.
pub fn quadratic_blocks(field: &FiniteField) -> Result<GhMatrix> {
    Construction::QuadraticBlocks.build(field)
}

/// GH(q, q) with block `(i, j) = M((a_i + a_j) x)`.
pub fn linear_blocks(field: &FiniteField) -> Result<GhMatrix> {
    Construction::LinearBlocks.build(field)
}

/// GH(q, q^2): outer block `(i, j)` is the linear-block matrix with
/// `a_i a_j` added to every entry.
pub fn shifted_linear_blocks(field: &FiniteField) -> Result<GhMatrix> {
    Construction::ShiftedLinearBlocks.build(field)
}

fn grid_of_blocks(
    field: &FiniteField,
    provenance: Provenance,
    block_fn: impl Fn(u16, u16) -> Result<FieldFunction>,
) -> Result<GhMatrix> {
    let q = field.q() as usize;
    let k = q * q;
    let mut entries = vec![0u16; k * k];
    for bi in 0..q {
        for bj in 0..q {
            let block = matrix_m(&block_fn(bi as u16, bj as u16)?);
            for (r, row) in block.rows().enumerate() {
                let start = (bi * q + r) * k + bj * q;
                entries[start..start + q].copy_from_slice(row);
            }
        }
    }
    Ok(GhMatrix {
        field: field.clone(),
        order: k,
        entries,
        claimed_lambda: q,
        provenance,
    })
}

fn shifted_linear_blocks_unchecked(field: &FiniteField) -> Result<GhMatrix> {
    let inner = Construction::LinearBlocks.build_capped(field, usize::MAX)?;
    let q = field.q() as usize;
    let m = inner.order();
    let k = q * m;
    let mut entries = Vec::with_capacity(k * k);
    for bi in 0..q as u16 {
        for row in inner.rows() {
            for bj in 0..q as u16 {
                let shift = field.mul_raw(bi, bj);
                entries.extend(row.iter().map(|&v| field.add_raw(shift, v)));
            }
        }
    }
    Ok(GhMatrix {
        field: field.clone(),
        order: k,
        entries,
        claimed_lambda: q * q,
        provenance: Provenance::ShiftedLinearBlocks,
    })
}
