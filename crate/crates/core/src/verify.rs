//! Brute-force check of the generalized Hadamard property over the additive
//! group of GF(q).
//!
//! For every pair of distinct rows `i < l` the entrywise differences
//! `H[i][j] - H[l][j]` must hit every group element exactly λ times.
//!
//! Only entries, q and λ are read. Subtraction is done in `(Z_p)^n` on the
//! base-p digits of the encodings, which is the additive group of GF(p^n)
//! for any choice of modulus, so nothing here depends on field
//! multiplication or on how the matrix was built.

use rayon::prelude::*;

use crate::construct::GhMatrix;
use crate::error::{Error, Result};

/// Above this q the difference table is not materialised.
const DENSE_TABLE_MAX_Q: u32 = 1024;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs
    /// on the calling thread.
    pub threads: Option<usize>,
    /// Record every failing pair instead of stopping at the first.
    pub collect_all: bool,
    /// Also verify the transpose and report it in `columns_passed`.
    pub check_columns: bool,
}

/// A row pair whose difference histogram is not flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub row_i: usize,
    pub row_l: usize,
    /// `histogram[e]` = number of columns with `H[i][j] - H[l][j] = e`.
    pub histogram: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    /// Group order q.
    pub u: u32,
    pub lambda: usize,
    pub order: usize,
    /// Pairs examined in lexicographic order, up to and including the
    /// first failure when stopping early.
    pub checked_pairs: u64,
    pub first_failure: Option<PairFailure>,
    /// All failures, populated only with `collect_all`.
    pub failures: Vec<PairFailure>,
    pub columns_passed: Option<bool>,
}

/// Subtraction in `(Z_p)^n` on integer encodings.
struct GroupDiff {
    q: u32,
    p: u32,
    dense: Option<Vec<u16>>,
}

impl GroupDiff {
    fn new(q: u32) -> Result<Self> {
        let p = smallest_prime_factor(q);
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        if q < 2 || rest != 1 {
            return Err(Error::NotPrime(q));
        }
        let mut diff = Self { q, p, dense: None };
        if p != 2 && q <= DENSE_TABLE_MAX_Q {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                table.extend((0..q).map(|b| diff.digits_sub(a, b) as u16));
            }
            diff.dense = Some(table);
        }
        Ok(diff)
    }

    fn digits_sub(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + p - b % p) % p) * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    fn sub(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.dense {
            t[a as usize * self.q as usize + b as usize]
        } else {
            self.digits_sub(a as u32, b as u32) as u16
        }
    }

    fn tally(&self, row_i: &[u16], row_l: &[u16], counts: &mut [u32]) {
        counts.fill(0);
        if self.p == 2 {
            for (&a, &b) in row_i.iter().zip(row_l) {
                counts[(a ^ b) as usize] += 1;
            }
        } else if let Some(t) = &self.dense {
            let q = self.q as usize;
            for (&a, &b) in row_i.iter().zip(row_l) {
                counts[t[a as usize * q + b as usize] as usize] += 1;
            }
        } else {
            for (&a, &b) in row_i.iter().zip(row_l) {
                counts[self.sub(a, b) as usize] += 1;
            }
        }
    }
}

fn smallest_prime_factor(q: u32) -> u32 {
    (2..=q)
        .take_while(|d| (*d as u64) * (*d as u64) <= q as u64)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q)
}

/// Difference histogram of rows `i` and `l`.
pub fn row_pair_histogram(h: &GhMatrix, i: usize, l: usize) -> Result<Vec<u32>> {
    let k = h.order();
    if i == l || i >= k || l >= k {
        return Err(Error::InvalidRowPair { i, l, order: k });
    }
    let diff = GroupDiff::new(h.q())?;
    let mut counts = vec![0u32; h.q() as usize];
    diff.tally(h.row(i), h.row(l), &mut counts);
    Ok(counts)
}

/// Checks that `h` is a GH(q, λ) using the default options.
pub fn verify_gh(h: &GhMatrix, lambda: usize) -> Result<VerificationReport> {
    verify_gh_with(h, lambda, &VerifyOptions::default())
}

pub fn verify_gh_with(
    h: &GhMatrix,
    lambda: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut report = verify_entries(h.q(), h.order(), h.entries(), lambda, options)?;
    if options.check_columns {
        let t = h.transpose();
        let column_options = VerifyOptions {
            check_columns: false,
            collect_all: false,
            ..options.clone()
        };
        let columns = verify_entries(t.q(), t.order(), t.entries(), lambda, &column_options)?;
        report.columns_passed = Some(columns.passed);
    }
    Ok(report)
}

/// Verifies a raw row-major `order x order` matrix of encodings over a
/// group of order `q`.
pub fn verify_entries(
    q: u32,
    order: usize,
    entries: &[u16],
    lambda: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    if order != q as usize * lambda || order == 0 {
        return Err(Error::OrderLambdaMismatch { order, q, lambda });
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
    let diff = GroupDiff::new(q)?;
    let scan = Scan {
        diff: &diff,
        entries,
        order,
        lambda: lambda as u32,
    };

    let run = || {
        if options.collect_all {
            let failures: Vec<PairFailure> = if options.threads == Some(1) {
                let mut counts = vec![0; q as usize];
                (0..order)
                    .flat_map(|i| scan.row_failures(i, &mut counts, true))
                    .collect()
            } else {
                (0..order)
                    .into_par_iter()
                    .map_init(
                        || vec![0; q as usize],
                        |counts, i| scan.row_failures(i, counts, true),
                    )
                    .flatten_iter()
                    .collect()
            };
            (failures.first().cloned(), failures)
        } else {
            let first = if options.threads == Some(1) {
                let mut counts = vec![0; q as usize];
                (0..order).find_map(|i| scan.row_failures(i, &mut counts, false).pop())
            } else {
                (0..order)
                    .into_par_iter()
                    .map_init(
                        || vec![0; q as usize],
                        |counts, i| scan.row_failures(i, counts, false).pop(),
                    )
                    .find_first(Option::is_some)
                    .flatten()
            };
            (first, Vec::new())
        }
    };

    let (first_failure, failures) = match options.threads {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        _ => run(),
    };

    let total_pairs = (order as u64) * (order as u64 - 1) / 2;
    let checked_pairs = match &first_failure {
        Some(f) if !options.collect_all => pairs_before(order, f.row_i, f.row_l) + 1,
        _ => total_pairs,
    };
    Ok(VerificationReport {
        passed: first_failure.is_none(),
        u: q,
        lambda,
        order,
        checked_pairs,
        first_failure,
        failures,
        columns_passed: None,
    })
}

/// Number of pairs `(i', l')`, `i' < l'`, strictly before `(i, l)` in
/// lexicographic order.
fn pairs_before(k: usize, i: usize, l: usize) -> u64 {
    let (k, i, l) = (k as u64, i as u64, l as u64);
    // row r < i contributes k - 1 - r pairs
    i * (k - 1) - i * i.saturating_sub(1) / 2 + (l - i - 1)
}

struct Scan<'a> {
    diff: &'a GroupDiff,
    entries: &'a [u16],
    order: usize,
    lambda: u32,
}

impl Scan<'_> {
    fn row(&self, i: usize) -> &[u16] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    /// Failing pairs `(i, l)` with `l > i`; at most one unless `all`.
    fn row_failures(&self, i: usize, counts: &mut [u32], all: bool) -> Vec<PairFailure> {
        let row_i = self.row(i);
        let mut out = Vec::new();
        for l in i + 1..self.order {
            self.diff.tally(row_i, self.row(l), counts);
            if counts.iter().any(|&c| c != self.lambda) {
                out.push(PairFailure {
                    row_i: i,
                    row_l: l,
                    histogram: counts.to_vec(),
                });
                if !all {
                    break;
                }
            }
        }
        out
    }
}
