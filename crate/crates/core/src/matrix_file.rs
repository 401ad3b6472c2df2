//! Plain-text matrix files.
//!
//! ```text
//! # ghforge-matrix version=1
//! # p=3 n=1 modulus=0,1
//! # order=9 lambda=3 provenance=theorem-3.2
//! 0 0 0 0 1 2 0 2 1
//! ...
//! ```
//!
//! Header lines start with `#` and carry whitespace-separated `key=value`
//! pairs. The body has `order` lines of `order` decimal encodings. With
//! `notation=exponent` (prime fields only) body tokens are powers of a
//! generator `ω` of the cyclic group: `1`, `ω`, `ω^e` (or `w`, `w^e`,
//! `ω^{e}`) stand for the encodings `0`, `1`, `e`.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::construct::{GhMatrix, Provenance};
use crate::field::FiniteField;

pub const FORMAT_MARKER: &str = "ghforge-matrix";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("header is missing `{0}`")]
    MissingKey(&'static str),

    #[error("header key `{0}` appears twice")]
    DuplicateKey(String),

    #[error("unknown header key `{0}`")]
    UnknownKey(String),

    #[error("invalid value {value:?} for header key `{key}`")]
    BadValue { key: String, value: String },

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),

    #[error("header is inconsistent: {0}")]
    Inconsistent(String),

    #[error("invalid field in header: {0}")]
    Field(crate::Error),

    #[error("expected {expected} body rows, found {got}")]
    RowCount { expected: usize, got: usize },

    #[error("line {line}: expected {expected} entries, found {got}")]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: invalid token {token:?}")]
    BadToken { line: usize, token: String },

    #[error("line {line}: entry {value} is out of range for q = {q}")]
    OutOfRange { line: usize, value: u64, q: u32 },
}

/// How body tokens are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Integer,
    Exponent,
}

impl FromStr for Notation {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "integer" => Ok(Notation::Integer),
            "exponent" => Ok(Notation::Exponent),
            _ => Err(()),
        }
    }
}

/// Parsed header fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixHeader {
    pub version: u32,
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub order: usize,
    pub lambda: usize,
    pub provenance: Provenance,
    pub notation: Notation,
}

impl MatrixHeader {
    pub fn q(&self) -> u64 {
        (self.p as u64).saturating_pow(self.n)
    }
}

/// Serializes in canonical integer notation. The output is a pure
/// function of the matrix.
pub fn write_matrix(h: &GhMatrix) -> String {
    let field = h.field();
    let modulus: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
    let mut out = String::with_capacity(h.order() * h.order() * 3 + 128);
    let _ = writeln!(out, "# {FORMAT_MARKER} version={FORMAT_VERSION}");
    let _ = writeln!(
        out,
        "# p={} n={} modulus={}",
        field.p(),
        field.n(),
        modulus.join(",")
    );
    let _ = writeln!(
        out,
        "# order={} lambda={} provenance={}",
        h.order(),
        h.claimed_lambda(),
        h.provenance()
    );
    for row in h.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_file(h: &GhMatrix, path: impl AsRef<Path>) -> Result<(), FormatError> {
    std::fs::write(path, write_matrix(h))?;
    Ok(())
}

/// Human view: field elements rendered symbolically, columns aligned, a
/// `|` between the q-wide blocks.
pub fn render_pretty(h: &GhMatrix) -> String {
    let field = h.field();
    let names: Vec<String> = (0..field.q()).map(|v| field.render(v as u16)).collect();
    let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let q = field.q() as usize;
    let k = h.order();
    let mut out = String::new();
    for (r, row) in h.rows().enumerate() {
        if r > 0 && r % q == 0 && k > q {
            let rule_len = k * (width + 1) + (k / q - 1) * 2 - 1;
            out.push_str(&"-".repeat(rule_len));
            out.push('\n');
        }
        let mut line = String::new();
        for (c, &v) in row.iter().enumerate() {
            if c > 0 {
                line.push(' ');
                if c % q == 0 && k > q {
                    line.push_str("| ");
                }
            }
            let _ = write!(line, "{:>width$}", names[v as usize]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<GhMatrix, FormatError> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn parse_header(text: &str) -> Result<MatrixHeader, FormatError> {
    let mut version = None;
    let mut p = None;
    let mut n = None;
    let mut modulus = None;
    let mut order = None;
    let mut lambda = None;
    let mut provenance = None;
    let mut notation = None;

    fn set<T>(slot: &mut Option<T>, key: &str, value: T) -> Result<(), FormatError> {
        if slot.replace(value).is_some() {
            return Err(FormatError::DuplicateKey(key.to_string()));
        }
        Ok(())
    }
    fn num<T: FromStr>(key: &str, value: &str) -> Result<T, FormatError> {
        value.parse().map_err(|_| FormatError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
        })
    }

    for line in text
        .lines()
        .filter_map(|l| l.trim_start().strip_prefix('#'))
    {
        for token in line.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                if token == FORMAT_MARKER {
                    continue;
                }
                return Err(FormatError::UnknownKey(token.to_string()));
            };
            match key {
                "version" => set(&mut version, key, num::<u32>(key, value)?)?,
                "p" => set(&mut p, key, num::<u32>(key, value)?)?,
                "n" => set(&mut n, key, num::<u32>(key, value)?)?,
                "modulus" => {
                    let coeffs = value
                        .split(',')
                        .map(|c| num::<u32>(key, c))
                        .collect::<Result<Vec<_>, _>>()?;
                    set(&mut modulus, key, coeffs)?
                }
                "order" => set(&mut order, key, num::<usize>(key, value)?)?,
                "lambda" => set(&mut lambda, key, num::<usize>(key, value)?)?,
                "provenance" => {
                    let tag = value.parse().map_err(|_| FormatError::BadValue {
                        key: key.to_string(),
                        value: value.to_string(),
                    })?;
                    set(&mut provenance, key, tag)?
                }
                "notation" => {
                    let nt = value.parse().map_err(|_| FormatError::BadValue {
                        key: key.to_string(),
                        value: value.to_string(),
                    })?;
                    set(&mut notation, key, nt)?
                }
                other => return Err(FormatError::UnknownKey(other.to_string())),
            }
        }
    }

    let version = version.ok_or(FormatError::MissingKey("version"))?;
    if version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    Ok(MatrixHeader {
        version,
        p: p.ok_or(FormatError::MissingKey("p"))?,
        n: n.ok_or(FormatError::MissingKey("n"))?,
        modulus: modulus.ok_or(FormatError::MissingKey("modulus"))?,
        order: order.ok_or(FormatError::MissingKey("order"))?,
        lambda: lambda.ok_or(FormatError::MissingKey("lambda"))?,
        provenance: provenance.ok_or(FormatError::MissingKey("provenance"))?,
        notation: notation.unwrap_or_default(),
    })
}

/// Parses an exponent-form token to its exponent.
pub fn parse_exponent_token(token: &str) -> Option<u64> {
    if token == "1" {
        return Some(0);
    }
    let rest = token
        .strip_prefix('ω')
        .or_else(|| token.strip_prefix('w'))?;
    if rest.is_empty() {
        return Some(1);
    }
    let exp = rest.strip_prefix('^')?;
    let exp = exp
        .strip_prefix('{')
        .and_then(|e| e.strip_suffix('}'))
        .unwrap_or(exp);
    exp.parse().ok()
}

pub fn parse_matrix(text: &str) -> Result<GhMatrix, FormatError> {
    let header = parse_header(text)?;
    let q = header.q();
    if q.checked_mul(header.lambda as u64) != Some(header.order as u64) || header.order == 0 {
        return Err(FormatError::Inconsistent(format!(
            "order {} is not q*lambda = {}*{}",
            header.order, q, header.lambda
        )));
    }
    if header.notation == Notation::Exponent && header.n != 1 {
        return Err(FormatError::Inconsistent(
            "exponent notation needs a prime field".to_string(),
        ));
    }
    let field = FiniteField::create(header.p, header.n, Some(&header.modulus))
        .map_err(FormatError::Field)?;
    let q = field.q();
    let k = header.order;

    let mut entries = Vec::with_capacity(k * k);
    let mut rows = 0;
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line_no = idx + 1;
        rows += 1;
        if rows > k {
            continue;
        }
        let before = entries.len();
        for token in trimmed.split_whitespace() {
            let value = match header.notation {
                Notation::Integer => token.parse::<u64>().ok(),
                Notation::Exponent => parse_exponent_token(token),
            }
            .ok_or_else(|| FormatError::BadToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if value >= q as u64 {
                return Err(FormatError::OutOfRange {
                    line: line_no,
                    value,
                    q,
                });
            }
            entries.push(value as u16);
        }
        let got = entries.len() - before;
        if got != k {
            return Err(FormatError::RowLength {
                line: line_no,
                expected: k,
                got,
            });
        }
    }
    if rows != k {
        return Err(FormatError::RowCount {
            expected: k,
            got: rows,
        });
    }
    GhMatrix::new(&field, k, entries, header.lambda, header.provenance)
        .map_err(|e| FormatError::Inconsistent(e.to_string()))
}
