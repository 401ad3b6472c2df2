//! Arithmetic in GF(p^n).
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector
//! `(c_0, ..., c_{n-1})` of the polynomial-basis representation is read as
//! the base-p number `sum c_j * p^j`. That encoding is also the canonical
//! element order, so element `i` is `a_i` and `a_0 = 0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the field order q.
pub const DEFAULT_MAX_FIELD_ORDER: u64 = 1 << 16;

/// Identifies a field by its characteristic and modulus.
///
/// Two fields created from the same `(p, modulus)` share an id, so their
/// elements can be mixed freely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldId {
    p: u32,
    modulus_code: u64,
}

/// An element of a [`FiniteField`], carried as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u16,
    field: FieldId,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u16 {
        self.value
    }

    #[inline]
    pub fn index(self) -> usize {
        self.value as usize
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    id: FieldId,
    neg: Vec<u16>,
    // exp[i] = g^i for i in 0..2(q-1); log[g^i] = i. Empty for n = 1.
    exp: Vec<u16>,
    log: Vec<u32>,
    primitive: u16,
}

/// GF(p^n) with a fixed irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.0.p)
            .field("n", &self.0.n)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// GF(p^n) with the default modulus.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::create(p, n, None)
    }

    /// GF(p^n), optionally with an explicit monic modulus `c_0, ..., c_n`.
    ///
    /// Without a modulus the smallest monic irreducible of degree n is
    /// used, comparing `(c_{n-1}, ..., c_0)` as a base-p integer.
    pub fn create(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::create_capped(p, n, modulus, DEFAULT_MAX_FIELD_ORDER)
    }

    pub fn create_capped(p: u32, n: u32, modulus: Option<&[u32]>, max_q: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let cap = max_q.min(DEFAULT_MAX_FIELD_ORDER);
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= cap)
            .ok_or(Error::FieldTooLarge { p, n, cap })?;
        let q = q as u32;

        let modulus = match modulus {
            Some(m) => {
                check_modulus(p, n, m)?;
                m.to_vec()
            }
            None => smallest_irreducible(p, n),
        };
        let modulus_code = modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p as u64 + c as u64);
        let id = FieldId { p, modulus_code };

        let neg = (0..q)
            .map(|v| {
                let mut x = v;
                let mut out = 0;
                let mut place = 1;
                while x > 0 {
                    out += ((p - x % p) % p) * place;
                    place *= p;
                    x /= p;
                }
                out as u16
            })
            .collect();

        let mut inner = Inner {
            p,
            n,
            q,
            modulus,
            id,
            neg,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: 0,
        };
        if n > 1 {
            build_log_tables(&mut inner);
        } else if q > 1 {
            inner.primitive = (1..q)
                .find(|&g| multiplicative_order_mod(g, p) == p - 1)
                .unwrap_or(1) as u16;
        }
        Ok(Self(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients `c_0, ..., c_n` (monic, so `c_n = 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn id(&self) -> FieldId {
        self.0.id
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.wrap(self.0.primitive)
    }

    #[inline]
    fn wrap(&self, value: u16) -> FieldElement {
        FieldElement {
            value,
            field: self.0.id,
        }
    }

    /// Element with integer encoding `value`.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.q() as u64 {
            return Err(Error::EncodingOutOfRange { value, q: self.q() });
        }
        Ok(self.wrap(value as u16))
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// All elements in canonical order `a_0 = 0, a_1, ..., a_{q-1}`.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q()).map(|v| self.wrap(v as u16)).collect()
    }

    /// Coefficient vector `(c_0, ..., c_{n-1})` of an encoding.
    pub fn decode(&self, value: u16) -> Vec<u32> {
        let p = self.p();
        let mut x = value as u32;
        (0..self.n())
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let p = self.p();
        if coeffs.len() != self.n() as usize {
            return Err(Error::WrongLength {
                expected: self.n() as usize,
                got: coeffs.len(),
            });
        }
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::EncodingOutOfRange {
                    value: c as u64,
                    q: p,
                });
            }
            value = value * p as u64 + c as u64;
        }
        self.element(value)
    }

    fn check(&self, x: FieldElement) -> Result<u16> {
        if x.field != self.0.id {
            return Err(Error::FieldMismatch);
        }
        Ok(x.value)
    }

    fn check_pair(&self, x: FieldElement, y: FieldElement) -> Result<(u16, u16)> {
        Ok((self.check(x)?, self.check(y)?))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(x, y)?;
        Ok(self.wrap(self.add_raw(a, b)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(x, y)?;
        Ok(self.wrap(self.sub_raw(a, b)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(x, y)?;
        Ok(self.wrap(self.mul_raw(a, b)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_raw(self.check(x)?)))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElement) -> Result<Option<FieldElement>> {
        Ok(self.inv_raw(self.check(x)?).map(|v| self.wrap(v)))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_raw(self.check(x)?, e)))
    }

    #[inline]
    pub fn add_raw(&self, a: u16, b: u16) -> u16 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.n == 1 {
            return ((a as u32 + b as u32) % inner.p) as u16;
        }
        let p = inner.p;
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out as u16
    }

    #[inline]
    pub fn neg_raw(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u16, b: u16) -> u16 {
        let inner = &*self.0;
        if inner.n == 1 {
            return ((a as u32 * b as u32) % inner.p) as u16;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv_raw(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        Some(self.pow_raw(a, self.q() as u64 - 2))
    }

    pub fn pow_raw(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Human-readable form: decimal for prime fields, otherwise a
    /// polynomial in `a` (GF(4) renders as `0, 1, a, a+1`).
    pub fn render(&self, value: u16) -> String {
        if self.n() == 1 {
            return value.to_string();
        }
        let coeffs = self.decode(value);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let coef = if c == 1 && j > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match j {
                    0 => coef,
                    1 => format!("{coef}a"),
                    _ => format!("{coef}a^{j}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^n` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut order = 1;
    while x != 1 {
        x = (x as u64 * g as u64 % p as u64) as u32;
        order += 1;
        if order > p {
            return 0;
        }
    }
    order
}

fn check_modulus(p: u32, n: u32, m: &[u32]) -> Result<()> {
    let expected = n as usize + 1;
    if m.len() != expected {
        return Err(Error::ModulusWrongDegree {
            degree: n,
            expected,
            got: m.len(),
        });
    }
    if let Some(&c) = m.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient { coeff: c, p });
    }
    if m[n as usize] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    if !is_irreducible(m, p) {
        return Err(Error::ModulusReducible(m.to_vec()));
    }
    Ok(())
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let t = (lead as u64 * bj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=n/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .map(|code| {
            let mut m = Vec::with_capacity(n as usize + 1);
            let mut x = code;
            for _ in 0..n {
                m.push((x % p as u64) as u32);
                x /= p as u64;
            }
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// Product of two encodings by schoolbook multiplication and reduction.
fn mul_poly_encoded(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let n = modulus.len() - 1;
    let digits = |mut x: u32| {
        (0..n)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect::<Vec<_>>()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * n - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let r = poly_rem(&prod, modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_log_tables(inner: &mut Inner) {
    let (p, q) = (inner.p, inner.q);
    let order = q - 1;
    for g in 2..q {
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut x = 1u32;
        loop {
            exp.push(x as u16);
            x = mul_poly_encoded(x, g, p, &inner.modulus);
            if x == 1 {
                break;
            }
        }
        if exp.len() as u32 != order {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        exp.extend_from_within(..);
        inner.exp = exp;
        inner.log = log;
        inner.primitive = g as u16;
        return;
    }
    unreachable!("the multiplicative group of a finite field is cyclic");
}
