//! Exact arithmetic in the small finite fields GF(q), q ∈ {2, 3, 4, 5, 7, 8, 9}.
//!
//! An element of GF(p^d) is an index in `0..q` encoding a polynomial over
//! GF(p): the base-p digits of the index are the coefficients, constant term
//! first, so index `a0 + a1*p + ... + a_{d-1}*p^{d-1}` encodes
//! `a0 + a1*X + ... + a_{d-1}*X^{d-1}`. Extension fields are built modulo a
//! fixed monic irreducible polynomial, so every element has exactly one index
//! and serialized values are portable. All operations go through q×q tables
//! precomputed once per order.

use std::fmt;
use std::sync::OnceLock;

/// Field orders this crate supports.
pub const SUPPORTED_ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

const MAX_Q: usize = 9;

/// Modulus coefficients, constant term first, for each extension order.
/// GF(4): X^2+X+1, GF(8): X^3+X+1, GF(9): X^2+1. Prime fields have no modulus.
fn modulus_coeffs(q: u8) -> &'static [u8] {
    match q {
        4 => &[1, 1, 1],
        8 => &[1, 1, 0, 1],
        9 => &[1, 0, 1],
        _ => &[],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("unsupported field order {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedOrder(u64),
    #[error("element index {index} out of range for GF({q})")]
    InvalidElement { index: u64, q: u8 },
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u8 },
}

/// One element of GF(q), stored as its index.
///
/// Indices only make sense relative to a [`FieldSpec`]; mixing elements from
/// different fields is a caller bug and is caught by the table lookups.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q], // inv[0] is a sentinel, never read through the public API
}

/// A supported finite field GF(q) = GF(p^d).
///
/// Cheap to copy; the arithmetic tables live in per-order statics.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldSpec {
    q: u8,
    p: u8,
    d: u8,
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, d) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            7 => (7, 1),
            8 => (2, 3),
            9 => (3, 2),
            _ => return Err(FieldError::UnsupportedOrder(q)),
        };
        Ok(FieldSpec { q: q as u8, p, d })
    }

    /// Field order q = p^d.
    pub fn q(self) -> u8 {
        self.q
    }

    /// Field characteristic.
    pub fn p(self) -> u8 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(self) -> u8 {
        self.d
    }

    /// Modulus coefficients (constant first, monic), empty for prime fields.
    pub fn modulus(self) -> &'static [u8] {
        modulus_coeffs(self.q)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(self) -> FieldElement {
        FieldElement::ONE
    }

    /// Validates an index and wraps it as an element of this field.
    pub fn element(self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.q as u64 {
            Ok(FieldElement(index as u8))
        } else {
            Err(FieldError::InvalidElement { index, q: self.q })
        }
    }

    /// All q elements in index order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    fn tables(self) -> &'static Tables {
        static TABLES: [OnceLock<Tables>; MAX_Q + 1] =
            [const { OnceLock::new() }; MAX_Q + 1];
        TABLES[self.q as usize].get_or_init(|| build_tables(self))
    }

    fn check(self, a: FieldElement) {
        assert!(
            a.0 < self.q,
            "element index {} out of range for GF({})",
            a.0,
            self.q
        );
    }

    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement(self.tables().add[a.0 as usize][b.0 as usize])
    }

    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement(self.tables().mul[a.0 as usize][b.0 as usize])
    }

    pub fn neg(self, a: FieldElement) -> FieldElement {
        self.check(a);
        FieldElement(self.tables().neg[a.0 as usize])
    }

    pub fn inv(self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero { q: self.q });
        }
        Ok(FieldElement(self.tables().inv[a.0 as usize]))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)
    }
}

/// Index -> coefficient digits (constant first), length d.
fn digits(spec: FieldSpec, index: u8) -> Vec<u8> {
    let mut v = Vec::with_capacity(spec.d as usize);
    let mut rest = index;
    for _ in 0..spec.d {
        v.push(rest % spec.p);
        rest /= spec.p;
    }
    v
}

fn undigits(spec: FieldSpec, coeffs: &[u8]) -> u8 {
    let mut index = 0u8;
    for &c in coeffs.iter().rev() {
        index = index * spec.p + c;
    }
    index
}

/// Polynomial product of two elements, reduced modulo the field modulus by
/// eliminating the top coefficients against the monic modulus.
fn poly_mul_mod(spec: FieldSpec, a: u8, b: u8) -> u8 {
    let p = spec.p as u16;
    let d = spec.d as usize;
    let (da, db) = (digits(spec, a), digits(spec, b));
    let mut prod = vec![0u16; 2 * d - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p;
        }
    }
    let modulus = spec.modulus();
    for i in (d..2 * d - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        // subtract c * X^(i-d) * modulus; the leading term cancels prod[i]
        for (j, &m) in modulus.iter().enumerate() {
            let idx = i - d + j;
            prod[idx] = (prod[idx] + p * p - c * m as u16) % p;
        }
    }
    let coeffs: Vec<u8> = prod[..d].iter().map(|&c| c as u8).collect();
    undigits(spec, &coeffs)
}

fn build_tables(spec: FieldSpec) -> Tables {
    let q = spec.q as usize;
    let p = spec.p;
    let mut t = Tables {
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
    };
    for a in 0..q {
        for b in 0..q {
            let (da, db) = (digits(spec, a as u8), digits(spec, b as u8));
            let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            t.add[a][b] = undigits(spec, &sum);
            t.mul[a][b] = if spec.d == 1 {
                ((a * b) % p as usize) as u8
            } else {
                poly_mul_mod(spec, a as u8, b as u8)
            };
        }
        let da = digits(spec, a as u8);
        let neg: Vec<u8> = da.iter().map(|x| (p - x) % p).collect();
        t.neg[a] = undigits(spec, &neg);
    }
    for a in 1..q {
        let b = (1..q)
            .find(|&b| t.mul[a][b] == 1)
            .expect("every nonzero element of a finite field has an inverse");
        t.inv[a] = b as u8;
    }
    t
}
