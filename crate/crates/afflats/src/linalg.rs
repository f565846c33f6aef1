//! Exact linear algebra over GF(q): vectors, row matrices, reduced row
//! echelon form, subspaces in canonical form, linear solving and subspace
//! enumeration.
//!
//! Every subspace is stored as the unique reduced-row-echelon basis of its
//! row space, so structural equality is semantic equality. The elimination
//! core has two code paths: over GF(2) rows are packed into `u128` words and
//! reduced with XOR; over larger fields rows are digit sequences driven by
//! the [`gf`](crate::gf) tables. Both paths produce identical results (the
//! packed path is exercised against the generic one in tests).

use std::cmp::Ordering;
use std::fmt;

use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u8, right: u8 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A coordinate vector over GF(q).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorFq {
    spec: FieldSpec,
    coords: Vec<FieldElement>,
}

impl VectorFq {
    pub fn new(spec: FieldSpec, coords: Vec<FieldElement>) -> VectorFq {
        VectorFq { spec, coords }
    }

    pub fn zero(spec: FieldSpec, n: usize) -> VectorFq {
        VectorFq { spec, coords: vec![FieldElement::ZERO; n] }
    }

    /// Builds a vector from raw element indices, validating each against q.
    pub fn from_indices(spec: FieldSpec, indices: &[u64]) -> Result<VectorFq, LinalgError> {
        let coords = indices
            .iter()
            .map(|&i| {
                spec.element(i)
                    .map_err(|e| LinalgError::Parse(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(VectorFq { spec, coords })
    }

    /// Parses a digit string such as `"0120"` (one digit per coordinate).
    pub fn parse(spec: FieldSpec, s: &str) -> Result<VectorFq, LinalgError> {
        let coords = s
            .chars()
            .map(|c| {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| LinalgError::Parse(format!("bad digit {c:?} in vector {s:?}")))?;
                spec.element(d as u64)
                    .map_err(|e| LinalgError::Parse(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(VectorFq { spec, coords })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &VectorFq) {
        assert_eq!(self.spec, other.spec, "vector field mismatch");
        assert_eq!(self.coords.len(), other.coords.len(), "vector length mismatch");
    }

    pub fn add(&self, other: &VectorFq) -> VectorFq {
        self.check_compatible(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.spec.add(a, b))
            .collect();
        VectorFq { spec: self.spec, coords }
    }

    pub fn sub(&self, other: &VectorFq) -> VectorFq {
        self.check_compatible(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.spec.sub(a, b))
            .collect();
        VectorFq { spec: self.spec, coords }
    }

    pub fn scale(&self, c: FieldElement) -> VectorFq {
        let coords = self.coords.iter().map(|&a| self.spec.mul(c, a)).collect();
        VectorFq { spec: self.spec, coords }
    }

    /// self += c * other
    fn add_scaled_assign(&mut self, c: FieldElement, other: &VectorFq) {
        self.check_compatible(other);
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = self.spec.add(*a, self.spec.mul(c, b));
        }
    }
}

impl fmt::Display for VectorFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coords {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} over {})", self, self.spec)
    }
}

/// A row matrix over GF(q). Rows all share the same length `ncols`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixFq {
    spec: FieldSpec,
    ncols: usize,
    rows: Vec<VectorFq>,
}

impl MatrixFq {
    pub fn new(spec: FieldSpec, ncols: usize, rows: Vec<VectorFq>) -> MatrixFq {
        for r in &rows {
            assert_eq!(r.spec, spec, "matrix row field mismatch");
            assert_eq!(r.len(), ncols, "matrix row length mismatch");
        }
        MatrixFq { spec, ncols, rows }
    }

    pub fn empty(spec: FieldSpec, ncols: usize) -> MatrixFq {
        MatrixFq { spec, ncols, rows: Vec::new() }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> MatrixFq {
        let rows = (0..n)
            .map(|i| {
                let mut v = VectorFq::zero(spec, n);
                v.coords[i] = FieldElement::ONE;
                v
            })
            .collect();
        MatrixFq { spec, ncols: n, rows }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[VectorFq] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &VectorFq {
        &self.rows[i]
    }

    /// The linear combination `coeffs · self` (coeffs has one entry per row).
    pub fn row_combination(&self, coeffs: &VectorFq) -> VectorFq {
        assert_eq!(coeffs.len(), self.rows.len(), "coefficient count mismatch");
        let mut acc = VectorFq::zero(self.spec, self.ncols);
        for (c, row) in coeffs.coords().iter().zip(&self.rows) {
            if !c.is_zero() {
                acc.add_scaled_assign(*c, row);
            }
        }
        acc
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} over {}, {} cols]", self, self.spec, self.ncols)
    }
}

// ---------------------------------------------------------------------------
// Elimination core
// ---------------------------------------------------------------------------

/// Outcome of running Gauss-Jordan elimination on a set of rows whose first
/// `body` columns are the system and whose remaining columns are trackers
/// carried along (initialized by the caller, typically to an identity).
struct Elimination {
    /// Fully reduced rows, pivot rows first in pivot-column order, then the
    /// rows whose body became zero (their trackers span the row kernel).
    rows: Vec<VectorFq>,
    rank: usize,
    pivots: Vec<usize>,
}

/// Reduces `rows` (each of width `body + track`) to reduced row echelon form,
/// pivoting only inside the first `body` columns.
fn eliminate(spec: FieldSpec, body: usize, rows: Vec<VectorFq>, track: usize) -> Elimination {
    let width = body + track;
    for r in &rows {
        assert_eq!(r.len(), width, "elimination row width mismatch");
    }
    if spec.q() == 2 && width <= 128 {
        eliminate_bits(spec, body, rows, width)
    } else {
        eliminate_digits(spec, body, rows)
    }
}

/// Generic digit-at-a-time elimination, valid for every supported q.
fn eliminate_digits(spec: FieldSpec, body: usize, mut rows: Vec<VectorFq>) -> Elimination {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..body {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r].coords[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let lead = rows[rank].coords[col];
        if lead != FieldElement::ONE {
            let inv = spec.inv(lead).expect("pivot entry is nonzero");
            rows[rank] = rows[rank].scale(inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let c = row.coords[col];
            if r != rank && !c.is_zero() {
                row.add_scaled_assign(spec.neg(c), &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Elimination { rows, rank, pivots }
}

/// GF(2) fast path: each row packed into one `u128`, bit i = column i,
/// row operations become single XORs.
fn eliminate_bits(spec: FieldSpec, body: usize, rows: Vec<VectorFq>, width: usize) -> Elimination {
    let mut packed: Vec<u128> = rows.iter().map(pack_row) .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..body {
        let Some(pr) = (rank..packed.len()).find(|&r| packed[r] >> col & 1 == 1) else {
            continue;
        };
        packed.swap(rank, pr);
        let pivot_row = packed[rank];
        for (r, row) in packed.iter_mut().enumerate() {
            if r != rank && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == packed.len() {
            break;
        }
    }
    let rows = packed
        .into_iter()
        .map(|bits| unpack_row(spec, width, bits))
        .collect();
    Elimination { rows, rank, pivots }
}

fn pack_row(row: &VectorFq) -> u128 {
    let mut bits = 0u128;
    for (i, c) in row.coords().iter().enumerate() {
        bits |= (c.index() as u128 & 1) << i;
    }
    bits
}

fn unpack_row(spec: FieldSpec, width: usize, bits: u128) -> VectorFq {
    let coords = (0..width)
        .map(|i| {
            if bits >> i & 1 == 1 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            }
        })
        .collect();
    VectorFq::new(spec, coords)
}

/// Reduced row echelon form of `m` (zero rows kept at the bottom) and its rank.
pub fn rref(m: &MatrixFq) -> (MatrixFq, usize) {
    let e = eliminate(m.spec, m.ncols, m.rows.clone(), 0);
    (MatrixFq { spec: m.spec, ncols: m.ncols, rows: e.rows }, e.rank)
}

/// Solves `x · m = rhs` for a row vector x (one coefficient per row of `m`).
///
/// Returns `Ok(None)` when `rhs` is outside the row space of `m`. Any solution
/// is acceptable; the one returned is the combination read off the tracked
/// elimination, so it is deterministic.
pub fn solve(m: &MatrixFq, rhs: &VectorFq) -> Result<Option<VectorFq>, LinalgError> {
    if m.spec != rhs.spec() {
        return Err(LinalgError::FieldMismatch { left: m.spec.q(), right: rhs.spec().q() });
    }
    if m.ncols != rhs.len() {
        return Err(LinalgError::ShapeMismatch(format!(
            "matrix has {} columns but right-hand side has length {}",
            m.ncols,
            rhs.len()
        )));
    }
    let spec = m.spec;
    let nrows = m.rows.len();
    // Augment each row with a tracker slot recording which input rows combine
    // into it, then express rhs over the reduced rows.
    let tracked: Vec<VectorFq> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut coords = row.coords().to_vec();
            coords.extend((0..nrows).map(|j| {
                if i == j {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            }));
            VectorFq::new(spec, coords)
        })
        .collect();
    let e = eliminate(spec, m.ncols, tracked, nrows);
    let mut residual = rhs.clone();
    let mut combo = VectorFq::zero(spec, nrows);
    for (i, &p) in e.pivots.iter().enumerate() {
        let c = residual.coords[p];
        if c.is_zero() {
            continue;
        }
        let row = &e.rows[i];
        let neg = spec.neg(c);
        for j in 0..m.ncols {
            residual.coords[j] = spec.add(residual.coords[j], spec.mul(neg, row.coords[j]));
        }
        for j in 0..nrows {
            combo.coords[j] = spec.add(combo.coords[j], spec.mul(c, row.coords[m.ncols + j]));
        }
    }
    Ok(if residual.is_zero() { Some(combo) } else { None })
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// A linear subspace of GF(q)^n in canonical form: its basis matrix is the
/// unique reduced row echelon basis (pivot columns strictly increasing, pivot
/// entries 1, pivot columns elsewhere zero). Two `Subspace` values are equal
/// exactly when they are the same subspace.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace {
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The canonical subspace spanned by the rows of `m`.
    pub fn from_spanning(m: &MatrixFq) -> Subspace {
        let e = eliminate(m.spec, m.ncols, m.rows.clone(), 0);
        let rows = e.rows[..e.rank].to_vec();
        Subspace {
            basis: MatrixFq { spec: m.spec, ncols: m.ncols, rows },
            pivots: e.pivots,
        }
    }

    /// Wraps rows already known to be in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(basis: MatrixFq, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.nrows(), pivots.len());
        Subspace { basis, pivots }
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Subspace {
        Subspace { basis: MatrixFq::empty(spec, n), pivots: Vec::new() }
    }

    pub fn full(spec: FieldSpec, n: usize) -> Subspace {
        Subspace { basis: MatrixFq::identity(spec, n), pivots: (0..n).collect() }
    }

    pub fn spec(&self) -> FieldSpec {
        self.basis.spec
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.spec() != other.spec() {
            return Err(LinalgError::FieldMismatch {
                left: self.spec().q(),
                right: other.spec().q(),
            });
        }
        if self.ambient() != other.ambient() {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    /// Subtracts the unique combination of basis rows that zeroes every pivot
    /// coordinate of `v`. The result is the canonical representative of
    /// `v + self`; it is the zero vector exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &VectorFq) -> VectorFq {
        assert_eq!(v.len(), self.ambient(), "ambient mismatch in reduce");
        assert_eq!(v.spec(), self.spec(), "field mismatch in reduce");
        let spec = self.spec();
        let mut out = v.clone();
        for (row, &p) in self.basis.rows.iter().zip(&self.pivots) {
            let c = out.coords[p];
            if !c.is_zero() {
                out.add_scaled_assign(spec.neg(c), row);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &VectorFq) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim()
            && self.basis.rows.iter().all(|r| other.contains_vector(r))
    }

    /// Sum of two subspaces (the span of both bases).
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut rows = self.basis.rows.clone();
        rows.extend(other.basis.rows.iter().cloned());
        let m = MatrixFq { spec: self.spec(), ncols: self.ambient(), rows };
        Ok(Subspace::from_spanning(&m))
    }

    /// Intersection of two subspaces via the kernel of the stacked system:
    /// coefficient rows (α | β) with α·A + β·B = 0 have α·A in the
    /// intersection, and the kernel rows of the tracked elimination span all
    /// of them.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let spec = self.spec();
        let n = self.ambient();
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(spec, n));
        }
        let total = da + db;
        let mut rows = Vec::with_capacity(total);
        for (i, row) in self.basis.rows.iter().chain(&other.basis.rows).enumerate() {
            let mut coords = row.coords().to_vec();
            coords.extend((0..total).map(|j| {
                if i == j {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            }));
            rows.push(VectorFq::new(spec, coords));
        }
        let e = eliminate(spec, n, rows, total);
        let mut gens = Vec::with_capacity(total - e.rank);
        for row in &e.rows[e.rank..] {
            let alpha = VectorFq::new(spec, row.coords()[n..n + da].to_vec());
            gens.push(self.basis.row_combination(&alpha));
        }
        let m = MatrixFq { spec, ncols: n, rows: gens };
        Ok(Subspace::from_spanning(&m))
    }
}

impl fmt::Display for Subspace {
    /// Rows joined by `|`; the zero subspace prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            write!(f, "-")
        } else {
            write!(f, "{}", self.basis)
        }
    }
}

/// Parses the `Display` form of a subspace back, insisting on canonical
/// (reduced echelon) rows so that parsing never changes the representation.
pub fn parse_subspace(spec: FieldSpec, n: usize, s: &str) -> Result<Subspace, LinalgError> {
    if s == "-" {
        return Ok(Subspace::zero(spec, n));
    }
    let rows = s
        .split('|')
        .map(|part| {
            let v = VectorFq::parse(spec, part)?;
            if v.len() != n {
                return Err(LinalgError::Parse(format!(
                    "basis row {part:?} has length {} but ambient dimension is {n}",
                    v.len()
                )));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = MatrixFq::new(spec, n, rows);
    let sub = Subspace::from_spanning(&m);
    if sub.basis.rows() != m.rows() {
        return Err(LinalgError::Parse(format!(
            "basis {s:?} is not in reduced row echelon form"
        )));
    }
    Ok(sub)
}

// ---------------------------------------------------------------------------
// Subspace enumeration
// ---------------------------------------------------------------------------

/// Iterator over every k-dimensional subspace of GF(q)^n, in a fixed order:
/// pivot-column sets ascend lexicographically, and for each pivot set the
/// free entries run through all values lexicographically (row-major position
/// order, last position fastest).
pub struct SubspaceIter {
    spec: FieldSpec,
    n: usize,
    k: usize,
    /// Current pivot-column combination; None once exhausted.
    pivots: Option<Vec<usize>>,
    /// Row-major (row, col) slots not in pivot columns and right of the row pivot.
    free_slots: Vec<(usize, usize)>,
    free_digits: Vec<u8>,
}

impl SubspaceIter {
    fn new(spec: FieldSpec, n: usize, k: usize) -> SubspaceIter {
        let pivots = (k <= n).then(|| (0..k).collect::<Vec<_>>());
        let mut it = SubspaceIter { spec, n, k, pivots, free_slots: Vec::new(), free_digits: Vec::new() };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free_slots.clear();
        if let Some(p) = &self.pivots {
            for (i, &pc) in p.iter().enumerate() {
                for col in pc + 1..self.n {
                    if !p.contains(&col) {
                        self.free_slots.push((i, col));
                    }
                }
            }
        }
        self.free_digits = vec![0; self.free_slots.len()];
    }

    fn current(&self) -> Subspace {
        let p = self.pivots.as_ref().expect("current() called after exhaustion");
        let mut rows: Vec<VectorFq> = p
            .iter()
            .map(|&pc| {
                let mut v = VectorFq::zero(self.spec, self.n);
                v.coords[pc] = FieldElement::ONE;
                v
            })
            .collect();
        for (&(r, c), &d) in self.free_slots.iter().zip(&self.free_digits) {
            rows[r].coords[c] = self.spec.element(d as u64).expect("digit below q");
        }
        let basis = MatrixFq { spec: self.spec, ncols: self.n, rows };
        Subspace::from_rref_unchecked(basis, p.clone())
    }

    fn advance(&mut self) {
        let q = self.spec.q();
        // odometer over the free entries, last position fastest
        for i in (0..self.free_digits.len()).rev() {
            if self.free_digits[i] + 1 < q {
                self.free_digits[i] += 1;
                return;
            }
            self.free_digits[i] = 0;
        }
        // next pivot combination in lexicographic order
        let p = self.pivots.as_mut().expect("advance() called after exhaustion");
        if self.k == 0 {
            self.pivots = None;
            return;
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if p[i] < self.n - self.k + i {
                p[i] += 1;
                for j in i + 1..self.k {
                    p[j] = p[j - 1] + 1;
                }
                break;
            }
        }
        self.reset_free();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Enumerates the k-dimensional subspaces of GF(q)^n. There are `[n k]_q` of
/// them; the iterator is empty when k > n.
pub fn enumerate_subspaces(spec: FieldSpec, n: usize, k: usize) -> SubspaceIter {
    SubspaceIter::new(spec, n, k)
}

/// Orders subspaces the way [`enumerate_subspaces`] produces them:
/// lexicographic on pivot columns, then on the free entries row-major.
/// (This differs from the derived `Ord`, which is row-lexicographic.)
pub fn enumeration_order(a: &Subspace, b: &Subspace) -> Ordering {
    a.pivots
        .cmp(&b.pivots)
        .then_with(|| {
            for (ra, rb) in a.basis.rows().iter().zip(b.basis.rows()) {
                let o = ra.coords().cmp(rb.coords());
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn vec_of(spec: FieldSpec, idx: &[u64]) -> VectorFq {
        VectorFq::from_indices(spec, idx).unwrap()
    }

    fn mat(spec: FieldSpec, ncols: usize, rows: &[&[u64]]) -> MatrixFq {
        MatrixFq::new(
            spec,
            ncols,
            rows.iter().map(|r| vec_of(spec, r)).collect(),
        )
    }

    /// All vectors of GF(q)^n, for brute-force span computations.
    fn all_vectors(spec: FieldSpec, n: usize) -> Vec<VectorFq> {
        let q = spec.q() as u64;
        let total = q.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut idx = vec![0u64; n];
                for slot in idx.iter_mut().rev() {
                    *slot = code % q;
                    code /= q;
                }
                vec_of(spec, &idx)
            })
            .collect()
    }

    /// Brute-force row span as a set of vectors.
    fn span_set(m: &MatrixFq) -> BTreeSet<VectorFq> {
        let spec = m.spec();
        let mut set = BTreeSet::new();
        for coeffs in all_vectors(spec, m.nrows()) {
            set.insert(m.row_combination(&coeffs));
        }
        set
    }

    #[test]
    fn rref_canonical_shape_examples() {
        // A dependent 3x3 system over GF(2): rank 2.
        let spec = f(2);
        let m = mat(spec, 3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(r.row(0), &vec_of(spec, &[1, 0, 1]));
        assert_eq!(r.row(1), &vec_of(spec, &[0, 1, 1]));
        assert!(r.row(2).is_zero());
    }

    #[test]
    fn rref_scales_pivots_over_odd_fields() {
        let spec = f(3);
        let m = mat(spec, 2, &[&[2, 1]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 1);
        // 2 * (2,1) = (1,2) over GF(3)
        assert_eq!(r.row(0), &vec_of(spec, &[1, 2]));
    }

    #[test]
    fn packed_and_generic_elimination_agree() {
        let spec = f(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let nrows = rng.random_range(1..7);
            let ncols = rng.random_range(1..9);
            let rows: Vec<VectorFq> = (0..nrows)
                .map(|_| {
                    let idx: Vec<u64> = (0..ncols).map(|_| rng.random_range(0..2)).collect();
                    vec_of(spec, &idx)
                })
                .collect();
            let bits = eliminate_bits(spec, ncols, rows.clone(), ncols);
            let digits = eliminate_digits(spec, ncols, rows);
            assert_eq!(bits.rank, digits.rank);
            assert_eq!(bits.pivots, digits.pivots);
            assert_eq!(bits.rows, digits.rows);
        }
    }

    #[test]
    fn rref_preserves_row_space_and_rank_matches_span_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &q in &[2u64, 3, 4] {
            let spec = f(q);
            for _ in 0..40 {
                let nrows = rng.random_range(1..4);
                let ncols = rng.random_range(1..5);
                let rows: Vec<VectorFq> = (0..nrows)
                    .map(|_| {
                        let idx: Vec<u64> =
                            (0..ncols).map(|_| rng.random_range(0..q)).collect();
                        vec_of(spec, &idx)
                    })
                    .collect();
                let m = MatrixFq::new(spec, ncols, rows);
                let (r, rank) = rref(&m);
                let kept = MatrixFq::new(spec, ncols, r.rows()[..rank].to_vec());
                assert_eq!(span_set(&m), span_set(&kept));
                assert_eq!(span_set(&m).len() as u64, q.pow(rank as u32));
            }
        }
    }

    #[test]
    fn canonical_basis_is_stable_under_thousand_row_mixes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &q in &[2u64, 3, 9] {
            let spec = f(q);
            let base = match q {
                2 => mat(spec, 5, &[&[1, 0, 1, 1, 0], &[0, 1, 1, 0, 1], &[0, 0, 0, 1, 1]]),
                3 => mat(spec, 4, &[&[1, 2, 0, 1], &[0, 0, 1, 2]]),
                _ => mat(spec, 3, &[&[1, 4, 7], &[0, 3, 5]]),
            };
            let canon = Subspace::from_spanning(&base);
            let mut rows: Vec<VectorFq> = base.rows().to_vec();
            for _ in 0..1000 {
                // random invertible row operation
                match rng.random_range(0..3u8) {
                    0 => {
                        let i = rng.random_range(0..rows.len());
                        let j = rng.random_range(0..rows.len());
                        rows.swap(i, j);
                    }
                    1 => {
                        let i = rng.random_range(0..rows.len());
                        let c = spec.element(rng.random_range(1..q)).unwrap();
                        rows[i] = rows[i].scale(c);
                    }
                    _ => {
                        let i = rng.random_range(0..rows.len());
                        let mut j = rng.random_range(0..rows.len());
                        if i == j {
                            j = (j + 1) % rows.len();
                        }
                        let c = spec.element(rng.random_range(0..q)).unwrap();
                        let (a, b) = (rows[i].clone(), rows[j].clone());
                        let mut new = a;
                        new.add_scaled_assign(c, &b);
                        rows[i] = new;
                    }
                }
                let mixed = MatrixFq::new(spec, base.ncols(), rows.clone());
                assert_eq!(Subspace::from_spanning(&mixed), canon);
            }
        }
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let spec = f(5);
        let m = MatrixFq::identity(spec, 3);
        let rhs = vec_of(spec, &[4, 0, 2]);
        assert_eq!(solve(&m, &rhs).unwrap(), Some(rhs));
    }

    #[test]
    fn solve_zero_matrix_nonzero_rhs_has_no_solution() {
        let spec = f(2);
        let m = mat(spec, 2, &[&[0, 0]]);
        let rhs = vec_of(spec, &[1, 0]);
        assert_eq!(solve(&m, &rhs).unwrap(), None);
    }

    #[test]
    fn solve_single_equation_returns_a_valid_solution() {
        // x + y = 2 over GF(3): m is 2 rows x 1 column, unknowns are the row coefficients.
        let spec = f(3);
        let m = mat(spec, 1, &[&[1], &[1]]);
        let rhs = vec_of(spec, &[2]);
        let x = solve(&m, &rhs).unwrap().expect("consistent system");
        assert_eq!(m.row_combination(&x), rhs);
    }

    #[test]
    fn solve_shape_mismatch_is_an_error() {
        let spec = f(2);
        let m = mat(spec, 2, &[&[1, 0]]);
        let rhs = vec_of(spec, &[1, 0, 0]);
        assert!(matches!(solve(&m, &rhs), Err(LinalgError::ShapeMismatch(_))));
    }

    #[test]
    fn solve_matches_brute_force_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &q in &[2u64, 3] {
            let spec = f(q);
            for _ in 0..60 {
                let nrows = rng.random_range(1..4);
                let ncols = rng.random_range(1..4);
                let rows: Vec<VectorFq> = (0..nrows)
                    .map(|_| {
                        let idx: Vec<u64> =
                            (0..ncols).map(|_| rng.random_range(0..q)).collect();
                        vec_of(spec, &idx)
                    })
                    .collect();
                let m = MatrixFq::new(spec, ncols, rows);
                let rhs_idx: Vec<u64> = (0..ncols).map(|_| rng.random_range(0..q)).collect();
                let rhs = vec_of(spec, &rhs_idx);
                let solvable = all_vectors(spec, nrows)
                    .iter()
                    .any(|x| m.row_combination(x) == rhs);
                match solve(&m, &rhs).unwrap() {
                    Some(x) => {
                        assert!(solvable);
                        assert_eq!(m.row_combination(&x), rhs);
                    }
                    None => assert!(!solvable),
                }
            }
        }
    }

    #[test]
    fn subspace_membership_reduce_and_containment() {
        let spec = f(2);
        let s = Subspace::from_spanning(&mat(spec, 4, &[&[1, 0, 1, 0], &[0, 1, 1, 1]]));
        assert!(s.contains_vector(&vec_of(spec, &[1, 1, 0, 1])));
        assert!(!s.contains_vector(&vec_of(spec, &[1, 1, 1, 1])));
        // reduce zeroes the pivot coordinates
        let r = s.reduce(&vec_of(spec, &[1, 1, 1, 0]));
        assert_eq!(r.get(0), FieldElement::ZERO);
        assert_eq!(r.get(1), FieldElement::ZERO);
        let line = Subspace::from_spanning(&mat(spec, 4, &[&[1, 1, 0, 1]]));
        assert!(line.is_subspace_of(&s));
        assert!(!s.is_subspace_of(&line));
    }

    #[test]
    fn sum_and_intersection_dimensions_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &q in &[2u64, 3] {
            let spec = f(q);
            let n = 4;
            for _ in 0..50 {
                let mk = |rng: &mut ChaCha8Rng| {
                    let nrows = rng.random_range(0..4);
                    let rows: Vec<VectorFq> = (0..nrows)
                        .map(|_| {
                            let idx: Vec<u64> =
                                (0..n).map(|_| rng.random_range(0..q)).collect();
                            vec_of(spec, &idx)
                        })
                        .collect();
                    Subspace::from_spanning(&MatrixFq::new(spec, n, rows))
                };
                let (a, b) = (mk(&mut rng), mk(&mut rng));
                let sum = a.sum(&b).unwrap();
                let inter = a.intersect(&b).unwrap();
                assert_eq!(a.dim() + b.dim(), sum.dim() + inter.dim());
                assert!(inter.is_subspace_of(&a) && inter.is_subspace_of(&b));
                assert!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum));
                // brute-force check of the intersection as a point set
                for v in all_vectors(spec, n) {
                    assert_eq!(
                        inter.contains_vector(&v),
                        a.contains_vector(&v) && b.contains_vector(&v)
                    );
                }
            }
        }
    }

    #[test]
    fn intersect_ambient_mismatch_is_an_error() {
        let spec = f(2);
        let a = Subspace::full(spec, 3);
        let b = Subspace::full(spec, 4);
        assert_eq!(
            a.intersect(&b),
            Err(LinalgError::AmbientMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn enumeration_counts_match_known_subspace_numbers() {
        // [n k]_q values computed by hand for small cases.
        let cases: [(u64, usize, usize, usize); 8] = [
            (2, 3, 1, 7),
            (2, 3, 2, 7),
            (2, 4, 1, 15),
            (2, 4, 2, 35),
            (3, 3, 1, 13),
            (3, 3, 2, 13),
            (2, 4, 0, 1),
            (2, 2, 3, 0),
        ];
        for (q, n, k, want) in cases {
            assert_eq!(
                enumerate_subspaces(f(q), n, k).count(),
                want,
                "q={q} n={n} k={k}"
            );
        }
    }

    #[test]
    fn enumeration_is_canonical_distinct_and_exhaustive() {
        for &(q, n, k) in &[(2u64, 4usize, 2usize), (3, 3, 2), (2, 3, 1)] {
            let spec = f(q);
            let listed: Vec<Subspace> = enumerate_subspaces(spec, n, k).collect();
            let as_set: BTreeSet<&Subspace> = listed.iter().collect();
            assert_eq!(as_set.len(), listed.len(), "duplicates in enumeration");
            for s in &listed {
                assert_eq!(s.dim(), k);
                assert_eq!(&Subspace::from_spanning(s.basis()), s, "not canonical");
            }
            // brute force: spans of all k-tuples of vectors
            let mut brute = BTreeSet::new();
            let vecs = all_vectors(spec, n);
            let mut stack = vec![Vec::<VectorFq>::new()];
            while let Some(rows) = stack.pop() {
                if rows.len() == k {
                    let s = Subspace::from_spanning(&MatrixFq::new(spec, n, rows));
                    if s.dim() == k {
                        brute.insert(s);
                    }
                    continue;
                }
                for v in &vecs {
                    let mut next = rows.clone();
                    next.push(v.clone());
                    stack.push(next);
                }
            }
            let listed_set: BTreeSet<Subspace> = listed.into_iter().collect();
            assert_eq!(listed_set, brute);
        }
    }

    #[test]
    fn enumeration_order_is_pivots_then_free_entries() {
        let spec = f(2);
        let firsts: Vec<String> = enumerate_subspaces(spec, 3, 1)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            firsts,
            ["100", "101", "110", "111", "010", "011", "001"]
        );
        let mut sorted = firsts.clone();
        let subs: Vec<Subspace> = enumerate_subspaces(spec, 3, 1).collect();
        sorted.sort();
        let mut by_cmp = subs.clone();
        by_cmp.sort_by(enumeration_order);
        let by_cmp: Vec<String> = by_cmp.iter().map(|s| s.to_string()).collect();
        assert_eq!(by_cmp, firsts, "enumeration_order must match generation order");
    }

    #[test]
    fn subspace_display_and_parse_round_trip() {
        let spec = f(3);
        for s in enumerate_subspaces(spec, 3, 2) {
            let text = s.to_string();
            assert_eq!(parse_subspace(spec, 3, &text).unwrap(), s);
        }
        assert_eq!(
            parse_subspace(spec, 3, "-").unwrap(),
            Subspace::zero(spec, 3)
        );
        // non-canonical rows are rejected, not silently fixed
        assert!(matches!(
            parse_subspace(f(2), 3, "110|010"),
            Err(LinalgError::Parse(_))
        ));
        assert!(matches!(
            parse_subspace(f(2), 3, "10"),
            Err(LinalgError::Parse(_))
        ));
    }
}
