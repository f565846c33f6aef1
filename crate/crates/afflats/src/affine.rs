//! Flats (cosets of linear subspaces) of the affine geometry AG(n, q).
//!
//! A flat is stored canonically as a pair of its direction subspace (in
//! reduced row-echelon form) and the unique coset representative whose
//! coordinates vanish at the direction's pivot columns. Two flats are equal
//! as point sets exactly when their canonical forms are equal, so the derived
//! `Eq`/`Ord`/`Hash` are meaningful.
//!
//! The incidence operations are exact and algebraic: no point sets are ever
//! materialized except by the explicit [`Flat::points`] helper.

use std::fmt;

use crate::gf::{FieldElement, FieldSpec};
use crate::linalg::{
    enumerate_subspaces, solve, LinalgError, MatrixFq, Subspace, SubspaceIter, VectorFq,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AffineError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("flats are incompatible: {0}")]
    Incompatible(String),
    #[error("cannot intersect an empty collection of flats")]
    EmptyCollection,
    #[error("invalid flat description: {0}")]
    Parse(String),
}

/// A k-flat of AG(n, q): the coset `point + direction`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Flat {
    direction: Subspace,
    point: VectorFq,
}

/// Result of intersecting flats: affine intersections may be empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MaybeFlat {
    Empty,
    Flat(Flat),
}

impl MaybeFlat {
    /// Dimension of the intersection, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        match self {
            MaybeFlat::Empty => None,
            MaybeFlat::Flat(f) => Some(f.dim()),
        }
    }

    pub fn as_flat(&self) -> Option<&Flat> {
        match self {
            MaybeFlat::Empty => None,
            MaybeFlat::Flat(f) => Some(f),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, MaybeFlat::Empty)
    }
}

impl Flat {
    /// The flat through `point` with the given direction, in canonical form.
    pub fn make(direction: &Subspace, through: &VectorFq) -> Result<Flat, AffineError> {
        if direction.ambient() != through.len() || direction.spec() != through.spec() {
            return Err(AffineError::Incompatible(format!(
                "direction lives in dimension {} over {}, point in dimension {} over {}",
                direction.ambient(),
                direction.spec(),
                through.len(),
                through.spec(),
            )));
        }
        Ok(Flat { direction: direction.clone(), point: direction.reduce(through) })
    }

    /// The 0-flat consisting of a single point.
    pub fn single_point(p: &VectorFq) -> Flat {
        Flat { direction: Subspace::zero(p.spec(), p.len()), point: p.clone() }
    }

    /// The whole space AG(n, q) as an n-flat.
    pub fn whole_space(spec: FieldSpec, n: usize) -> Flat {
        Flat {
            direction: Subspace::from_spanning(&MatrixFq::identity(spec, n)),
            point: VectorFq::zero(spec, n),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.direction.spec()
    }

    /// Ambient dimension n.
    pub fn ambient(&self) -> usize {
        self.direction.ambient()
    }

    /// Dimension k of the flat.
    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    /// The canonical coset representative (zero at the direction's pivots).
    pub fn base_point(&self) -> &VectorFq {
        &self.point
    }

    fn check_compatible(&self, other: &Flat) -> Result<(), AffineError> {
        if self.spec() != other.spec() || self.ambient() != other.ambient() {
            return Err(AffineError::Incompatible(format!(
                "{} in dimension {} versus {} in dimension {}",
                self.spec(),
                self.ambient(),
                other.spec(),
                other.ambient(),
            )));
        }
        Ok(())
    }

    pub fn contains_point(&self, v: &VectorFq) -> Result<bool, AffineError> {
        if v.len() != self.ambient() || v.spec() != self.spec() {
            return Err(AffineError::Incompatible(format!(
                "point of length {} tested against a flat in dimension {}",
                v.len(),
                self.ambient(),
            )));
        }
        Ok(self.direction.contains_vector(&v.sub(&self.point)))
    }

    /// Whether `self` is contained in `other` as a point set.
    pub fn is_subflat_of(&self, other: &Flat) -> Result<bool, AffineError> {
        self.check_compatible(other)?;
        Ok(self.direction.is_subspace_of(&other.direction)
            && other.contains_point(&self.point)?)
    }

    /// Whether the two flats share at least one point. Equivalent to the
    /// difference of base points lying in the sum of the directions.
    pub fn incident(&self, other: &Flat) -> Result<bool, AffineError> {
        self.check_compatible(other)?;
        let span = self.direction.sum(&other.direction)?;
        Ok(span.contains_vector(&other.point.sub(&self.point)))
    }

    /// Exact intersection. When nonempty its direction is the intersection
    /// of the two directions and a common point is found by solving
    /// `c · [B1; B2] = p2 - p1` and walking `c`'s first block along `B1`.
    pub fn intersect(&self, other: &Flat) -> Result<MaybeFlat, AffineError> {
        self.check_compatible(other)?;
        let spec = self.spec();
        let n = self.ambient();
        let diff = other.point.sub(&self.point);
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        rows.extend(self.direction.basis().rows().iter().cloned());
        rows.extend(other.direction.basis().rows().iter().cloned());
        let stacked = MatrixFq::new(spec, n, rows);
        let Some(coeffs) = solve(&stacked, &diff)? else {
            return Ok(MaybeFlat::Empty);
        };
        let first_block = VectorFq::new(spec, coeffs.coords()[..self.dim()].to_vec());
        let common = self.point.add(&self.direction.basis().row_combination(&first_block));
        let meet_dir = self.direction.intersect(&other.direction)?;
        Ok(MaybeFlat::Flat(Flat::make(&meet_dir, &common)?))
    }

    /// The smallest flat containing both operands.
    pub fn join(&self, other: &Flat) -> Result<Flat, AffineError> {
        self.check_compatible(other)?;
        let mut dir = self.direction.sum(&other.direction)?;
        let diff = other.point.sub(&self.point);
        if !dir.contains_vector(&diff) {
            let step = MatrixFq::new(self.spec(), self.ambient(), vec![diff]);
            dir = dir.sum(&Subspace::from_spanning(&step))?;
        }
        Flat::make(&dir, &self.point)
    }

    /// Whether the intersection is a flat of dimension at least t.
    pub fn t_intersects(&self, other: &Flat, t: usize) -> Result<bool, AffineError> {
        Ok(match self.intersect(other)? {
            MaybeFlat::Empty => false,
            MaybeFlat::Flat(f) => f.dim() >= t,
        })
    }

    /// Every point of the flat, in lexicographic order of coefficient
    /// vectors over the direction basis. Intended for small flats; the
    /// result has q^k entries.
    pub fn points(&self) -> Vec<VectorFq> {
        let spec = self.spec();
        let k = self.dim();
        let mut out = Vec::new();
        let mut digits = vec![0u64; k];
        loop {
            let coeffs = VectorFq::from_indices(spec, &digits).expect("digits below q");
            out.push(self.point.add(&self.direction.basis().row_combination(&coeffs)));
            if !advance_odometer(&mut digits, spec.q() as u64) {
                return out;
            }
        }
    }

    /// All a-flats contained in this flat, in canonical enumeration order
    /// (directions first, then coset representatives lexicographically).
    pub fn subflats(&self, a: usize) -> Vec<Flat> {
        let spec = self.spec();
        let m = self.dim();
        if a > m {
            return Vec::new();
        }
        let outer_basis = self.direction.basis();
        let outer_pivots = self.direction.pivots();
        let mut out = Vec::new();
        for coeff_space in enumerate_subspaces(spec, m, a) {
            // The rows of C·B are again in reduced row-echelon form, with
            // pivot columns picked from the outer pivots.
            let rows: Vec<VectorFq> = coeff_space
                .basis()
                .rows()
                .iter()
                .map(|c| outer_basis.row_combination(c))
                .collect();
            let pivots: Vec<usize> =
                coeff_space.pivots().iter().map(|&j| outer_pivots[j]).collect();
            let dir = Subspace::from_rref_unchecked(
                MatrixFq::new(spec, self.ambient(), rows),
                pivots,
            );
            // Coset representatives: coefficient vectors vanishing at the
            // pivots of the coefficient space, applied to the outer basis.
            let free: Vec<usize> =
                (0..m).filter(|i| !coeff_space.pivots().contains(i)).collect();
            let mut digits = vec![0u64; free.len()];
            loop {
                let mut coeffs = vec![FieldElement::ZERO; m];
                for (&slot, &d) in free.iter().zip(&digits) {
                    coeffs[slot] = spec.element(d).expect("digit below q");
                }
                let coeffs = VectorFq::new(spec, coeffs);
                let point = self.point.add(&outer_basis.row_combination(&coeffs));
                out.push(Flat { direction: dir.clone(), point });
                if !advance_odometer(&mut digits, spec.q() as u64) {
                    break;
                }
            }
        }
        out
    }

    /// All k-flats of the ambient space containing this flat, one per
    /// direction subspace through this flat's direction, lifted from the
    /// quotient by that direction.
    pub fn superflats(&self, k: usize) -> Vec<Flat> {
        let spec = self.spec();
        let n = self.ambient();
        let m = self.dim();
        if k < m || k > n {
            return Vec::new();
        }
        let nonpivots: Vec<usize> =
            (0..n).filter(|c| !self.direction.pivots().contains(c)).collect();
        let mut out = Vec::new();
        for w in enumerate_subspaces(spec, n - m, k - m) {
            let mut rows: Vec<VectorFq> =
                self.direction.basis().rows().iter().cloned().collect();
            for wrow in w.basis().rows() {
                let mut lifted = vec![FieldElement::ZERO; n];
                for (j, &col) in nonpivots.iter().enumerate() {
                    lifted[col] = wrow.get(j);
                }
                rows.push(VectorFq::new(spec, lifted));
            }
            let dir = Subspace::from_spanning(&MatrixFq::new(spec, n, rows));
            debug_assert_eq!(dir.dim(), k);
            out.push(Flat::make(&dir, &self.point).expect("same ambient space"));
        }
        out
    }
}

/// Advances a base-q odometer with the rightmost digit fastest; returns
/// false once the odometer wraps around to all zeros.
fn advance_odometer(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Intersection of every flat in the slice; errors on an empty slice.
pub fn intersect_many(flats: &[Flat]) -> Result<MaybeFlat, AffineError> {
    let Some(first) = flats.first() else {
        return Err(AffineError::EmptyCollection);
    };
    let mut acc = MaybeFlat::Flat(first.clone());
    for f in &flats[1..] {
        match acc {
            MaybeFlat::Empty => return Ok(MaybeFlat::Empty),
            MaybeFlat::Flat(ref g) => acc = g.intersect(f)?,
        }
    }
    Ok(acc)
}

/// Iterator over every k-flat of AG(n, q): directions in subspace
/// enumeration order, and for each direction all canonical coset
/// representatives in lexicographic order.
pub struct FlatIter {
    q: u64,
    n: usize,
    directions: SubspaceIter,
    state: Option<PointState>,
}

struct PointState {
    direction: Subspace,
    nonpivots: Vec<usize>,
    digits: Vec<u64>,
    exhausted: bool,
}

impl FlatIter {
    fn load(&mut self, direction: Subspace) {
        let nonpivots: Vec<usize> =
            (0..self.n).filter(|c| !direction.pivots().contains(c)).collect();
        let digits = vec![0; nonpivots.len()];
        self.state = Some(PointState { direction, nonpivots, digits, exhausted: false });
    }
}

impl Iterator for FlatIter {
    type Item = Flat;

    fn next(&mut self) -> Option<Flat> {
        loop {
            if self.state.as_ref().is_none_or(|s| s.exhausted) {
                let direction = self.directions.next()?;
                self.load(direction);
            }
            let state = self.state.as_mut().expect("just loaded");
            let spec = state.direction.spec();
            let mut coords = vec![FieldElement::ZERO; self.n];
            for (&col, &d) in state.nonpivots.iter().zip(&state.digits) {
                coords[col] = spec.element(d).expect("digit below q");
            }
            let flat =
                Flat { direction: state.direction.clone(), point: VectorFq::new(spec, coords) };
            if !advance_odometer(&mut state.digits, self.q) {
                state.exhausted = true;
            }
            return Some(flat);
        }
    }
}

/// All k-flats of AG(n, q).
pub fn enumerate_flats(spec: FieldSpec, n: usize, k: usize) -> FlatIter {
    FlatIter {
        q: spec.q() as u64,
        n,
        directions: enumerate_subspaces(spec, n, k),
        state: None,
    }
}

impl fmt::Display for Flat {
    /// `q=<q>;n=<n>;dim=<k>;dir=<rows joined by | or ->;pt=<digit string>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={};n={};dim={};dir={};pt={}",
            self.spec().q(),
            self.ambient(),
            self.dim(),
            self.direction,
            self.point,
        )
    }
}

impl Flat {
    /// Strict inverse of `Display`: rejects non-canonical directions and
    /// non-canonical coset representatives.
    pub fn parse(s: &str) -> Result<Flat, AffineError> {
        let mut fields = s.split(';');
        let mut take = |prefix: &str| -> Result<String, AffineError> {
            let part = fields
                .next()
                .ok_or_else(|| AffineError::Parse(format!("missing field {prefix}")))?;
            part.strip_prefix(prefix)
                .map(str::to_owned)
                .ok_or_else(|| AffineError::Parse(format!("expected field {prefix} in {part:?}")))
        };
        let q: u64 = take("q=")?
            .parse()
            .map_err(|e| AffineError::Parse(format!("bad field order: {e}")))?;
        let n: usize = take("n=")?
            .parse()
            .map_err(|e| AffineError::Parse(format!("bad ambient dimension: {e}")))?;
        let dim: usize = take("dim=")?
            .parse()
            .map_err(|e| AffineError::Parse(format!("bad dimension: {e}")))?;
        let dir_text = take("dir=")?;
        let pt_text = take("pt=")?;
        if fields.next().is_some() {
            return Err(AffineError::Parse("trailing fields after pt=".into()));
        }
        let spec = FieldSpec::new(q).map_err(|e| AffineError::Parse(e.to_string()))?;
        let direction = crate::linalg::parse_subspace(spec, n, &dir_text)
            .map_err(|e| AffineError::Parse(format!("bad direction: {e}")))?;
        if direction.dim() != dim {
            return Err(AffineError::Parse(format!(
                "declared dimension {dim} but direction has dimension {}",
                direction.dim()
            )));
        }
        let point = VectorFq::parse(spec, &pt_text)
            .map_err(|e| AffineError::Parse(format!("bad point: {e}")))?;
        if point.len() != n {
            return Err(AffineError::Parse(format!(
                "point has length {} in ambient dimension {n}",
                point.len()
            )));
        }
        if direction.reduce(&point) != point {
            return Err(AffineError::Parse(
                "point is not the canonical coset representative".into(),
            ));
        }
        Ok(Flat { direction, point })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::num_flats_in;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn spec(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn vec_of(sp: FieldSpec, digits: &[u64]) -> VectorFq {
        VectorFq::from_indices(sp, digits).unwrap()
    }

    fn line(sp: FieldSpec, dir: &[u64], through: &[u64]) -> Flat {
        let n = dir.len();
        let m = MatrixFq::new(sp, n, vec![vec_of(sp, dir)]);
        Flat::make(&Subspace::from_spanning(&m), &vec_of(sp, through)).unwrap()
    }

    fn point_set(f: &Flat) -> BTreeSet<VectorFq> {
        f.points().into_iter().collect()
    }

    #[test]
    fn base_point_is_canonicalized() {
        let sp = spec(2);
        let l = line(sp, &[1, 0], &[1, 1]);
        assert_eq!(l.base_point(), &vec_of(sp, &[0, 1]));
        assert!(l.contains_point(&vec_of(sp, &[1, 1])).unwrap());
        assert!(l.contains_point(&vec_of(sp, &[0, 1])).unwrap());
        assert!(!l.contains_point(&vec_of(sp, &[1, 0])).unwrap());
    }

    #[test]
    fn equal_point_sets_give_equal_flats() {
        // any spanning set of the direction and any coset member must
        // produce the identical canonical pair
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &q in &[2u64, 3, 9] {
            let sp = spec(q);
            let n = 4;
            for _ in 0..200 {
                let rows: Vec<VectorFq> = (0..2)
                    .map(|_| {
                        vec_of(sp, &(0..n).map(|_| rng.random_range(0..q)).collect::<Vec<_>>())
                    })
                    .collect();
                let dir = Subspace::from_spanning(&MatrixFq::new(sp, n, rows));
                let p = vec_of(sp, &(0..n).map(|_| rng.random_range(0..q)).collect::<Vec<_>>());
                let f = Flat::make(&dir, &p).unwrap();
                // shift the representative by a random direction member and
                // rebuild: the canonical flat must not change
                let coeffs = vec_of(
                    sp,
                    &(0..dir.dim()).map(|_| rng.random_range(0..q)).collect::<Vec<_>>(),
                );
                let shifted = p.add(&dir.basis().row_combination(&coeffs));
                let g = Flat::make(&dir, &shifted).unwrap();
                assert_eq!(f, g);
                assert_eq!(point_set(&f), point_set(&g));
            }
        }
    }

    #[test]
    fn membership_matches_the_point_set_everywhere() {
        for (q, n) in [(2u64, 3usize), (3, 2)] {
            let sp = spec(q);
            let all_points: Vec<VectorFq> = enumerate_flats(sp, n, 0)
                .map(|f| f.base_point().clone())
                .collect();
            for k in 0..=n {
                for flat in enumerate_flats(sp, n, k) {
                    let set = point_set(&flat);
                    assert_eq!(set.len(), (q as usize).pow(k as u32));
                    for p in &all_points {
                        assert_eq!(
                            flat.contains_point(p).unwrap(),
                            set.contains(p),
                            "q={q} n={n} flat={flat} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_the_closed_form() {
        for (q, n) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let sp = spec(q);
            for k in 0..=n {
                let got = enumerate_flats(sp, n, k).count();
                let want = num_flats_in(n as u64, k as u64, q);
                assert_eq!(BigUint::from(got), want, "q={q} n={n} k={k}");
            }
        }
    }

    #[test]
    fn enumerated_flats_are_distinct_and_canonical() {
        let sp = spec(3);
        let mut seen = BTreeSet::new();
        for flat in enumerate_flats(sp, 3, 1) {
            assert_eq!(flat.direction().reduce(flat.base_point()), *flat.base_point());
            assert!(seen.insert(flat.to_string()), "duplicate {flat}");
        }
        assert_eq!(seen.len(), 117); // 3^2 [3 1]_3
    }

    #[test]
    fn enumeration_order_is_directions_then_lex_points() {
        let sp = spec(2);
        let listed: Vec<String> =
            enumerate_flats(sp, 2, 1).map(|f| f.to_string()).collect();
        assert_eq!(
            listed,
            vec![
                "q=2;n=2;dim=1;dir=10;pt=00",
                "q=2;n=2;dim=1;dir=10;pt=01",
                "q=2;n=2;dim=1;dir=11;pt=00",
                "q=2;n=2;dim=1;dir=11;pt=01",
                "q=2;n=2;dim=1;dir=01;pt=00",
                "q=2;n=2;dim=1;dir=01;pt=10",
            ]
        );
    }

    #[test]
    fn incidence_and_intersection_agree_with_point_sets() {
        // all pairs of lines in AG(3,2) and in AG(2,3)
        for (q, n) in [(2u64, 3usize), (3, 2)] {
            let sp = spec(q);
            let lines: Vec<Flat> = enumerate_flats(sp, n, 1).collect();
            for f in &lines {
                for g in &lines {
                    let meet: BTreeSet<VectorFq> =
                        point_set(f).intersection(&point_set(g)).cloned().collect();
                    assert_eq!(f.incident(g).unwrap(), !meet.is_empty());
                    match f.intersect(g).unwrap() {
                        MaybeFlat::Empty => assert!(meet.is_empty()),
                        MaybeFlat::Flat(h) => {
                            assert_eq!(point_set(&h), meet, "f={f} g={g}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_of_planes_in_four_space() {
        let sp = spec(2);
        let planes: Vec<Flat> = enumerate_flats(sp, 4, 2).collect();
        assert_eq!(planes.len(), 140);
        for f in planes.iter().step_by(7) {
            for g in planes.iter().step_by(11) {
                let meet: BTreeSet<VectorFq> =
                    point_set(f).intersection(&point_set(g)).cloned().collect();
                match f.intersect(g).unwrap() {
                    MaybeFlat::Empty => assert!(meet.is_empty()),
                    MaybeFlat::Flat(h) => assert_eq!(point_set(&h), meet),
                }
            }
        }
    }

    #[test]
    fn parallel_lines_do_not_meet_and_join_to_a_plane() {
        let sp = spec(2);
        let a = line(sp, &[1, 0, 0], &[0, 0, 0]);
        let b = line(sp, &[1, 0, 0], &[0, 1, 0]);
        assert!(!a.incident(&b).unwrap());
        assert_eq!(a.intersect(&b).unwrap(), MaybeFlat::Empty);
        assert!(!a.t_intersects(&b, 0).unwrap());
        let j = a.join(&b).unwrap();
        assert_eq!(j.dim(), 2);
        assert!(a.is_subflat_of(&j).unwrap());
        assert!(b.is_subflat_of(&j).unwrap());
    }

    #[test]
    fn joins_are_minimal_over_all_containing_flats() {
        let sp = spec(2);
        let n = 3;
        let lines: Vec<Flat> = enumerate_flats(sp, n, 1).collect();
        for f in lines.iter().step_by(3) {
            for g in lines.iter().step_by(5) {
                let j = f.join(g).unwrap();
                assert!(f.is_subflat_of(&j).unwrap());
                assert!(g.is_subflat_of(&j).unwrap());
                for k in 0..=n {
                    for h in enumerate_flats(sp, n, k) {
                        if f.is_subflat_of(&h).unwrap() && g.is_subflat_of(&h).unwrap() {
                            assert!(j.is_subflat_of(&h).unwrap(), "f={f} g={g} h={h}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn join_dimension_follows_the_incidence_split() {
        let sp = spec(3);
        let lines: Vec<Flat> = enumerate_flats(sp, 3, 1).collect();
        for f in lines.iter().step_by(4) {
            for g in lines.iter().step_by(6) {
                let j = f.join(g).unwrap();
                let meet_dim = f.direction().intersect(g.direction()).unwrap().dim();
                let expected = if f.incident(g).unwrap() {
                    match f.intersect(g).unwrap() {
                        MaybeFlat::Flat(h) => f.dim() + g.dim() - h.dim(),
                        MaybeFlat::Empty => unreachable!(),
                    }
                } else {
                    f.dim() + g.dim() - meet_dim + 1
                };
                assert_eq!(j.dim(), expected, "f={f} g={g}");
            }
        }
    }

    #[test]
    fn triangle_of_lines_has_empty_common_intersection() {
        let sp = spec(3);
        let l1 = line(sp, &[1, 0], &[0, 0]); // y = 0
        let l2 = line(sp, &[0, 1], &[0, 0]); // x = 0
        let l3 = line(sp, &[1, 2], &[0, 1]); // x + y = 1
        for (a, b) in [(&l1, &l2), (&l1, &l3), (&l2, &l3)] {
            assert!(a.t_intersects(b, 0).unwrap());
            assert_eq!(a.intersect(b).unwrap().dim(), Some(0));
        }
        assert_eq!(intersect_many(&[l1, l2, l3]).unwrap(), MaybeFlat::Empty);
        assert_eq!(intersect_many(&[]), Err(AffineError::EmptyCollection));
    }

    #[test]
    fn skew_lines_in_four_space() {
        let sp = spec(2);
        let a = line(sp, &[1, 0, 0, 0], &[0, 0, 0, 0]);
        let b = line(sp, &[0, 1, 0, 0], &[0, 0, 1, 0]);
        assert!(!a.incident(&b).unwrap());
        assert_eq!(a.join(&b).unwrap().dim(), 3);
    }

    #[test]
    fn t_intersection_thresholds() {
        let sp = spec(2);
        // two planes of AG(3,2) through a common line
        let p1 = Flat::make(
            &Subspace::from_spanning(&MatrixFq::new(
                sp,
                3,
                vec![vec_of(sp, &[1, 0, 0]), vec_of(sp, &[0, 1, 0])],
            )),
            &vec_of(sp, &[0, 0, 0]),
        )
        .unwrap();
        let p2 = Flat::make(
            &Subspace::from_spanning(&MatrixFq::new(
                sp,
                3,
                vec![vec_of(sp, &[1, 0, 0]), vec_of(sp, &[0, 0, 1])],
            )),
            &vec_of(sp, &[0, 0, 0]),
        )
        .unwrap();
        assert!(p1.t_intersects(&p2, 1).unwrap());
        assert!(!p1.t_intersects(&p2, 2).unwrap());
        assert!(p1.t_intersects(&p1, 2).unwrap());
    }

    #[test]
    fn subflats_match_filtering_the_full_enumeration() {
        let sp = spec(2);
        let n = 4;
        let outer = Flat::make(
            &Subspace::from_spanning(&MatrixFq::new(
                sp,
                n,
                vec![
                    vec_of(sp, &[1, 0, 0, 1]),
                    vec_of(sp, &[0, 1, 0, 1]),
                    vec_of(sp, &[0, 0, 1, 1]),
                ],
            )),
            &vec_of(sp, &[0, 0, 0, 1]),
        )
        .unwrap();
        for a in 0..=3 {
            let direct: Vec<Flat> = outer.subflats(a);
            let filtered: BTreeSet<Flat> = enumerate_flats(sp, n, a)
                .filter(|f| f.is_subflat_of(&outer).unwrap())
                .collect();
            assert_eq!(
                BigUint::from(direct.len()),
                num_flats_in(3, a as u64, 2),
                "count at a={a}"
            );
            let as_set: BTreeSet<Flat> = direct.iter().cloned().collect();
            assert_eq!(as_set.len(), direct.len(), "duplicates at a={a}");
            assert_eq!(as_set, filtered, "membership at a={a}");
            for f in &direct {
                assert_eq!(f.direction().reduce(f.base_point()), *f.base_point());
            }
        }
    }

    #[test]
    fn superflats_match_filtering_the_full_enumeration() {
        let sp = spec(2);
        let n = 4;
        let inner = line(sp, &[1, 1, 0, 0], &[0, 0, 1, 0]);
        for k in 1..=n {
            let direct = inner.superflats(k);
            let filtered: BTreeSet<Flat> = enumerate_flats(sp, n, k)
                .filter(|f| inner.is_subflat_of(f).unwrap())
                .collect();
            assert_eq!(
                direct.len(),
                filtered.len(),
                "count at k={k}: expected {}",
                filtered.len()
            );
            let as_set: BTreeSet<Flat> = direct.iter().cloned().collect();
            assert_eq!(as_set, filtered, "membership at k={k}");
        }
        // closed form: 7 planes through a line of AG(4,2)
        assert_eq!(inner.superflats(2).len(), 7);
        assert_eq!(inner.superflats(0).len(), 0);
    }

    #[test]
    fn superflats_of_a_point_are_all_flats_through_it() {
        let sp = spec(3);
        let p = Flat::single_point(&vec_of(sp, &[1, 2, 0]));
        assert_eq!(p.superflats(1).len(), 13); // [3 1]_3
        assert_eq!(p.superflats(3).len(), 1);
        for l in p.superflats(1) {
            assert!(l.contains_point(&vec_of(sp, &[1, 2, 0])).unwrap());
        }
    }

    #[test]
    fn whole_space_contains_everything() {
        let sp = spec(2);
        let all = Flat::whole_space(sp, 3);
        assert_eq!(all.dim(), 3);
        for f in enumerate_flats(sp, 3, 2) {
            assert!(f.is_subflat_of(&all).unwrap());
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        for (q, n, k) in [(2u64, 3usize, 1usize), (3, 2, 1), (4, 2, 2), (9, 2, 0)] {
            let sp = spec(q);
            for f in enumerate_flats(sp, n, k).take(40) {
                let text = f.to_string();
                assert_eq!(Flat::parse(&text).unwrap(), f, "{text}");
            }
        }
        let f = Flat::parse("q=2;n=3;dim=1;dir=110;pt=001").unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.ambient(), 3);
    }

    #[test]
    fn parse_rejects_malformed_descriptions() {
        // non-canonical representative: 100 reduces to 000 against dir=100
        assert!(matches!(
            Flat::parse("q=2;n=3;dim=1;dir=100;pt=100"),
            Err(AffineError::Parse(m)) if m.contains("canonical")
        ));
        // direction not in reduced echelon form
        assert!(Flat::parse("q=2;n=3;dim=2;dir=110|010;pt=001").is_err());
        // declared dimension disagrees with the direction
        assert!(Flat::parse("q=2;n=3;dim=2;dir=110;pt=001").is_err());
        // point length mismatch
        assert!(Flat::parse("q=2;n=3;dim=1;dir=110;pt=01").is_err());
        // unsupported field order
        assert!(Flat::parse("q=6;n=3;dim=1;dir=110;pt=001").is_err());
        // missing / trailing fields
        assert!(Flat::parse("q=2;n=3;dim=1;dir=110").is_err());
        assert!(Flat::parse("q=2;n=3;dim=1;dir=110;pt=001;x=1").is_err());
        assert!(Flat::parse("n=3;q=2;dim=1;dir=110;pt=001").is_err());
    }

    #[test]
    fn mixed_space_operations_error() {
        let a = line(spec(2), &[1, 0], &[0, 0]);
        let b = line(spec(2), &[1, 0, 0], &[0, 0, 0]);
        let c = line(spec(3), &[1, 0], &[0, 0]);
        assert!(a.intersect(&b).is_err());
        assert!(a.incident(&c).is_err());
        assert!(a.join(&b).is_err());
        assert!(a.contains_point(&VectorFq::zero(spec(2), 3)).is_err());
    }

    #[test]
    fn single_point_flats_behave_like_points() {
        let sp = spec(2);
        let p = Flat::single_point(&vec_of(sp, &[1, 0, 1]));
        let q_ = Flat::single_point(&vec_of(sp, &[1, 1, 1]));
        assert_eq!(p.dim(), 0);
        assert_eq!(p.points().len(), 1);
        assert!(p.incident(&p).unwrap());
        assert!(!p.incident(&q_).unwrap());
        assert_eq!(p.intersect(&q_).unwrap(), MaybeFlat::Empty);
        assert_eq!(p.join(&q_).unwrap().dim(), 1);
    }

    #[test]
    fn random_flat_pairs_intersect_consistently_over_gf9() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let sp = spec(9);
        let n = 3;
        for _ in 0..60 {
            let mk = |rng: &mut ChaCha8Rng| {
                let rows: Vec<VectorFq> = (0..rng.random_range(0..=2usize))
                    .map(|_| {
                        vec_of(sp, &(0..n).map(|_| rng.random_range(0..9)).collect::<Vec<_>>())
                    })
                    .collect();
                let dir = Subspace::from_spanning(&MatrixFq::new(sp, n, rows));
                let p =
                    vec_of(sp, &(0..n).map(|_| rng.random_range(0..9)).collect::<Vec<_>>());
                Flat::make(&dir, &p).unwrap()
            };
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let meet: BTreeSet<VectorFq> =
                point_set(&f).intersection(&point_set(&g)).cloned().collect();
            match f.intersect(&g).unwrap() {
                MaybeFlat::Empty => assert!(meet.is_empty()),
                MaybeFlat::Flat(h) => assert_eq!(point_set(&h), meet),
            }
        }
    }
}
