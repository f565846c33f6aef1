//! Families of equal-dimensional flats: the four special constructions and
//! the trivial one, cross-t-intersection testing, t-covers and the minimum
//! cover dimension, and the maximal-partner closure.
//!
//! Every search in this module is exhaustive over a deterministic
//! enumeration; pruning never changes results. Searches whose candidate
//! space would exceed [`ENUMERATION_BUDGET`] flats are refused up front with
//! a [`FamilyError::Budget`] error instead of running for hours.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::affine::{enumerate_flats, AffineError, Flat, MaybeFlat};
use crate::counting::{num_flats_in, Count};
use crate::gf::FieldSpec;

/// Hard cap on the number of candidate flats any exhaustive search may
/// visit. Larger requests are refused with [`FamilyError::Budget`].
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

const PAR_CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error("family precondition violated: {0}")]
    Precondition(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search over ~{estimate} candidate flats exceeds the budget of {limit}")]
    Budget { estimate: Count, limit: u64 },
}

fn precondition(cond: bool, msg: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Precondition(msg()))
    }
}

/// Refuses a search whose candidate count exceeds the budget.
fn guard_budget(estimate: Count) -> Result<(), FamilyError> {
    if estimate > Count::from(ENUMERATION_BUDGET) {
        Err(FamilyError::Budget { estimate, limit: ENUMERATION_BUDGET })
    } else {
        Ok(())
    }
}

/// An ordered, duplicate-free collection of k-flats of one AG(n, q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlatFamily {
    spec: FieldSpec,
    n: usize,
    k: usize,
    members: Vec<Flat>,
}

impl FlatFamily {
    /// Builds a family from members, sorting them into canonical
    /// (serialization) order. Duplicates and dimension mismatches are
    /// rejected.
    pub fn new(
        spec: FieldSpec,
        n: usize,
        k: usize,
        mut members: Vec<Flat>,
    ) -> Result<FlatFamily, FamilyError> {
        for f in &members {
            precondition(f.spec() == spec && f.ambient() == n, || {
                format!("member {f} does not live in AG({n}, {})", spec.q())
            })?;
            precondition(f.dim() == k, || {
                format!("member {f} has dimension {}, expected {k}", f.dim())
            })?;
        }
        members.sort();
        for pair in members.windows(2) {
            precondition(pair[0] != pair[1], || format!("duplicate member {}", pair[0]))?;
        }
        Ok(FlatFamily { spec, n, k, members })
    }

    /// Builds a family over the space of the first member.
    pub fn from_members(members: Vec<Flat>) -> Result<FlatFamily, FamilyError> {
        let first = members.first().ok_or(FamilyError::EmptyFamily)?;
        FlatFamily::new(first.spec(), first.ambient(), first.dim(), members)
    }

    fn from_set(spec: FieldSpec, n: usize, k: usize, set: BTreeSet<Flat>) -> FlatFamily {
        // a BTreeSet of flats is already deduplicated and sorted
        FlatFamily { spec, n, k, members: set.into_iter().collect() }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Uniform dimension of the members.
    pub fn member_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Flat] {
        &self.members
    }

    pub fn contains(&self, f: &Flat) -> bool {
        self.members.binary_search(f).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &FlatFamily) -> bool {
        self.members.iter().all(|f| other.contains(f))
    }

    fn check_space(&self, other: &FlatFamily) -> Result<(), FamilyError> {
        precondition(self.spec == other.spec && self.n == other.n, || {
            format!(
                "families live in different spaces: AG({}, {}) versus AG({}, {})",
                self.n,
                self.spec.q(),
                other.n,
                other.spec.q()
            )
        })
    }

    fn check_flat(&self, f: &Flat) -> Result<(), FamilyError> {
        precondition(f.spec() == self.spec && f.ambient() == self.n, || {
            format!("flat {f} does not live in AG({}, {})", self.n, self.spec.q())
        })
    }

    /// Strict inverse of `Display`: a header `q=..;n=..;k=..;count=..`
    /// followed by one serialized flat per line. Errors carry 1-based line
    /// numbers.
    pub fn parse(text: &str) -> Result<FlatFamily, FamilyError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or(FamilyError::Parse { line: 1, msg: "missing header".into() })?;
        let parse_header = |header: &str| -> Result<(u64, usize, usize, usize), String> {
            let mut fields = header.split(';');
            let mut take = |prefix: &str| -> Result<String, String> {
                let part = fields.next().ok_or(format!("missing header field {prefix}"))?;
                part.strip_prefix(prefix)
                    .map(str::to_owned)
                    .ok_or(format!("expected header field {prefix} in {part:?}"))
            };
            let q = take("q=")?.parse().map_err(|e| format!("bad q: {e}"))?;
            let n = take("n=")?.parse().map_err(|e| format!("bad n: {e}"))?;
            let k = take("k=")?.parse().map_err(|e| format!("bad k: {e}"))?;
            let count = take("count=")?.parse().map_err(|e| format!("bad count: {e}"))?;
            if fields.next().is_some() {
                return Err("trailing header fields".into());
            }
            Ok((q, n, k, count))
        };
        let (q, n, k, count) =
            parse_header(header).map_err(|msg| FamilyError::Parse { line: 1, msg })?;
        let spec = FieldSpec::new(q)
            .map_err(|e| FamilyError::Parse { line: 1, msg: e.to_string() })?;
        let mut members = Vec::with_capacity(count);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.is_empty() {
                return Err(FamilyError::Parse { line: lineno, msg: "blank line".into() });
            }
            let flat = Flat::parse(line)
                .map_err(|e| FamilyError::Parse { line: lineno, msg: e.to_string() })?;
            if flat.spec() != spec || flat.ambient() != n || flat.dim() != k {
                return Err(FamilyError::Parse {
                    line: lineno,
                    msg: format!("flat {flat} does not match the header"),
                });
            }
            members.push(flat);
        }
        if members.len() != count {
            return Err(FamilyError::Parse {
                line: 1,
                msg: format!("header claims count={count} but {} members follow", members.len()),
            });
        }
        match FlatFamily::new(spec, n, k, members) {
            Ok(fam) => Ok(fam),
            Err(FamilyError::Precondition(msg)) => {
                Err(FamilyError::Parse { line: 1, msg })
            }
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for FlatFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={};n={};k={};count={}",
            self.spec.q(),
            self.n,
            self.k,
            self.members.len()
        )?;
        for m in &self.members {
            write!(f, "\n{m}")?;
        }
        Ok(())
    }
}

/// All k-flats containing T.
pub fn build_trivial(t_flat: &Flat, k: usize) -> Result<FlatFamily, FamilyError> {
    precondition(t_flat.dim() <= k, || {
        format!("k = {k} is below the anchor dimension {}", t_flat.dim())
    })?;
    precondition(k <= t_flat.ambient(), || {
        format!("k = {k} exceeds the ambient dimension {}", t_flat.ambient())
    })?;
    FlatFamily::new(t_flat.spec(), t_flat.ambient(), k, t_flat.superflats(k))
}

fn check_anchor_pair(m_flat: &Flat, t_flat: &Flat, t: usize) -> Result<(), FamilyError> {
    precondition(t_flat.dim() == t, || {
        format!("anchor T has dimension {}, expected t = {t}", t_flat.dim())
    })?;
    precondition(t_flat.is_subflat_of(m_flat)?, || {
        format!("anchor T = {t_flat} is not contained in M = {m_flat}")
    })
}

/// First construction: k1-flats through T meeting M in dimension ≥ t+1.
pub fn build_a1(
    m_flat: &Flat,
    t_flat: &Flat,
    k1: usize,
    t: usize,
) -> Result<FlatFamily, FamilyError> {
    check_anchor_pair(m_flat, t_flat, t)?;
    let members: Vec<Flat> = t_flat
        .superflats(k1)
        .into_iter()
        .map(|f| -> Result<Option<Flat>, FamilyError> {
            Ok(f.t_intersects(m_flat, t + 1)?.then_some(f))
        })
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    FlatFamily::new(t_flat.spec(), t_flat.ambient(), k1, members)
}

/// Second construction: all k2-flats through T, together with the k2-flats
/// inside M meeting T in dimension exactly t-1.
pub fn build_a2(
    m_flat: &Flat,
    t_flat: &Flat,
    k2: usize,
    t: usize,
) -> Result<FlatFamily, FamilyError> {
    check_anchor_pair(m_flat, t_flat, t)?;
    precondition(t >= 1, || "t must be at least 1".into())?;
    precondition(m_flat.dim() == k2 + 1, || {
        format!("anchor M has dimension {}, expected k2+1 = {}", m_flat.dim(), k2 + 1)
    })?;
    let mut set: BTreeSet<Flat> = t_flat.superflats(k2).into_iter().collect();
    for f in m_flat.subflats(k2) {
        if f.intersect(t_flat)?.dim() == Some(t - 1) {
            set.insert(f);
        }
    }
    Ok(FlatFamily::from_set(t_flat.spec(), t_flat.ambient(), k2, set))
}

/// Third construction: k1-flats containing the (t+1)-flat S.
pub fn build_a3(s_flat: &Flat, k1: usize) -> Result<FlatFamily, FamilyError> {
    precondition(s_flat.dim() >= 1, || "anchor S must have positive dimension".into())?;
    precondition(k1 >= s_flat.dim(), || {
        format!("k1 = {k1} is below the anchor dimension {}", s_flat.dim())
    })?;
    build_trivial(s_flat, k1)
}

/// Fourth construction: k2-flats meeting the (t+1)-flat S in dimension ≥ t.
pub fn build_a4(s_flat: &Flat, k2: usize, t: usize) -> Result<FlatFamily, FamilyError> {
    precondition(s_flat.dim() == t + 1, || {
        format!("anchor S has dimension {}, expected t+1 = {}", s_flat.dim(), t + 1)
    })?;
    precondition(k2 >= t, || format!("k2 = {k2} is below t = {t}"))?;
    // a flat meets S in dimension ≥ t exactly when it contains one of S's
    // t-dimensional subflats
    let mut set = BTreeSet::new();
    for t_sub in s_flat.subflats(t) {
        set.extend(t_sub.superflats(k2));
    }
    Ok(FlatFamily::from_set(s_flat.spec(), s_flat.ambient(), k2, set))
}

/// First pair (by member index order) violating the cross-t-intersection
/// property, or `None` when the families are cross-t-intersecting.
pub fn cross_t_violation(
    f1: &FlatFamily,
    f2: &FlatFamily,
    t: usize,
) -> Result<Option<(Flat, Flat)>, FamilyError> {
    f1.check_space(f2)?;
    let found = f1.members.par_iter().find_map_first(|a| {
        f2.members
            .iter()
            .find(|b| !a.t_intersects(b, t).expect("same space checked"))
            .map(|b| (a.clone(), b.clone()))
    });
    Ok(found)
}

/// Whether every pair across the two families meets in dimension ≥ t.
pub fn is_cross_t_intersecting(
    f1: &FlatFamily,
    f2: &FlatFamily,
    t: usize,
) -> Result<bool, FamilyError> {
    Ok(cross_t_violation(f1, f2, t)?.is_none())
}

/// Whether X meets every member of the family in dimension ≥ t.
pub fn is_t_cover(x: &Flat, family: &FlatFamily, t: usize) -> Result<bool, FamilyError> {
    family.check_flat(x)?;
    Ok(family
        .members
        .par_iter()
        .all(|f| x.t_intersects(f, t).expect("same space checked")))
}

/// Outcome of the exhaustive minimum-cover search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverResult {
    /// Minimal dimension of a t-cover.
    pub tau: usize,
    /// Every flat of dimension `tau` that is a t-cover, in enumeration
    /// order.
    pub witnesses: Vec<Flat>,
}

/// Streams an enumeration through a parallel filter in fixed-size chunks,
/// preserving order and bounding memory.
fn par_filter_flats(
    iter: impl Iterator<Item = Flat>,
    pred: impl Fn(&Flat) -> bool + Sync,
) -> Vec<Flat> {
    let mut out = Vec::new();
    let mut iter = iter.peekable();
    while iter.peek().is_some() {
        let chunk: Vec<Flat> = iter.by_ref().take(PAR_CHUNK).collect();
        out.par_extend(chunk.into_par_iter().filter(|f| pred(f)));
    }
    out
}

/// The minimum dimension tau of a t-cover of the family, with all
/// tau-dimensional covers as witnesses. Searches every dimension from t
/// upward; the whole space always covers, so the search terminates.
pub fn tau_t(family: &FlatFamily, t: usize) -> Result<CoverResult, FamilyError> {
    if family.is_empty() {
        return Err(FamilyError::EmptyFamily);
    }
    precondition(t <= family.member_dim(), || {
        format!("t = {t} exceeds the member dimension {}", family.member_dim())
    })?;
    let (spec, n) = (family.spec(), family.ambient());
    let mut spent = Count::from(0u32);
    for x in t..=n {
        spent += num_flats_in(n as u64, x as u64, spec.q() as u64);
        guard_budget(spent.clone())?;
        let witnesses = par_filter_flats(enumerate_flats(spec, n, x), |cand| {
            family
                .members
                .iter()
                .all(|f| cand.t_intersects(f, t).expect("same space"))
        });
        if !witnesses.is_empty() {
            return Ok(CoverResult { tau: x, witnesses });
        }
    }
    unreachable!("the whole space is a t-cover of a nonempty family with t <= k")
}

/// The largest family of k2-flats cross-t-intersecting with `family`:
/// every k2-flat that meets each member in dimension ≥ t.
pub fn partner(family: &FlatFamily, k2: usize, t: usize) -> Result<FlatFamily, FamilyError> {
    if family.is_empty() {
        return Err(FamilyError::EmptyFamily);
    }
    let (spec, n) = (family.spec(), family.ambient());
    guard_budget(num_flats_in(n as u64, k2 as u64, spec.q() as u64))?;
    let members = par_filter_flats(enumerate_flats(spec, n, k2), |cand| {
        family
            .members
            .iter()
            .all(|f| cand.t_intersects(f, t).expect("same space"))
    });
    FlatFamily::new(spec, n, k2, members)
}

/// Whether every selection of one member per family has a common
/// intersection of dimension ≥ t. Exhaustive over the full product.
pub fn is_d_wise_t_intersecting(
    families: &[FlatFamily],
    t: usize,
) -> Result<bool, FamilyError> {
    precondition(families.len() >= 2, || {
        format!("d-wise intersection needs d >= 2 families, got {}", families.len())
    })?;
    for fam in &families[1..] {
        families[0].check_space(fam)?;
    }
    let mut product = Count::from(1u32);
    for fam in families {
        product *= Count::from(fam.len());
    }
    guard_budget(product)?;
    let mut selection = vec![0usize; families.len()];
    loop {
        let flats: Vec<Flat> = selection
            .iter()
            .zip(families)
            .map(|(&i, fam)| fam.members[i].clone())
            .collect();
        let meets = match crate::affine::intersect_many(&flats)? {
            MaybeFlat::Empty => false,
            MaybeFlat::Flat(f) => f.dim() >= t,
        };
        if !meets {
            return Ok(false);
        }
        // odometer over member indices, rightmost fastest
        let mut pos = families.len();
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            selection[pos] += 1;
            if selection[pos] < families[pos].len() {
                break;
            }
            selection[pos] = 0;
        }
    }
}

/// Report of the minimum-cover cross check: the minimum covers of two
/// mutually-maximal cross-t-intersecting families must themselves be
/// cross-t-intersecting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverCrossReport {
    pub tau1: usize,
    pub tau2: usize,
    pub covers1: Vec<Flat>,
    pub covers2: Vec<Flat>,
    /// First pair of minimum covers that fails to t-intersect, if any.
    pub violation: Option<(Flat, Flat)>,
}

impl CoverCrossReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

/// Computes all minimum-dimension t-covers of both families and verifies
/// that every cross pair of covers t-intersects. The families must be
/// mutually maximal (each the partner of the other) and the ambient
/// dimension must be at least k1+k2+1.
pub fn min_covers_cross_check(
    f1: &FlatFamily,
    f2: &FlatFamily,
    t: usize,
) -> Result<CoverCrossReport, FamilyError> {
    f1.check_space(f2)?;
    let (k1, k2) = (f1.member_dim(), f2.member_dim());
    precondition(f1.ambient() >= k1 + k2 + 1, || {
        format!("ambient dimension {} is below k1+k2+1 = {}", f1.ambient(), k1 + k2 + 1)
    })?;
    precondition(&partner(f2, k1, t)? == f1, || {
        "first family is not the partner of the second".into()
    })?;
    precondition(&partner(f1, k2, t)? == f2, || {
        "second family is not the partner of the first".into()
    })?;
    let c1 = tau_t(f1, t)?;
    let c2 = tau_t(f2, t)?;
    let mut violation = None;
    'outer: for a in &c1.witnesses {
        for b in &c2.witnesses {
            if !a.t_intersects(b, t)? {
                violation = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    Ok(CoverCrossReport {
        tau1: c1.tau,
        tau2: c2.tau,
        covers1: c1.witnesses,
        covers2: c2.witnesses,
        violation,
    })
}
