//! Formula-versus-enumeration verification over parameter grids.
//!
//! Each check sweeps a [`GridSpec`] and emits one self-contained
//! [`CheckReport`] per verified relation: the report carries both sides of
//! the relation as decimal strings, so a reader (or [`CheckReport::recheck`])
//! can confirm the verdict without rerunning the sweep. Grid points that are
//! well-formed but fall outside a statement's hypothesis are tallied as
//! skipped rather than failed; malformed points (for example a cover
//! dimension below `t`) are outside every statement's domain and are not
//! tallied at all.
//!
//! Runs are deterministic: reports are sorted by check id and parameter
//! assignment, so repeated runs over the same grid produce byte-identical
//! output. Sweeps whose enumeration size would exceed
//! [`ENUMERATION_BUDGET`](crate::families::ENUMERATION_BUDGET) flats are
//! refused up front with a size estimate instead of starting work that
//! cannot finish.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{enumerate_flats, AffineError, Flat};
use crate::counting::{
    a0, a1, a2, cover_size_bound, gauss_binomial, h_value, hypothesis_check, n_prime,
    num_flats_in, num_flats_through, qpow, Count, CountingError, Hypothesis, ParamTuple,
};
use crate::families::{
    build_a1, build_a2, build_a3, build_a4, build_trivial, cross_t_violation, tau_t,
    FamilyError, FlatFamily, ENUMERATION_BUDGET,
};
use crate::gf::{FieldError, FieldSpec};
use crate::linalg::{enumerate_subspaces, LinalgError, MatrixFq, Subspace, VectorFq};

/// Families larger than this are not materialised for enumeration
/// cross-checks inside a grid sweep; the surrounding comparisons still run
/// on the closed forms.
const ENUM_CAP: u64 = 100_000;

/// Errors from grid verification.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("check {check}: sweeping this grid needs ~{estimate} flats, over the budget of {limit}")]
    Budget { check: &'static str, estimate: Count, limit: u64 },
    #[error("invalid grid: {0}")]
    Grid(String),
}

impl VerifyError {
    /// Whether the error is a refusal to exceed the enumeration budget
    /// (either the grid-level estimate or a budget hit inside a family
    /// search).
    pub fn is_budget(&self) -> bool {
        matches!(self, VerifyError::Budget { .. })
            || matches!(self, VerifyError::Family(FamilyError::Budget { .. }))
    }
}

/// The individual checks that can run over a grid.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CheckId {
    /// Flat counts: enumeration sizes against the closed-form counts for
    /// all flats, flats within a fixed flat, and flats containing one.
    #[serde(rename = "flatcounts")]
    FlatCounts,
    /// The two-condition subspace count against direct enumeration over a
    /// distinguished subspace pair.
    #[serde(rename = "nprime")]
    NPrime,
    /// The double-counting identity for flats through a fixed flat, graded
    /// by their meet with a larger one, plus the signed lower bound.
    #[serde(rename = "doublecount")]
    DoubleCount,
    /// Strict power bounds around the ratio (q^m-1)/(q^i-1) and the
    /// Gaussian binomial.
    #[serde(rename = "gauss-bounds")]
    GaussBounds,
    /// Strict decrease of the cover-profile function in its dimension
    /// argument.
    #[serde(rename = "h-monotone")]
    HMonotone,
    /// Order of the two construction-pair products, branching on the
    /// relative size of k2 and 2t+1.
    #[serde(rename = "a1a2-compare")]
    CompareA1A2,
    /// Strict decrease of both products when the two dimension parameters
    /// are swapped out of order.
    #[serde(rename = "swap-compare")]
    SwapCompare,
    /// The trivial-pair product against the closed-form bound, and both
    /// construction products strictly below it.
    #[serde(rename = "trivial-bound")]
    TrivialBound,
    /// Empirical cover-dimension bound on constructed cross-intersecting
    /// pairs.
    #[serde(rename = "cover-bound")]
    CoverBound,
}

impl CheckId {
    /// Every check, in report order.
    pub fn all() -> [CheckId; 9] {
        [
            CheckId::FlatCounts,
            CheckId::NPrime,
            CheckId::DoubleCount,
            CheckId::GaussBounds,
            CheckId::HMonotone,
            CheckId::CompareA1A2,
            CheckId::SwapCompare,
            CheckId::TrivialBound,
            CheckId::CoverBound,
        ]
    }

    /// The stable identifier used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            CheckId::FlatCounts => "flatcounts",
            CheckId::NPrime => "nprime",
            CheckId::DoubleCount => "doublecount",
            CheckId::GaussBounds => "gauss-bounds",
            CheckId::HMonotone => "h-monotone",
            CheckId::CompareA1A2 => "a1a2-compare",
            CheckId::SwapCompare => "swap-compare",
            CheckId::TrivialBound => "trivial-bound",
            CheckId::CoverBound => "cover-bound",
        }
    }

    /// Parses a check identifier.
    pub fn parse(s: &str) -> Result<CheckId, VerifyError> {
        CheckId::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| VerifyError::Grid(format!("unknown check id {s:?}")))
    }
}

/// An inclusive parameter range.
pub type Range = (u64, u64);

fn span(r: Range) -> std::ops::RangeInclusive<u64> {
    r.0..=r.1
}

/// A rectangular parameter grid plus the list of checks to run over it.
///
/// Each check draws only the ranges it needs and documents its mapping;
/// unused ranges are ignored. `n` doubles as the total dimension e+l for
/// the two-condition count, `k1` as the single dimension parameter where a
/// check takes only one, and `x` as the free index of the power bounds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: Range,
    pub k1: Range,
    pub k2: Range,
    pub s: Range,
    pub t: Range,
    pub j: Range,
    pub x: Range,
    pub qs: Vec<u64>,
    pub checks: Vec<CheckId>,
}

/// A partial grid, as read from a user-supplied JSON file; every present
/// field replaces the corresponding default.
#[derive(Clone, Default, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridOverrides {
    pub n: Option<Range>,
    pub k1: Option<Range>,
    pub k2: Option<Range>,
    pub s: Option<Range>,
    pub t: Option<Range>,
    pub j: Option<Range>,
    pub x: Option<Range>,
    pub qs: Option<Vec<u64>>,
    pub checks: Option<Vec<String>>,
}

impl GridOverrides {
    /// Applies the overrides on top of a base grid.
    pub fn apply(&self, base: &GridSpec) -> Result<GridSpec, VerifyError> {
        let mut grid = base.clone();
        if let Some(v) = self.n {
            grid.n = v;
        }
        if let Some(v) = self.k1 {
            grid.k1 = v;
        }
        if let Some(v) = self.k2 {
            grid.k2 = v;
        }
        if let Some(v) = self.s {
            grid.s = v;
        }
        if let Some(v) = self.t {
            grid.t = v;
        }
        if let Some(v) = self.j {
            grid.j = v;
        }
        if let Some(v) = self.x {
            grid.x = v;
        }
        if let Some(v) = &self.qs {
            grid.qs = v.clone();
        }
        if let Some(names) = &self.checks {
            grid.checks =
                names.iter().map(|s| CheckId::parse(s)).collect::<Result<Vec<_>, _>>()?;
        }
        Ok(grid)
    }
}

/// The default grid for one check: small enough to finish in seconds, wide
/// enough to exercise every branch of the statement.
pub fn default_grid_for(check: CheckId) -> GridSpec {
    let base = GridSpec {
        n: (1, 5),
        k1: (1, 4),
        k2: (1, 4),
        s: (1, 3),
        t: (1, 3),
        j: (1, 3),
        x: (1, 12),
        qs: vec![2, 3],
        checks: vec![check],
    };
    match check {
        CheckId::FlatCounts => base,
        CheckId::NPrime => GridSpec { n: (0, 4), ..base },
        CheckId::DoubleCount => GridSpec {
            n: (2, 6),
            k1: (1, 3),
            t: (1, 2),
            qs: vec![2],
            ..base
        },
        CheckId::GaussBounds => GridSpec { n: (1, 12), qs: vec![2, 3, 4, 5], ..base },
        CheckId::HMonotone => GridSpec { n: (1, 12), ..base },
        CheckId::CompareA1A2 | CheckId::SwapCompare | CheckId::TrivialBound => {
            GridSpec { n: (1, 14), ..base }
        }
        CheckId::CoverBound => GridSpec {
            n: (5, 6),
            k1: (2, 2),
            k2: (2, 2),
            t: (1, 1),
            qs: vec![2],
            ..base
        },
    }
}

/// How a report's two sides are asserted to relate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Lt,
    Gt,
    Le,
    Ge,
    /// A measured value recorded for the reader; always passes.
    Record,
}

impl Relation {
    /// Evaluates the relation on two signed integers.
    pub fn holds(self, left: &BigInt, right: &BigInt) -> bool {
        match self {
            Relation::Eq => left == right,
            Relation::Lt => left < right,
            Relation::Gt => left > right,
            Relation::Le => left <= right,
            Relation::Ge => left >= right,
            Relation::Record => true,
        }
    }
}

/// One verified relation at one grid point. Both sides are decimal strings,
/// so the record is self-contained.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    /// The check id this report belongs to.
    pub check: String,
    /// The grid-point assignment, every value rendered as a string.
    pub params: BTreeMap<String, String>,
    /// The asserted relation between `left` and `right`.
    pub relation: Relation,
    pub left: String,
    pub right: String,
    /// Whether the relation held when the check ran.
    pub pass: bool,
    /// A serialized object explaining a failure, when one is available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    /// Re-evaluates the relation from the recorded sides and compares with
    /// the recorded verdict. `record` reports hold by definition.
    pub fn recheck(&self) -> bool {
        if self.relation == Relation::Record {
            return self.pass;
        }
        match (self.left.parse::<BigInt>(), self.right.parse::<BigInt>()) {
            (Ok(l), Ok(r)) => self.relation.holds(&l, &r) == self.pass,
            _ => false,
        }
    }
}

/// Outcome tallies of a run: reports that held, reports that did not, and
/// grid points outside a statement's hypothesis.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

/// The reports of one check over one grid, plus its skip tally.
#[derive(Clone, Debug, Default)]
pub struct CheckRun {
    pub reports: Vec<CheckReport>,
    pub skipped: u64,
}

/// All reports of a grid run, sorted by check id and parameter assignment,
/// with the overall tallies.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

/// Runs every check listed in the grid and assembles the sorted outcome.
pub fn run_grid(grid: &GridSpec) -> Result<SuiteOutcome, VerifyError> {
    let mut reports = Vec::new();
    let mut skipped = 0;
    for &check in &grid.checks {
        let run = run_check(check, grid)?;
        reports.extend(run.reports);
        skipped += run.skipped;
    }
    reports.sort();
    let passed = reports.iter().filter(|r| r.pass).count() as u64;
    let failed = reports.len() as u64 - passed;
    Ok(SuiteOutcome { reports, summary: Summary { passed, failed, skipped } })
}

/// Runs one check over a grid. The grid's own check list is ignored; only
/// the ranges are read.
pub fn run_check(check: CheckId, grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    match check {
        CheckId::FlatCounts => check_flat_counts(grid),
        CheckId::NPrime => check_nprime(grid),
        CheckId::DoubleCount => check_double_count(grid),
        CheckId::GaussBounds => check_gauss_bounds(grid),
        CheckId::HMonotone => check_h_monotone(grid),
        CheckId::CompareA1A2 => check_compare_a1a2(grid),
        CheckId::SwapCompare => check_swap_compare(grid),
        CheckId::TrivialBound => check_trivial_bound(grid),
        CheckId::CoverBound => check_cover_bound(grid),
    }
}

fn signed(c: &Count) -> BigInt {
    BigInt::from(c.clone())
}

fn report(
    check: CheckId,
    params: &[(&str, String)],
    relation: Relation,
    left: BigInt,
    right: BigInt,
    witness: Option<String>,
) -> CheckReport {
    let pass = relation.holds(&left, &right);
    CheckReport {
        check: check.name().to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        relation,
        left: left.to_string(),
        right: right.to_string(),
        pass,
        witness,
    }
}

fn guard(check: CheckId, estimate: Count) -> Result<(), VerifyError> {
    if estimate > Count::from(ENUMERATION_BUDGET) {
        Err(VerifyError::Budget { check: check.name(), estimate, limit: ENUMERATION_BUDGET })
    } else {
        Ok(())
    }
}

/// The flat spanned by the first `d` coordinate directions, through the
/// origin.
fn axis_flat(spec: FieldSpec, n: usize, d: usize) -> Result<Flat, VerifyError> {
    let rows = MatrixFq::identity(spec, n).rows()[..d].to_vec();
    let dir = Subspace::from_spanning(&MatrixFq::new(spec, n, rows));
    Ok(Flat::make(&dir, &VectorFq::zero(spec, n))?)
}

/// The subspace spanned by coordinate directions `from..to`.
fn axis_subspace(spec: FieldSpec, n: usize, from: usize, to: usize) -> Subspace {
    let rows = MatrixFq::identity(spec, n).rows()[from..to].to_vec();
    Subspace::from_spanning(&MatrixFq::new(spec, n, rows))
}

/// Enumeration sizes against the closed-form counts. For each (q, n) the
/// check enumerates every dimension of flat in the whole space, then fixes
/// one axis flat per dimension m and enumerates the flats inside it and the
/// flats containing it.
fn check_flat_counts(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::FlatCounts;
    let mut estimate = Count::from(0u32);
    for &q in &grid.qs {
        for n in span(grid.n) {
            for k in 0..=n {
                estimate += num_flats_in(n, k, q);
            }
            for m in 0..=n {
                for a in 0..=m {
                    estimate += num_flats_in(m, a, q);
                }
                for k in m..=n {
                    estimate += num_flats_through(n, m, k, q);
                }
            }
        }
    }
    guard(c, estimate)?;

    let mut run = CheckRun::default();
    for &q in &grid.qs {
        let spec = FieldSpec::new(q)?;
        for n in span(grid.n) {
            let qs = q.to_string();
            let ns = n.to_string();
            for k in 0..=n {
                let counted = enumerate_flats(spec, n as usize, k as usize).count();
                run.reports.push(report(
                    c,
                    &[
                        ("q", qs.clone()),
                        ("n", ns.clone()),
                        ("k", k.to_string()),
                        ("op", "all".to_string()),
                    ],
                    Relation::Eq,
                    BigInt::from(counted),
                    signed(&num_flats_in(n, k, q)),
                    None,
                ));
            }
            for m in 0..=n {
                let anchor = axis_flat(spec, n as usize, m as usize)?;
                for a in 0..=m {
                    let counted = anchor.subflats(a as usize).len();
                    run.reports.push(report(
                        c,
                        &[
                            ("q", qs.clone()),
                            ("n", ns.clone()),
                            ("m", m.to_string()),
                            ("a", a.to_string()),
                            ("op", "within".to_string()),
                        ],
                        Relation::Eq,
                        BigInt::from(counted),
                        signed(&num_flats_in(m, a, q)),
                        None,
                    ));
                }
                for k in m..=n {
                    let counted = anchor.superflats(k as usize).len();
                    run.reports.push(report(
                        c,
                        &[
                            ("q", qs.clone()),
                            ("n", ns.clone()),
                            ("m", m.to_string()),
                            ("k", k.to_string()),
                            ("op", "containing".to_string()),
                        ],
                        Relation::Eq,
                        BigInt::from(counted),
                        signed(&num_flats_through(n, m, k, q)),
                        None,
                    ));
                }
            }
        }
    }
    Ok(run)
}

/// The two-condition subspace count against direct enumeration. The `n`
/// range supplies the total dimension e+l; within the space, the reference
/// subspace W spans the last l coordinates and the contained subspace is
/// anchored on the first coordinates plus the leading directions of W, one
/// anchor per realizable type (m1, h1).
fn check_nprime(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::NPrime;
    let mut estimate = Count::from(0u32);
    for &q in &grid.qs {
        for total in span(grid.n) {
            let per_space: Count =
                (0..=total).map(|m| gauss_binomial(total as i64, m as i64, q)).sum();
            estimate += per_space * Count::from(total + 1);
        }
    }
    guard(c, estimate)?;

    let mut run = CheckRun::default();
    for &q in &grid.qs {
        let spec = FieldSpec::new(q)?;
        for total in span(grid.n) {
            let dim = total as usize;
            for e in 0..=dim {
                let l = dim - e;
                let w = axis_subspace(spec, dim, e, dim);
                for m in 0..=dim {
                    let graded: Vec<(Subspace, usize)> = enumerate_subspaces(spec, dim, m)
                        .map(|p| {
                            let h = p.intersect(&w).expect("same ambient").dim();
                            (p, h)
                        })
                        .collect();
                    for m1 in 0..=dim {
                        for h1 in 0..=m1.min(l) {
                            if m1 - h1 > e {
                                continue;
                            }
                            let mut rows = MatrixFq::identity(spec, dim).rows()
                                [..m1 - h1]
                                .to_vec();
                            rows.extend(
                                MatrixFq::identity(spec, dim).rows()[e..e + h1].to_vec(),
                            );
                            let p1 = Subspace::from_spanning(&MatrixFq::new(spec, dim, rows));
                            let mut by_h = vec![0u64; m + 1];
                            for (p, h) in &graded {
                                if p1.is_subspace_of(p) {
                                    by_h[*h] += 1;
                                }
                            }
                            for (h, counted) in by_h.iter().enumerate() {
                                run.reports.push(report(
                                    c,
                                    &[
                                        ("q", q.to_string()),
                                        ("e", e.to_string()),
                                        ("l", l.to_string()),
                                        ("m1", m1.to_string()),
                                        ("h1", h1.to_string()),
                                        ("m", m.to_string()),
                                        ("h", h.to_string()),
                                    ],
                                    Relation::Eq,
                                    BigInt::from(*counted),
                                    signed(&n_prime(
                                        m1 as u64, h1 as u64, m as u64, h as u64, e as u64,
                                        l as u64, q,
                                    )),
                                    None,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(run)
}

/// The double-counting identity: flats of dimension k through a fixed
/// t-flat T, graded by the dimension of their meet with a fixed s-flat
/// S ⊇ T, weighted by the number of j-flats between. Alongside the
/// identity, the signed closed form is checked as a lower bound on the
/// number of flats meeting S beyond T (emitted once per (q, n, t, s, k),
/// on the first j of the sweep).
fn check_double_count(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::DoubleCount;
    let mut estimate = Count::from(0u32);
    for &q in &grid.qs {
        for n in span(grid.n) {
            for t in span(grid.t) {
                for s in span(grid.s) {
                    for k in span(grid.k1) {
                        if t < 1 || s < t || s > n || k < t || k > n {
                            continue;
                        }
                        estimate += num_flats_through(n, t, k, q);
                    }
                }
            }
        }
    }
    guard(c, estimate)?;

    let mut run = CheckRun::default();
    for &q in &grid.qs {
        let spec = FieldSpec::new(q)?;
        for n in span(grid.n) {
            for t in span(grid.t) {
                for s in span(grid.s) {
                    for k in span(grid.k1) {
                        if t < 1 || s < t || s > n || k < t || k > n {
                            continue;
                        }
                        let t_flat = axis_flat(spec, n as usize, t as usize)?;
                        let s_flat = axis_flat(spec, n as usize, s as usize)?;
                        let mut graded = vec![0u64; (k.min(s) + 1) as usize];
                        for f in t_flat.superflats(k as usize) {
                            let meet = f.intersect(&s_flat)?;
                            let i = meet.dim().expect("flats through T share T");
                            graded[i] += 1;
                        }
                        let js: Vec<u64> =
                            span(grid.j).filter(|&j| j >= t && j <= s).collect();
                        for (pos, &j) in js.iter().enumerate() {
                            let left = gauss_binomial((s - t) as i64, (j - t) as i64, q)
                                * gauss_binomial((n - j) as i64, (k as i64) - (j as i64), q);
                            let right: Count = graded
                                .iter()
                                .enumerate()
                                .map(|(i, &count)| {
                                    gauss_binomial(i as i64 - t as i64, (j - t) as i64, q)
                                        * Count::from(count)
                                })
                                .sum();
                            run.reports.push(report(
                                c,
                                &[
                                    ("q", q.to_string()),
                                    ("n", n.to_string()),
                                    ("t", t.to_string()),
                                    ("s", s.to_string()),
                                    ("k", k.to_string()),
                                    ("j", j.to_string()),
                                    ("part", "identity".to_string()),
                                ],
                                Relation::Eq,
                                signed(&left),
                                signed(&right),
                                None,
                            ));
                            let bound_applies =
                                pos == 0 && k >= t + 1 && s >= t + 1 && n > k && n > s;
                            if bound_applies {
                                let lower = a0(n, k, s, t, q)?;
                                let beyond: u64 =
                                    graded.iter().skip((t + 1) as usize).sum();
                                run.reports.push(report(
                                    c,
                                    &[
                                        ("q", q.to_string()),
                                        ("n", n.to_string()),
                                        ("t", t.to_string()),
                                        ("s", s.to_string()),
                                        ("k", k.to_string()),
                                        ("j", j.to_string()),
                                        ("part", "lower-bound".to_string()),
                                    ],
                                    Relation::Le,
                                    lower,
                                    BigInt::from(beyond),
                                    None,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(run)
}

/// Strict power bounds, cross-multiplied so every comparison is between
/// integers: q^(m-i) (q^i - 1) < q^m - 1 < q^(m-i+1) (q^i - 1), and
/// q^(i(m-i)) < [m i] < q^(i(m-i+1)), for 1 <= i < m. The `n` range
/// supplies m and the `x` range supplies i.
fn check_gauss_bounds(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::GaussBounds;
    let mut run = CheckRun::default();
    let one = Count::from(1u32);
    for &q in &grid.qs {
        FieldSpec::new(q)?;
        for m in span(grid.n) {
            for i in span(grid.x) {
                if i < 1 || i >= m {
                    continue;
                }
                let params = |part: &str| {
                    [
                        ("q", q.to_string()),
                        ("m", m.to_string()),
                        ("i", i.to_string()),
                        ("part", part.to_string()),
                    ]
                };
                let qim = &qpow(q, m) - &one;
                let qii = &qpow(q, i) - &one;
                run.reports.push(report(
                    c,
                    &params("ratio-lower"),
                    Relation::Lt,
                    signed(&(qpow(q, m - i) * qii.clone())),
                    signed(&qim),
                    None,
                ));
                run.reports.push(report(
                    c,
                    &params("ratio-upper"),
                    Relation::Lt,
                    signed(&qim),
                    signed(&(qpow(q, m - i + 1) * qii)),
                    None,
                ));
                let binom = gauss_binomial(m as i64, i as i64, q);
                run.reports.push(report(
                    c,
                    &params("binom-lower"),
                    Relation::Lt,
                    signed(&qpow(q, i * (m - i))),
                    signed(&binom),
                    None,
                ));
                run.reports.push(report(
                    c,
                    &params("binom-upper"),
                    Relation::Lt,
                    signed(&binom),
                    signed(&qpow(q, i * (m - i + 1))),
                    None,
                ));
            }
        }
    }
    Ok(run)
}

/// Strict decrease of the cover-profile function between consecutive
/// dimension arguments, on points satisfying n >= b + c + 3. The `k1`
/// range supplies b and the `k2` range supplies c.
fn check_h_monotone(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::HMonotone;
    let mut run = CheckRun::default();
    for &q in &grid.qs {
        FieldSpec::new(q)?;
        for n in span(grid.n) {
            for b in span(grid.k1) {
                for cc in span(grid.k2) {
                    for t in span(grid.t) {
                        if t < 1 || b < t || cc < t {
                            continue;
                        }
                        if n < b + cc + 3 {
                            run.skipped += 1;
                            continue;
                        }
                        for x in t..b {
                            run.reports.push(report(
                                c,
                                &[
                                    ("q", q.to_string()),
                                    ("n", n.to_string()),
                                    ("b", b.to_string()),
                                    ("c", cc.to_string()),
                                    ("t", t.to_string()),
                                    ("x", x.to_string()),
                                ],
                                Relation::Gt,
                                signed(&h_value(n, b, cc, t, x, q)?),
                                signed(&h_value(n, b, cc, t, x + 1, q)?),
                                None,
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(run)
}

/// Order of the two construction-pair products on points with
/// k1 >= k2 >= t+1: the first product exceeds the second exactly when
/// k2 >= 2t + 1, and falls below it otherwise, once n >= k1 + k2 + 3.
fn check_compare_a1a2(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::CompareA1A2;
    let mut run = CheckRun::default();
    for &q in &grid.qs {
        FieldSpec::new(q)?;
        for n in span(grid.n) {
            for k1 in span(grid.k1) {
                for k2 in span(grid.k2) {
                    for t in span(grid.t) {
                        if t < 1 || k2 < t + 1 || k1 < k2 || n < k1 + 1 {
                            continue;
                        }
                        if n < k1 + k2 + 3 {
                            run.skipped += 1;
                            continue;
                        }
                        let p = ParamTuple { n, k1, k2, t, q };
                        let relation =
                            if k2 >= 2 * t + 1 { Relation::Gt } else { Relation::Lt };
                        run.reports.push(report(
                            c,
                            &[
                                ("q", q.to_string()),
                                ("n", n.to_string()),
                                ("k1", k1.to_string()),
                                ("k2", k2.to_string()),
                                ("t", t.to_string()),
                            ],
                            relation,
                            signed(&a1(&p)?),
                            signed(&a2(&p)?),
                            None,
                        ));
                    }
                }
            }
        }
    }
    Ok(run)
}

/// Strict decrease of both products when the dimension pair is swapped,
/// on points with k1 > k2 >= t+1 and n >= k1 + k2 + t + 3.
fn check_swap_compare(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::SwapCompare;
    let mut run = CheckRun::default();
    for &q in &grid.qs {
        FieldSpec::new(q)?;
        for n in span(grid.n) {
            for k1 in span(grid.k1) {
                for k2 in span(grid.k2) {
                    for t in span(grid.t) {
                        if t < 1 || k2 < t + 1 || k1 <= k2 || n < k1 + 1 {
                            continue;
                        }
                        let p = ParamTuple { n, k1, k2, t, q };
                        if !hypothesis_check(&p, Hypothesis::SwapMonotone) {
                            run.skipped += 1;
                            continue;
                        }
                        let swapped = ParamTuple { k1: k2, k2: k1, ..p };
                        let params = |part: &str| {
                            [
                                ("q", q.to_string()),
                                ("n", n.to_string()),
                                ("k1", k1.to_string()),
                                ("k2", k2.to_string()),
                                ("t", t.to_string()),
                                ("part", part.to_string()),
                            ]
                        };
                        run.reports.push(report(
                            c,
                            &params("first-product"),
                            Relation::Gt,
                            signed(&a1(&p)?),
                            signed(&a1(&swapped)?),
                            None,
                        ));
                        run.reports.push(report(
                            c,
                            &params("second-product"),
                            Relation::Gt,
                            signed(&a2(&p)?),
                            signed(&a2(&swapped)?),
                            None,
                        ));
                    }
                }
            }
        }
    }
    Ok(run)
}

/// The trivial-pair product against its closed form, by enumeration where
/// the families stay under the materialisation cap, and both construction
/// products strictly below the closed form once the stronger dimension
/// hypothesis holds. Points failing n >= k1 + k2 + 3 (with k1, k2 >= t)
/// are skipped.
fn check_trivial_bound(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::TrivialBound;
    let mut run = CheckRun::default();
    let mut spent = Count::from(0u32);
    let budget = Count::from(ENUMERATION_BUDGET);
    let cap = Count::from(ENUM_CAP);
    for &q in &grid.qs {
        let spec = FieldSpec::new(q)?;
        for n in span(grid.n) {
            for k1 in span(grid.k1) {
                for k2 in span(grid.k2) {
                    for t in span(grid.t) {
                        if t < 1 || k1 < t || k2 < t || k1 < k2 || n < k1 + 1 {
                            continue;
                        }
                        let p = ParamTuple { n, k1, k2, t, q };
                        if !hypothesis_check(&p, Hypothesis::ProductMax) {
                            run.skipped += 1;
                            continue;
                        }
                        let params = |part: &str| {
                            [
                                ("q", q.to_string()),
                                ("n", n.to_string()),
                                ("k1", k1.to_string()),
                                ("k2", k2.to_string()),
                                ("t", t.to_string()),
                                ("part", part.to_string()),
                            ]
                        };
                        let s1 = gauss_binomial((n - t) as i64, (k1 - t) as i64, q);
                        let s2 = gauss_binomial((n - t) as i64, (k2 - t) as i64, q);
                        let product = &s1 * &s2;
                        let enum_cost = &s1 + &s2;
                        if s1 <= cap && s2 <= cap && &spent + &enum_cost <= budget {
                            spent += enum_cost;
                            let t_flat = axis_flat(spec, n as usize, t as usize)?;
                            let f1 = build_trivial(&t_flat, k1 as usize)?;
                            let f2 = build_trivial(&t_flat, k2 as usize)?;
                            let (c1, c2) = (Count::from(f1.len()), Count::from(f2.len()));
                            run.reports.push(report(
                                c,
                                &params("pair-product"),
                                Relation::Eq,
                                signed(&(&c1 * &c2)),
                                signed(&product),
                                None,
                            ));
                            run.reports.push(report(
                                c,
                                &params("triple-product"),
                                Relation::Eq,
                                signed(&(&c1 * &c2 * &c2)),
                                signed(&(&product * &s2)),
                                None,
                            ));
                        }
                        if hypothesis_check(&p, Hypothesis::StructureAll) {
                            run.reports.push(report(
                                c,
                                &params("first-product-below"),
                                Relation::Lt,
                                signed(&a1(&p)?),
                                signed(&product),
                                None,
                            ));
                            run.reports.push(report(
                                c,
                                &params("second-product-below"),
                                Relation::Lt,
                                signed(&a2(&p)?),
                                signed(&product),
                                None,
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(run)
}

/// Builds the three reference cross-intersecting pairs at one parameter
/// point: the trivial pair, the first/second construction pair, and the
/// third/fourth construction pair.
fn reference_pairs(
    spec: FieldSpec,
    n: usize,
    k1: usize,
    k2: usize,
    t: usize,
) -> Result<Vec<(&'static str, FlatFamily, FlatFamily)>, VerifyError> {
    let t_flat = axis_flat(spec, n, t)?;
    let m_flat = axis_flat(spec, n, k2 + 1)?;
    let s_flat = axis_flat(spec, n, t + 1)?;
    Ok(vec![
        (
            "trivial",
            build_trivial(&t_flat, k1)?,
            build_trivial(&t_flat, k2)?,
        ),
        (
            "first-second",
            build_a1(&m_flat, &t_flat, k1, t)?,
            build_a2(&m_flat, &t_flat, k2, t)?,
        ),
        (
            "third-fourth",
            build_a3(&s_flat, k1)?,
            build_a4(&s_flat, k2, t)?,
        ),
    ])
}

/// Empirical cover bound: for each reference pair, confirm the
/// cross-intersection property, record the measured minimum cover
/// dimensions, and bound each family's size by the closed form evaluated
/// at those measurements. Points failing n >= k1 + k2 - t + 1 are skipped.
fn check_cover_bound(grid: &GridSpec) -> Result<CheckRun, VerifyError> {
    let c = CheckId::CoverBound;
    let mut run = CheckRun::default();
    for &q in &grid.qs {
        let spec = FieldSpec::new(q)?;
        for n in span(grid.n) {
            for k1 in span(grid.k1) {
                for k2 in span(grid.k2) {
                    for t in span(grid.t) {
                        if t < 1 || k2 < t + 1 || k1 < k2 || n < k1.max(k2 + 1) + 1 {
                            continue;
                        }
                        if n + t < k1 + k2 + 1 {
                            run.skipped += 1;
                            continue;
                        }
                        let pairs =
                            reference_pairs(spec, n as usize, k1 as usize, k2 as usize, t as usize)?;
                        for (name, f1, f2) in pairs {
                            let params = |part: &str, tau1: usize, tau2: usize| {
                                [
                                    ("q", q.to_string()),
                                    ("n", n.to_string()),
                                    ("k1", k1.to_string()),
                                    ("k2", k2.to_string()),
                                    ("t", t.to_string()),
                                    ("pair", name.to_string()),
                                    ("tau1", tau1.to_string()),
                                    ("tau2", tau2.to_string()),
                                    ("part", part.to_string()),
                                ]
                            };
                            let violation = cross_t_violation(&f1, &f2, t as usize)?;
                            let tau1 = tau_t(&f1, t as usize)?.tau;
                            let tau2 = tau_t(&f2, t as usize)?.tau;
                            run.reports.push(report(
                                c,
                                &params("cross", tau1, tau2),
                                Relation::Eq,
                                BigInt::from(i32::from(violation.is_none())),
                                BigInt::from(1),
                                violation.map(|(a, b)| format!("{a} / {b}")),
                            ));
                            run.reports.push(report(
                                c,
                                &params("tau", tau1, tau2),
                                Relation::Record,
                                BigInt::from(tau1),
                                BigInt::from(tau2),
                                None,
                            ));
                            run.reports.push(report(
                                c,
                                &params("first-size", tau1, tau2),
                                Relation::Le,
                                BigInt::from(f1.len()),
                                signed(&cover_size_bound(
                                    n,
                                    k1,
                                    k2,
                                    t,
                                    tau1 as u64,
                                    tau2 as u64,
                                    q,
                                )?),
                                None,
                            ));
                            run.reports.push(report(
                                c,
                                &params("second-size", tau1, tau2),
                                Relation::Le,
                                BigInt::from(f2.len()),
                                signed(&cover_size_bound(
                                    n,
                                    k2,
                                    k1,
                                    t,
                                    tau2 as u64,
                                    tau1 as u64,
                                    q,
                                )?),
                                None,
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(run)
}
