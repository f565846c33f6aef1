//! Exact, arbitrary-precision evaluation of the counting formulas for flats
//! of AG(n, q): Gaussian binomials, flat counts, subspace counts by type
//! relative to a fixed hyperplane-like subspace (N'), and the closed-form
//! sizes of the four special family constructions together with the derived
//! products and bounds.
//!
//! Everything is computed over big integers; divisions are exact and checked.
//! Functions return 0 for out-of-range parameters where convention makes the
//! value an empty count, and an error where the formula is only meaningful
//! under explicit arithmetic preconditions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type Count = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("precondition violated in {op}: {detail}")]
pub struct CountingError {
    pub op: &'static str,
    pub detail: String,
}

fn precondition(op: &'static str, cond: bool, detail: &str) -> Result<(), CountingError> {
    if cond {
        Ok(())
    } else {
        Err(CountingError { op, detail: detail.to_string() })
    }
}

/// q^e as a big integer.
pub fn qpow(q: u64, e: u64) -> Count {
    assert!(q >= 2, "field order must be at least 2");
    let e = u32::try_from(e).expect("exponent fits in u32");
    BigUint::from(q).pow(e)
}

/// The Gaussian binomial coefficient `[m i]_q`, the number of i-dimensional
/// subspaces of an m-dimensional space over GF(q).
///
/// Follows the standard convention: 1 when i = 0, and 0 whenever i < 0,
/// m < 0 or i > m. The division is exact and asserted on every call.
pub fn gauss_binomial(m: i64, i: i64, q: u64) -> Count {
    assert!(q >= 2, "field order must be at least 2");
    if i < 0 || m < 0 || i > m {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..i {
        num *= qpow(q, (m - j) as u64) - 1u32;
        den *= qpow(q, (i - j) as u64) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial division must be exact");
    quot
}

/// Number of k-flats contained in a fixed m-flat: `q^(m-k) [m k]_q`
/// (0 when k > m). With m = n this counts all k-flats of AG(n, q).
pub fn num_flats_in(m: u64, k: u64, q: u64) -> Count {
    if k > m {
        return BigUint::zero();
    }
    qpow(q, m - k) * gauss_binomial(m as i64, k as i64, q)
}

/// Number of k-flats of AG(n, q) containing a fixed m-flat:
/// `[n-m k-m]_q` (0 when k < m or k > n).
pub fn num_flats_through(n: u64, m: u64, k: u64, q: u64) -> Count {
    gauss_binomial(n as i64 - m as i64, k as i64 - m as i64, q)
}

/// Number of m-dimensional subspaces P of a space V of dimension e+l that
/// meet a fixed l-dimensional subspace W in dimension h (type (m, h)) and
/// contain a fixed subspace of type (m1, h1).
///
/// Nonzero exactly when 0 ≤ h1 ≤ h ≤ l and 0 ≤ m1-h1 ≤ m-h ≤ e, in which
/// case it equals
/// `q^((l-h)(m-h-(m1-h1))) [e-(m1-h1)  (m-h)-(m1-h1)]_q [l-h1  h-h1]_q`.
pub fn n_prime(m1: u64, h1: u64, m: u64, h: u64, e: u64, l: u64, q: u64) -> Count {
    if h1 > h || h > l || m1 < h1 || m < h {
        return BigUint::zero();
    }
    let (a, b) = (m1 - h1, m - h); // codimensions over W
    if a > b || b > e {
        return BigUint::zero();
    }
    qpow(q, (l - h) * (b - a))
        * gauss_binomial((e - a) as i64, (b - a) as i64, q)
        * gauss_binomial((l - h1) as i64, (h - h1) as i64, q)
}

/// Signed lower bound on the number of k-flats through a fixed t-flat T that
/// meet a fixed s-flat S ⊇ T in dimension at least t+1:
/// `[s-t 1][n-t-1 k-t-1] - q [s-t 2][n-t-2 k-t-2]`.
pub fn a0(n: u64, k: u64, s: u64, t: u64, q: u64) -> Result<BigInt, CountingError> {
    precondition("a0", t >= 1, "t must be at least 1")?;
    precondition("a0", k >= t + 1 && s >= t + 1, "k and s must be at least t+1")?;
    precondition("a0", n > k && n > s, "n must exceed both k and s")?;
    let (n, k, s, t) = (n as i64, k as i64, s as i64, t as i64);
    let first = gauss_binomial(s - t, 1, q) * gauss_binomial(n - t - 1, k - t - 1, q);
    let second = BigUint::from(q) * gauss_binomial(s - t, 2, q) * gauss_binomial(n - t - 2, k - t - 2, q);
    Ok(BigInt::from(first) - BigInt::from(second))
}

fn nonneg(op: &'static str, v: BigInt) -> Count {
    let (sign, mag) = v.into_parts();
    assert!(
        sign != num_bigint::Sign::Minus,
        "{op} evaluated negative under its preconditions"
    );
    mag
}

/// Size of the first construction: k1-flats through T that meet the larger
/// anchor flat M (of dimension k2+1) in dimension at least t+1.
/// `[n-t k1-t] - q^((k2-t+1)(k1-t)) [n-k2-1 k1-t]`.
pub fn size_a1(n: u64, k1: u64, k2: u64, t: u64, q: u64) -> Result<Count, CountingError> {
    precondition("size_a1", t >= 1, "t must be at least 1")?;
    precondition("size_a1", k1 >= t && k2 >= t, "k1 and k2 must be at least t")?;
    precondition("size_a1", n >= k2 + 1, "n must be at least k2+1")?;
    let first = gauss_binomial((n - t) as i64, (k1 - t) as i64, q);
    let second = qpow(q, (k2 - t + 1) * (k1 - t))
        * gauss_binomial(n as i64 - k2 as i64 - 1, (k1 - t) as i64, q);
    Ok(nonneg("size_a1", BigInt::from(first) - BigInt::from(second)))
}

/// Size of the second construction: all k2-flats through T plus the k2-flats
/// inside M that meet T in dimension exactly t-1.
/// `[n-t k2-t] + q^(k2-t+2) [t 1]`.
pub fn size_a2(n: u64, k2: u64, t: u64, q: u64) -> Result<Count, CountingError> {
    precondition("size_a2", t >= 1, "t must be at least 1")?;
    precondition("size_a2", k2 >= t, "k2 must be at least t")?;
    precondition("size_a2", n >= k2 + 1, "n must be at least k2+1")?;
    Ok(gauss_binomial((n - t) as i64, (k2 - t) as i64, q)
        + qpow(q, k2 - t + 2) * gauss_binomial(t as i64, 1, q))
}

/// Size of the third construction: k1-flats containing the fixed (t+1)-flat S.
/// `[n-t-1 k1-t-1]`.
pub fn size_a3(n: u64, k1: u64, t: u64, q: u64) -> Result<Count, CountingError> {
    precondition("size_a3", t >= 1, "t must be at least 1")?;
    precondition("size_a3", k1 >= t + 1, "k1 must be at least t+1")?;
    precondition("size_a3", n >= t + 1, "n must be at least t+1")?;
    Ok(gauss_binomial((n - t - 1) as i64, (k1 - t - 1) as i64, q))
}

/// Size of the fourth construction: k2-flats meeting S in dimension at least t.
/// `q [t+1 1][n-t k2-t] - (q [t+1 1] - 1)[n-t-1 k2-t-1]`.
pub fn size_a4(n: u64, k2: u64, t: u64, q: u64) -> Result<Count, CountingError> {
    precondition("size_a4", t >= 1, "t must be at least 1")?;
    precondition("size_a4", k2 >= t, "k2 must be at least t")?;
    precondition("size_a4", n >= t + 1, "n must be at least t+1")?;
    let pencil = BigUint::from(q) * gauss_binomial(t as i64 + 1, 1, q);
    let first = &pencil * gauss_binomial((n - t) as i64, (k2 - t) as i64, q);
    let second = (pencil - 1u32) * gauss_binomial(n as i64 - t as i64 - 1, k2 as i64 - t as i64 - 1, q);
    Ok(nonneg("size_a4", BigInt::from(first) - BigInt::from(second)))
}

/// A parameter point (n, k1, k2, t, q) for the two-family products and the
/// hypothesis predicates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ParamTuple {
    pub n: u64,
    pub k1: u64,
    pub k2: u64,
    pub t: u64,
    pub q: u64,
}

fn param_ranges(op: &'static str, p: &ParamTuple) -> Result<(), CountingError> {
    precondition(op, p.t >= 1, "t must be at least 1")?;
    precondition(op, p.k1 >= p.t + 1 && p.k2 >= p.t + 1, "k1 and k2 must be at least t+1")?;
    precondition(op, p.n >= p.k1.max(p.k2) + 1, "n must exceed k1 and k2")?;
    Ok(())
}

/// Product of the first two construction sizes at `p`. Both dimension
/// parameters must be at least t+1; no ordering between them is required
/// (the swapped product is itself a quantity of interest).
pub fn a1(p: &ParamTuple) -> Result<Count, CountingError> {
    param_ranges("a1", p)?;
    Ok(size_a1(p.n, p.k1, p.k2, p.t, p.q)? * size_a2(p.n, p.k2, p.t, p.q)?)
}

/// Product of the last two construction sizes at `p`.
pub fn a2(p: &ParamTuple) -> Result<Count, CountingError> {
    param_ranges("a2", p)?;
    Ok(size_a3(p.n, p.k1, p.t, p.q)? * size_a4(p.n, p.k2, p.t, p.q)?)
}

/// The profile function `h_{b,c}(x) = q^(x-t) [x t] [c-t+1 1]^(x-t) [n-x b-x]`:
/// an upper bound on the size of a b-dimensional family whose minimum t-cover
/// has dimension x, against a c-dimensional partner. Strictly decreasing in x
/// on t ≤ x ≤ b whenever n ≥ b+c+3.
pub fn h_value(n: u64, b: u64, c: u64, t: u64, x: u64, q: u64) -> Result<Count, CountingError> {
    precondition("h_value", t >= 1, "t must be at least 1")?;
    precondition("h_value", t <= x && x <= b, "x must lie in t..=b")?;
    precondition("h_value", c >= t, "c must be at least t")?;
    let col = gauss_binomial((c - t + 1) as i64, 1, q);
    Ok(qpow(q, x - t)
        * gauss_binomial(x as i64, t as i64, q)
        * num_traits::pow::pow(col, (x - t) as usize)
        * gauss_binomial(n as i64 - x as i64, b as i64 - x as i64, q))
}

/// Upper bound on the size of a k1-dimensional family from the minimum
/// t-cover dimensions of the pair: with tau_f the cover dimension of the
/// family itself and tau_g that of its k2-dimensional partner,
/// `q^(tau_f-t) [tau_f t] [k2-t+1 1]^(tau_g-t) [n-tau_g k1-tau_g]`.
pub fn cover_size_bound(
    n: u64,
    k1: u64,
    k2: u64,
    t: u64,
    tau_f: u64,
    tau_g: u64,
    q: u64,
) -> Result<Count, CountingError> {
    precondition("cover_size_bound", t >= 1, "t must be at least 1")?;
    precondition("cover_size_bound", t <= tau_f && tau_f <= k2, "tau_f must lie in t..=k2")?;
    precondition("cover_size_bound", t <= tau_g && tau_g <= k1, "tau_g must lie in t..=k1")?;
    precondition(
        "cover_size_bound",
        n + t >= k1 + k2 + 1,
        "n must be at least k1+k2-t+1",
    )?;
    let col = gauss_binomial((k2 - t + 1) as i64, 1, q);
    Ok(qpow(q, tau_f - t)
        * gauss_binomial(tau_f as i64, t as i64, q)
        * num_traits::pow::pow(col, (tau_g - t) as usize)
        * gauss_binomial(n as i64 - tau_g as i64, k1 as i64 - tau_g as i64, q))
}

/// The arithmetic hypotheses under which the main statements about pairs of
/// cross-intersecting families are proved.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Hypothesis {
    /// n ≥ k1+k2+3 with k1, k2 ≥ t ≥ 1: the regime where the product of
    /// sizes is maximized exactly by two full families through a common
    /// t-flat.
    ProductMax,
    /// n ≥ k1+k2+t+7 with k1 ≥ k2 ≥ t+1: the regime where all maximum-size
    /// non-trivial pairs are classified.
    StructureAll,
    /// n ≥ k1+k2+t+3 with k1 > k2 ≥ t+1: the regime where swapping the two
    /// dimension parameters strictly decreases both candidate products.
    SwapMonotone,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::ProductMax => "product-max",
            Hypothesis::StructureAll => "structure-all",
            Hypothesis::SwapMonotone => "swap-monotone",
        }
    }

    pub fn parse(s: &str) -> Option<Hypothesis> {
        match s {
            "product-max" => Some(Hypothesis::ProductMax),
            "structure-all" => Some(Hypothesis::StructureAll),
            "swap-monotone" => Some(Hypothesis::SwapMonotone),
            _ => None,
        }
    }
}

/// Evaluates the arithmetic hypothesis `which` at the parameter point `p`.
pub fn hypothesis_check(p: &ParamTuple, which: Hypothesis) -> bool {
    let ParamTuple { n, k1, k2, t, .. } = *p;
    match which {
        Hypothesis::ProductMax => t >= 1 && k1 >= t && k2 >= t && n >= k1 + k2 + 3,
        Hypothesis::StructureAll => {
            t >= 1 && k1 >= k2 && k2 >= t + 1 && n >= k1 + k2 + t + 7
        }
        Hypothesis::SwapMonotone => {
            t >= 1 && k1 > k2 && k2 >= t + 1 && n >= k1 + k2 + t + 3
        }
    }
}
