//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines for passing criteria too).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use afflats::affine::{enumerate_flats, Flat};
use afflats::counting::{a1, a2, gauss_binomial, Count, ParamTuple};
use afflats::families::{
    build_a1, build_a2, build_a3, build_a4, build_trivial, is_cross_t_intersecting,
    is_d_wise_t_intersecting, min_covers_cross_check, partner, tau_t, FlatFamily,
};
use afflats::gf::FieldSpec;
use afflats::verify::{default_grid_for, run_check, CheckId, GridSpec, Relation};

fn verdict(number: u32, label: &str, started: Instant, ok: bool) {
    println!(
        "criterion {number} ({label}): {} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    assert!(ok, "criterion {number} ({label}) failed");
}

fn first_flat(spec: FieldSpec, n: usize, k: usize) -> Flat {
    enumerate_flats(spec, n, k).next().expect("space is large enough")
}

/// The canonical anchor triple: mid flat M of dimension k2+1, a t-flat T
/// inside it, and a seed flat S of dimension t+1.
fn anchors(spec: FieldSpec, n: usize, k2: usize, t: usize) -> (Flat, Flat, Flat) {
    let mid = first_flat(spec, n, k2 + 1);
    let t_flat = enumerate_flats(spec, n, t)
        .find(|f| f.is_subflat_of(&mid).expect("same space"))
        .expect("mid flat contains a t-flat");
    let seed = first_flat(spec, n, t + 1);
    (mid, t_flat, seed)
}

#[test]
fn criterion_01_flat_count_oracle() {
    let started = Instant::now();
    // Defaults: q in {2, 3}, n <= 5, every 0 <= k <= m <= n.
    let run = run_check(CheckId::FlatCounts, &default_grid_for(CheckId::FlatCounts))
        .expect("in budget");
    let ok = !run.reports.is_empty() && run.reports.iter().all(|r| r.pass);
    verdict(1, "flat counts match closed forms", started, ok);
}

#[test]
fn criterion_02_two_condition_count_oracle() {
    let started = Instant::now();
    let base = default_grid_for(CheckId::NPrime);
    let q2 = GridSpec { n: (0, 4), qs: vec![2], ..base.clone() };
    let q3 = GridSpec { n: (0, 3), qs: vec![3], ..base };
    let mut ok = true;
    let mut seen = 0;
    for grid in [q2, q3] {
        let run = run_check(CheckId::NPrime, &grid).expect("in budget");
        ok &= run.reports.iter().all(|r| r.pass);
        seen += run.reports.len();
    }
    verdict(2, "two-condition subspace counts match enumeration", started, ok && seen > 0);
}

/// Builds the four reference families at (q=2, t=1, k1=k2=2) for one n.
fn reference_families(n: usize) -> [FlatFamily; 4] {
    let spec = FieldSpec::new(2).unwrap();
    let (mid, t_flat, seed) = anchors(spec, n, 2, 1);
    [
        build_a1(&mid, &t_flat, 2, 1).unwrap(),
        build_a2(&mid, &t_flat, 2, 1).unwrap(),
        build_a3(&seed, 2).unwrap(),
        build_a4(&seed, 2, 1).unwrap(),
    ]
}

#[test]
fn criterion_03_construction_sizes() {
    use afflats::counting::{size_a1, size_a2, size_a3, size_a4};
    let started = Instant::now();
    let mut ok = true;
    for (n, expect) in [(6u64, [3usize, 39, 1, 181]), (7, [3, 71, 1, 373])] {
        let fams = reference_families(n as usize);
        let sizes = fams.map(|f| f.len());
        let formulas = [
            size_a1(n, 2, 2, 1, 2).unwrap(),
            size_a2(n, 2, 1, 2).unwrap(),
            size_a3(n, 2, 1, 2).unwrap(),
            size_a4(n, 2, 1, 2).unwrap(),
        ];
        ok &= sizes == expect;
        ok &= formulas.map(|c| c.to_string()) == sizes.map(|s| s.to_string());
    }
    verdict(3, "construction sizes equal their closed forms", started, ok);
}

#[test]
fn criterion_04_cross_intersection_of_reference_pairs() {
    let started = Instant::now();
    let mut ok = true;
    for n in [6, 7] {
        let [a1_fam, a2_fam, a3_fam, a4_fam] = reference_families(n);
        ok &= is_cross_t_intersecting(&a1_fam, &a2_fam, 1).unwrap();
        ok &= is_cross_t_intersecting(&a3_fam, &a4_fam, 1).unwrap();
    }
    verdict(4, "reference pairs are cross-intersecting", started, ok);
}

#[test]
fn criterion_05_double_count_identity() {
    let started = Instant::now();
    let grid = GridSpec {
        n: (2, 6),
        t: (1, 6),
        s: (1, 6),
        j: (1, 6),
        k1: (1, 6),
        ..default_grid_for(CheckId::DoubleCount)
    };
    let run = run_check(CheckId::DoubleCount, &grid).expect("in budget");
    let ok = !run.reports.is_empty() && run.reports.iter().all(|r| r.pass);
    verdict(5, "double-counting identity and signed lower bound", started, ok);
}

#[test]
fn criterion_06_inequality_grids() {
    let started = Instant::now();
    let mut ok = true;
    for check in [
        CheckId::GaussBounds,
        CheckId::HMonotone,
        CheckId::CompareA1A2,
        CheckId::SwapCompare,
    ] {
        let run = run_check(check, &default_grid_for(check)).expect("in budget");
        ok &= !run.reports.is_empty() && run.reports.iter().all(|r| r.pass);
        if check == CheckId::CompareA1A2 {
            // Both branches of the comparison must be exercised.
            ok &= run.reports.iter().any(|r| r.relation == Relation::Gt);
            ok &= run.reports.iter().any(|r| r.relation == Relation::Lt);
        }
    }
    verdict(6, "inequality grids hold with exact arithmetic", started, ok);
}

#[test]
fn criterion_07_trivial_product_dominance_and_d_wise() {
    let started = Instant::now();
    let mut ok = true;

    // The trivial product strictly exceeds both construction products at
    // every point with n >= k1 + k2 + 3, k1 >= k2 >= t + 1, parameters
    // up to 14, q in {2, 3}.
    let mut points = 0u32;
    for q in [2u64, 3] {
        for n in 1..=14u64 {
            for t in 1..=6u64 {
                for k2 in t + 1..=10 {
                    for k1 in k2..=10 {
                        if n < k1 + k2 + 3 {
                            continue;
                        }
                        points += 1;
                        let p = ParamTuple { n, k1, k2, t, q };
                        let bound = gauss_binomial((n - t) as i64, (k1 - t) as i64, q)
                            * gauss_binomial((n - t) as i64, (k2 - t) as i64, q);
                        ok &= a1(&p).unwrap() < bound && a2(&p).unwrap() < bound;
                    }
                }
            }
        }
    }
    ok &= points == 240;

    // d-wise trivial products for d <= 4, mixed member dimensions.
    let spec = FieldSpec::new(2).unwrap();
    let t_flat = first_flat(spec, 6, 1);
    let dims = [3usize, 2, 2, 2];
    let fams = dims.map(|k| build_trivial(&t_flat, k).unwrap());
    for d in 2..=4 {
        let product: Count = fams[..d].iter().map(|f| Count::from(f.len())).product();
        let formula: Count = dims[..d]
            .iter()
            .map(|&k| gauss_binomial(5, k as i64 - 1, 2))
            .product();
        ok &= product == formula;
    }

    // The d-wise intersection property itself, exhaustively at n = 5.
    let t_small = first_flat(spec, 5, 1);
    let copies: Vec<FlatFamily> =
        (0..4).map(|_| build_trivial(&t_small, 2).unwrap()).collect();
    for d in 2..=4 {
        ok &= is_d_wise_t_intersecting(&copies[..d], 1).unwrap();
    }

    verdict(7, "trivial products dominate and extend d-wise", started, ok);
}

/// `size` distinct flats drawn from `pool`, by index sampling.
fn random_subfamily(pool: &[Flat], rng: &mut ChaCha8Rng, size: usize) -> Vec<Flat> {
    let mut picked = BTreeSet::new();
    while picked.len() < size {
        picked.insert(rng.random_range(0..pool.len()));
    }
    picked.iter().map(|&i| pool[i].clone()).collect()
}

#[test]
fn criterion_08_partner_closure_properties() {
    let started = Instant::now();
    let spec = FieldSpec::new(2).unwrap();
    let all: Vec<Flat> = enumerate_flats(spec, 5, 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut ok = true;
    for _ in 0..100 {
        // Subfamilies are drawn among the flats meeting a random base flat,
        // so a common cross-intersecting flat (the base) always exists and
        // partners stay nonempty.
        let base = all[rng.random_range(0..all.len())].clone();
        let pool: Vec<Flat> = all
            .iter()
            .filter(|c| c.t_intersects(&base, 1).unwrap())
            .cloned()
            .collect();
        let f_members = random_subfamily(&pool, &mut rng, 8);
        let f = FlatFamily::from_members(f_members.clone()).unwrap();
        let mut extended = f_members;
        for extra in random_subfamily(&pool, &mut rng, 5) {
            if !f.contains(&extra) {
                extended.push(extra);
            }
        }
        let g = FlatFamily::from_members(extended).unwrap();

        let pf = partner(&f, 2, 1).unwrap();
        let pg = partner(&g, 2, 1).unwrap();
        // Antitone: f ⊆ g forces partner(g) ⊆ partner(f).
        ok &= pg.is_subfamily_of(&pf);
        // Closure: f ⊆ partner(partner(f)).
        ok &= f.is_subfamily_of(&partner(&pf, 2, 1).unwrap());
    }

    // The partner of a single t-flat is exactly the trivial family over it.
    let t_flat = first_flat(spec, 5, 1);
    let singleton = FlatFamily::from_members(vec![t_flat.clone()]).unwrap();
    ok &= partner(&singleton, 2, 1).unwrap() == build_trivial(&t_flat, 2).unwrap();

    verdict(8, "partner closure is antitone and inflationary", started, ok);
}

#[test]
fn criterion_09_cover_machinery() {
    let started = Instant::now();
    let spec = FieldSpec::new(2).unwrap();
    let t_flat = first_flat(spec, 5, 1);
    let trivial = build_trivial(&t_flat, 2).unwrap();
    let mut ok = true;

    let cover = tau_t(&trivial, 1).unwrap();
    ok &= cover.tau == 1 && cover.witnesses == vec![t_flat.clone()];

    // Mutually maximal pair by partner closure from the trivial seed.
    let g = partner(&trivial, 2, 1).unwrap();
    let f = partner(&g, 2, 1).unwrap();
    let report = min_covers_cross_check(&f, &g, 1).unwrap();
    ok &= report.pass();
    ok &= report.tau1 == 1 && report.tau2 == 1;

    verdict(9, "cover machinery and minimum-cover cross-intersection", started, ok);
}

#[test]
fn criterion_10_verify_determinism() {
    let started = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_afflats"))
            .args(["verify", "--default-grid"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let ok = first.status.success()
        && second.status.success()
        && !first.stdout.is_empty()
        && first.stdout == second.stdout;
    verdict(10, "default verification stream is byte-identical", started, ok);
}
