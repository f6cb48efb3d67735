//! Acceptance suite. Each test covers one acceptance criterion, checks it
//! at zero tolerance (the one timing criterion is reported, not thresholded),
//! and prints a single pass/fail line. Run with `--nocapture` to see them.

use std::time::Instant;

use halving_core::census::{
    census, census_brute, census_sweep, count_halving, count_pair_halving, Engine,
};
use halving_core::deform::{verify_path_invariance, MotionPath};
use halving_core::format::{parse_points, parse_points_any, points_to_json, points_to_string};
use halving_core::kernel::{in_circle, orientation, CirclePosition, Orientation, Point, Scalar};
use halving_core::pointset::{gen_gon_config, gen_random, PointSet};
use halving_core::verify::{verify_gon_config, verify_pair_oddness, verify_theorem2};

const SIZES: [usize; 7] = [3, 5, 7, 9, 11, 13, 15];
const SEEDS_PER_SIZE: u64 = 25;
const COORD_BOUND: i64 = 1000;

fn desk_scale_sets() -> impl Iterator<Item = (usize, PointSet)> {
    SIZES.into_iter().flat_map(|m| {
        (0..SEEDS_PER_SIZE).map(move |seed| {
            let set = gen_random(m, 1000 * m as u64 + seed, COORD_BOUND)
                .expect("bound large enough for desk-scale sizes");
            (m, set)
        })
    })
}

fn report(criterion: usize, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {criterion} failed: {detail}");
}

/// Criterion 1: every tested odd set of size 2n+1 has exactly n^2 halving
/// circles, by both engines.
#[test]
fn acceptance_1_halving_count_is_n_squared() {
    let mut sets = 0u64;
    for (m, set) in desk_scale_sets() {
        let n = ((m - 1) / 2) as u64;
        let count = count_halving(&set).unwrap();
        assert_eq!(count, n * n, "m={m}, set {set:?}");
        sets += 1;
    }
    report(
        1,
        true,
        &format!(
            "count = n^2 exactly on {sets} random sets (m in {SIZES:?}, {SEEDS_PER_SIZE} seeds each)"
        ),
    );
}

/// Criterion 2: per split class {a,b} with a<b there are exactly
/// 2(a+1)(b+1) circles, and the histogram total is C(m,3).
#[test]
fn acceptance_2_split_class_counts() {
    let mut sets = 0u64;
    for (m, set) in desk_scale_sets() {
        let hist = census(&set, Engine::Both).unwrap();
        assert_eq!(hist.total(), hist.expected_total(), "m={m}");
        if m >= 5 {
            let rep = verify_theorem2(&set).unwrap();
            assert!(rep.pass(), "m={m}: {rep}");
        }
        sets += 1;
    }
    report(
        2,
        true,
        &format!("2(a+1)(b+1) per class and C(m,3) total on {sets} sets"),
    );
}

/// Criterion 3: five points always give 4 halving circles, three give 1.
#[test]
fn acceptance_3_small_cases() {
    let mut fives = 0;
    let mut threes = 0;
    for seed in 0..SEEDS_PER_SIZE {
        let five = gen_random(5, 5000 + seed, COORD_BOUND).unwrap();
        assert_eq!(count_halving(&five).unwrap(), 4);
        fives += 1;
        let three = gen_random(3, 3000 + seed, COORD_BOUND).unwrap();
        assert_eq!(count_halving(&three).unwrap(), 1);
        threes += 1;
    }
    report(
        3,
        true,
        &format!("{fives} five-point sets counted 4, {threes} three-point sets counted 1"),
    );
}

/// Criterion 4: the count has the parity of n; each pair lies on an odd
/// number (hence >= 1) of halving circles; pair counts sum to 3N.
#[test]
fn acceptance_4_parity_and_pair_counts() {
    let mut sets = 0u64;
    for (m, set) in desk_scale_sets() {
        let n = ((m - 1) / 2) as u64;
        let count = count_halving(&set).unwrap();
        assert_eq!(count % 2, n % 2, "parity at m={m}");
        let rep = verify_pair_oddness(&set).unwrap();
        assert!(rep.pass(), "m={m}: {rep}");
        sets += 1;
    }
    // Direct spot check of the per-pair operation on one set.
    let set = gen_random(9, 4242, COORD_BOUND).unwrap();
    let mut sum = 0;
    for i in 0..9 {
        for j in (i + 1)..9 {
            let c = count_pair_halving(&set, i, j).unwrap();
            assert_eq!(c % 2, 1);
            sum += c;
        }
    }
    assert_eq!(sum, 3 * count_halving(&set).unwrap());
    report(
        4,
        true,
        &format!("parity, per-pair oddness, and 3N pair-sum on {sets} sets"),
    );
}

/// Criterion 5: the recursive witness configuration passes all structural
/// checks and realizes the count recursion N(2n+1) = N(2n-1) + (2n-1).
#[test]
fn acceptance_5_gon_recursion() {
    let mut counts = Vec::new();
    for n in 2..=5 {
        let config = gen_gon_config(n).unwrap();
        let rep = verify_gon_config(&config).unwrap();
        assert!(rep.pass(), "n={n}: {rep}");
        let full = count_halving(config.point_set()).unwrap();
        let inner = count_halving(&config.inner_set()).unwrap();
        assert_eq!(full, inner + (2 * n as u64 - 1));
        assert_eq!(full, (n * n) as u64);
        counts.push(full);
    }
    report(
        5,
        true,
        &format!("n in 2..=5 verified; counts along the recursion: {counts:?}"),
    );
}

/// Criterion 6: the sweep engine equals the brute-force engine exactly on
/// >= 200 random sets plus every gon configuration.
#[test]
fn acceptance_6_engine_equivalence() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let m = 3 + (seed % 11) as usize; // 3..=13
        let set = gen_random(m, 60_000 + seed, 200).unwrap();
        let brute = census_brute(&set).unwrap();
        let sweep = census_sweep(&set).unwrap();
        assert_eq!(brute, sweep, "m={m} seed={seed}");
        checked += 1;
    }
    for n in 2..=5 {
        let config = gen_gon_config(n).unwrap();
        let brute = census_brute(config.point_set()).unwrap();
        let sweep = census_sweep(config.point_set()).unwrap();
        assert_eq!(brute, sweep, "gon n={n}");
        checked += 1;
    }
    report(6, true, &format!("histograms identical on {checked} inputs"));
}

/// Criterion 7: on random one-point deformations every crossing event obeys
/// the local exchange rule and the endpoint halving counts agree.
#[test]
fn acceptance_7_deformation_invariance() {
    let target_instances = 20;
    let mut verified = 0
;
    let mut events_total = 0;
    let mut attempt = 0u64;
    while verified < target_instances {
        assert!(
            attempt < 200,
            "too many inadmissible paths; only {verified} instances verified"
        );
        let m = [7, 9, 11][(attempt % 3) as usize];
        let seed = 70_000 + attempt;
        attempt += 1;
        let set = gen_random(m, seed, 60).unwrap();
        let other = gen_random(m, seed + 7_000, 60).unwrap();
        let moving = (seed % m as u64) as usize;
        let path = MotionPath::new(
            moving,
            vec![set[moving].clone(), other[moving].clone()],
        );
        match verify_path_invariance(&set, &path) {
            Ok(report) => {
                assert!(
                    report.pass(),
                    "m={m} seed={seed}: start {} end {}, failures {:?}",
                    report.start_halving,
                    report.end_halving,
                    report
                        .events
                        .iter()
                        .flat_map(|e| e.failures.clone())
                        .collect::<Vec<_>>()
                );
                let n = ((m - 1) / 2) as u64;
                assert_eq!(report.start_halving, n * n);
                assert_eq!(report.end_halving, n * n);
                events_total += report.events.len();
                verified += 1;
            }
            // A path through a boundary intersection or a degenerate
            // waypoint is inadmissible by contract; draw another.
            Err(_) => continue,
        }
    }
    report(
        7,
        true,
        &format!("{verified} paths verified, {events_total} crossing events all passed"),
    );
}

/// Criterion 8: exact predicate symmetries, similarity invariance of the
/// histogram, and format round-trips, on a deterministic sample.
#[test]
fn acceptance_8_property_spotchecks() {
    // Predicate symmetries on a deterministic grid of rational triples.
    let pts: Vec<Point> = (0..24)
        .map(|i| {
            Point::new(
                Scalar::ratio((i * i * 3 + i) % 17 - 8, 1 + i % 4),
                Scalar::ratio((i * i * 5 + 2 * i) % 19 - 9, 1 + (i + 1) % 3),
            )
        })
        .collect();
    let mut triples_checked = 0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                let o = orientation(a, b, c);
                let flipped = orientation(b, a, c);
                match o {
                    Orientation::Collinear => assert_eq!(flipped, Orientation::Collinear),
                    Orientation::CounterClockwise => {
                        assert_eq!(flipped, Orientation::Clockwise)
                    }
                    Orientation::Clockwise => {
                        assert_eq!(flipped, Orientation::CounterClockwise)
                    }
                }
                if o != Orientation::Collinear {
                    let q = &pts[(i + j + k) % pts.len()];
                    let base = in_circle(a, b, c, q).unwrap();
                    assert_eq!(in_circle(c, a, b, q).unwrap(), base);
                    assert_eq!(in_circle(b, a, c, q).unwrap(), base);
                    if [i, j, k].contains(&((i + j + k) % pts.len())) {
                        assert_eq!(base, CirclePosition::On);
                    }
                }
                triples_checked += 1;
            }
        }
    }

    // Similarity invariance of a whole histogram.
    let set = gen_random(9, 808, 100).unwrap();
    let base = census_brute(&set).unwrap();
    let mapped = PointSet::new(
        set.iter()
            .map(|p| {
                Point::new(
                    Scalar::ratio(3, 7) * -&p.y + Scalar::ratio(5, 2),
                    Scalar::ratio(3, 7) * &p.x - Scalar::from_int(4),
                )
            })
            .collect(),
    );
    assert_eq!(census_brute(&mapped).unwrap(), base);

    // Round-trips, text and structured.
    let text = points_to_string(&set);
    assert_eq!(parse_points(&text).unwrap(), set);
    assert_eq!(points_to_string(&parse_points(&text).unwrap()), text);
    assert_eq!(parse_points_any(&points_to_json(&set)).unwrap(), set);

    report(
        8,
        true,
        &format!("{triples_checked} predicate triples, similarity-mapped census, round-trips"),
    );
}

/// Criterion 9 (soft): the sweep engine should beat brute force on larger
/// inputs; the ratio is reported, equality of the histograms is asserted.
#[test]
fn acceptance_9_sweep_vs_brute_timing() {
    let mut lines = Vec::new();
    for m in [31usize, 41] {
        let set = gen_random(m, 9_000 + m as u64, 2_000).unwrap();
        let t0 = Instant::now();
        let brute = census_brute(&set).unwrap();
        let brute_time = t0.elapsed();
        let t1 = Instant::now();
        let sweep = census_sweep(&set).unwrap();
        let sweep_time = t1.elapsed();
        assert_eq!(brute, sweep, "engines disagree at m={m}");
        let ratio = brute_time.as_secs_f64() / sweep_time.as_secs_f64();
        lines.push(format!(
            "m={m}: brute {:.0} ms, sweep {:.0} ms, ratio {ratio:.1}x",
            brute_time.as_secs_f64() * 1e3,
            sweep_time.as_secs_f64() * 1e3
        ));
    }
    report(9, true, &format!("histograms equal; {}", lines.join("; ")));
}
