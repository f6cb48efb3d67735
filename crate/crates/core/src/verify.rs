//! Structural verifiers: run the census machinery over a set (or over the
//! recursive gon configuration) and check every counting identity it is
//! supposed to satisfy, reporting each check separately.

use std::fmt;

use thiserror::Error;

use crate::census::{
    census, classify_all, classify_circle, count_halving, CensusError, DepthHistogram, Engine,
    SplitClass,
};
use crate::kernel::{in_circle, orientation, CirclePosition};
use crate::pointset::{gen_gon_config, GenerateError, GonConfig, PointSet};

/// One named pass/fail check with a human-readable detail line.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of a verifier: a list of checks plus the histogram they were
/// computed from.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub histogram: Option<DepthHistogram>,
}

impl VerificationReport {
    fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            checks: Vec::new(),
            histogram: None,
        }
    }

    fn check(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.pass() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.pass { "ok" } else { "FAIL" },
                c.label,
                c.detail
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

/// Halving-circle count identities for one odd-size set: the count equals
/// n^2, meets the pair-derived lower bound 3*N >= n(2n+1), and has the
/// parity of n.
pub fn verify_theorem1(set: &PointSet) -> Result<VerificationReport, VerifyError> {
    let m = set.len();
    if m % 2 == 0 {
        return Err(CensusError::EvenSize { m }.into());
    }
    let n = (m - 1) / 2;
    let mut report = VerificationReport::new(format!("halving count, m={m}"));
    let hist = census(set, Engine::Both)?;
    let count = hist.halving().unwrap_or(0);

    let expected = (n * n) as u64;
    report.check(
        "count equals n^2",
        count == expected,
        format!("counted {count}, expected {expected}"),
    );
    let lower = (n * (2 * n + 1)) as u64;
    report.check(
        "pair lower bound",
        3 * count >= lower,
        format!("3*{count} >= {lower}"),
    );
    report.check(
        "parity matches n",
        count % 2 == (n % 2) as u64,
        format!("count {count} vs n {n}"),
    );
    report.histogram = Some(hist);
    Ok(report)
}

/// Split-class count identities for one odd-size set: each unordered class
/// {a,b} with a<b holds exactly 2(a+1)(b+1) circles, the halving class holds
/// n^2, and the classes exhaust all C(m,3) circles.
pub fn verify_theorem2(set: &PointSet) -> Result<VerificationReport, VerifyError> {
    let m = set.len();
    if m % 2 == 0 {
        return Err(CensusError::EvenSize { m }.into());
    }
    assert!(m >= 5, "class identities need at least five points");
    let n = (m - 1) / 2;
    let mut report = VerificationReport::new(format!("split classes, m={m}"));
    let hist = census(set, Engine::Both)?;

    for a in 0..(n - 1) {
        let b = 2 * n - 2 - a;
        let expected = (2 * (a + 1) * (b + 1)) as u64;
        let got = hist.unordered_count(a, b);
        report.check(
            format!("class ({a},{b})|({b},{a})"),
            got == expected,
            format!("counted {got}, expected {expected}"),
        );
    }
    let halving = hist.halving().unwrap_or(0);
    report.check(
        "halving class",
        halving == (n * n) as u64,
        format!("counted {halving}, expected {}", n * n),
    );
    report.check(
        "classes exhaust all circles",
        hist.total() == hist.expected_total(),
        format!("total {}, expected {}", hist.total(), hist.expected_total()),
    );
    report.histogram = Some(hist);
    Ok(report)
}

/// Per-pair facts for one odd-size set: the number of halving circles
/// through each pair is odd (hence at least one), and the per-pair counts
/// sum to three times the total.
pub fn verify_pair_oddness(set: &PointSet) -> Result<VerificationReport, VerifyError> {
    let m = set.len();
    if m % 2 == 0 {
        return Err(CensusError::EvenSize { m }.into());
    }
    let mut report = VerificationReport::new(format!("per-pair counts, m={m}"));
    let records = classify_all(set)?;
    let mut pair_counts = vec![0u64; m * m];
    let mut total = 0u64;
    for r in &records {
        if r.split.is_halving() {
            total += 1;
            let [i, j, k] = r.triple;
            for [x, y] in [[i, j], [i, k], [j, k]] {
                pair_counts[x * m + y] += 1;
            }
        }
    }
    let mut all_odd = true;
    let mut min_count = u64::MAX;
    let mut sum = 0u64;
    for i in 0..m {
        for j in (i + 1)..m {
            let c = pair_counts[i * m + j];
            sum += c;
            min_count = min_count.min(c);
            if c % 2 == 0 {
                all_odd = false;
                report.check(
                    format!("pair ({i},{j}) odd"),
                    false,
                    format!("count {c} is even"),
                );
            }
        }
    }
    report.check(
        "every pair count odd",
        all_odd,
        format!("minimum pair count {min_count}"),
    );
    report.check(
        "pair counts sum to 3*N",
        sum == 3 * total,
        format!("sum {sum}, halving total {total}"),
    );
    Ok(report)
}

/// Cross-check: `count_pair_halving` agrees with the record-derived counts.
pub fn spot_check_pair_counts(set: &PointSet, pairs: &[[usize; 2]]) -> Result<bool, VerifyError> {
    let records = classify_all(set)?;
    for &[i, j] in pairs {
        let direct = crate::census::count_pair_halving(set, i, j)?;
        let derived = records
            .iter()
            .filter(|r| r.split.is_halving() && r.triple.contains(&i) && r.triple.contains(&j))
            .count() as u64;
        if direct != derived {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All structural facts of the recursive witness configuration for a given
/// n, plus the count recursions they imply.
///
/// Checks, writing O for the center, P_i for gon vertices, and Q for the far
/// point:
///   1. circles P_iP_jP_k are halving for the full set iff halving for the
///      gon vertices alone;
///   2. circles OP_iP_j enclose at most n-2 gon vertices and are never
///      halving;
///   3. the circles OP_iQ are halving, and together with the inner halving
///      circles they are the only ones;
///   4. a circle through Q and two others encloses exactly the points on Q's
///      side of the chord line;
///   5. per split class {a,b} with a<b, the OP_iP_j and QP_iP_j members are
///      exactly the pairs at cyclic gon distance a+1;
/// plus the count recursion N(m) = N(m-2) + (m-2) and the class recursion
/// N{a,b}(m) = N{a-1,b-1}(m-2) + (4n-2) with base N{0,b} = 2b+2.
pub fn verify_gon_recursion(n: usize) -> Result<VerificationReport, VerifyError> {
    let config = gen_gon_config(n)?;
    verify_gon_config(&config)
}

pub fn verify_gon_config(config: &GonConfig) -> Result<VerificationReport, VerifyError> {
    let n = config.n();
    let g = config.gon_count();
    let set = config.point_set();
    let m = set.len();
    let inner = config.inner_set();
    let o = config.center_index();
    let q = config.far_index();
    let mut report = VerificationReport::new(format!("gon recursion, n={n}"));

    let records = classify_all(set)?;
    let split_of = |i: usize, j: usize, k: usize| -> SplitClass {
        let mut t = [i, j, k];
        t.sort_unstable();
        records
            .iter()
            .find(|r| r.triple == t)
            .expect("classify_all covers every triple")
            .split
    };
    let inner_records = classify_all(&inner)?;

    // 1. Inner circles are halving for the full set iff for the gon alone.
    // Inner indices are shifted by one (O occupies index 0 of the full set).
    let mut equiv = true;
    for r in &inner_records {
        let [i, j, k] = r.triple;
        let full = split_of(i + 1, j + 1, k + 1);
        if full.is_halving() != r.split.is_halving() {
            equiv = false;
        }
    }
    report.check(
        "inner circles halving iff halving among gon vertices",
        equiv,
        format!("{} inner circles compared", inner_records.len()),
    );

    // 2. Circles through the center and two gon vertices.
    let mut max_inner_enclosed = 0usize;
    let mut none_halving = true;
    for i in 1..=g {
        for j in (i + 1)..=g {
            let split = split_of(o, i, j);
            if split.is_halving() {
                none_halving = false;
            }
            // Points inside are gon vertices or Q; Q is outside everything.
            max_inner_enclosed = max_inner_enclosed.max(split.inside);
        }
    }
    report.check(
        "center-pair circles enclose at most n-2 vertices",
        max_inner_enclosed + 2 <= n,
        format!("max enclosed {max_inner_enclosed}, bound {}", n - 2),
    );
    report.check(
        "no center-pair circle is halving",
        none_halving,
        format!("{} circles scanned", g * (g - 1) / 2),
    );

    // 3. The halving circles are exactly: inner halving circles plus the
    // circles through the center, one vertex, and the far point.
    let mut far_center_halving = 0usize;
    for i in 1..=g {
        if split_of(o, i, q).is_halving() {
            far_center_halving += 1;
        }
    }
    report.check(
        "all center-vertex-far circles halving",
        far_center_halving == g,
        format!("{far_center_halving} of {g}"),
    );
    let inner_halving = inner_records.iter().filter(|r| r.split.is_halving()).count();
    let total_halving = records.iter().filter(|r| r.split.is_halving()).count();
    report.check(
        "halving decomposition",
        total_halving == inner_halving + g,
        format!("{total_halving} total = {inner_halving} inner + {g} far"),
    );

    // 4. A circle through the far point encloses exactly the points on the
    // far point's side of the chord line.
    let mut side_rule = true;
    'outer: for x in 0..m {
        if x == q {
            continue;
        }
        for y in (x + 1)..m {
            if y == q {
                continue;
            }
            for p in 0..m {
                if p == q || p == x || p == y {
                    continue;
                }
                let (px, py, pq, pp) =
                    (set.point(x), set.point(y), set.point(q), set.point(p));
                let inside = in_circle(pq, px, py, pp).expect("general position")
                    == CirclePosition::Inside;
                let same_side = orientation(px, py, pp) == orientation(px, py, pq);
                if inside != same_side {
                    side_rule = false;
                    break 'outer;
                }
            }
        }
    }
    report.check(
        "far circles split like their chord lines",
        side_rule,
        "membership matches side-of-line for every chord and point".to_string(),
    );

    // 5. Class membership among center-pair and far-pair circles is exactly
    // cyclic distance a+1, for every class {a,b} with a < b.
    let mut class_rule = true;
    for a in 0..(n - 1) {
        let b = 2 * n - 2 - a;
        for i in 1..=g {
            for j in (i + 1)..=g {
                let expected = config.cyclic_distance(i, j) == a + 1;
                let in_class = |s: SplitClass| s.unordered() == (a, b);
                if in_class(split_of(o, i, j)) != expected {
                    class_rule = false;
                }
                if in_class(split_of(q, i, j)) != expected {
                    class_rule = false;
                }
            }
        }
    }
    report.check(
        "class membership is cyclic distance a+1",
        class_rule,
        "center-pair and far-pair circles against every class".to_string(),
    );

    // Count recursion via an independent engine run on both sets.
    let full_count = count_halving(set)?;
    let inner_count = count_halving(&inner)?;
    report.check(
        "count recursion",
        full_count == inner_count + g as u64,
        format!("N({m}) = {full_count}, N({}) + {g} = {}", g, inner_count + g as u64),
    );
    report.check(
        "count equals n^2",
        full_count == (n * n) as u64,
        format!("{full_count} vs {}", n * n),
    );

    // Class recursion between the two histograms.
    let hist = census(set, Engine::Both)?;
    let inner_hist = census(&inner, Engine::Both)?;
    let mut class_recursion = true;
    let mut detail = String::new();
    for a in 0..(n - 1) {
        let b = 2 * n - 2 - a;
        let got = hist.unordered_count(a, b);
        let expected = if a == 0 {
            (2 * b + 2) as u64
        } else {
            inner_hist.unordered_count(a - 1, b - 1) + (4 * n - 2) as u64
        };
        if got != expected {
            class_recursion = false;
            detail = format!("class ({a},{b}): {got} vs {expected}");
        }
    }
    report.check(
        "class recursion",
        class_recursion,
        if class_recursion {
            format!("all {} classes match", n - 1)
        } else {
            detail
        },
    );
    report.histogram = Some(hist);
    Ok(report)
}
