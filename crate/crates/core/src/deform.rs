//! One-point deformation verifier.
//!
//! Move one point of the set along a rational polyline while the others stay
//! fixed. The split of any circle can only change when the moving point
//! crosses a boundary: a line through two, or a circle through three, of the
//! static points. Along one polyline edge each line boundary is an affine
//! polynomial in the edge parameter and each circle boundary a quadratic, so
//! every crossing can be isolated exactly by sign bisection on rationals.
//! At each isolated crossing the local exchange rule is then checked by a
//! full census strictly before and strictly after the event.

use std::fmt;

use thiserror::Error;

use crate::census::{
    census_brute, classify_all, count_halving, CensusError, CircleRecord, DepthHistogram,
    SplitClass,
};
use crate::kernel::{orientation_det, Point, Scalar};
use crate::pointset::{PointSet, Violation};

/// A polyline motion for one point of the set. The first waypoint is the
/// moving point's starting position (it overrides the coordinate stored in
/// the set); consecutive waypoints must differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionPath {
    pub moving: usize,
    pub waypoints: Vec<Point>,
}

impl MotionPath {
    pub fn new(moving: usize, waypoints: Vec<Point>) -> Self {
        MotionPath { moving, waypoints }
    }

    pub fn segments(&self) -> usize {
        self.waypoints.len().saturating_sub(1)
    }

    pub fn start(&self) -> &Point {
        self.waypoints.first().expect("validated non-empty")
    }

    pub fn end(&self) -> &Point {
        self.waypoints.last().expect("validated non-empty")
    }
}

/// A line or circle determined by static points, identified by their indices
/// in the full set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Boundary {
    Line([usize; 2]),
    Circle([usize; 3]),
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Line([i, j]) => write!(f, "line({i},{j})"),
            Boundary::Circle([i, j, k]) => write!(f, "circle({i},{j},{k})"),
        }
    }
}

/// One isolated transversal boundary crossing on a polyline edge.
///
/// `bracket` is a rational sub-interval of [0,1] containing exactly one root
/// of the boundary polynomial; the samples lie outside it, have opposite
/// boundary signs, and leave every other boundary's sign unchanged.
#[derive(Debug, Clone)]
pub struct CrossingEvent {
    pub moving: usize,
    pub segment: usize,
    pub boundary: Boundary,
    pub bracket: (Scalar, Scalar),
    pub before_sample: Scalar,
    pub after_sample: Scalar,
    seg_start: Point,
    seg_dir: Point,
}

impl CrossingEvent {
    /// Moving-point position at edge parameter `lambda`.
    pub fn position_at(&self, lambda: &Scalar) -> Point {
        Point::new(
            &self.seg_start.x + lambda * &self.seg_dir.x,
            &self.seg_start.y + lambda * &self.seg_dir.y,
        )
    }

    pub fn config_before(&self, set: &PointSet) -> PointSet {
        set.with_point_at(self.moving, self.position_at(&self.before_sample))
    }

    pub fn config_after(&self, set: &PointSet) -> PointSet {
        set.with_point_at(self.moving, self.position_at(&self.after_sample))
    }
}

/// Split transitions observed at one crossing, with the rule verdicts.
#[derive(Debug, Clone)]
pub struct ExchangeReport {
    pub boundary: Boundary,
    pub segment: usize,
    /// Triples whose split changed, with (before, after).
    pub changed: Vec<([usize; 3], SplitClass, SplitClass)>,
    pub histogram_before: DepthHistogram,
    pub histogram_after: DepthHistogram,
    pub failures: Vec<String>,
}

impl ExchangeReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of checking a whole path: every event's exchange plus equality of
/// the halving counts at the two endpoints.
#[derive(Debug)]
pub struct PathReport {
    pub events: Vec<ExchangeReport>,
    pub start_halving: u64,
    pub end_halving: u64,
}

impl PathReport {
    pub fn pass(&self) -> bool {
        self.start_halving == self.end_halving && self.events.iter().all(|e| e.pass())
    }
}

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("moving index {index} out of range for a {len}-point set")]
    MovingIndexOutOfRange { index: usize, len: usize },
    #[error("path needs at least one waypoint")]
    EmptyPath,
    #[error("consecutive waypoints {0} and {1} coincide")]
    RepeatedWaypoint(usize, usize),
    #[error("configuration at waypoint {waypoint} is not in general position ({violation}); perturb the path")]
    DegenerateWaypoint {
        waypoint: usize,
        violation: Violation,
    },
    #[error("segment {segment}: crossings of {first} and {second} could not be separated; the path passes through or extremely near a boundary intersection, perturb it")]
    SimultaneousCrossing {
        segment: usize,
        first: Boundary,
        second: Boundary,
    },
    #[error("segment {segment}: tangential contact with {boundary} (root without sign change); perturb the path")]
    TangentialContact { segment: usize, boundary: Boundary },
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Boundary predicate restricted to one polyline edge: a polynomial of
/// degree at most two in the edge parameter, with exact rational
/// coefficients. Sign conventions match the kernel predicates (positive
/// means left-of-line / inside-circle).
struct EdgePoly {
    boundary: Boundary,
    coeffs: [Scalar; 3],
}

impl EdgePoly {
    fn sign_at(&self, lambda: &Scalar) -> i32 {
        let [c0, c1, c2] = &self.coeffs;
        ((c2 * lambda + c1) * lambda + c0).signum()
    }

    fn line(set: &PointSet, i: usize, j: usize, w0: &Point, dir: &Point) -> EdgePoly {
        let a = set.point(i);
        let b = set.point(j);
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        let c0 = &dx * (&w0.y - &a.y) - &dy * (&w0.x - &a.x);
        let c1 = &dx * &dir.y - &dy * &dir.x;
        EdgePoly {
            boundary: Boundary::Line([i, j]),
            coeffs: [c0, c1, Scalar::zero()],
        }
    }

    /// In-circle determinant of the static triple and the moving point,
    /// expanded by cofactors along the moving row and normalized by the
    /// triple's orientation so that positive means inside.
    fn circle(set: &PointSet, i: usize, j: usize, k: usize, w0: &Point, dir: &Point) -> EdgePoly {
        let (a, b, c) = (set.point(i), set.point(j), set.point(k));
        let sq = |p: &Point| &p.x * &p.x + &p.y * &p.y;
        let (sa, sb, sc) = (sq(a), sq(b), sq(c));
        let det3 = |r: [[&Scalar; 3]; 3]| -> Scalar {
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        };
        // Minors of the static rows (x, y, |p|^2, 1) by deleted column.
        let m41 = det3([[&a.y, &sa, &Scalar::one()], [&b.y, &sb, &Scalar::one()], [
            &c.y, &sc, &Scalar::one(),
        ]]);
        let m42 = det3([[&a.x, &sa, &Scalar::one()], [&b.x, &sb, &Scalar::one()], [
            &c.x, &sc, &Scalar::one(),
        ]]);
        let m43 = det3([[&a.x, &a.y, &Scalar::one()], [&b.x, &b.y, &Scalar::one()], [
            &c.x, &c.y, &Scalar::one(),
        ]]);
        let m44 = det3([[&a.x, &a.y, &sa], [&b.x, &b.y, &sb], [&c.x, &c.y, &sc]]);
        debug_assert_eq!(m43, orientation_det(a, b, c));
        debug_assert!(!m43.is_zero(), "static triple must not be collinear");

        let w0_sq = sq(w0);
        let w0_dot_dir = &w0.x * &dir.x + &w0.y * &dir.y;
        let dir_sq = sq(dir);
        let two = Scalar::from_int(2);

        let c0 = -(&m41) * &w0.x + &m42 * &w0.y - &m43 * &w0_sq + &m44;
        let c1 = -(&m41) * &dir.x + &m42 * &dir.y - &m43 * (&two * &w0_dot_dir);
        let c2 = -(&m43) * &dir_sq;

        let sigma = Scalar::from_int(m43.signum() as i64);
        EdgePoly {
            boundary: Boundary::Circle([i, j, k]),
            coeffs: [&sigma * &c0, &sigma * &c1, sigma * c2],
        }
    }
}

/// Isolating interval with a verified sign change.
#[derive(Clone)]
struct RootBracket {
    lo: Scalar,
    hi: Scalar,
    sign_lo: i32,
}

impl RootBracket {
    /// One bisection step. The bracketed root is simple, so an exact hit at
    /// the midpoint shrinks symmetrically around it.
    fn refine(&mut self, poly: &EdgePoly) {
        let half = Scalar::ratio(1, 2);
        let mid = (&self.lo + &self.hi) * &half;
        match poly.sign_at(&mid) {
            0 => {
                self.lo = (&self.lo + &mid) * &half;
                self.hi = (&mid + &self.hi) * &half;
                debug_assert_eq!(poly.sign_at(&self.lo), self.sign_lo);
            }
            s if s == self.sign_lo => self.lo = mid,
            _ => self.hi = mid,
        }
    }
}

enum RootsInUnit {
    None,
    Brackets(Vec<RootBracket>),
    Tangential,
}

/// Sign-change roots of the edge polynomial strictly inside (0,1). Assumes
/// nonzero values at both endpoints (guaranteed by waypoint validation).
fn isolate_unit_roots(poly: &EdgePoly) -> RootsInUnit {
    let [c0, c1, c2] = &poly.coeffs;
    let zero = Scalar::zero();
    let one = Scalar::one();

    if c2.is_zero() {
        if c1.is_zero() {
            return RootsInUnit::None;
        }
        let root = -(c0) / c1;
        if root <= zero || root >= one {
            return RootsInUnit::None;
        }
        // Any sub-interval around a simple affine root works; pick a
        // narrow one inside (0,1).
        let quarter = Scalar::ratio(1, 4);
        let lo = &root * (Scalar::one() - &quarter);
        let hi = &root + (&one - &root) * &quarter;
        let sign_lo = poly.sign_at(&lo);
        debug_assert!(sign_lo != 0 && poly.sign_at(&hi) == -sign_lo);
        return RootsInUnit::Brackets(vec![RootBracket { lo, hi, sign_lo }]);
    }

    let four = Scalar::from_int(4);
    let discriminant = c1 * c1 - four * c2 * c0;
    match discriminant.signum() {
        -1 => RootsInUnit::None,
        0 => {
            let root = -(c1) / (Scalar::from_int(2) * c2);
            if root > zero && root < one {
                RootsInUnit::Tangential
            } else {
                RootsInUnit::None
            }
        }
        _ => {
            let vertex = -(c1) / (Scalar::from_int(2) * c2);
            let mut candidates: Vec<(Scalar, Scalar)> = Vec::new();
            if vertex > zero && vertex < one {
                candidates.push((zero.clone(), vertex.clone()));
                candidates.push((vertex, one.clone()));
            } else {
                candidates.push((zero.clone(), one.clone()));
            }
            let mut out = Vec::new();
            for (lo, hi) in candidates {
                let sign_lo = poly.sign_at(&lo);
                let sign_hi = poly.sign_at(&hi);
                debug_assert!(sign_lo != 0, "roots at subdivision points excluded");
                debug_assert!(sign_hi != 0);
                if sign_lo != sign_hi {
                    out.push(RootBracket { lo, hi, sign_lo });
                }
            }
            if out.is_empty() {
                RootsInUnit::None
            } else {
                RootsInUnit::Brackets(out)
            }
        }
    }
}

const SEPARATION_ROUNDS: usize = 220;

/// All boundary crossings along the path, isolated into disjoint brackets
/// and returned in path order with verified before/after samples.
pub fn find_crossings(
    set: &PointSet,
    path: &MotionPath,
) -> Result<Vec<CrossingEvent>, DeformError> {
    validate_path(set, path)?;
    let statics: Vec<usize> = (0..set.len()).filter(|&i| i != path.moving).collect();

    let mut events = Vec::new();
    for seg in 0..path.segments() {
        let w0 = &path.waypoints[seg];
        let w1 = &path.waypoints[seg + 1];
        let dir = Point::new(&w1.x - &w0.x, &w1.y - &w0.y);

        let mut polys: Vec<EdgePoly> = Vec::new();
        for (ai, &i) in statics.iter().enumerate() {
            for &j in &statics[(ai + 1)..] {
                polys.push(EdgePoly::line(set, i, j, w0, &dir));
            }
        }
        for (ai, &i) in statics.iter().enumerate() {
            for (bi, &j) in statics.iter().enumerate().skip(ai + 1) {
                for &k in &statics[(bi + 1)..] {
                    polys.push(EdgePoly::circle(set, i, j, k, w0, &dir));
                }
            }
        }

        let mut brackets: Vec<(usize, RootBracket)> = Vec::new();
        for (idx, poly) in polys.iter().enumerate() {
            match isolate_unit_roots(poly) {
                RootsInUnit::None => {}
                RootsInUnit::Tangential => {
                    return Err(DeformError::TangentialContact {
                        segment: seg,
                        boundary: poly.boundary,
                    })
                }
                RootsInUnit::Brackets(list) => {
                    brackets.extend(list.into_iter().map(|b| (idx, b)));
                }
            }
        }

        separate_brackets(&mut brackets, &polys, seg)?;
        brackets.sort_by(|a, b| a.1.lo.cmp(&b.1.lo));

        // Samples: midpoints of the gaps between consecutive brackets,
        // bounded by the segment endpoints.
        let half = Scalar::ratio(1, 2);
        for pos in 0..brackets.len() {
            let before_edge = if pos == 0 {
                Scalar::zero()
            } else {
                brackets[pos - 1].1.hi.clone()
            };
            let after_edge = if pos + 1 == brackets.len() {
                Scalar::one()
            } else {
                brackets[pos + 1].1.lo.clone()
            };
            let (poly_idx, bracket) = &brackets[pos];
            let before_sample = (&before_edge + &bracket.lo) * &half;
            let after_sample = (&bracket.hi + &after_edge) * &half;
            let event = CrossingEvent {
                moving: path.moving,
                segment: seg,
                boundary: polys[*poly_idx].boundary,
                bracket: (bracket.lo.clone(), bracket.hi.clone()),
                before_sample,
                after_sample,
                seg_start: w0.clone(),
                seg_dir: dir.clone(),
            };
            validate_event(&event, &polys, *poly_idx)?;
            events.push(event);
        }
    }
    Ok(events)
}

fn validate_path(set: &PointSet, path: &MotionPath) -> Result<(), DeformError> {
    if path.moving >= set.len() {
        return Err(DeformError::MovingIndexOutOfRange {
            index: path.moving,
            len: set.len(),
        });
    }
    if path.waypoints.is_empty() {
        return Err(DeformError::EmptyPath);
    }
    for (i, pair) in path.waypoints.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(DeformError::RepeatedWaypoint(i, i + 1));
        }
    }
    // Every waypoint configuration must be in general position; this also
    // guarantees the static subset is, and that no boundary polynomial
    // vanishes at a segment endpoint.
    for (w, waypoint) in path.waypoints.iter().enumerate() {
        let config = set.with_point_at(path.moving, waypoint.clone());
        let report = config.check_general_position();
        if let Some(violation) = report.first_violation() {
            return Err(DeformError::DegenerateWaypoint {
                waypoint: w,
                violation,
            });
        }
    }
    Ok(())
}

/// Refine overlapping brackets until all are pairwise disjoint with strict
/// gaps. Exact coincidence of two crossings never separates; give up after
/// a fixed number of rounds and report it.
fn separate_brackets(
    brackets: &mut [(usize, RootBracket)],
    polys: &[EdgePoly],
    segment: usize,
) -> Result<(), DeformError> {
    for _ in 0..SEPARATION_ROUNDS {
        brackets.sort_by(|a, b| a.1.lo.cmp(&b.1.lo));
        let mut any_overlap = false;
        for i in 1..brackets.len() {
            if brackets[i].1.lo <= brackets[i - 1].1.hi {
                any_overlap = true;
                let poly_prev = brackets[i - 1].0;
                let poly_this = brackets[i].0;
                brackets[i - 1].1.refine(&polys[poly_prev]);
                brackets[i].1.refine(&polys[poly_this]);
            }
        }
        if !any_overlap {
            return Ok(());
        }
    }
    brackets.sort_by(|a, b| a.1.lo.cmp(&b.1.lo));
    let clash = (1..brackets.len())
        .find(|&i| brackets[i].1.lo <= brackets[i - 1].1.hi)
        .expect("loop exited with an overlap");
    Err(DeformError::SimultaneousCrossing {
        segment,
        first: polys[brackets[clash - 1].0].boundary,
        second: polys[brackets[clash].0].boundary,
    })
}

/// The event's own boundary must flip sign between the samples and every
/// other boundary must not.
fn validate_event(
    event: &CrossingEvent,
    polys: &[EdgePoly],
    own_idx: usize,
) -> Result<(), DeformError> {
    for (idx, poly) in polys.iter().enumerate() {
        let before = poly.sign_at(&event.before_sample);
        let after = poly.sign_at(&event.after_sample);
        if before == 0 || after == 0 {
            return Err(DeformError::Internal(format!(
                "sample lies on {} at event {}",
                poly.boundary, event.boundary
            )));
        }
        if idx == own_idx && before == after {
            return Err(DeformError::Internal(format!(
                "no sign change across event {}",
                event.boundary
            )));
        }
        if idx != own_idx && before != after {
            return Err(DeformError::Internal(format!(
                "{} also changes sign across event {}",
                poly.boundary, event.boundary
            )));
        }
    }
    Ok(())
}

fn census_at_sample(config: &PointSet) -> Result<Vec<CircleRecord>, DeformError> {
    classify_all(config).map_err(|e| match e {
        CensusError::NotGeneralPosition(v) => {
            DeformError::Internal(format!("verified sample is degenerate: {v}"))
        }
        other => DeformError::Census(other),
    })
}

fn histogram_of(m: usize, records: &[CircleRecord]) -> DepthHistogram {
    let mut hist = DepthHistogram::new(m);
    for r in records {
        hist.record(r.split);
    }
    hist
}

/// Check the local exchange rule at one crossing.
///
/// Line boundary: only the circle through the moving point and the line's
/// pair may change, and its split swaps sides. Circle boundary: exactly the
/// four circles on the involved quadruple change, trading two (a,b) and two
/// (a-1,b+1) splits for each other. In both cases every unordered class
/// count, in particular the halving count, is preserved.
pub fn verify_crossing_exchange(
    set: &PointSet,
    event: &CrossingEvent,
) -> Result<ExchangeReport, DeformError> {
    let records_before = census_at_sample(&event.config_before(set))?;
    let records_after = census_at_sample(&event.config_after(set))?;
    exchange_report(set, event, &records_before, &records_after)
}

fn exchange_report(
    set: &PointSet,
    event: &CrossingEvent,
    records_before: &[CircleRecord],
    records_after: &[CircleRecord],
) -> Result<ExchangeReport, DeformError> {
    let m = set.len();

    let mut changed = Vec::new();
    for (rb, ra) in records_before.iter().zip(records_after) {
        debug_assert_eq!(rb.triple, ra.triple);
        if rb.split != ra.split {
            changed.push((rb.triple, rb.split, ra.split));
        }
    }

    let mut failures = Vec::new();
    let sorted = |mut t: [usize; 3]| {
        t.sort_unstable();
        t
    };

    match event.boundary {
        Boundary::Line([i, j]) => {
            let own = sorted([event.moving, i, j]);
            for &(triple, _, _) in &changed {
                if triple != own {
                    failures.push(format!(
                        "split of circle {triple:?} changed at a line crossing of ({i},{j})"
                    ));
                }
            }
            match changed.iter().find(|(t, _, _)| *t == own) {
                Some(&(_, before, after)) => {
                    if before.inside != after.outside || before.outside != after.inside {
                        failures.push(format!(
                            "circle {own:?} changed {before} -> {after}, expected a side swap"
                        ));
                    }
                }
                None => {
                    // A swap of an equal split is invisible; anything else
                    // must show up.
                    let rec = records_before
                        .iter()
                        .find(|r| r.triple == own)
                        .expect("triple enumerated");
                    if !rec.split.is_halving() {
                        failures.push(format!(
                            "circle {own:?} with split {} did not change at its line crossing",
                            rec.split
                        ));
                    }
                }
            }
        }
        Boundary::Circle([i, j, k]) => {
            let quad = [
                sorted([i, j, k]),
                sorted([event.moving, i, j]),
                sorted([event.moving, i, k]),
                sorted([event.moving, j, k]),
            ];
            for &(triple, _, _) in &changed {
                if !quad.contains(&triple) {
                    failures.push(format!(
                        "split of circle {triple:?} changed at a circle crossing of ({i},{j},{k})"
                    ));
                }
            }
            if changed.len() != 4 {
                failures.push(format!(
                    "expected all four circles on the quadruple to change, got {}",
                    changed.len()
                ));
            }
            // The static circle's transition fixes the traded pair of splits.
            let static_triple = sorted([i, j, k]);
            if let Some(&(_, s_before, s_after)) =
                changed.iter().find(|(t, _, _)| *t == static_triple)
            {
                let delta = s_after.inside as i64 - s_before.inside as i64;
                if delta.abs() != 1 {
                    failures.push(format!(
                        "static circle changed {s_before} -> {s_after}, expected a one-point trade"
                    ));
                }
                let mut with_static = 0;
                let mut against_static = 0;
                for &(_, before, after) in &changed {
                    if (before, after) == (s_before, s_after) {
                        with_static += 1;
                    } else if (before, after) == (s_after, s_before) {
                        against_static += 1;
                    } else {
                        failures.push(format!(
                            "circle transition {before} -> {after} is outside the traded pair {s_before} <-> {s_after}"
                        ));
                    }
                }
                if with_static != 2 || against_static != 2 {
                    failures.push(format!(
                        "trade is {with_static} forward and {against_static} backward, expected two each"
                    ));
                }
            } else {
                failures.push("the crossed circle's own split did not change".to_string());
            }
        }
    }

    let histogram_before = histogram_of(m, records_before);
    let histogram_after = histogram_of(m, records_after);
    if histogram_before.unordered_classes() != histogram_after.unordered_classes() {
        failures.push("unordered class counts differ across the event".to_string());
    }
    if m % 2 == 1 && m >= 3 {
        let half = (m - 3) / 2;
        if histogram_before.get(half, half) != histogram_after.get(half, half) {
            failures.push("halving count changed across the event".to_string());
        }
    }

    Ok(ExchangeReport {
        boundary: event.boundary,
        segment: event.segment,
        changed,
        histogram_before,
        histogram_after,
        failures,
    })
}

/// Find all crossings of the path, verify the exchange at each one, and
/// compare the halving counts at the two endpoints.
pub fn verify_path_invariance(
    set: &PointSet,
    path: &MotionPath,
) -> Result<PathReport, DeformError> {
    if set.len() % 2 == 0 {
        return Err(CensusError::EvenSize { m: set.len() }.into());
    }
    let crossings = find_crossings(set, path)?;
    let mut events = Vec::with_capacity(crossings.len());
    // Consecutive events share a sample: the after-census of one event is
    // the before-census of the next, so carry it over.
    let mut carried: Option<((usize, Scalar), Vec<CircleRecord>)> = None;
    for event in &crossings {
        let key = (event.segment, event.before_sample.clone());
        let records_before = match carried.take() {
            Some((k, records)) if k == key => records,
            _ => census_at_sample(&event.config_before(set))?,
        };
        let records_after = census_at_sample(&event.config_after(set))?;
        events.push(exchange_report(set, event, &records_before, &records_after)?);
        carried = Some(((event.segment, event.after_sample.clone()), records_after));
    }
    let start_config = set.with_point_at(path.moving, path.start().clone());
    let end_config = set.with_point_at(path.moving, path.end().clone());
    let start_halving = count_halving(&start_config)?;
    let end_halving = count_halving(&end_config)?;
    // Belt and braces: the event chain already implies endpoint equality of
    // every unordered class, not just the halving cell.
    debug_assert_eq!(
        census_brute(&start_config)?.unordered_classes(),
        census_brute(&end_config)?.unordered_classes()
    );
    Ok(PathReport {
        events,
        start_halving,
        end_halving,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{in_circle, orientation, CirclePosition, Orientation};
    use crate::pointset::gen_random;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    /// Static triangle, moving point crossing one side's extension once.
    #[test]
    fn single_line_crossing_detected() {
        let set = PointSet::new(vec![pt(0, 0), pt(10, 1), pt(3, 9), pt(30, 10)]);
        // Point 3 dips across the extension of the line through 0 and 1
        // (y = x/10), far away from the triangle, its other side lines, and
        // its circumcircle.
        let path = MotionPath::new(3, vec![pt(30, 10), pt(31, -10)]);
        let events = find_crossings(&set, &path).unwrap();
        assert_eq!(events.len(), 1, "events: {events:?}");
        assert_eq!(events[0].boundary, Boundary::Line([0, 1]));
    }

    /// A chord path through a static circumcircle crosses it exactly twice.
    #[test]
    fn chord_path_crosses_circle_twice() {
        let set = PointSet::new(vec![pt(-10, 0), pt(10, 0), pt(0, 10), pt(-30, 41)]);
        // Circumcircle of the static triple is centered at (0,0) radius 10.
        // A horizontal traverse at height 41 -> 1 dips through it.
        let path = MotionPath::new(3, vec![pt(-30, 41), pt(-29, 1), pt(30, 2)]);
        let events = find_crossings(&set, &path).unwrap();
        let circle_events: Vec<_> = events
            .iter()
            .filter(|e| e.boundary == Boundary::Circle([0, 1, 2]))
            .collect();
        assert_eq!(circle_events.len(), 2, "events: {events:?}");
    }

    #[test]
    fn waypoint_on_boundary_is_rejected() {
        let set = PointSet::new(vec![pt(0, 0), pt(10, 0), pt(3, 9), pt(5, 17)]);
        // Second waypoint collinear with points 0 and 1.
        let path = MotionPath::new(3, vec![pt(5, 17), pt(6, 0)]);
        let err = find_crossings(&set, &path).unwrap_err();
        assert!(matches!(err, DeformError::DegenerateWaypoint { waypoint: 1, .. }));
    }

    #[test]
    fn path_through_boundary_intersection_is_rejected() {
        // Two static lines (y = x and y = -x) meet at the origin; a vertical
        // path through the origin crosses both at the same parameter.
        let set = PointSet::new(vec![
            pt(-10, -10),
            pt(10, 10),
            pt(-5, 5),
            pt(6, -6),
            pt(-3, 40),
        ]);
        let path = MotionPath::new(4, vec![pt(0, 40), pt(0, -41)]);
        let err = find_crossings(&set, &path).unwrap_err();
        assert!(
            matches!(err, DeformError::SimultaneousCrossing { .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn event_samples_match_kernel_predicates() {
        // Oracle: recompute every boundary predicate at both samples with
        // the kernel predicates directly; exactly one differs per event.
        let set = gen_random(7, 91, 60).unwrap();
        let target = gen_random(7, 92, 60).unwrap();
        let path = MotionPath::new(2, vec![set[2].clone(), target[2].clone()]);
        let events = find_crossings(&set, &path).unwrap();
        assert!(!events.is_empty(), "trivial path, pick other seeds");

        let statics: Vec<usize> = (0..7).filter(|&i| i != 2).collect();
        for event in &events {
            let before = event.config_before(&set);
            let after = event.config_after(&set);
            let mut diffs = Vec::new();
            for (ai, &i) in statics.iter().enumerate() {
                for &j in &statics[(ai + 1)..] {
                    let ob = orientation(before.point(i), before.point(j), before.point(2));
                    let oa = orientation(after.point(i), after.point(j), after.point(2));
                    assert_ne!(ob, Orientation::Collinear);
                    assert_ne!(oa, Orientation::Collinear);
                    if ob != oa {
                        diffs.push(Boundary::Line([i, j]));
                    }
                }
            }
            for (ai, &i) in statics.iter().enumerate() {
                for (bi, &j) in statics.iter().enumerate().skip(ai + 1) {
                    for &k in &statics[(bi + 1)..] {
                        let cb =
                            in_circle(before.point(i), before.point(j), before.point(k), before.point(2))
                                .unwrap();
                        let ca =
                            in_circle(after.point(i), after.point(j), after.point(k), after.point(2))
                                .unwrap();
                        assert_ne!(cb, CirclePosition::On);
                        assert_ne!(ca, CirclePosition::On);
                        if cb != ca {
                            diffs.push(Boundary::Circle([i, j, k]));
                        }
                    }
                }
            }
            assert_eq!(diffs, vec![event.boundary]);
        }
    }

    #[test]
    fn exchanges_pass_on_random_path() {
        let set = gen_random(7, 5, 60).unwrap();
        let target = gen_random(7, 6, 60).unwrap();
        let path = MotionPath::new(0, vec![set[0].clone(), target[0].clone()]);
        let report = verify_path_invariance(&set, &path).unwrap();
        assert!(
            report.pass(),
            "start {} end {} events {:#?}",
            report.start_halving,
            report.end_halving,
            report.events.iter().map(|e| &e.failures).collect::<Vec<_>>()
        );
        assert_eq!(report.start_halving, 9);
        assert_eq!(report.end_halving, 9);
    }

    #[test]
    fn out_and_back_path_changes_nothing() {
        let set = gen_random(5, 8, 50).unwrap();
        let away = pt(90, 97);
        let path = MotionPath::new(1, vec![set[1].clone(), away, set[1].clone()]);
        let report = verify_path_invariance(&set, &path).unwrap();
        assert!(report.pass());
        assert_eq!(report.start_halving, report.end_halving);
    }
}
