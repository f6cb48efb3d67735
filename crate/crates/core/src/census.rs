//! Classification of every circle through three set points by its
//! inside/outside split, with two independent counting engines.
//!
//! `census_brute` realizes the definition directly: classify all C(m,3)
//! triples with O(m) in-circle tests each. `census_sweep` exploits the pencil
//! of circles through a fixed pair: ordered by center position along the
//! pair's perpendicular bisector, membership of each remaining point flips
//! exactly once, so inside-counts become rank queries in two sorted lists.
//! The engines must agree cell-for-cell; the sweep visits every circle three
//! times (once per pair it contains) and panics if the three classifications
//! ever disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::kernel::{
    circumcenter_param, in_circle, orientation, CirclePosition, Orientation, Scalar,
};
use crate::pointset::{PointSet, Violation};

/// Split of the non-circle points: `inside` strictly inside the circle,
/// `outside` strictly outside. For an m-point set, inside + outside = m - 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitClass {
    pub inside: usize,
    pub outside: usize,
}

impl SplitClass {
    pub fn new(inside: usize, outside: usize) -> Self {
        SplitClass { inside, outside }
    }

    /// Halving means both sides equal.
    pub fn is_halving(&self) -> bool {
        self.inside == self.outside
    }

    /// The unordered class {inside, outside}, smaller component first.
    pub fn unordered(&self) -> (usize, usize) {
        if self.inside <= self.outside {
            (self.inside, self.outside)
        } else {
            (self.outside, self.inside)
        }
    }
}

impl fmt::Display for SplitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.inside, self.outside)
    }
}

/// One classified circle: the index triple on its circumference (sorted
/// ascending) and its split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleRecord {
    pub triple: [usize; 3],
    pub split: SplitClass,
}

/// Count of circles per (inside, outside) class over all triples of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthHistogram {
    m: usize,
    counts: BTreeMap<(usize, usize), u64>,
}

impl DepthHistogram {
    pub fn new(m: usize) -> Self {
        DepthHistogram {
            m,
            counts: BTreeMap::new(),
        }
    }

    pub fn set_size(&self) -> usize {
        self.m
    }

    pub fn record(&mut self, split: SplitClass) {
        debug_assert_eq!(split.inside + split.outside, self.m.saturating_sub(3));
        *self.counts.entry((split.inside, split.outside)).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: DepthHistogram) {
        debug_assert_eq!(self.m, other.m);
        for (key, v) in other.counts {
            *self.counts.entry(key).or_insert(0) += v;
        }
    }

    pub fn get(&self, inside: usize, outside: usize) -> u64 {
        self.counts.get(&(inside, outside)).copied().unwrap_or(0)
    }

    /// Count of circles in the unordered class {a, b}.
    pub fn unordered_count(&self, a: usize, b: usize) -> u64 {
        if a == b {
            self.get(a, b)
        } else {
            self.get(a, b) + self.get(b, a)
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// C(m,3), what `total` must equal for a full census.
    pub fn expected_total(&self) -> u64 {
        let m = self.m as u64;
        if m < 3 {
            0
        } else {
            m * (m - 1) * (m - 2) / 6
        }
    }

    /// The halving cell count, for odd set sizes.
    pub fn halving(&self) -> Option<u64> {
        if self.m % 2 == 1 && self.m >= 3 {
            let half = (self.m - 3) / 2;
            Some(self.get(half, half))
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &u64)> {
        self.counts.iter()
    }

    /// Totals per unordered class {a, b}, keyed by (min, max).
    pub fn unordered_classes(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (&(a, b), &v) in &self.counts {
            let key = if a <= b { (a, b) } else { (b, a) };
            *out.entry(key).or_insert(0) += v;
        }
        out
    }
}

impl fmt::Display for DepthHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(a, b), &v) in &self.counts {
            writeln!(f, "  ({a},{b}): {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("set is not in general position: {0}")]
    NotGeneralPosition(Violation),
    #[error("halving is undefined for even set size {m}")]
    EvenSize { m: usize },
    #[error("census engines disagree: {detail}")]
    EngineDisagreement { detail: String },
}

/// Which counting engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Brute,
    Sweep,
    /// Run both and require exact agreement.
    Both,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Brute => write!(f, "brute"),
            Engine::Sweep => write!(f, "sweep"),
            Engine::Both => write!(f, "both"),
        }
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Engine::Brute),
            "sweep" => Ok(Engine::Sweep),
            "both" => Ok(Engine::Both),
            other => Err(format!("unknown engine {other:?} (expected brute|sweep|both)")),
        }
    }
}

/// Split of the circle through points `i`, `j`, `k`: exact in-circle test of
/// every other point.
pub fn classify_circle(
    set: &PointSet,
    i: usize,
    j: usize,
    k: usize,
) -> Result<SplitClass, CensusError> {
    assert!(i != j && j != k && i != k, "indices must be distinct");
    let (a, b, c) = (set.point(i), set.point(j), set.point(k));
    if orientation(a, b, c) == Orientation::Collinear {
        let mut t = [i, j, k];
        t.sort_unstable();
        return Err(CensusError::NotGeneralPosition(Violation::Collinear(t)));
    }
    let mut inside = 0usize;
    let mut outside = 0usize;
    for l in 0..set.len() {
        if l == i || l == j || l == k {
            continue;
        }
        match in_circle(a, b, c, set.point(l)).expect("orientation checked above") {
            CirclePosition::Inside => inside += 1,
            CirclePosition::Outside => outside += 1,
            CirclePosition::On => {
                let mut q = [i, j, k, l];
                q.sort_unstable();
                return Err(CensusError::NotGeneralPosition(Violation::Concyclic(q)));
            }
        }
    }
    Ok(SplitClass::new(inside, outside))
}

fn all_triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Every circle with its split, ordered by triple. Brute force.
pub fn classify_all(set: &PointSet) -> Result<Vec<CircleRecord>, CensusError> {
    all_triples(set.len())
        .into_par_iter()
        .map(|[i, j, k]| {
            classify_circle(set, i, j, k).map(|split| CircleRecord {
                triple: [i, j, k],
                split,
            })
        })
        .collect()
}

/// O(m^4) reference engine: classify every triple independently.
pub fn census_brute(set: &PointSet) -> Result<DepthHistogram, CensusError> {
    let m = set.len();
    all_triples(m)
        .into_par_iter()
        .map(|[i, j, k]| classify_circle(set, i, j, k))
        .try_fold(
            || DepthHistogram::new(m),
            |mut hist, split| {
                hist.record(split?);
                Ok(hist)
            },
        )
        .try_reduce(
            || DepthHistogram::new(m),
            |mut a, b| {
                a.merge(b);
                Ok(a)
            },
        )
}

/// Pencil-sweep engine, O(m^2 * m log m).
///
/// For a fixed pair (A, B), parameterize circles through both by the signed
/// position s of their center along the perpendicular bisector. A third
/// point P lies on the pencil circle at its own parameter t(P), and its
/// membership function (|center-P|^2 - |center-A|^2 as a function of s) is
/// affine with slope sign fixed by P's side of line AB: a point left of
/// A->B is inside exactly for s > t(P), a point right of it for s < t(P).
/// Sorting the t-values therefore answers every inside-count for the pair
/// with one scan.
pub fn census_sweep(set: &PointSet) -> Result<DepthHistogram, CensusError> {
    let m = set.len();
    if m < 3 {
        return Ok(DepthHistogram::new(m));
    }

    let pairs: Vec<[usize; 2]> = {
        let mut v = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in (i + 1)..m {
                v.push([i, j]);
            }
        }
        v
    };

    let per_pair: Vec<Vec<([usize; 3], SplitClass)>> = pairs
        .into_par_iter()
        .map(|[i, j]| sweep_pair(set, i, j))
        .collect::<Result<_, _>>()?;

    // Each triple arrives three times, once from each of its pairs. The
    // classifications must agree; a mismatch is a bug in the sweep math.
    let mut seen: BTreeMap<[usize; 3], SplitClass> = BTreeMap::new();
    let mut hist = DepthHistogram::new(m);
    for group in per_pair {
        for (triple, split) in group {
            match seen.insert(triple, split) {
                None => hist.record(split),
                Some(previous) => assert_eq!(
                    previous, split,
                    "sweep classified circle {triple:?} inconsistently"
                ),
            }
        }
    }
    debug_assert_eq!(hist.total(), hist.expected_total());
    Ok(hist)
}

/// All circles through the pair (i, j), classified by one sorted sweep.
fn sweep_pair(
    set: &PointSet,
    i: usize,
    j: usize,
) -> Result<Vec<([usize; 3], SplitClass)>, CensusError> {
    let m = set.len();
    let a = set.point(i);
    let b = set.point(j);

    struct Entry {
        t: Scalar,
        index: usize,
        left: bool,
    }

    let mut entries: Vec<Entry> = Vec::with_capacity(m - 2);
    for k in 0..m {
        if k == i || k == j {
            continue;
        }
        let p = set.point(k);
        let left = match orientation(a, b, p) {
            Orientation::CounterClockwise => true,
            Orientation::Clockwise => false,
            Orientation::Collinear => {
                let mut t = [i, j, k];
                t.sort_unstable();
                return Err(CensusError::NotGeneralPosition(Violation::Collinear(t)));
            }
        };
        let t = circumcenter_param(a, b, p).expect("collinearity handled above");
        entries.push(Entry { t, index: k, left });
    }

    entries.sort_by(|x, y| x.t.cmp(&y.t));
    // Equal parameters mean two points on one pencil circle: four concyclic.
    for w in entries.windows(2) {
        if w[0].t == w[1].t {
            let mut q = [i, j, w[0].index, w[1].index];
            q.sort_unstable();
            return Err(CensusError::NotGeneralPosition(Violation::Concyclic(q)));
        }
    }

    let total_right = entries.iter().filter(|e| !e.left).count();
    let mut lefts_before = 0usize;
    let mut rights_seen = 0usize;
    let mut out = Vec::with_capacity(entries.len());
    for entry in &entries {
        if !entry.left {
            rights_seen += 1;
        }
        // Strictly smaller t among lefts, strictly larger among rights;
        // the point itself is excluded by strictness on its own side.
        let inside = lefts_before + (total_right - rights_seen);
        let mut triple = [i, j, entry.index];
        triple.sort_unstable();
        out.push((triple, SplitClass::new(inside, m - 3 - inside)));
        if entry.left {
            lefts_before += 1;
        }
    }
    Ok(out)
}

/// Run the selected engine; `Both` requires cell-for-cell agreement.
pub fn census(set: &PointSet, engine: Engine) -> Result<DepthHistogram, CensusError> {
    match engine {
        Engine::Brute => census_brute(set),
        Engine::Sweep => census_sweep(set),
        Engine::Both => {
            let brute = census_brute(set)?;
            let sweep = census_sweep(set)?;
            if brute != sweep {
                return Err(CensusError::EngineDisagreement {
                    detail: format!("brute:\n{brute}sweep:\n{sweep}"),
                });
            }
            Ok(brute)
        }
    }
}

/// Number of circles splitting the rest of the set into equal halves,
/// computed by both engines (which must agree).
pub fn count_halving(set: &PointSet) -> Result<u64, CensusError> {
    count_halving_with(set, Engine::Both)
}

pub fn count_halving_with(set: &PointSet, engine: Engine) -> Result<u64, CensusError> {
    let m = set.len();
    if m % 2 == 0 {
        return Err(CensusError::EvenSize { m });
    }
    if m < 3 {
        return Ok(0);
    }
    let hist = census(set, engine)?;
    Ok(hist.halving().expect("odd size checked above"))
}

/// Number of halving circles through the pair (i, j).
pub fn count_pair_halving(set: &PointSet, i: usize, j: usize) -> Result<u64, CensusError> {
    let m = set.len();
    if m % 2 == 0 {
        return Err(CensusError::EvenSize { m });
    }
    assert!(i != j, "pair indices must be distinct");
    let mut count = 0u64;
    for k in 0..m {
        if k == i || k == j {
            continue;
        }
        if classify_circle(set, i, j, k)?.is_halving() {
            count += 1;
        }
    }
    Ok(count)
}
