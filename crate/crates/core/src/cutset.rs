//! Compact subsets of the real line stored as finite unions of closed
//! intervals, and the exact Hausdorff metric between them.
//!
//! Every level cut of a fuzzy set lives in an [`IntervalUnion`]. The type is
//! canonical: intervals are sorted, pairwise disjoint and separated by strict
//! gaps, so two unions describe the same set iff their interval lists are
//! equal.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetError {
    #[error("a compact set needs at least one interval")]
    EmptySet,
    #[error("bad interval [{lo}, {hi}]: endpoints must be finite with lo <= hi")]
    BadInterval { lo: f64, hi: f64 },
    #[error("bad point ({x}, {y}): coordinates must be finite")]
    BadPoint { x: f64, y: f64 },
}

/// A non-empty compact subset of the real line as disjoint closed intervals.
///
/// Singletons are degenerate intervals with `lo == hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    /// Builds the canonical form of the union of `raw`.
    ///
    /// Touching and overlapping intervals merge; no epsilon is applied, so
    /// `[(0, 1), (1, 2)]` merges while `[(0, 1), (1 + 1e-15, 2)]` does not.
    pub fn new(raw: &[(f64, f64)]) -> Result<Self, SetError> {
        if raw.is_empty() {
            return Err(SetError::EmptySet);
        }
        let mut sorted = Vec::with_capacity(raw.len());
        for &(lo, hi) in raw {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(SetError::BadInterval { lo, hi });
            }
            sorted.push((lo, hi));
        }
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut intervals: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        for (lo, hi) in sorted {
            match intervals.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => intervals.push((lo, hi)),
            }
        }
        Ok(Self { intervals })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self, SetError> {
        Self::new(&[(lo, hi)])
    }

    pub fn point(x: f64) -> Result<Self, SetError> {
        Self::new(&[(x, x)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn max(&self) -> f64 {
        self.intervals[self.intervals.len() - 1].1
    }

    /// Midpoints of the open gaps between consecutive intervals.
    pub fn gap_midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals
            .windows(2)
            .map(|w| w[0].1 + (w[1].0 - w[0].1) / 2.0)
    }

    pub fn contains(&self, p: f64) -> bool {
        self.distance_to(p) == 0.0
    }

    /// `min |p - x|` over the set, located by binary search on left endpoints.
    pub fn distance_to(&self, p: f64) -> f64 {
        // First interval starting strictly right of p.
        let idx = self.intervals.partition_point(|&(lo, _)| lo <= p);
        let mut best = f64::INFINITY;
        if idx < self.intervals.len() {
            best = self.intervals[idx].0 - p;
        }
        if idx > 0 {
            let (_, hi) = self.intervals[idx - 1];
            best = best.min(if p <= hi { 0.0 } else { p - hi });
        }
        best
    }

    /// `sup_{a in self} dist(a, other)`.
    ///
    /// On each interval of `self` the distance to `other` is piecewise linear
    /// with peaks only at the interval ends or at midpoints of `other`'s gaps,
    /// so evaluating that finite candidate set gives the exact supremum.
    pub fn directed_hausdorff(&self, other: &IntervalUnion) -> f64 {
        let mids: Vec<f64> = other.gap_midpoints().collect();
        let mut worst = 0.0_f64;
        for &(lo, hi) in &self.intervals {
            worst = worst.max(other.distance_to(lo)).max(other.distance_to(hi));
            let start = mids.partition_point(|&m| m <= lo);
            for &m in mids[start..].iter().take_while(|&&m| m < hi) {
                worst = worst.max(other.distance_to(m));
            }
        }
        worst
    }

    pub fn hausdorff(&self, other: &IntervalUnion) -> f64 {
        self.directed_hausdorff(other)
            .max(other.directed_hausdorff(self))
    }

    /// `self ⊆ other`, decided exactly.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.directed_hausdorff(other) == 0.0
    }

    /// Moves each interval endpoint by the next value drawn from `shift` and
    /// re-canonicalizes.
    /// Crossed endpoints collapse to their midpoint.
    pub(crate) fn map_endpoints(&self, mut shift: impl FnMut() -> f64) -> IntervalUnion {
        let moved: Vec<(f64, f64)> = self
            .intervals
            .iter()
            .map(|&(lo, hi)| {
                let (a, b) = (lo + shift(), hi + shift());
                if a <= b {
                    (a, b)
                } else {
                    let m = a + (b - a) / 2.0;
                    (m, m)
                }
            })
            .collect();
        IntervalUnion::new(&moved).expect("shifted intervals stay finite and ordered")
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        IntervalUnion::new(&all).expect("union of valid sets is valid")
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            if lo == hi {
                write!(f, "{{{lo}}}")?;
            } else {
                write!(f, "[{lo}, {hi}]")?;
            }
        }
        Ok(())
    }
}

pub fn make_interval_union(raw: &[(f64, f64)]) -> Result<IntervalUnion, SetError> {
    IntervalUnion::new(raw)
}

pub fn dist_point_to_union(p: f64, set: &IntervalUnion) -> f64 {
    set.distance_to(p)
}

pub fn directed_hausdorff(a: &IntervalUnion, b: &IntervalUnion) -> f64 {
    a.directed_hausdorff(b)
}

pub fn hausdorff(a: &IntervalUnion, b: &IntervalUnion) -> f64 {
    a.hausdorff(b)
}

/// A finite non-empty set of points in the Euclidean plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<(f64, f64)>,
}

impl PointCloud {
    /// Sorts and deduplicates the input.
    pub fn new(points: &[(f64, f64)]) -> Result<Self, SetError> {
        if points.is_empty() {
            return Err(SetError::EmptySet);
        }
        if let Some(&(x, y)) = points.iter().find(|p| !p.0.is_finite() || !p.1.is_finite()) {
            return Err(SetError::BadPoint { x, y });
        }
        let mut points = points.to_vec();
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        points.dedup();
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn directed_points(a: &PointCloud, b: &PointCloud) -> f64 {
    a.points
        .iter()
        .map(|&(ax, ay)| {
            b.points
                .iter()
                .map(|&(bx, by)| (ax - bx).hypot(ay - by))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Euclidean Hausdorff distance by all-pairs brute force.
pub fn hausdorff_points(a: &PointCloud, b: &PointCloud) -> f64 {
    directed_points(a, b).max(directed_points(b, a))
}
