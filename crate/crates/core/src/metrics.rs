//! Distances between sampled fuzzy sets: the supremum metric `d_∞`, the
//! endograph metric `H_end`, the Skorokhod metric `d_0`, and brute-force
//! oracles for the two approximate ones.
//!
//! # Skorokhod distance as a free-space problem
//!
//! A time change pairs level `α_i` of `u` with level `α_j` of `v`. On the
//! grid this becomes a monotone lattice path from `(0, 0)` to `(K, K)` with
//! steps `→`, `↑` and `↗`. Cell `(i, j)` costs
//! `max(|α_i - α_j|, H(u_i, v_j))`, and the discrete `d_0` is the smallest
//! `ε` for which some path stays inside cells of cost at most `ε`. The
//! decision version is a reachability sweep over the band `|i - j| ≤ ⌈εK⌉ + 1`;
//! [`d0`] bisects on it.

use rayon::prelude::*;
use thiserror::Error;

use crate::fuzzy::{FuzzySet, LevelGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("fuzzy sets live on different grids (K = {left} vs K = {right})")]
    GridMismatch { left: usize, right: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("threshold must be non-negative, got {0}")]
    BadThreshold(f64),
    #[error("sampling step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("exhaustive path enumeration is limited to K <= 10, got K = {0}")]
    TooLarge(usize),
    #[error("metric report invariant violated: {0}")]
    InvariantViolation(String),
}

fn shared_grid(u: &FuzzySet, v: &FuzzySet) -> Result<LevelGrid, MetricError> {
    if u.grid() != v.grid() {
        return Err(MetricError::GridMismatch {
            left: u.resolution(),
            right: v.resolution(),
        });
    }
    Ok(u.grid())
}

/// `max_k H(u_k, v_k)`.
///
/// Exact for the step representation: inside a level cell both cut maps are
/// constant, so the supremum over `α` is attained at a sampled level.
pub fn d_infty(u: &FuzzySet, v: &FuzzySet) -> Result<f64, MetricError> {
    shared_grid(u, v)?;
    Ok(u.cuts()
        .iter()
        .zip(v.cuts())
        .map(|(a, b)| a.hausdorff(b))
        .fold(0.0, f64::max))
}

/// Box-metric distance from `(x, α)` to `end v`.
pub fn point_to_endograph(x: f64, alpha: f64, v: &FuzzySet) -> f64 {
    v.endograph().distance_to(x, alpha.clamp(0.0, 1.0))
}

/// `sup` over the staircase of `u` of the distance to `end v`, evaluated on
/// cut endpoints and on gap midpoints of `v`'s neighbouring cuts, each at
/// the bottom and top level of its cell.
fn directed_endograph(u: &FuzzySet, v: &FuzzySet) -> f64 {
    let grid = u.grid();
    let end = v.endograph();
    let mut worst = 0.0_f64;
    for k in 0..=grid.resolution() {
        let cut = u.cut(k);
        let levels: &[f64] = if k == 0 {
            &[0.0]
        } else {
            &[grid.level(k - 1), grid.level(k)]
        };
        let mut xs: Vec<f64> = cut.intervals().iter().flat_map(|&(a, b)| [a, b]).collect();
        for j in [k.saturating_sub(1), k] {
            xs.extend(v.cut(j).gap_midpoints().filter(|&m| cut.contains(m)));
        }
        for &alpha in levels {
            for &x in &xs {
                worst = worst.max(end.distance_to(x, alpha));
            }
        }
    }
    worst
}

/// Hausdorff distance between the endographs under the box metric on
/// `ℝ × [0, 1]`. Never exceeds [`d_infty`].
pub fn h_end(u: &FuzzySet, v: &FuzzySet) -> Result<f64, MetricError> {
    shared_grid(u, v)?;
    Ok(directed_endograph(u, v).max(directed_endograph(v, u)))
}

/// An endograph sampled on grid rows: row `k` holds `cuts[k]` at step
/// `step`, always including every interval endpoint.
struct SampledEndograph {
    rows: Vec<Vec<f64>>,
}

impl SampledEndograph {
    fn new(u: &FuzzySet, step: f64) -> Self {
        let rows = u
            .cuts()
            .iter()
            .map(|cut| {
                let mut row = Vec::new();
                for &(lo, hi) in cut.intervals() {
                    let n = ((hi - lo) / step).floor() as usize;
                    row.extend((0..=n).map(|i| lo + i as f64 * step).filter(|&x| x < hi));
                    row.push(hi);
                }
                row
            })
            .collect();
        Self { rows }
    }

    fn row_distance(&self, row: usize, x: f64) -> f64 {
        let r = &self.rows[row];
        let i = r.partition_point(|&p| p < x);
        let right = r.get(i).map_or(f64::INFINITY, |&p| p - x);
        let left = if i > 0 { x - r[i - 1] } else { f64::INFINITY };
        left.min(right)
    }

    /// Max over own samples of the min box distance to `other`'s samples.
    ///
    /// A sample stops searching once it is closer than the running maximum
    /// (it cannot raise it), and rows are visited outward by level until the
    /// level gap alone exceeds the best distance found.
    fn directed(&self, other: &SampledEndograph, level_step: f64) -> f64 {
        let rows = self.rows.len();
        let mut worst = 0.0_f64;
        for (i, row) in self.rows.iter().enumerate() {
            for &x in row {
                let mut best = f64::INFINITY;
                'scan: for d in 0..rows {
                    let gap = d as f64 * level_step;
                    if gap >= best {
                        break;
                    }
                    let below = i.checked_sub(d);
                    let above = (d > 0 && i + d < rows).then_some(i + d);
                    for j in below.into_iter().chain(above) {
                        best = best.min(gap.max(other.row_distance(j, x)));
                        if best <= worst {
                            break 'scan;
                        }
                    }
                }
                worst = worst.max(best);
            }
        }
        worst
    }
}

/// Brute-force `H_end` over dense samplings of both endographs: spatial
/// step `step`, level step `1/K`, box metric. Test oracle for [`h_end`].
pub fn h_end_oracle(u: &FuzzySet, v: &FuzzySet, step: f64) -> Result<f64, MetricError> {
    let grid = shared_grid(u, v)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(MetricError::BadStep(step));
    }
    let (a, b) = (
        SampledEndograph::new(u, step),
        SampledEndograph::new(v, step),
    );
    let (ab, ba) = rayon::join(
        || a.directed(&b, grid.step()),
        || b.directed(&a, grid.step()),
    );
    Ok(ab.max(ba))
}

/// Cell costs `max(|α_i - α_j|, H(u_i, v_j))` stored for `|i - j| ≤ band`.
struct BandCosts {
    size: usize,
    band: usize,
    data: Vec<f64>,
}

impl BandCosts {
    fn new(u: &FuzzySet, v: &FuzzySet, band: usize) -> Self {
        let size = u.cuts().len();
        let band = band.min(size - 1);
        let width = 2 * band + 1;
        let grid = u.grid();
        let mut data = vec![f64::INFINITY; size * width];
        data.par_chunks_mut(width).enumerate().for_each(|(i, row)| {
            for (slot, cost) in row.iter_mut().enumerate() {
                if let Some(j) = (i + slot).checked_sub(band).filter(|&j| j < size) {
                    *cost = cell_cost(grid, u, v, i, j);
                }
            }
        });
        Self { size, band, data }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        match (j + self.band).checked_sub(i) {
            Some(slot) if slot <= 2 * self.band => self.data[i * (2 * self.band + 1) + slot],
            _ => f64::INFINITY,
        }
    }
}

fn cell_cost(grid: LevelGrid, u: &FuzzySet, v: &FuzzySet, i: usize, j: usize) -> f64 {
    (grid.level(i) - grid.level(j))
        .abs()
        .max(u.cut(i).hausdorff(v.cut(j)))
}

fn band_for(eps: f64, resolution: usize) -> usize {
    ((eps * resolution as f64).ceil() as usize).saturating_add(1)
}

/// Reachability table of the monotone sweep; `None` once a row dies out.
/// Entry `[i][slot]` mirrors the [`BandCosts`] layout.
fn sweep(
    size: usize,
    band: usize,
    eps: f64,
    cost: impl Fn(usize, usize) -> f64,
) -> Option<Vec<Vec<bool>>> {
    let band = band.min(size - 1);
    let width = 2 * band + 1;
    let mut reach = vec![vec![false; width]; size];
    let at = |reach: &Vec<Vec<bool>>, i: usize, j: usize| -> bool {
        match (j + band).checked_sub(i) {
            Some(slot) if slot < width => reach[i][slot],
            _ => false,
        }
    };
    for i in 0..size {
        let mut alive = false;
        for j in i.saturating_sub(band)..=(i + band).min(size - 1) {
            let from = if i == 0 && j == 0 {
                true
            } else {
                (i > 0 && at(&reach, i - 1, j))
                    || (j > 0 && at(&reach, i, j - 1))
                    || (i > 0 && j > 0 && at(&reach, i - 1, j - 1))
            };
            if from && cost(i, j) <= eps {
                reach[i][j + band - i] = true;
                alive = true;
            }
        }
        if !alive {
            return None;
        }
    }
    at(&reach, size - 1, size - 1).then_some(reach)
}

/// Recovers a witness path from a successful sweep, from `(0, 0)` to `(K, K)`.
fn backtrack(reach: &[Vec<bool>], band: usize) -> Vec<(usize, usize)> {
    let size = reach.len();
    let band = band.min(size - 1);
    let at = |i: usize, j: usize| match (j + band).checked_sub(i) {
        Some(slot) if slot <= 2 * band => reach[i][slot],
        _ => false,
    };
    let (mut i, mut j) = (size - 1, size - 1);
    let mut path = vec![(i, j)];
    while (i, j) != (0, 0) {
        (i, j) = if i > 0 && j > 0 && at(i - 1, j - 1) {
            (i - 1, j - 1)
        } else if i > 0 && at(i - 1, j) {
            (i - 1, j)
        } else {
            (i, j - 1)
        };
        path.push((i, j));
    }
    path.reverse();
    path
}

fn check_threshold(eps: f64) -> Result<(), MetricError> {
    if eps >= 0.0 && !eps.is_infinite() {
        Ok(())
    } else {
        Err(MetricError::BadThreshold(eps))
    }
}

/// Whether a monotone matching of levels keeps every matched pair within
/// `eps` in both level and Hausdorff distance.
pub fn d0_feasible(u: &FuzzySet, v: &FuzzySet, eps: f64) -> Result<bool, MetricError> {
    let grid = shared_grid(u, v)?;
    check_threshold(eps)?;
    let band = band_for(eps, grid.resolution());
    Ok(sweep(grid.len(), band, eps, |i, j| cell_cost(grid, u, v, i, j)).is_some())
}

/// A witness matching for [`d0_feasible`], as lattice cells `(i, j)` pairing
/// level `α_i` of `u` with level `α_j` of `v`.
pub fn d0_matching(
    u: &FuzzySet,
    v: &FuzzySet,
    eps: f64,
) -> Result<Option<Vec<(usize, usize)>>, MetricError> {
    let grid = shared_grid(u, v)?;
    check_threshold(eps)?;
    let band = band_for(eps, grid.resolution());
    Ok(
        sweep(grid.len(), band, eps, |i, j| cell_cost(grid, u, v, i, j))
            .map(|reach| backtrack(&reach, band)),
    )
}

/// Discrete Skorokhod distance by bisection on [`d0_feasible`].
///
/// The bracket starts at `[max(H(u_0, v_0), H(u_K, v_K)), d_∞(u, v)]`: every
/// path visits both corner cells, and the diagonal path is always feasible
/// at `d_∞`. Returns the upper end, which is certified feasible, once the
/// bracket is no wider than `tol`.
pub fn d0(u: &FuzzySet, v: &FuzzySet, tol: f64) -> Result<f64, MetricError> {
    let grid = shared_grid(u, v)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MetricError::BadTolerance(tol));
    }
    let k = grid.resolution();
    let mut lo = u
        .cut(0)
        .hausdorff(v.cut(0))
        .max(u.cut(k).hausdorff(v.cut(k)));
    let mut hi = d_infty(u, v)?;
    if hi - lo <= tol {
        return Ok(hi);
    }
    let costs = BandCosts::new(u, v, band_for(hi, k));
    let feasible =
        |eps: f64| sweep(costs.size, band_for(eps, k), eps, |i, j| costs.get(i, j)).is_some();
    if feasible(lo) {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = lo + (hi - lo) / 2.0;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Exact discrete `d_0` by enumerating every monotone lattice path.
/// The number of paths grows like the central Delannoy numbers, so only
/// `K ≤ 10` is accepted.
pub fn d0_oracle(u: &FuzzySet, v: &FuzzySet) -> Result<f64, MetricError> {
    let grid = shared_grid(u, v)?;
    let k = grid.resolution();
    if k > 10 {
        return Err(MetricError::TooLarge(k));
    }
    let size = k + 1;
    let mut cost = vec![vec![0.0; size]; size];
    for (i, row) in cost.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = (grid.level(i) - grid.level(j))
                .abs()
                .max(u.cut(i).hausdorff(v.cut(j)));
        }
    }

    fn walk(cost: &[Vec<f64>], i: usize, j: usize, running: f64, best: &mut f64) {
        let running = running.max(cost[i][j]);
        let last = cost.len() - 1;
        if i == last && j == last {
            *best = best.min(running);
            return;
        }
        if i < last {
            walk(cost, i + 1, j, running, best);
        }
        if j < last {
            walk(cost, i, j + 1, running, best);
        }
        if i < last && j < last {
            walk(cost, i + 1, j + 1, running, best);
        }
    }

    let mut best = f64::INFINITY;
    walk(&cost, 0, 0, 0.0, &mut best);
    Ok(best)
}

/// All distances relating two fuzzy sets at one resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub d_inf: f64,
    pub h_end: f64,
    pub d0: f64,
    /// Hausdorff distance of the 0-cuts.
    pub h_cut0: f64,
    /// Hausdorff distance of the 1-cuts.
    pub h_cut1: f64,
    pub resolution: usize,
    pub d0_tol: f64,
}

impl MetricReport {
    pub fn check(&self) -> Result<(), MetricError> {
        let step = 1.0 / self.resolution as f64;
        let values = [self.d_inf, self.h_end, self.d0, self.h_cut0, self.h_cut1];
        let violation = if values.iter().any(|x| x.is_nan() || *x < 0.0) {
            Some("distances must be non-negative".to_string())
        } else if self.h_end > self.d_inf + step {
            Some(format!("h_end {} > d_inf {} + 1/K", self.h_end, self.d_inf))
        } else if self.d0 > self.d_inf + self.d0_tol {
            Some(format!("d0 {} > d_inf {} + tol", self.d0, self.d_inf))
        } else if self.h_cut0 > self.d0 + self.d0_tol {
            Some(format!("h_cut0 {} > d0 {} + tol", self.h_cut0, self.d0))
        } else if self.h_cut1 > self.d0 + self.d0_tol {
            Some(format!("h_cut1 {} > d0 {} + tol", self.h_cut1, self.d0))
        } else {
            None
        };
        violation.map_or(Ok(()), |msg| Err(MetricError::InvariantViolation(msg)))
    }
}

pub fn metric_report(u: &FuzzySet, v: &FuzzySet, tol: f64) -> Result<MetricReport, MetricError> {
    let grid = shared_grid(u, v)?;
    let k = grid.resolution();
    let report = MetricReport {
        d_inf: d_infty(u, v)?,
        h_end: h_end(u, v)?,
        d0: d0(u, v, tol)?,
        h_cut0: u.cut(0).hausdorff(v.cut(0)),
        h_cut1: u.cut(k).hausdorff(v.cut(k)),
        resolution: k,
        d0_tol: tol,
    };
    report.check()?;
    Ok(report)
}
