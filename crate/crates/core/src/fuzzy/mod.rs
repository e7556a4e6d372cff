//! Level-sampled fuzzy sets on the real line.
//!
//! A [`FuzzySet`] stores its cuts `[u]_α` at the uniform levels
//! `α_k = k / K`, `k = 0..=K`, and reads them back with the left-continuous
//! step convention: for `α ∈ (α_{k-1}, α_k]` the cut is `cuts[k]`, and the
//! cut at `0` is `cuts[0]`. Cuts must be nested, `cuts[k + 1] ⊆ cuts[k]`,
//! which makes the sampled object itself a normal upper semi-continuous
//! fuzzy set.

mod endograph;
mod time_change;

pub use endograph::Endograph;
pub use time_change::TimeChange;

use thiserror::Error;

use crate::cutset::IntervalUnion;

/// Jumps at the fine resolution must keep at least this share of the
/// matching coarse jump to count as discontinuities. Hölder-continuous cut
/// maps shrink by `2^(-1/n)` per halving, genuine jumps not at all.
pub const JUMP_RETENTION: f64 = 0.99;

/// Carrier-space magnitude below which refinement jumps are ignored.
pub const DEFAULT_TAU: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("level grid needs at least one cell, got K = {0}")]
    BadResolution(usize),
    #[error("expected {expected} cuts for the grid, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cut at level index {0} is not contained in the cut below it")]
    NestingViolation(usize),
    #[error("level {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("invalid time change: {0}")]
    BadKnots(String),
    #[error("grids are not in 1:2 ratio (K = {coarse} vs K = {fine})")]
    ResolutionMismatch { coarse: usize, fine: usize },
}

/// Uniform levels `k / K` for `k = 0..=K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelGrid {
    cells: usize,
}

impl LevelGrid {
    pub fn new(cells: usize) -> Result<Self, FuzzyError> {
        if cells == 0 {
            return Err(FuzzyError::BadResolution(cells));
        }
        Ok(Self { cells })
    }

    /// The number of cells `K`; the grid has `K + 1` levels.
    pub fn resolution(&self) -> usize {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self, k: usize) -> f64 {
        k as f64 / self.cells as f64
    }

    pub fn levels(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.cells).map(|k| self.level(k))
    }

    /// Grid spacing `1 / K`.
    pub fn step(&self) -> f64 {
        1.0 / self.cells as f64
    }

    /// Smallest index `k` with `α_k ≥ α`. Assumes `α ∈ [0, 1]`.
    pub fn cell_of(&self, alpha: f64) -> usize {
        let mut k = ((alpha * self.cells as f64).ceil() as usize).min(self.cells);
        while k > 0 && self.level(k - 1) >= alpha {
            k -= 1;
        }
        while k < self.cells && self.level(k) < alpha {
            k += 1;
        }
        k
    }
}

pub(crate) fn check_level(alpha: f64) -> Result<(), FuzzyError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(FuzzyError::OutOfRange(alpha))
    }
}

/// A normal upper semi-continuous fuzzy set sampled on a [`LevelGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    grid: LevelGrid,
    cuts: Vec<IntervalUnion>,
}

impl FuzzySet {
    pub fn new(grid: LevelGrid, cuts: Vec<IntervalUnion>) -> Result<Self, FuzzyError> {
        if cuts.len() != grid.len() {
            return Err(FuzzyError::LengthMismatch {
                expected: grid.len(),
                found: cuts.len(),
            });
        }
        if let Some(k) = (1..cuts.len()).find(|&k| !cuts[k].is_subset_of(&cuts[k - 1])) {
            return Err(FuzzyError::NestingViolation(k));
        }
        Ok(Self { grid, cuts })
    }

    /// Samples `cut(α_k)` at every grid level.
    pub fn from_fn(
        grid: LevelGrid,
        cut: impl FnMut(f64) -> IntervalUnion,
    ) -> Result<Self, FuzzyError> {
        let cuts = grid.levels().map(cut).collect();
        Self::new(grid, cuts)
    }

    /// Every cut equal to `set`.
    pub fn crisp(grid: LevelGrid, set: IntervalUnion) -> Self {
        Self {
            grid,
            cuts: vec![set; grid.len()],
        }
    }

    pub fn grid(&self) -> LevelGrid {
        self.grid
    }

    pub fn resolution(&self) -> usize {
        self.grid.resolution()
    }

    pub fn cuts(&self) -> &[IntervalUnion] {
        &self.cuts
    }

    pub fn cut(&self, k: usize) -> &IntervalUnion {
        &self.cuts[k]
    }

    /// `[u]_α` under the left-continuous step convention.
    pub fn cut_at(&self, alpha: f64) -> Result<&IntervalUnion, FuzzyError> {
        check_level(alpha)?;
        Ok(&self.cuts[self.grid.cell_of(alpha)])
    }

    pub fn support(&self) -> &IntervalUnion {
        &self.cuts[0]
    }

    pub fn core(&self) -> &IntervalUnion {
        &self.cuts[self.grid.resolution()]
    }

    pub fn endograph(&self) -> Endograph<'_> {
        Endograph::new(self)
    }

    /// `(α_k, H(cuts[k-1], cuts[k]))` for `k = 1..=K`.
    ///
    /// Jump levels of the underlying set show up as magnitudes that stay
    /// put when the grid is refined; continuous stretches shrink.
    pub fn jump_spectrum(&self) -> Vec<(f64, f64)> {
        self.cuts
            .windows(2)
            .enumerate()
            .map(|(i, w)| (self.grid.level(i + 1), w[0].hausdorff(&w[1])))
            .collect()
    }

    /// The reparameterized set `t v` with `[t v]_α = [v]_{t⁻¹(α)}`.
    pub fn transform(&self, t: &TimeChange) -> FuzzySet {
        let cuts = self
            .grid
            .levels()
            .map(|alpha| {
                let s = t.inverse_at(alpha).expect("grid levels lie in [0, 1]");
                self.cuts[self.grid.cell_of(s)].clone()
            })
            .collect();
        // A monotone t keeps the level order, hence the nesting.
        FuzzySet {
            grid: self.grid,
            cuts,
        }
    }
}

pub fn make_fuzzy_set(grid: LevelGrid, cuts: Vec<IntervalUnion>) -> Result<FuzzySet, FuzzyError> {
    FuzzySet::new(grid, cuts)
}

pub fn cut_at(u: &FuzzySet, alpha: f64) -> Result<&IntervalUnion, FuzzyError> {
    u.cut_at(alpha)
}

pub fn transform(t: &TimeChange, v: &FuzzySet) -> FuzzySet {
    v.transform(t)
}

pub fn t_inverse(t: &TimeChange, alpha: f64) -> Result<f64, FuzzyError> {
    t.inverse_at(alpha)
}

pub fn distortion(t: &TimeChange) -> f64 {
    t.distortion()
}

pub fn jump_spectrum(u: &FuzzySet) -> Vec<(f64, f64)> {
    u.jump_spectrum()
}

/// Estimates the jump levels of a fuzzy set from samplings at `K` and `2K`.
///
/// A fine level is flagged when its jump magnitude exceeds `tau` and keeps
/// at least [`JUMP_RETENTION`] of the magnitude of the coarse cell that
/// contains it. Levels are reported on the fine grid.
pub fn estimate_p0(coarse: &FuzzySet, fine: &FuzzySet, tau: f64) -> Result<Vec<f64>, FuzzyError> {
    let (k, k2) = (coarse.resolution(), fine.resolution());
    if k2 != 2 * k {
        return Err(FuzzyError::ResolutionMismatch {
            coarse: k,
            fine: k2,
        });
    }
    let coarse_jumps = coarse.jump_spectrum();
    Ok(fine
        .jump_spectrum()
        .into_iter()
        .enumerate()
        .filter_map(|(i, (level, mag))| {
            let m = i + 1;
            let (_, coarse_mag) = coarse_jumps[m.div_ceil(2) - 1];
            (mag > tau && mag >= JUMP_RETENTION * coarse_mag).then_some(level)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random_interval, gen_u0, gen_un};
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> IntervalUnion {
        IntervalUnion::interval(lo, hi).unwrap()
    }

    fn grid(k: usize) -> LevelGrid {
        LevelGrid::new(k).unwrap()
    }

    #[test]
    fn grid_cells() {
        assert_eq!(LevelGrid::new(0), Err(FuzzyError::BadResolution(0)));
        let g = grid(10);
        assert_eq!(g.cell_of(0.0), 0);
        assert_eq!(g.cell_of(0.3), 3);
        assert_eq!(g.cell_of(0.31), 4);
        assert_eq!(g.cell_of(1.0), 10);
        for k in [3usize, 7, 10, 1000, 1024] {
            let g = grid(k);
            for i in 0..=k {
                assert_eq!(g.cell_of(g.level(i)), i);
            }
        }
    }

    #[test]
    fn construction() {
        assert!(FuzzySet::new(grid(3), vec![iv(0., 1.); 4]).is_ok());
        assert!(FuzzySet::new(grid(1), vec![iv(0., 2.), iv(0., 1.)]).is_ok());
        assert_eq!(
            FuzzySet::new(grid(1), vec![iv(0., 1.), iv(0., 2.)]),
            Err(FuzzyError::NestingViolation(1))
        );
        assert_eq!(
            FuzzySet::new(grid(2), vec![iv(0., 3.), iv(0., 2.), iv(0., 2.5)]),
            Err(FuzzyError::NestingViolation(2))
        );
        assert_eq!(
            FuzzySet::new(grid(2), vec![iv(0., 1.)]),
            Err(FuzzyError::LengthMismatch {
                expected: 3,
                found: 1
            })
        );
    }

    #[test]
    fn step_evaluation_of_u0() {
        let u0 = gen_u0(1024);
        assert_eq!(u0.cut_at(0.75).unwrap(), &iv(0., 0.));
        assert_eq!(u0.cut_at(0.5).unwrap(), &iv(0., 2.));
        assert_eq!(u0.cut_at(1.0).unwrap(), u0.core());
        assert_eq!(u0.cut_at(0.0).unwrap(), u0.support());
        assert_eq!(u0.cut_at(1.5), Err(FuzzyError::OutOfRange(1.5)));
        assert!(u0.cut_at(f64::NAN).is_err());
    }

    #[test]
    fn transform_examples() {
        let v = gen_random_interval(3, 16, 1.0);
        assert_eq!(v.transform(&TimeChange::identity()), v);

        let t = TimeChange::new(vec![(0., 0.), (0.5, 0.25), (1., 1.)]).unwrap();
        let crisp = FuzzySet::crisp(grid(16), iv(0., 1.));
        assert_eq!(crisp.transform(&t), crisp);

        let u0 = gen_u0(1024);
        let tu = u0.transform(&t);
        // t⁻¹(0.3) lies on the (0.5, 0.25)-(1, 1) piece, above 1/2.
        let s = t.inverse_at(0.3).unwrap();
        assert!((s - (0.5 + 0.05 / 0.75 * 0.5)).abs() < 1e-12);
        assert_eq!(tu.cut_at(0.3).unwrap(), &iv(0., 0.));
        assert_eq!(tu.cut_at(0.25).unwrap(), &iv(0., 2.));
    }

    #[test]
    fn spectra() {
        let crisp = FuzzySet::crisp(grid(8), iv(-1., 1.));
        assert!(crisp.jump_spectrum().iter().all(|&(_, m)| m == 0.0));

        let k = 1024;
        let spec = gen_u0(k).jump_spectrum();
        for &(level, mag) in &spec {
            if level == 0.5 + 1.0 / k as f64 {
                assert_eq!(mag, 2.0);
            } else {
                assert_eq!(mag, 0.0);
            }
        }
        let max1 = gen_un(1, k)
            .jump_spectrum()
            .iter()
            .fold(0.0_f64, |m, &(_, x)| m.max(x));
        assert_eq!(max1, 2.0 / k as f64);
    }

    #[test]
    fn spectrum_refinement() {
        for n in [1, 5, 20] {
            let maxes: Vec<f64> = [256, 512, 1024]
                .iter()
                .map(|&k| {
                    gen_un(n, k)
                        .jump_spectrum()
                        .iter()
                        .fold(0.0_f64, |m, &(_, x)| m.max(x))
                })
                .collect();
            assert!(
                maxes[0] > maxes[1] && maxes[1] > maxes[2],
                "n = {n}: {maxes:?}"
            );
        }
        for k in [256, 512, 1024] {
            let m = gen_u0(k)
                .jump_spectrum()
                .iter()
                .fold(0.0_f64, |m, &(_, x)| m.max(x));
            assert!(m >= 2.0 - 4.0 / k as f64);
        }
    }

    #[test]
    fn p0_estimates() {
        let flagged = estimate_p0(&gen_u0(512), &gen_u0(1024), 0.1).unwrap();
        assert_eq!(flagged.len(), 1);
        assert!((flagged[0] - 0.5).abs() <= 1.0 / 1024.0);

        let crisp = |k| FuzzySet::crisp(grid(k), iv(0., 1.));
        assert!(estimate_p0(&crisp(8), &crisp(16), DEFAULT_TAU)
            .unwrap()
            .is_empty());

        assert!(estimate_p0(&gen_un(5, 512), &gen_un(5, 1024), 0.1)
            .unwrap()
            .is_empty());
        assert_eq!(
            estimate_p0(&crisp(8), &crisp(15), 0.1),
            Err(FuzzyError::ResolutionMismatch {
                coarse: 8,
                fine: 15
            })
        );
    }

    fn arb_time_change() -> impl Strategy<Value = TimeChange> {
        prop::collection::vec((0.01..1.0f64, 0.01..1.0f64), 0..6).prop_map(|pts| {
            let mut s: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let mut t: Vec<f64> = pts.iter().map(|p| p.1).collect();
            s.sort_by(f64::total_cmp);
            t.sort_by(f64::total_cmp);
            s.dedup();
            t.dedup();
            let n = s.len().min(t.len());
            let mut knots = vec![(0.0, 0.0)];
            knots.extend(s[..n].iter().copied().zip(t[..n].iter().copied()));
            knots.push((1.0, 1.0));
            TimeChange::new(knots).unwrap()
        })
    }

    proptest! {
        #[test]
        fn transform_preserves_nesting(seed in any::<u64>(), t in arb_time_change()) {
            let u = gen_random_interval(seed, 32, 2.0);
            let tu = u.transform(&t);
            prop_assert!(FuzzySet::new(tu.grid(), tu.cuts().to_vec()).is_ok());
        }

        #[test]
        fn composition_agrees_within_one_cell(
            seed in any::<u64>(),
            t1 in arb_time_change(),
            t2 in arb_time_change(),
        ) {
            let v = gen_random_interval(seed, 32, 2.0);
            let nested = v.transform(&t2).transform(&t1);
            let composed = v.transform(&t1.compose(&t2));
            let g = v.grid();
            let t12 = t1.compose(&t2);
            for k in 0..=32 {
                let j = g.cell_of(t12.inverse_at(g.level(k)).unwrap());
                prop_assert_eq!(composed.cut(k), v.cut(j));
                // The nested route quantizes the intermediate level x = t1⁻¹(α_k)
                // up to the grid once more, at most one cell.
                let x = t1.inverse_at(g.level(k)).unwrap();
                let x_hi = (x + g.step()).min(1.0);
                let j_lo = g.cell_of(t2.inverse_at(x).unwrap()).saturating_sub(1);
                let j_hi = (g.cell_of(t2.inverse_at(x_hi).unwrap()) + 1).min(32);
                prop_assert!(j_lo <= j && j <= j_hi);
                prop_assert!((j_lo..=j_hi).any(|i| nested.cut(k) == v.cut(i)));
            }
        }
    }
}
