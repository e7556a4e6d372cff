use super::FuzzySet;

/// The staircase region `end u ⊂ ℝ × [0, 1]` of a sampled fuzzy set.
///
/// It is `cuts[0] × {0}` together with the cells `cuts[k] × [α_{k-1}, α_k]`
/// for `k = 1..=K`. Distances use the box metric
/// `max(|x - y|, |α - β|)` on the product.
#[derive(Debug, Clone, Copy)]
pub struct Endograph<'a> {
    owner: &'a FuzzySet,
}

impl<'a> Endograph<'a> {
    pub fn new(owner: &'a FuzzySet) -> Self {
        Self { owner }
    }

    pub fn owner(&self) -> &'a FuzzySet {
        self.owner
    }

    pub fn contains(&self, x: f64, alpha: f64) -> bool {
        self.distance_to(x, alpha) == 0.0
    }

    /// Level gap between `alpha` and piece `k` (`k = 0` is the bottom slab).
    fn level_gap(&self, k: usize, alpha: f64) -> f64 {
        let grid = self.owner.grid();
        if k == 0 {
            return alpha;
        }
        let (lo, hi) = (grid.level(k - 1), grid.level(k));
        if alpha < lo {
            lo - alpha
        } else if alpha > hi {
            alpha - hi
        } else {
            0.0
        }
    }

    fn piece_distance(&self, k: usize, x: f64, alpha: f64) -> f64 {
        self.level_gap(k, alpha)
            .max(self.owner.cut(k).distance_to(x))
    }

    /// Box distance from `(x, α)` to the staircase, `α ∈ [0, 1]`.
    ///
    /// Pieces above the cell containing `α` are never closer than that cell.
    /// Below it the level gap shrinks with `k` while the horizontal distance
    /// grows (cuts are nested), so the minimum sits at their crossing and is
    /// found by bisection.
    pub fn distance_to(&self, x: f64, alpha: f64) -> f64 {
        let top = if alpha <= 0.0 {
            0
        } else {
            self.owner.grid().cell_of(alpha)
        };
        // First k in 0..=top where horizontal distance reaches the level gap.
        let (mut lo, mut hi) = (0usize, top + 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.owner.cut(mid).distance_to(x) >= self.level_gap(mid, alpha) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let mut best = f64::INFINITY;
        if lo <= top {
            best = self.piece_distance(lo, x, alpha);
        }
        if lo > 0 {
            best = best.min(self.piece_distance(lo - 1, x, alpha));
        }
        best
    }

    /// The same distance by scanning every piece.
    pub fn distance_to_by_scan(&self, x: f64, alpha: f64) -> f64 {
        (0..self.owner.cuts().len())
            .map(|k| self.piece_distance(k, x, alpha))
            .fold(f64::INFINITY, f64::min)
    }
}
