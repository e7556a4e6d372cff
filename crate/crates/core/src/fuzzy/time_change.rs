use super::{check_level, FuzzyError};

/// A strictly increasing piecewise-linear bijection of `[0, 1]`.
///
/// Knots `(s, t)` start at `(0, 0)`, end at `(1, 1)` and increase strictly
/// in both coordinates, so the map is invertible by swapping coordinates and
/// its distortion `sup |t(s) - s|` is attained at a knot.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeChange {
    knots: Vec<(f64, f64)>,
}

impl TimeChange {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self, FuzzyError> {
        if knots.len() < 2 {
            return Err(FuzzyError::BadKnots(
                "need at least the two end knots".into(),
            ));
        }
        if knots[0] != (0.0, 0.0) || knots[knots.len() - 1] != (1.0, 1.0) {
            return Err(FuzzyError::BadKnots(
                "must run from (0, 0) to (1, 1)".into(),
            ));
        }
        if let Some(i) = knots
            .windows(2)
            .position(|w| !(w[0].0 < w[1].0 && w[0].1 < w[1].1))
        {
            return Err(FuzzyError::BadKnots(format!(
                "knots {i} and {} are not strictly increasing",
                i + 1
            )));
        }
        Ok(Self { knots })
    }

    pub fn identity() -> Self {
        Self {
            knots: vec![(0.0, 0.0), (1.0, 1.0)],
        }
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn apply(&self, s: f64) -> Result<f64, FuzzyError> {
        check_level(s)?;
        Ok(interpolate(self.knots.iter().copied(), s))
    }

    /// `t⁻¹(α)`, exact at knots.
    pub fn inverse_at(&self, alpha: f64) -> Result<f64, FuzzyError> {
        check_level(alpha)?;
        Ok(interpolate(self.knots.iter().map(|&(s, t)| (t, s)), alpha))
    }

    pub fn inverse(&self) -> TimeChange {
        TimeChange {
            knots: self.knots.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// `self ∘ inner`, i.e. `s ↦ self(inner(s))`.
    pub fn compose(&self, inner: &TimeChange) -> TimeChange {
        let mut breaks: Vec<f64> = inner.knots.iter().map(|k| k.0).collect();
        breaks.extend(
            self.knots
                .iter()
                .map(|&(s, _)| inner.inverse_at(s).expect("knots lie in [0, 1]")),
        );
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        let mut knots: Vec<(f64, f64)> = Vec::with_capacity(breaks.len());
        for s in breaks {
            let t = self
                .apply(inner.apply(s).expect("in range"))
                .expect("in range");
            let t = if s == 1.0 { 1.0 } else { t };
            // Rounding can tie neighbours that are one ulp apart; drop them.
            if knots.last().is_none_or(|&(ps, pt)| s > ps && t > pt) {
                knots.push((s, t));
            }
        }
        if knots.last() != Some(&(1.0, 1.0)) {
            knots.pop();
            knots.push((1.0, 1.0));
        }
        TimeChange { knots }
    }

    /// `sup |t(s) - s|` over `[0, 1]`.
    pub fn distortion(&self) -> f64 {
        self.knots
            .iter()
            .map(|&(s, t)| (t - s).abs())
            .fold(0.0, f64::max)
    }
}

/// Linear interpolation through increasing `(x, y)` nodes covering `x`.
fn interpolate(nodes: impl Iterator<Item = (f64, f64)> + Clone, x: f64) -> f64 {
    let mut prev = (0.0, 0.0);
    for (nx, ny) in nodes {
        if x == nx {
            return ny;
        }
        if x < nx {
            let (px, py) = prev;
            return py + (x - px) * (ny - py) / (nx - px);
        }
        prev = (nx, ny);
    }
    prev.1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(knots: &[(f64, f64)]) -> TimeChange {
        TimeChange::new(knots.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(TimeChange::new(vec![(0., 0.)]).is_err());
        assert!(TimeChange::new(vec![(0., 0.1), (1., 1.)]).is_err());
        assert!(TimeChange::new(vec![(0., 0.), (0.5, 0.5), (0.5, 0.6), (1., 1.)]).is_err());
        assert!(TimeChange::new(vec![(0., 0.), (0.4, 0.5), (0.6, 0.5), (1., 1.)]).is_err());
    }

    #[test]
    fn inversion() {
        let id = TimeChange::identity();
        assert_eq!(id.inverse_at(0.3).unwrap(), 0.3);
        let t = tc(&[(0., 0.), (0.5, 0.25), (1., 1.)]);
        assert_eq!(t.inverse_at(0.25).unwrap(), 0.5);
        // Segment (0.5, 0.25)-(1, 1): s = 0.5 + (α - 0.25) / 1.5.
        assert!((t.inverse_at(0.625).unwrap() - 0.75).abs() < 1e-15);
        assert!(t.inverse_at(-0.1).is_err());
        for i in 0..=100 {
            let s = i as f64 / 100.0;
            let back = t.inverse_at(t.apply(s).unwrap()).unwrap();
            assert!((back - s).abs() <= 1e-12);
        }
    }

    #[test]
    fn distortions() {
        assert_eq!(TimeChange::identity().distortion(), 0.0);
        assert_eq!(tc(&[(0., 0.), (0.5, 0.25), (1., 1.)]).distortion(), 0.25);
        let t = tc(&[(0., 0.), (0.2, 0.3), (0.8, 0.7), (1., 1.)]);
        assert!((t.distortion() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let t = tc(&[(0., 0.), (0.1, 0.3), (0.35, 0.4), (0.8, 0.95), (1., 1.)]);
        assert!(t.compose(&t.inverse()).distortion() <= 1e-12);
        assert!(t.inverse().compose(&t).distortion() <= 1e-12);
        let twice = t.inverse().inverse();
        for (a, b) in twice.knots().iter().zip(t.knots()) {
            assert!((a.0 - b.0).abs() <= 1e-12 && (a.1 - b.1).abs() <= 1e-12);
        }
    }

    #[test]
    fn compose_matches_pointwise() {
        let a = tc(&[(0., 0.), (0.3, 0.6), (1., 1.)]);
        let b = tc(&[(0., 0.), (0.5, 0.2), (0.9, 0.95), (1., 1.)]);
        let ab = a.compose(&b);
        for i in 0..=200 {
            let s = i as f64 / 200.0;
            let direct = a.apply(b.apply(s).unwrap()).unwrap();
            assert!((ab.apply(s).unwrap() - direct).abs() <= 1e-12);
        }
    }
}
