//! Deterministic fuzzy-set generators: the `u_0`, `u_n` example family and
//! seeded random fuzzy intervals, time changes and perturbations.
//!
//! Randomness comes from [`XorShift64`], a fixed xorshift64* generator, so
//! seeds produce the same sets on every platform and across releases.

use crate::cutset::IntervalUnion;
use crate::fuzzy::{FuzzySet, LevelGrid, TimeChange};

/// xorshift64* (Vigna 2016): shifts `12, 25, 27`, output multiplier
/// `0x2545F4914F6CDD1D`. The state is seeded through one splitmix64 step so
/// that every `u64`, including 0, is a usable seed.
#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Self {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// What to generate, at which resolution.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    PaperU0 {
        resolution: usize,
    },
    PaperUn {
        n: u32,
        resolution: usize,
    },
    RandomInterval {
        seed: u64,
        smoothness: f64,
        resolution: usize,
    },
    Crisp {
        set: IntervalUnion,
        resolution: usize,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> FuzzySet {
        match self {
            GeneratorSpec::PaperU0 { resolution } => gen_u0(*resolution),
            GeneratorSpec::PaperUn { n, resolution } => gen_un(*n, *resolution),
            GeneratorSpec::RandomInterval {
                seed,
                smoothness,
                resolution,
            } => gen_random_interval(*seed, *resolution, *smoothness),
            GeneratorSpec::Crisp { set, resolution } => {
                FuzzySet::crisp(grid(*resolution), set.clone())
            }
        }
    }
}

fn grid(resolution: usize) -> LevelGrid {
    assert!(resolution >= 2, "generators need K >= 2, got {resolution}");
    LevelGrid::new(resolution).expect("K >= 2")
}

fn closed(lo: f64, hi: f64) -> IntervalUnion {
    IntervalUnion::interval(lo, hi).expect("generator endpoints are ordered")
}

/// `u_0`: the 1-cut is `{0}` for `α > 1/2` and `[0, 2]` for `α ≤ 1/2`.
pub fn gen_u0(resolution: usize) -> FuzzySet {
    FuzzySet::from_fn(grid(resolution), |alpha| {
        if alpha <= 0.5 {
            closed(0.0, 2.0)
        } else {
            closed(0.0, 0.0)
        }
    })
    .expect("u_0 cuts are nested")
}

/// Right endpoint of `[u_n]_α`: `(2 - 2α)^n` on `[1/2, 1]` and
/// `1 + (1 - 2α)^{1/n}` on `[0, 1/2]`. Both branches give 1 at `α = 1/2`.
pub fn un_right_endpoint(n: u32, alpha: f64) -> f64 {
    if alpha >= 0.5 {
        (2.0 - 2.0 * alpha).powi(n as i32)
    } else {
        1.0 + (1.0 - 2.0 * alpha).powf(1.0 / n as f64)
    }
}

/// `u_n`, with cuts `[0, un_right_endpoint(n, α)]`.
pub fn gen_un(n: u32, resolution: usize) -> FuzzySet {
    assert!(n >= 1, "u_n is defined for n >= 1");
    FuzzySet::from_fn(grid(resolution), |alpha| {
        closed(0.0, un_right_endpoint(n, alpha))
    })
    .expect("u_n cuts are nested")
}

/// A seeded fuzzy interval with single-interval cuts.
///
/// Draw order: core centre in `[-2, 2)`, core half-width in `[0, 0.5)`, then
/// for `k = K-1` down to `0` a left and a right increment, each uniform in
/// `[0, 2 · smoothness / K)`. The left endpoint moves left and the right
/// endpoint moves right by those increments, so the expected spread of the
/// support beyond the core is `smoothness` on each side.
pub fn gen_random_interval(seed: u64, resolution: usize, smoothness: f64) -> FuzzySet {
    assert!(smoothness >= 0.0, "smoothness must be non-negative");
    let g = grid(resolution);
    let mut rng = XorShift64::new(seed);
    let centre = rng.uniform(-2.0, 2.0);
    let half = rng.uniform(0.0, 0.5);
    let scale = 2.0 * smoothness / resolution as f64;

    let mut cuts = vec![closed(centre - half, centre + half); g.len()];
    let (mut lo, mut hi) = (centre - half, centre + half);
    for k in (0..resolution).rev() {
        lo -= scale * rng.next_f64();
        hi += scale * rng.next_f64();
        cuts[k] = closed(lo, hi);
    }
    FuzzySet::new(g, cuts).expect("widening downwards keeps cuts nested")
}

/// A time change with distortion at most `max_distortion`.
///
/// Three interior knots sit at `s = 1/4, 1/2, 3/4`, each displaced by a
/// uniform offset; offsets are capped below `1/8` so the knots stay strictly
/// increasing.
pub fn random_time_change(seed: u64, max_distortion: f64) -> TimeChange {
    let mut rng = XorShift64::new(seed);
    let reach = max_distortion.clamp(0.0, 0.12);
    let mut knots = vec![(0.0, 0.0)];
    for i in 1..=3 {
        let s = i as f64 / 4.0;
        knots.push((s, s + rng.uniform(-reach, reach)));
    }
    knots.push((1.0, 1.0));
    TimeChange::new(knots).expect("offsets below 1/8 keep knots increasing")
}

/// Moves every cut endpoint of `u` by at most `eps`.
///
/// Each cut is jittered independently, then nesting is restored top-down by
/// replacing every cut with its union with the (already processed) cut above
/// it. Unions never move a cut further than `eps` from the original, so
/// `d_∞(u, perturb(u, eps, seed)) ≤ eps` always holds.
pub fn perturb(u: &FuzzySet, eps: f64, seed: u64) -> FuzzySet {
    assert!(eps >= 0.0, "perturbation radius must be non-negative");
    let mut rng = XorShift64::new(seed);
    let k = u.resolution();
    let mut cuts: Vec<IntervalUnion> = Vec::with_capacity(k + 1);
    for i in (0..=k).rev() {
        let jittered = u
            .cut(i)
            .map_endpoints(|| eps * (2.0 * rng.next_f64() - 1.0));
        let cut = match cuts.last() {
            Some(above) => jittered.union(above),
            None => jittered,
        };
        cuts.push(cut);
    }
    cuts.reverse();
    FuzzySet::new(u.grid(), cuts).expect("top-down unions are nested")
}
