//! Experiment runners: the `u_n → u_0` table and the randomized check of
//! the implications from Skorokhod to cut-wise and endograph convergence.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::fuzzy::FuzzySet;
use crate::generators::{
    gen_random_interval, gen_u0, gen_un, perturb, random_time_change, XorShift64,
};
use crate::metrics::{metric_report, MetricError, MetricReport};

pub const DEFAULT_LEVELS: usize = 1024;
pub const DEFAULT_TOL: f64 = 1e-4;

/// One row of the example table: all distances between `u_n` and `u_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRow {
    pub n: u32,
    pub report: MetricReport,
}

pub const TABLE_HEADER: &str = "n,K,d_inf,d0,h_end,h_cut0,h_cut1";

impl ExperimentRow {
    pub fn csv(&self) -> String {
        let r = &self.report;
        format!(
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
            self.n, r.resolution, r.d_inf, r.d0, r.h_end, r.h_cut0, r.h_cut1
        )
    }
}

/// Rows for `n = 1..=n_max`, computed in parallel and returned in order.
pub fn example_paper(
    n_max: u32,
    resolution: usize,
    tol: f64,
) -> Result<Vec<ExperimentRow>, MetricError> {
    let u0 = gen_u0(resolution);
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let report = metric_report(&gen_un(n, resolution), &u0, tol)?;
            Ok(ExperimentRow { n, report })
        })
        .collect()
}

pub fn write_table(rows: &[ExperimentRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{TABLE_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremConfig {
    pub trials: usize,
    pub seed: u64,
    pub resolution: usize,
    pub tol: f64,
    /// Upper bound for the per-trial time-change distortion `δ`.
    pub max_distortion: f64,
    /// Upper bound for the per-trial endpoint perturbation `ε'`.
    pub max_perturbation: f64,
    pub max_smoothness: f64,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        Self {
            trials: 200,
            seed: 1,
            resolution: DEFAULT_LEVELS,
            tol: DEFAULT_TOL,
            max_distortion: 0.1,
            max_perturbation: 0.1,
            max_smoothness: 2.0,
        }
    }
}

/// Names of the four checked implications, in margin order.
pub const IMPLICATIONS: [&str; 4] = [
    "0-cuts: H(u_0, v_0) <= d0",
    "1-cuts: H(u_K, v_K) <= d0",
    "endograph: h_end <= 2 d0",
    "level cuts: H(u_a, v_a) <= d0 + osc_u(a, d0)",
];

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub index: usize,
    pub distortion: f64,
    pub perturbation: f64,
    pub report: MetricReport,
    /// Bound minus observed value for each implication; negative fails.
    pub margins: [f64; 4],
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.margins.iter().all(|&m| m >= 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSummary {
    pub outcomes: Vec<TrialOutcome>,
    pub slack: f64,
}

impl TheoremSummary {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.outcomes.len()
    }

    /// Smallest margin over all trials and implications, with its location.
    pub fn worst_margin(&self) -> Option<(f64, usize, usize)> {
        self.outcomes
            .iter()
            .flat_map(|o| {
                o.margins
                    .iter()
                    .enumerate()
                    .map(move |(p, &m)| (m, o.index, p))
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }
}

/// `max H(u_j, u_k)` over grid levels `α_j` within `radius` of `α_k`.
fn oscillation(u: &FuzzySet, k: usize, radius: f64) -> f64 {
    let grid = u.grid();
    let reach = ((radius * grid.resolution() as f64).ceil() as usize) + 1;
    let lo = k.saturating_sub(reach);
    let hi = (k + reach).min(grid.resolution());
    (lo..=hi)
        .filter(|&j| (grid.level(j) - grid.level(k)).abs() <= radius)
        .map(|j| u.cut(j).hausdorff(u.cut(k)))
        .fold(0.0, f64::max)
}

fn run_trial(
    config: &TheoremConfig,
    index: usize,
    rng: &mut XorShift64,
) -> Result<TrialOutcome, MetricError> {
    let u_seed = rng.next_u64();
    let t_seed = rng.next_u64();
    let p_seed = rng.next_u64();
    let smoothness = rng.uniform(0.0, config.max_smoothness);
    let distortion = rng.uniform(0.0, config.max_distortion);
    let perturbation = rng.uniform(0.0, config.max_perturbation);

    let u = gen_random_interval(u_seed, config.resolution, smoothness);
    let t = random_time_change(t_seed, distortion);
    let v = perturb(&u.transform(&t), perturbation, p_seed);
    let report = metric_report(&u, &v, config.tol)?;

    let slack = 2.0 / config.resolution as f64 + config.tol;
    let d0 = report.d0;
    // A matching certified at d0 pairs level k of v with some level of u
    // within d0, so the cut error at k is at most d0 plus the oscillation
    // of u over that window. Away from jump levels the oscillation vanishes
    // with d0.
    let cut_margin = (0..=config.resolution)
        .map(|k| d0 + oscillation(&u, k, d0) + slack - u.cut(k).hausdorff(v.cut(k)))
        .fold(f64::INFINITY, f64::min);
    Ok(TrialOutcome {
        index,
        distortion: t.distortion(),
        perturbation,
        report,
        margins: [
            d0 + slack - report.h_cut0,
            d0 + slack - report.h_cut1,
            2.0 * d0 + slack - report.h_end,
            cut_margin,
        ],
    })
}

/// Runs `config.trials` seeded trials. Each draws a fuzzy interval `u`, a
/// time change `t` with `D(t) ≤ δ` and sets `v = perturb(t u, ε')`, then
/// checks the four implications with slack `2/K + tol`.
pub fn verify_theorem(config: &TheoremConfig) -> Result<TheoremSummary, MetricError> {
    let mut rng = XorShift64::new(config.seed);
    let seeds: Vec<XorShift64> = (0..config.trials)
        .map(|_| XorShift64::new(rng.next_u64()))
        .collect();
    let outcomes = seeds
        .into_par_iter()
        .enumerate()
        .map(|(i, mut trial_rng)| run_trial(config, i, &mut trial_rng))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TheoremSummary {
        outcomes,
        slack: 2.0 / config.resolution as f64 + config.tol,
    })
}
