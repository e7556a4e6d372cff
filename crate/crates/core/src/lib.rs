//! Metrics on normal upper semi-continuous fuzzy sets over the real line.
//!
//! Fuzzy sets are represented by their level cuts sampled on a uniform grid
//! of `[0, 1]` ([`fuzzy::FuzzySet`]); each cut is a finite union of closed
//! intervals ([`cutset::IntervalUnion`]). On top of that the crate computes
//!
//! - the Hausdorff metric between cuts, exactly ([`cutset`]),
//! - the supremum metric `d_∞`, the endograph metric `H_end` and the
//!   Skorokhod metric `d_0` ([`metrics`]),
//!
//! and ships generators and runners that show Skorokhod convergence forcing
//! endograph convergence while the converse fails ([`generators`],
//! [`harness`]).
//!
//! ```
//! use fuzzy_metrics::generators::{gen_u0, gen_un};
//! use fuzzy_metrics::metrics::{d0, h_end};
//!
//! let u0 = gen_u0(256);
//! let u8 = gen_un(8, 256);
//! assert!((d0(&u8, &u0, 1e-4)?- 1.0).abs() < 0.01);
//! assert!(h_end(&u8, &u0)? < 0.2);
//! # Ok::<(), fuzzy_metrics::metrics::MetricError>(())
//! ```

pub mod cutset;
pub mod fuzzy;
pub mod generators;
pub mod harness;
pub mod io;
pub mod metrics;

pub use cutset::{IntervalUnion, PointCloud};
pub use fuzzy::{Endograph, FuzzySet, LevelGrid, TimeChange};
pub use metrics::MetricReport;
