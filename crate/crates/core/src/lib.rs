//! Exact analysis of one-dimensional Kronecker sequences `x_i = iα mod 1`.
//!
//! The crate expands α into its continued fraction, derives the closed-form
//! three-gap structure of every prefix of the sequence, and measures fill
//! distance, separation radius and mesh ratio of point prefixes exactly.
//! Comparators (van der Corput, greedy packing) share the same metrics code.
//!
//! Irrational quantities never pass through binary floating point: gap
//! lengths are integer linear forms `u·α₀ + v`, and comparisons are decided by
//! dyadic interval enclosures with precision escalation.

pub mod alpha;
pub mod contfrac;
pub mod decimal;
pub mod error;
pub mod field;
pub mod interval;
pub mod metrics;
pub mod report;
pub mod scan;
pub mod sequences;
pub mod threegap;

pub use alpha::AlphaSpec;
pub use contfrac::{
    alpha_tail, digit_supremum, expand, is_badly_approximable, s_and_n, Certainty, CfExpansion,
    DigitSupremum, PrecisionContext, Verdict,
};
pub use error::{Error, Result};
pub use field::{AlphaField, Real};
pub use interval::Interval;
pub use metrics::{
    fill_distance, kronecker_bounds, mesh_ratio, separation_radius, sorted_gaps, sweep, sweep_at,
    BoundReport, LowerBound, MeshRatio, Provenance, QUMetrics, SortedGaps, SweepRow,
};
pub use sequences::{
    greedy_packing, kronecker, van_der_corput, Generator, GeneratorSpec, PointSet, TieBreak,
};
pub use threegap::{
    decompose, eta, gap_structure, lengths_check, CheckReport, Decomposition, GapEntry,
    GapStructure, LinearForm,
};
