//! Exact-arithmetic toolkit for deciding when a Fano complete intersection
//! in a weighted projective space admits a Hori–Vafa mirror expressible as a
//! Laurent polynomial, constructing that polynomial, and verifying the
//! defining series identity (constant-terms series = regularized I-series)
//! term by term.
//!
//! The pipeline, bottom to top:
//!
//! * [`wps`] — `(weights; degrees)` specifications and their numeric
//!   criteria: normalization, Cartier, smoothness, Fano index, and the
//!   relaxed divisibility-count condition.
//! * [`nef`] — existence and construction of Q-nef-partitions, by an
//!   exhaustive backtracking search and by the constructive prime-reduction
//!   replay, including the strong form (all leftover weights equal 1).
//! * [`laurent`] — sparse multivariate Laurent polynomials over
//!   arbitrary-precision integers, with a pruned kernel for constant terms
//!   of powers.
//! * [`polytope`] — Newton polytopes (extreme points of the support hull)
//!   via exact rational linear programming.
//! * [`hori_vafa`] — the Hori–Vafa model of a partitioned complete
//!   intersection and the change of coordinates that turns it into a
//!   Landau–Ginzburg Laurent polynomial.
//! * [`series`] — exact regularized I-series coefficients and the
//!   term-by-term identity check against a period sequence.
//! * [`enumerate`] — deterministic classification sweeps over normalized
//!   specifications.
//!
//! Everything is exact: coefficients are big integers, hull tests are
//! rational, and every predicate is a pure function of immutable values.
//!
//! With the default `parallel` feature the per-power period kernel and the
//! enumeration sweep distribute over a rayon pool; disabling it yields a
//! fully sequential build with identical outputs.

pub mod enumerate;
pub mod hori_vafa;
pub mod laurent;
pub mod nef;
mod par;
pub mod polytope;
pub mod series;
mod serde_util;
pub mod wps;

pub use enumerate::{EnumerationRow, RowFlags, SweepConfig};
pub use hori_vafa::{HoriVafaModel, LGModel};
pub use laurent::{LaurentPolynomial, PeriodSequence};
pub use nef::{PartitionClass, QNefPartition};
pub use par::configure_thread_pool;
pub use polytope::Polytope;
pub use series::{ISeries, VerificationReport};
pub use wps::{CISpec, SpecReport};
