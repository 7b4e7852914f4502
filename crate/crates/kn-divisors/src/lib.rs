//! Chip-firing divisor theory on the complete graph `K_n`.
//!
//! The crate computes canonical representatives (`v_n`-reduced and
//! concentrated forms), Baker-Norine ranks via the Cori-Le Borgne closed
//! form, and splitting types of divisors, together with a brute-force
//! oracle on arbitrary loopless multigraphs that certifies every closed
//! form at desk scale.
//!
//! All arithmetic is checked 64-bit integer arithmetic; overflow is a
//! reported [`Error`], never a silent wraparound. Everything is a pure
//! function of its inputs and safe to call from multiple threads.

pub mod divisor;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod rank;
pub mod reduce;
pub mod verify;

pub use divisor::{genus, Divisor, Permutation, ReductionTrace, TraceStep};
pub use enumerate::{enumerate_splitting_types, is_feasible_splitting, witness_divisor};
pub use error::{Error, Result};
pub use oracle::{general_dhar_reduce, generic_equivalent, rank_oracle, GenericDivisor, GenericGraph};
pub use rank::{
    rank, rank_from_splitting, rank_nonspecial_check, riemann_roch_residual, splitting_type,
    SplittingType,
};
pub use reduce::{
    concentrate, dhar_reduce, equivalent, make_effective_away, reduce_at, reduce_with_trace,
    reduced_form,
};
