//! Exact-arithmetic verification engine for character identities,
//! Casselman-Shalika evaluations, local L-factor series and unramified
//! local zeta lattice sums on classical similitude groups, plus the
//! finite-field matrix-group checks behind the supporting orbit lemmas.
//!
//! Everything is computed over exact rationals; every identity check in
//! this crate is coefficient-by-coefficient equality, never tolerance
//! based.

pub mod exactring;
pub mod identities;
pub mod lfactor;
pub mod report;
pub mod rootchar;
pub mod whittaker;

pub use exactring::{BiSeries, ExactScalar, LaurentPoly, Rat, SeriesBox};
pub use rootchar::{GroupType, HighestWeight, SatakePoint};
