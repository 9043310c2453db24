//! Exact-arithmetic library for extensions of a valuation v on K to the
//! rational function field K(X) built from pseudo-monotone sequences.
//!
//! The crate is organized around six layers:
//!
//! * [`scalar`] / [`ordgroup`] — exact ordered abelian value groups, cut
//!   positions with side markers, and classification of cut-type
//!   fractional ideals;
//! * [`fields`] — concrete valued fields (p-adic Q, rational-exponent
//!   Laurent fields, a rank-2 lexicographic composite);
//! * [`ratfunc`] — polynomials and rational functions over a valued field,
//!   Newton polygons and the region-weighted decomposition;
//! * [`sequences`] — certified pseudo-monotone sequences: constructors,
//!   classification, breadth ideals, pseudo-limit sets, equivalence, and
//!   localization behavior;
//! * [`extension`] — the extension valuation: dominating degrees, values in
//!   the extended group, monomial valuations, image sequences, limit sets,
//!   residue maps and prime fibers;
//! * [`parse`] / [`report`] — the textual grammars and the stable JSON
//!   report shape used by the CLI.

pub mod error;
pub mod extension;
pub(crate) mod qpoly;
#[cfg(test)]
pub(crate) mod testutil;
pub mod fields;
pub mod ordgroup;
pub mod parse;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod sequences;

pub use error::{Error, Result};
