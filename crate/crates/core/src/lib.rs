//! Exact intersection-theoretic computation of the hyperelliptic locus class
//! in the moduli of genus-3 curves.
//!
//! The crate is organised as independent engines ([`graded_algebra`],
//! [`chern`], [`local_multiplicity`], [`jet`]) and the [`family`] model that
//! combines them.

pub mod chern;
pub mod family;
pub mod field;
pub mod graded_algebra;
pub mod jet;
pub mod local_multiplicity;
pub mod upoly;
