//! Computable classification of generalized Urysohn spaces.
//!
//! The crate validates distance monoids, computes their algebraic invariants,
//! classifies the theory of the associated Urysohn space, decides forking on
//! finite configurations, builds the standard witness configurations, and
//! enumerates small monoids to check the enumerative theorems exhaustively.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cli;
pub mod enumeration;
pub mod independence;
pub mod monoid;
pub mod sequences;
pub mod space;

pub use monoid::{
    ArchClass, DistanceMonoid, DistanceValue, Elem, ExtRational, FiniteDistanceMonoid, Monoid,
    MonoidError, ParametricMonoid, Rank,
};
