//! Billiard knots in an elliptic cylinder.
//!
//! The pipeline turns a quasitoric braid into a closed billiard trajectory of
//! `E × [0, 1]`: a Poncelet polygon in the base ellipse (built from Jacobi's
//! parametrization), read as a star diagram, lifted with a sawtooth height.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod braid;
pub mod cli;
pub mod diagram;
pub mod elliptic;
pub mod geometry;
pub mod lift;
pub mod poncelet;
