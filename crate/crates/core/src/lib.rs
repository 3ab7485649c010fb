//! Exact counting statistics E(k; J) for determinantal point processes.
//!
//! The number of points of a determinantal process in a region J is a sum of
//! independent Bernoulli variables whose success probabilities are the
//! eigenvalues of the kernel's integral operator on J. This crate computes
//! those eigenvalues by Nyström discretization (or in closed form where known),
//! convolves the Bernoulli laws into E(k; J), and measures how close the result
//! is to its Gaussian limit.

// `!(x > 0.0)` also rejects NaN; dense kernels index several arrays at once
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod counting;
pub mod ensembles;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod linalg;
pub mod quadrature;
pub mod sources;
pub mod special;

pub use error::{Error, Result};
