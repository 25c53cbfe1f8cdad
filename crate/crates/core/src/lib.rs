//! Numerical analysis of linear cocycles over two-sided subshifts of finite
//! type: growth-rate (top Lyapunov exponent) estimation, stable and unstable
//! holonomies, extremal and Barabanov-type norms, Mather sets, dominated
//! splittings, and the classic two-matrix counterexamples.
//!
//! The base dynamics lives in [`subshift`], matrix-valued data in [`cocycle`],
//! and the analysis layers on top: [`holonomy`], [`spectral`], [`norms`],
//! [`extremal`], [`grassmann`], [`mather`].

// validation uses `!(x > 0.0)` rather than `x <= 0.0` so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cocycle;
pub mod error;
pub mod extremal;
pub mod grassmann;
pub mod holonomy;
pub mod mather;
pub mod norms;
pub mod spectral;
pub mod subshift;

pub use cocycle::{BunchingReport, Cocycle, CocycleGenerator};
pub use error::{Error, Result};
pub use extremal::ExtremalityReport;
pub use grassmann::Subspace;
pub use holonomy::HolonomyResult;
pub use mather::{MatherApprox, SplittingReport, SubordinationReport, SubordinationRow};
pub use norms::NormField;
pub use spectral::{BergerWangRow, BetaBracket, GrowthFit, LipschitzReport, PeriodicExponent};
pub use subshift::{PeriodicWord, Point, Sft};
