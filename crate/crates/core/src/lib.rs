//! Exact normally ordered moments of the driven Jaynes-Cummings model.
//!
//! A two-level atom, initially excited, couples to the quasi-mode
//! `A = eps_a a + eps_b b` of a cavity field `a` and a driving field `b`, both
//! starting in coherent states. This crate evaluates the closed-form moment
//! sums ([`analytic`]), derives squeezing, EPR and partial-transpose moment
//! criteria from them ([`observables`]), and checks everything against an
//! independent Fock-space evolution ([`oracle`]).

pub mod analytic;
mod error;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod parallel;
mod source;
pub mod special;
pub mod summation;

pub use analytic::{AnalyticModel, Mode, MomentOrder, MomentSeries, Route, Truncation};
pub use error::{Error, Result};
pub use model::{InitialFields, ModelParams, TimeGrid};
pub use parallel::Execution;
pub use source::MomentSource;
