//! Numerical laboratory for fractional Sobolev-Poincare inequalities on
//! planar grid domains.
//!
//! The crate discretizes bounded planar domains as cell masks on a regular
//! grid and evaluates the nonlocal functionals that appear in fractional
//! Poincare-type inequalities:
//!
//! * [`geometry`] builds domains (unit square, slit square, rooms-and-passages
//!   towers, custom masks) and computes metric diagnostics: exact boundary
//!   distance, connected components, John constants, Ahlfors ratios, hole
//!   counts and tail sets.
//! * [`kernel`] evaluates Gagliardo seminorms (full and distance-restricted),
//!   Riesz potentials, L^q deviations and weak-type quasinorms on grid
//!   functions with deterministic blocked summation.
//! * [`truncation`] runs the Maz'ya truncation argument as an executable
//!   proof chain over discrete measure spaces, recording every intermediate
//!   inequality.
//! * [`lab`] estimates Poincare constants over function families, checks the
//!   representation and weak-type Riesz bounds, and probes the necessity
//!   inequalities on tail sets.
//! * [`experiments`] packages the above as named, seed-reproducible
//!   refinement studies with CSV output and pass/fail verdicts.
//!
//! All operations are pure over immutable domains. Parallel sections reduce
//! in fixed order, so results are bit-identical for every thread count.

pub mod experiments;
pub mod geometry;
pub mod io;
pub mod kernel;
pub mod lab;
pub mod numeric;
pub mod rng;
pub mod truncation;

pub use geometry::{Ball, DomainSpec, GridDomain, Pt, TailSet};
pub use kernel::{FracParams, FunctionalValue, GridFunction};
