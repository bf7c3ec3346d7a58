//! Computing with weighted clones over finite domains.
//!
//! The crate provides four layers that build on each other:
//!
//! * finite operations: tables, superposition, identification of arguments,
//!   and the sharp-operation taxonomy ([`ops`], [`mod@classify`], [`enumerate`]);
//! * exact-rational weightings of clones: validity, linear combinations,
//!   superposition, cyclic symmetrization, and replayable construction
//!   certificates ([`weighting`], [`certificate`], [`clone_gen`]);
//! * valued constraint satisfaction: weighted relations, brute-force
//!   optimization, expressibility, (weighted) polymorphism checking, core
//!   reduction, and unary-sum decomposition ([`relation`], [`instance`],
//!   [`improve`], [`wpol_search`]);
//! * the constructive witness pipeline backed by an exact-rational
//!   Gordan-alternative solver ([`gordan`], [`pipeline`]).
//!
//! All arithmetic is exact: weights and costs are arbitrary-precision
//! rationals, never floats.

pub mod certificate;
pub mod classify;
pub mod clone_gen;
pub mod domain;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gordan;
pub mod improve;
pub mod instance;
pub mod json;
pub mod ops;
pub mod pipeline;
pub mod rational;
pub mod relation;
pub mod simplex;
pub mod weighting;
pub mod wpol_search;

pub use certificate::ConstructionTree;
pub use classify::{classify, OpClass, SharpClass};
pub use clone_gen::CloneSlice;
pub use domain::{FiniteDomain, Label};
pub use error::{Error, Result};
pub use gordan::{solve_gordan, verify_outcome, GordanOutcome, QMatrix};
pub use instance::VcspInstance;
pub use ops::Operation;
pub use pipeline::{find_witness, PipelineReport, WitnessCase};
pub use rational::{ExtRational, Rational};
pub use relation::{Language, WeightedRelation};
pub use weighting::Weighting;
