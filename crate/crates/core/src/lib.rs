//! Judgment aggregation over constrained propositional agendas.
//!
//! The crate provides the propositional machinery (agendas with integrity
//! constraints, rational judgment sets, profiles), a catalog of aggregation
//! rules (majoritarian, weighted-majoritarian, profile-repair, distance-based
//! and scoring rules), checkers for the classic axioms
//! (majority-preservation, unanimity, monotonicity, reinforcement,
//! homogeneity), reductions to voting rules over preference agendas, and a
//! corpus of named fixtures with pinned expected outputs.

pub mod agenda;
pub mod axioms;
pub mod bridge;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod logic;
pub mod profile;
pub mod rules;

pub use error::{Error, Result};
