//! Exact arithmetic for linear non-uniform cellular automata over `ℤᵈ` with
//! alphabets `GF(p)^k`.
//!
//! The crate covers evaluation of rule configurations, dual configurations and
//! the structural identities relating them, certificate-producing decision
//! procedures for injectivity/surjectivity-type properties on the line, and a
//! constructive shadowing demonstration.

pub mod analysis;
pub mod cell;
pub mod config;
pub mod duality;
pub mod error;
pub mod eval;
pub mod examples;
pub mod linalg;
pub mod rule;
pub mod rulefile;
pub mod repro;
pub mod sample;
pub mod shadowing;

pub use cell::{Cell, MemorySet, Universe};
pub use config::{CellValues, EvPerConfig, FinSuppConfig};
pub use error::{Error, Result};
pub use eval::WindowMap;
pub use linalg::{AffineSolution, FieldElem, FieldMatrix, PrimeField, Vector};
pub use rule::{LeftTail, LimitClass, LocalRule, RuleConfig, TailSide};
pub use rulefile::{parse_rule_json, read_rule_file, rule_to_json};
