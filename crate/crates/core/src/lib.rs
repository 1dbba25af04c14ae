//! A workbench for propositional linear logic without weakening.
//!
//! * [`syntax`]: formulas, multisets, sequents, parser and printer.
//! * [`kernel`]: proof objects and a checker for every system variant.
//! * [`translations`]: the weakening-simulating translations and the proof
//!   transformers built on them.
//! * [`machine`]: two-counter machines.
//! * [`encoder`]: compiling accepted machine runs into proofs.
//! * [`phase`]: finite phase semantics and countermodel search.
//! * [`search`]: bounded cut-free backward proof search.

pub mod encoder;
pub mod kernel;
pub mod machine;
pub mod phase;
pub mod search;
pub mod syntax;
pub mod translations;

#[cfg(test)]
pub(crate) mod testutil;

pub use syntax::{Formula, LanguageId, Multiset, Sequent};
