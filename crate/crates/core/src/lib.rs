//! Genus of regular languages.
//!
//! DFA minimization, exact orientable genus of graphs through rotation
//! systems, closed-form genus bounds, directed emulator search and a bounded
//! decision procedure for the genus and topological size of a language.

pub mod automata;
pub mod bounds;
pub mod cli;
pub mod decide;
pub mod budget;
pub mod error;
pub mod fixtures;
pub mod embedding;
pub mod emulator;
pub mod graphs;

pub use automata::{Dfa, LanguageFamily};
pub use budget::Budget;
pub use error::{Error, Result};
