pub mod algebra;
pub mod classifier;
pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod forcing;
pub mod lemmas;
pub mod pattern;
pub mod realize;
pub mod records;
pub mod stabilize;
pub mod tree;

pub use error::{Error, Result};
pub use pattern::{format_pattern, parse_pattern, Color, PairColoring, Pattern};
