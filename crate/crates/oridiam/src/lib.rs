//! Strong orientations with diameter bounded in the domination number.

pub mod dominating;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod orientation;
pub mod pipeline;
pub mod spanning;
pub mod standard_form;

pub use error::{Error, Result};
