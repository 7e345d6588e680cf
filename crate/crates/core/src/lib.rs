//! Chromatic symmetric functions of spiders and trees, with exact
//! elementary-basis expansions and one-sided non-e-positivity criteria.

pub mod census;
pub mod conjectures;
pub mod connected;
pub mod criteria;
pub mod csf;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod partition;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{SimpleGraph, Spider, Tree};
pub use partition::Partition;
pub use symfunc::{EExpansion, PExpansion, Positivity};
