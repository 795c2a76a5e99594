//! Multiplicative Lie algebra structures on finite groups: verification,
//! construction on split extensions, exhaustive enumeration and classification.

pub mod cli;
pub mod construction;
pub mod group;
pub mod io;
pub mod mla;
pub mod scenarios;
pub mod search;
