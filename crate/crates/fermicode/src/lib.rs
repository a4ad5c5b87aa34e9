//! Command line, JSON documents, rendering and multi-threaded drivers for
//! the codes in [`fermicode_core`].

pub mod cli;
pub mod corpus;
pub mod doc;
pub mod parallel;
pub mod render;
pub mod sweep;
pub mod tables;
