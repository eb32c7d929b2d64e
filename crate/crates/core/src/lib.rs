//! Exact symbolic computation in partially commutative groups.

pub mod dmnf;
pub mod embed;
pub mod error;
pub mod geq;
pub mod io;
pub mod pcgraph;
pub mod present;
pub mod quadnf;
pub mod repro;
pub mod towers;
pub mod words;

pub mod cli;

pub use error::{Error, Result};
