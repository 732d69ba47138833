//! Symbolic calculator for countable scattered chains given as finite terms.
//!
//! The crate parses and normalizes chain terms ([`term`], [`syntax`]),
//! computes finite condensations and ranks ([`condense`]), certifies
//! embeddings ([`embed`]), enumerates the tree types of finite subsets
//! ([`types`]) and turns those into big Ramsey degree values and bounds
//! ([`ramsey`]). The [`oracle`] module holds brute-force counterparts used to
//! validate every combinatorial constant at small scale.

pub mod condense;
pub mod embed;
pub mod error;
pub mod oracle;
pub mod ramsey;
pub mod syntax;
pub mod term;
pub mod types;
pub mod verify;

mod numeric;

pub use error::{Error, Result};
pub use syntax::{parse, print};
pub use term::{Address, ChainTerm, Sign, Step, Tail, TailDescriptor};
