//! vmkit: a vertex-minor calculus.
//!
//! Local complementation and pivot, GF(2) cut-rank, splits and primality,
//! blocking sequences, decision procedures with certificates, and
//! constructive extractors that reduce fans, generalized ladders, and long
//! induced paths in prime graphs to cycle vertex-minors. Every positive
//! answer ships as a replayable [`trace::OpTrace`].

pub mod blocking;
pub mod canon;
pub mod error;
pub mod extract;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod rank;
pub mod search;
pub mod structure;
pub mod trace;

pub use error::Error;
pub use graph::Graph;
pub use trace::{OpTrace, Step};
