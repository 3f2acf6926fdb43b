//! Exact link invariants through ribbon graphs ("dessins").
//!
//! A planar diagram is smoothed according to a Kauffman state; the state
//! circles, oriented by nesting parity, become the vertices of an oriented
//! ribbon graph whose edges are the crossings. Everything else in this crate
//! is computed from that object: the Kauffman bracket as a sum over spanning
//! sub-dessins, the determinant as an alternating count of quasi-trees, the
//! leading Jones coefficients, and the chord-diagram view of one-vertex
//! dessins.
//!
//! The crate is `no_std` (it needs `alloc`). Scans over exponentially many
//! states or sub-dessins are exposed as range-partitionable functions whose
//! results form commutative monoids, so callers with threads can split them.

#![no_std]

extern crate alloc;

pub mod chord;
pub mod dessin;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod poly;
mod unionfind;

pub use error::{Error, Result};

/// Default ceiling on the crossing count accepted by the state-sum oracle.
pub const DEFAULT_STATE_CAP: usize = 20;

/// Default ceiling on the edge count accepted by full sub-dessin scans.
pub const DEFAULT_SCAN_CAP: usize = 24;

/// Hard limit imposed by the 64-bit subset masks.
pub const MAX_SCAN_EDGES: usize = 63;
