//! Complete non-ambiguous trees (CNATs) and their associated permutations,
//! linked through the Abelian sandpile model on permutation graphs.
//!
//! The crate provides:
//!
//! - [`perm`]: permutations, patterns, quadrant analysis, fixed-point surgery;
//! - [`graph`]: simple graphs, permutation graphs, pruning, and rooted acyclic
//!   orientation enumeration;
//! - [`sandpile`]: toppling, stabilisation, the burning criterion, and
//!   (minimal) recurrent configurations;
//! - [`cnat`]: the dotted-grid tree model, validation, and exhaustive
//!   enumeration of the CNATs associated with a permutation;
//! - [`bijections`]: the three bijections between these worlds (psi/phi on
//!   labelled upper-diagonal CNATs, fixed-point insertion, pattern swap);
//! - [`harness`]: exhaustive `b(n,k)` tables and theorem verification suites.
//!
//! Start with the runnable examples (`cargo run --example count_cnats`), or
//! with [`cnat::cnat_count`] and [`harness::bnk_table`].

pub mod bijections;
pub mod cnat;
pub mod graph;
pub mod harness;
pub mod perm;
pub mod render;
pub mod sandpile;

pub use crate::cnat::{Cnat, DotGrid, LabelledCnat};
pub use crate::graph::{Graph, Orientation};
pub use crate::perm::Permutation;
pub use crate::sandpile::{Configuration, SandpileGraph};
