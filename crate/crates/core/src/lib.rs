//! Looped diagrams, their composition and homology, and their evaluation as
//! operations on Hochschild chains of commutative Frobenius algebras.

pub mod catalog;
pub mod chain;
pub mod compose;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod fatgraph;
pub mod frobenius;
pub mod hochschild;
pub mod homology;
pub mod json;
pub mod random;
pub mod snf;
pub mod split;
pub mod suites;
pub mod tensor;
mod unionfind;

pub use chain::{differential, Chain};
pub use compose::{compose, identity_of};
pub use diagram::{disjoint_union, Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
pub use error::{Error, Result};
