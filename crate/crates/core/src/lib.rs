//! Symbol-pair weights of linear codes over finite fields.
//!
//! The crate computes pair weights and supports (cyclic convention), the
//! generalized pair and Hamming weight hierarchies, the length/dimension
//! profile, and decides whether a code is pair equiweight or whether a given
//! linear isomorphism between two codes preserves pair weights. The decision
//! procedures work from the column-pair spans of a generator matrix and
//! exact rational line sums, and every one of them has a brute-force
//! counterpart in [`oracle`] for differential testing.
//!
//! Heavy loops run on rayon when the `parallel` feature (on by default) is
//! enabled; see [`par::Exec`].

pub mod battery;
pub mod code;
pub mod combinat;
pub mod criterion;
pub mod error;
pub mod gf;
pub mod hierarchy;
pub mod iso;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod rational;

pub use code::{Codeword, IndexSet, LinearCode};
pub use criterion::{Answer, Rule, Verdict, Witness};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use hierarchy::{Hierarchy, HierarchyKind};
pub use iso::IsoPair;
pub use linalg::{FqMatrix, Subspace};
pub use oracle::Seed;
pub use par::Exec;
pub use rational::Rational;
