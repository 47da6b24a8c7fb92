//! Exact equivariant K-theory of cominuscule homogeneous spaces and the
//! quantum-to-classical evaluation of three-point K-theoretic
//! Gromov–Witten invariants.

pub mod error;
pub mod root_system;
pub mod weyl;
pub mod charring;
pub mod ktheory;
pub mod catalog;
pub mod qc_evaluator;
pub mod veronese;
pub mod bundles;

pub use error::{KqError, Result};
