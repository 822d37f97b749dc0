//! Exact computations for cluster algebras attached to simply-laced quantum
//! affine algebras: seed matrices on grid quivers, Auslander-Reiten data of
//! Dynkin quivers, and the highest l-weight monomials and truncated
//! q-characters of the simple modules that categorify cluster variables.

#![allow(clippy::needless_range_loop)]

pub mod ar;
pub mod cluster;
pub mod fixture;
pub mod grid;
pub mod hl;
pub mod laurent;
pub mod linalg;
pub mod output;
pub mod root;
pub mod typeclass;
pub mod ymono;

pub use ar::{ARNode, ARQuiver, QuiverRep};
pub use cluster::{ClusterVarData, Seed};
pub use grid::{GridQuiver, HeightFunction, SeedMatrices};
pub use laurent::{LaurentPoly, TropMonomial, VarTable};
pub use root::{DynkinDiagram, Family, QCartanTable};
pub use ymono::YMonomial;

/// Default cap on the number of seeds visited by a breadth-first enumeration.
pub const DEFAULT_SEED_CAP: usize = 30_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("variable tables differ")]
    VarTableMismatch,
    #[error("division is not exact")]
    InexactDivision,
    #[error("negative power of a non-monomial")]
    NonMonomialPower,
    #[error("tropical evaluation of the zero polynomial")]
    ZeroTropical,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("seed budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("case not covered by the closed-form tables: {0}")]
    Unmatched(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
