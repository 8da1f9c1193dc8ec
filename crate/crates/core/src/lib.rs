//! Exact colored `U_q(sl2)` invariants of braid closures.
//!
//! Two independent evaluations of the same link value `w_L`:
//! [`rt_engine`] takes the quantum trace of a product of braiding
//! operators, [`shadow_engine`] pushes scalar recoupling coefficients
//! through a Clebsch-Gordan path basis. [`skein_oracle`] computes the
//! Jones polynomial from a Kauffman-bracket state sum and shares only the
//! scalar ring with the other two.

pub mod braid;
pub mod exec;
pub mod laurent;
pub mod rt_engine;
pub mod shadow_engine;
pub mod skein_oracle;
pub mod uqsl2;

pub use braid::{ColoredBraidWord, LinkDiagram};
pub use exec::Strategy;
pub use laurent::{LaurentScalar, RationalScalar};
pub use uqsl2::{Spin, TensorOperator};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operator index tuples do not match")]
    ShapeMismatch,
    #[error("operator is not square")]
    NonSquare,
    #[error("strands {first} and {second} lie on one component but carry colors {first_color} and {second_color}")]
    ColorMismatch { first: usize, second: usize, first_color: Spin, second_color: Spin },
    #[error("generator {generator} is out of range for {strands} strands")]
    InvalidGenerator { generator: i32, strands: usize },
    #[error("expected {expected} colors, got {got}")]
    WrongColorCount { expected: usize, got: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("the oracle only handles spin 1/2, found {0}")]
    NonFundamental(Spin),
    #[error("slot {slot} is not a crossing position for {strands} strands")]
    BadSlot { slot: usize, strands: usize },
    #[error("position {position} is out of range for a word of length {len}")]
    BadPosition { position: usize, len: usize },
    #[error("{c} is not in the fusion range of {a} and {b}")]
    NotInFusionRange { a: Spin, b: Spin, c: Spin },
    #[error("result is not a Laurent polynomial: {0}")]
    NotLaurent(String),
}
