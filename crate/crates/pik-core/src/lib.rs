//! Exact semantics and tooling for the reversible quantum programming model
//! generated by a `2^k`-th root of unity `ζ` and a square root `V` of NOT.
//!
//! Programs are [`Term`]s. They evaluate to unitary matrices over
//! `D[ζ_k] = Z[1/2, ζ_k]` ([`RingElem`], [`ExactMatrix`]), and equality of
//! programs is decided by comparing those matrices exactly.

pub mod catalytic;
pub mod channel;
pub mod decide;
pub mod error;
pub mod exec;
pub mod int;
pub mod matrix;
pub mod qft;
pub mod random;
pub mod report;
pub mod ring;
pub mod semantics;
pub mod staton;
pub mod synth;
pub mod syntax;
pub mod tensor;
pub mod term;

pub use channel::{Channel, CqObject, HugPresentation};
pub use error::{Error, Result};
pub use exec::Exec;
pub use matrix::ExactMatrix;
pub use report::Report;
pub use ring::{Precision, RingElem};
pub use semantics::{eval, Evaluator};
pub use term::{Gates, Term};
