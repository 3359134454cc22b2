//! Exact-arithmetic toolkit for set-theoretic dynamical Yang-Baxter maps,
//! parameter-dependent linear operators over finite carriers, and the
//! associated generator-and-relation algebra with its evaluation channels.

pub mod carriers;
pub mod dhx;
pub mod dybm;
pub mod frt;
pub mod lop;
pub mod sampling;
pub mod scalar;
pub mod vecth;
pub mod wgroup;

pub use carriers::{builtin_q5, builtin_z5_ternary, FiniteAction, Quasigroup, Structure, TernarySystem};
pub use dybm::{builtin_q5_map, CheckOutcome, DybmFile, DynamicalMap};
pub use frt::{AlgebraElement, Channel, DynRep, EvaluationBattery, Letter};
pub use lop::{LOperator, SigmaContext};
pub use scalar::{Matrix, Scalar};
pub use vecth::{Morphism, Object};
pub use wgroup::{GeneratorWord, GroupClosure, GroupElement, SignedGen};
