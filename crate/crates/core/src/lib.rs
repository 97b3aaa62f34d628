//! Quasi-joint-probability distributions of non-commuting observables on
//! finite-dimensional quantum systems.
//!
//! The pipeline is: pick observables and a [`qjpd::SchemeSpec`], expand it
//! into operator atoms with [`qjpd::build_atoms`], then pair the atoms with a
//! [`quantum::DensityState`]. The [`analysis`] module turns the results into
//! diagnostics and state reconstruction.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod matcore;
pub mod qjpd;
pub mod quantum;
pub mod random;

pub use error::{Error, Result};
pub use matcore::ComplexMatrix;
pub use qjpd::{
    build_atoms, evaluate_distribution, Kernel, OperatorAtomSet, QuasiDistribution, SchemeSpec,
    SupportPoint,
};
pub use quantum::{DensityState, HermitianObservable};
