//! Quasi-classicalization engine.
//!
//! A [`SchemeSpec`] fixes the hashed operator `ĥ(s)`; [`build_atoms`] turns it
//! into exact operator atoms, and [`evaluate_distribution`] pairs those atoms
//! with a state.

mod atoms;
mod charfn;
mod distribution;
mod scheme;

pub use atoms::{
    build_atoms, build_atoms_with, quantize, AtomOptions, OperatorAtomSet, SupportPoint, MERGE_TOL,
    PRUNE_TOL,
};
pub use charfn::{
    atom_fourier, characteristic_function, grid_points, parse_grid, windowed_density, GridAxis,
    Kernel, WindowedDensity,
};
pub use distribution::{
    evaluate_distribution, evaluate_distribution_with, marginal, max_deviation,
    max_marginal_deviation, quasi_expectation, DistributionMeta, QuasiDistribution,
};
pub use scheme::{Factor, SchemeSpec, Term, UnitaryForm};

pub(crate) use atoms::snap;
pub(crate) use scheme::check_observables;
