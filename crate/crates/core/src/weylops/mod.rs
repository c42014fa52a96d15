//! Polynomial-coefficient differential operators with exact coefficients.
//!
//! Every operator lives on a declared [`Chart`]; composition keeps terms in
//! normal order (coordinates left of derivatives) using the relation
//! `[∂_α, x_β] = δ_αβ`.

mod chart;
pub mod coeff;
mod diffop;
mod ladder;
mod operators;

pub use chart::{chart_transform, ChartMap, Direction};
pub use coeff::{Coeff, Rational};
pub use diffop::{op_apply, op_commutator, op_compose, Chart, DiffOp, Monomial, Polynomial};
pub use ladder::{
    build_ladder, build_oriented_ladder, complex_canonical_form, resolve_chirality, resolve_chirality_of,
    ChiralityReport, Ladder,
};
pub use operators::{
    angular_momentum_bivector, build_angular_momentum, build_angular_momentum_3d, build_canonical,
    build_heisenberg_fields, build_landau, build_landau_covariant, build_laplace_element, complex_momenta_display,
    decompose_in_fields, exact_nu, laplacian, partial_fourier, sub_laplacian, symbolic_bracket_table,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeylError {
    #[error("operators live on different charts ({} vs {})", left.name(), right.name())]
    ChartMismatch { left: Chart, right: Chart },
    #[error("operator contains a central coordinate factor t{0}; partial Fourier transform is undefined")]
    CentralCoordinate(usize),
    #[error("operator is on chart {}, expected {}", found.name(), expected.name())]
    WrongChart { expected: Chart, found: Chart },
    #[error("field strength must be nonnegative, got {0}")]
    NegativeField(String),
    #[error("field strength must be positive, got {0}")]
    NonPositiveField(String),
    #[error("non-finite field component")]
    NonFinite,
    #[error("neither chirality sign reproduces the operator")]
    NoChirality,
}
