//! Finite-difference spectra of the Landau operator and its canonical form.

mod assemble;
mod banded;
mod eigen;
mod export;
mod grid;
mod levels;
mod sparse;

pub use assemble::{
    assemble_canonical_2d, assemble_canonical_4d, assemble_landau, assemble_landau_with_budget, DEFAULT_MEMORY_BUDGET,
};
pub use banded::BandedCholesky;
pub use eigen::{eigensolve, EigenOptions, SpectrumReport};
pub use export::spectrum_csv;
pub use grid::{Boundary, GridSpec, MIN_POINTS};
pub use levels::{
    compare_spectra, compare_to_levels, fock_spectrum, kronecker_sum_levels, landau_levels_2d, richardson_extrapolate,
    FockLevel, FockSpectrum, PairedValue, SpectrumComparison,
};
pub use sparse::SparseOperator;

use crate::algebra::Vec3;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("grid needs about {needed} bytes, over the budget of {budget}")]
    MemoryBudget { needed: u128, budget: u128 },
    #[error("eigensolver did not converge ({} of the requested pairs met the tolerance)", .0.eigenvalues.len())]
    NonConvergence(Box<SpectrumReport>),
}

/// Assembles H_ν on `grid` and returns its `k` lowest eigenvalues.
pub fn landau_spectrum(
    nu: &Vec3,
    grid: &GridSpec,
    k: usize,
    tol: f64,
    opts: &EigenOptions,
) -> Result<SpectrumReport, SpectralError> {
    let op = assemble_landau(nu, grid)?;
    let mut rep = eigensolve(&op, k, tol, opts).map_err(|e| tag(e, Some(*grid), Some(nu.0), None))?;
    rep.grid = Some(*grid);
    rep.nu = Some(nu.0);
    Ok(rep)
}

/// Lowest eigenvalues of one planar factor of the canonical operator.
pub fn canonical_2d_spectrum(
    mu: f64,
    grid: &GridSpec,
    k: usize,
    tol: f64,
    opts: &EigenOptions,
) -> Result<SpectrumReport, SpectralError> {
    let op = assemble_canonical_2d(mu, grid)?;
    let mut rep = eigensolve(&op, k, tol, opts).map_err(|e| tag(e, Some(*grid), None, Some(mu)))?;
    rep.grid = Some(*grid);
    rep.mu = Some(mu);
    Ok(rep)
}

fn tag(e: SpectralError, grid: Option<GridSpec>, nu: Option<[f64; 3]>, mu: Option<f64>) -> SpectralError {
    match e {
        SpectralError::NonConvergence(mut r) => {
            r.grid = grid;
            r.nu = nu;
            r.mu = mu;
            SpectralError::NonConvergence(r)
        }
        other => other,
    }
}
