use num::complex::Complex64;

use super::grid::GridSpec;
use super::sparse::SparseOperator;
use super::SpectralError;
use crate::algebra::{field_matrix_entries, Vec3};

/// Default cap on [`GridSpec::estimated_bytes`].
pub const DEFAULT_MEMORY_BUDGET: u128 = 3 << 30;

/// Krylov basis size assumed by the memory estimate.
const BUDGET_BASIS: usize = 64;

fn check_budget(grid: &GridSpec, budget: u128) -> Result<(), SpectralError> {
    let needed = grid.estimated_bytes(BUDGET_BASIS);
    if needed > budget {
        Err(SpectralError::MemoryBudget { needed, budget })
    } else {
        Ok(())
    }
}

/// −Σ(∂_α + iA_α)² for a linear potential A = P x with zero diagonal,
/// expanded as −Δ − 2i⟨A, ∇⟩ + ‖A‖² with central differences. Because
/// A_α does not depend on x_α the first-order stencil is exactly Hermitian.
fn assemble_magnetic(grid: &GridSpec, p: &[[f64; 4]; 4]) -> SparseOperator {
    let d = grid.dim;
    let n = grid.points;
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    SparseOperator::from_rows(grid.len(), |idx, out| {
        let mut ix = [0usize; 4];
        grid.unflatten(idx, &mut ix);
        let x: Vec<f64> = (0..d).map(|a| grid.coordinate(ix[a])).collect();
        let a: Vec<f64> = (0..d).map(|al| (0..d).map(|b| p[al][b] * x[b]).sum()).collect();
        let diag = 2.0 * d as f64 * inv_h2 + a.iter().map(|v| v * v).sum::<f64>();
        // neighbours below, then the diagonal, then neighbours above, so columns increase
        for al in (0..d).rev() {
            if ix[al] > 0 {
                // −Δ gives −1/h²; −2iA_α ∂_α gives +iA_α/h towards −e_α
                out.push((idx - grid.stride(al), Complex64::new(-inv_h2, a[al] / h)));
            }
        }
        out.push((idx, Complex64::new(diag, 0.0)));
        for al in 0..d {
            if ix[al] + 1 < n {
                out.push((idx + grid.stride(al), Complex64::new(-inv_h2, -a[al] / h)));
            }
        }
    })
}

/// Finite-difference H_ν = −Δ − 2i⟨Ω_ν x, ∇⟩ + ‖Ω_ν x‖² on a 4-D box.
pub fn assemble_landau(nu: &Vec3, grid: &GridSpec) -> Result<SparseOperator, SpectralError> {
    assemble_landau_with_budget(nu, grid, DEFAULT_MEMORY_BUDGET)
}

pub fn assemble_landau_with_budget(nu: &Vec3, grid: &GridSpec, budget: u128) -> Result<SparseOperator, SpectralError> {
    if grid.dim != 4 {
        return Err(SpectralError::InvalidGrid(format!(
            "the Landau operator needs a 4-D grid, got {}-D",
            grid.dim
        )));
    }
    if !nu.is_finite() {
        return Err(SpectralError::InvalidArgument("non-finite field".into()));
    }
    check_budget(grid, budget)?;
    Ok(assemble_magnetic(grid, &field_matrix_entries(nu)))
}

/// One (y₀, y₁) factor −(∂₀ − iμy₁)² − (∂₁ + iμy₀)² of the canonical operator.
pub fn assemble_canonical_2d(mu: f64, grid: &GridSpec) -> Result<SparseOperator, SpectralError> {
    if grid.dim != 2 {
        return Err(SpectralError::InvalidGrid(format!(
            "the planar factor needs a 2-D grid, got {}-D",
            grid.dim
        )));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(SpectralError::InvalidArgument(format!(
            "field strength must be positive, got {mu}"
        )));
    }
    check_budget(grid, DEFAULT_MEMORY_BUDGET)?;
    let mut p = [[0.0; 4]; 4];
    p[0][1] = -mu;
    p[1][0] = mu;
    Ok(assemble_magnetic(grid, &p))
}

/// The 4-D canonical operator as the Kronecker sum of two planar factors.
pub fn assemble_canonical_4d(mu: f64, grid2: &GridSpec) -> Result<SparseOperator, SpectralError> {
    let f = assemble_canonical_2d(mu, grid2)?;
    Ok(SparseOperator::kronecker_sum(&f, &f))
}
