//! Quaternionic Landau operator toolkit.
//!
//! * [`algebra`]: quaternions, the symplectic form ω, field matrices Ω_ν, Hodge star.
//! * [`heisenberg`]: the group ℝ³ ×_ω ℝ⁴, its matrix representation and Lie algebra.
//! * [`weylops`]: exact Weyl-algebra engine and the operators built from it.
//! * [`canonicalize`]: the SO(4) rotation taking Ω_ν to ‖ν‖·i.
//! * [`spectral`]: finite-difference discretization and sparse eigensolves.
//! * [`translations`]: magnetic translations and their identities.

pub mod algebra;
pub mod canonicalize;
pub mod heisenberg;
pub mod spectral;
pub mod translations;
pub mod weylops;
