//! The SO(4) change of basis taking Ω_ν to ‖ν‖·i, and the matching ℝ³ frame.

use nalgebra::Matrix4;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{field_matrix, unit_matrix, QuatUnit, Vec3};

/// Below this ratio (ν₂² + ν₃²)/‖ν‖² the field is treated as lying on the first axis.
pub const DEGENERATE_RATIO: f64 = 1e-24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CanonicalizeError {
    #[error("the zero field has no preferred frame")]
    ZeroField,
    #[error("non-finite field component")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// ν = 0: any rotation works, I₄ is returned.
    DegenerateZero,
    /// Field along +e′₁.
    Identity,
    /// Field along −e′₁.
    Flip,
    /// ν₂² + ν₃² > 0.
    Generic,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::DegenerateZero => "degenerate-zero",
            Branch::Identity => "identity",
            Branch::Flip => "flip",
            Branch::Generic => "generic",
        }
    }
}

/// An element of SO(4) together with the construction branch that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix {
    pub matrix: Matrix4<f64>,
    pub branch: Branch,
}

impl RotationMatrix {
    /// ‖RᵀR − I‖_F.
    pub fn orthogonality_residual(&self) -> f64 {
        (self.matrix.transpose() * self.matrix - Matrix4::identity()).norm()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    /// R Ω R⁻¹, with R⁻¹ = Rᵀ.
    pub fn conjugate(&self, m: &Matrix4<f64>) -> Matrix4<f64> {
        self.matrix * m * self.matrix.transpose()
    }

    /// ‖R Ω_ν R⁻¹ − ‖ν‖·i‖_F.
    pub fn conjugation_residual(&self, nu: &Vec3) -> f64 {
        let target = unit_matrix(QuatUnit::I) * nu.norm();
        (self.conjugate(field_matrix(nu).matrix()) - target).norm()
    }
}

fn classify(nu: &Vec3) -> Branch {
    let [n1, n2, n3] = nu.0;
    let mu2 = nu.norm().powi(2);
    if mu2 == 0.0 {
        Branch::DegenerateZero
    } else if n2 * n2 + n3 * n3 <= DEGENERATE_RATIO * mu2 {
        if n1 >= 0.0 {
            Branch::Identity
        } else {
            Branch::Flip
        }
    } else {
        Branch::Generic
    }
}

/// The basis (e0, ε1, ε2, ε3) as columns: the change-of-basis matrix as it
/// is usually displayed. It satisfies Fᵀ Ω_ν F = ‖ν‖·i.
pub fn frame_matrix(nu: &Vec3) -> Matrix4<f64> {
    let [n1, n2, n3] = nu.0;
    match classify(nu) {
        Branch::DegenerateZero | Branch::Identity => Matrix4::identity(),
        Branch::Flip => Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0)),
        Branch::Generic => {
            let mu = nu.norm();
            let lam = n2.hypot(n3);
            let lm = lam * mu;
            #[rustfmt::skip]
            let f = Matrix4::new(
                1.0, 0.0,     0.0,        0.0,
                0.0, n1 / mu, 0.0,        -lam / mu,
                0.0, n2 / mu, n3 / lam,   n1 * n2 / lm,
                0.0, n3 / mu, -n2 / lam,  n1 * n3 / lm,
            );
            f
        }
    }
}

/// R ∈ SO(4) with R Ω_ν R⁻¹ = ‖ν‖·i. In the generic case R is the transpose
/// of [`frame_matrix`], so that the basis vectors become the rows of R.
pub fn canonical_rotation(nu: &Vec3) -> RotationMatrix {
    RotationMatrix {
        matrix: frame_matrix(nu).transpose(),
        branch: classify(nu),
    }
}

/// A direct orthonormal frame of ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Frame3(pub [Vec3; 3]);

impl Frame3 {
    /// Columns ε′₁, ε′₂, ε′₃ as a 3×3 matrix.
    pub fn matrix(&self) -> nalgebra::Matrix3<f64> {
        nalgebra::Matrix3::from_fn(|r, c| self.0[c].0[r])
    }

    /// ‖GᵀG − I‖_F for the column matrix G.
    pub fn gram_residual(&self) -> f64 {
        let g = self.matrix();
        (g.transpose() * g - nalgebra::Matrix3::identity()).norm()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix().determinant()
    }
}

/// ε′₁ = ν/‖ν‖, ε′₂ = ε′₁∧e′₁ normalized, ε′₃ = ε′₁∧ε′₂. On the first
/// axis the frame is the one embedded in [`canonical_rotation`].
pub fn frame3(nu: &Vec3) -> Result<Frame3, CanonicalizeError> {
    if !nu.is_finite() {
        return Err(CanonicalizeError::NonFinite);
    }
    let e = |k| Vec3::<f64>::basis(k);
    match classify(nu) {
        Branch::DegenerateZero => Err(CanonicalizeError::ZeroField),
        Branch::Identity => Ok(Frame3([e(0), e(1), e(2)])),
        Branch::Flip => Ok(Frame3([-e(0), e(1), -e(2)])),
        Branch::Generic => {
            let mu = nu.norm();
            let e1 = nu.scale(1.0 / mu);
            let c = e1.cross(&e(0));
            let e2 = c.scale(1.0 / c.norm());
            let e3 = e1.cross(&e2);
            Ok(Frame3([e1, e2, e3]))
        }
    }
}

/// Coefficients c₁..c₄ of det(λI − M) = λ⁴ + c₁λ³ + c₂λ² + c₃λ + c₄ (Faddeev–LeVerrier).
pub fn char_poly(m: &Matrix4<f64>) -> [f64; 4] {
    let mut c = [0.0; 4];
    let mut mk = Matrix4::<f64>::zeros();
    let mut prev = 1.0;
    for k in 1..=4 {
        mk = m * (mk + Matrix4::identity() * prev);
        prev = -mk.trace() / k as f64;
        c[k - 1] = prev;
    }
    c
}

/// Summary of a canonicalization, as emitted by the command-line tool.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalReport {
    pub nu: [f64; 3],
    pub norm: f64,
    pub branch: Branch,
    pub degenerate: bool,
    /// Rows of R.
    pub rotation: [[f64; 4]; 4],
    pub conjugation_residual: f64,
    pub orthogonality_residual: f64,
    pub determinant: f64,
    /// max |c_k(RΩRᵀ) − c_k(Ω)|, relative to max(1, ‖ν‖⁴).
    pub char_poly_residual: f64,
}

pub fn canonical_report(nu: &Vec3) -> CanonicalReport {
    let r = canonical_rotation(nu);
    let om = *field_matrix(nu).matrix();
    let before = char_poly(&om);
    let after = char_poly(&r.conjugate(&om));
    let scale = nu.norm().powi(4).max(1.0);
    let cp = before
        .iter()
        .zip(&after)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale;
    CanonicalReport {
        nu: nu.0,
        norm: nu.norm(),
        branch: r.branch,
        degenerate: r.branch == Branch::DegenerateZero,
        rotation: std::array::from_fn(|i| std::array::from_fn(|j| r.matrix[(i, j)])),
        conjugation_residual: r.conjugation_residual(nu),
        orthogonality_residual: r.orthogonality_residual(),
        determinant: r.determinant(),
        char_poly_residual: cp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_axis_cases() {
        let r = canonical_rotation(&Vec3::new(5.0, 0.0, 0.0));
        assert_eq!(r.matrix, Matrix4::identity());
        assert_eq!(r.branch, Branch::Identity);
        let r = canonical_rotation(&Vec3::new(-5.0, 0.0, 0.0));
        assert_eq!(
            r.matrix,
            Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0))
        );
        assert_eq!(r.branch, Branch::Flip);
        assert!(r.conjugation_residual(&Vec3::new(-5.0, 0.0, 0.0)) == 0.0);
    }

    #[test]
    fn third_axis_display() {
        let nu = Vec3::new(0.0, 0.0, 1.0);
        #[rustfmt::skip]
        let shown = Matrix4::new(
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, -1.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
        );
        assert_eq!(frame_matrix(&nu), shown);
        let om = *field_matrix(&nu).matrix();
        // the displayed matrix conjugates in the Fᵀ Ω F orientation only
        assert!((shown.transpose() * om * shown - unit_matrix(QuatUnit::I)).norm() < 1e-15);
        assert!((shown * om * shown.transpose() - unit_matrix(QuatUnit::I)).norm() > 1.0);
        assert!(canonical_rotation(&nu).conjugation_residual(&nu) < 1e-15);
    }

    #[test]
    fn zero_field() {
        let r = canonical_rotation(&Vec3::zero());
        assert_eq!(r.branch, Branch::DegenerateZero);
        assert_eq!(r.matrix, Matrix4::identity());
        assert_eq!(frame3(&Vec3::zero()), Err(CanonicalizeError::ZeroField));
        assert!(canonical_report(&Vec3::zero()).degenerate);
    }

    #[test]
    fn char_poly_of_field_matrix() {
        let nu = Vec3::new(1.0, -2.0, 2.0);
        let c = char_poly(field_matrix(&nu).matrix());
        // (λ² + 9)²
        let want = [0.0, 18.0, 0.0, 81.0];
        for k in 0..4 {
            assert!((c[k] - want[k]).abs() < 1e-12, "{c:?}");
        }
    }
}
