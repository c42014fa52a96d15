//! Quaternions, the ℝ³-valued symplectic form on ℍ ≅ ℝ⁴, the field matrix
//! Ω_ν of a uniform magnetic field, its vector potential, and the Hodge star
//! on Λ²(ℝ⁴).
//!
//! Most types are generic over a [`Scalar`] so that the same formulas can be
//! evaluated in `f64` for numerics or in exact rationals for verification.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use nalgebra::Matrix4;
use num::Num;
use serde::{Deserialize, Serialize};

/// Field of coefficients used by the generic algebra: `f64`, `BigRational`, ...
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + AddAssign + SubAssign + MulAssign {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + AddAssign + SubAssign + MulAssign {}

pub(crate) fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

pub(crate) fn half<T: Scalar>() -> T {
    T::one() / two()
}

/// A quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T = f64> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s,
        )
    }

    /// Imaginary part as a vector of Im ℍ ≅ ℝ³.
    pub fn imag(&self) -> Vec3<T> {
        Vec3([self.x.clone(), self.y.clone(), self.z.clone()])
    }
}

impl Quaternion<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// Hamilton product.
pub fn quat_mul<T: Scalar>(p: &Quaternion<T>, q: &Quaternion<T>) -> Quaternion<T> {
    let (a1, b1, c1, d1) = (p.w.clone(), p.x.clone(), p.y.clone(), p.z.clone());
    let (a2, b2, c2, d2) = (q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone());
    Quaternion::new(
        a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
        a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
        a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(&self, &rhs)
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, rhs: Self) -> Self {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

/// A point of ℝ⁴ in the basis (e0, e1, e2, e3).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec4<T = f64>(pub [T; 4]);

/// A point of ℝ³ ≅ Im ℍ in the basis (e′1, e′2, e′3); used for t, ν and B.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3<T = f64>(pub [T; 3]);

impl<T: Scalar> Vec4<T> {
    pub fn new(x0: T, x1: T, x2: T, x3: T) -> Self {
        Self([x0, x1, x2, x3])
    }

    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| T::zero()))
    }

    /// Basis vector e_α.
    pub fn basis(alpha: usize) -> Self {
        Self(std::array::from_fn(|i| if i == alpha { T::one() } else { T::zero() }))
    }

    pub fn dot(&self, other: &Self) -> T {
        (0..4).fold(T::zero(), |acc, i| acc + self.0[i].clone() * other.0[i].clone())
    }

    pub fn scale(&self, s: T) -> Self {
        Self(std::array::from_fn(|i| self.0[i].clone() * s.clone()))
    }

    pub fn to_quaternion(&self) -> Quaternion<T> {
        let [w, x, y, z] = self.0.clone();
        Quaternion::new(w, x, y, z)
    }
}

impl Vec4<f64> {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn new(v1: T, v2: T, v3: T) -> Self {
        Self([v1, v2, v3])
    }

    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| T::zero()))
    }

    pub fn basis(lambda: usize) -> Self {
        Self(std::array::from_fn(|i| if i == lambda { T::one() } else { T::zero() }))
    }

    pub fn dot(&self, other: &Self) -> T {
        (0..3).fold(T::zero(), |acc, i| acc + self.0[i].clone() * other.0[i].clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, s: T) -> Self {
        Self(std::array::from_fn(|i| self.0[i].clone() * s.clone()))
    }

    /// Vector product ∧ of oriented ℝ³.
    pub fn cross(&self, other: &Self) -> Self {
        let [a1, a2, a3] = self.0.clone();
        let [b1, b2, b3] = other.0.clone();
        Self([
            a2.clone() * b3.clone() - a3.clone() * b2.clone(),
            a3 * b1.clone() - a1.clone() * b3,
            a1 * b2 - a2 * b1,
        ])
    }
}

impl Vec3<f64> {
    /// Euclidean norm √(ν₁²+ν₂²+ν₃²).
    pub fn norm(&self) -> f64 {
        self.0[0].hypot(self.0[1]).hypot(self.0[2])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

macro_rules! impl_vec_ops {
    ($ty:ident, $n:expr) => {
        impl<T: Scalar> Add for $ty<T> {
            type Output = $ty<T>;
            fn add(self, rhs: Self) -> Self {
                $ty(std::array::from_fn(|i| self.0[i].clone() + rhs.0[i].clone()))
            }
        }

        impl<T: Scalar> Sub for $ty<T> {
            type Output = $ty<T>;
            fn sub(self, rhs: Self) -> Self {
                $ty(std::array::from_fn(|i| self.0[i].clone() - rhs.0[i].clone()))
            }
        }

        impl<T: Scalar> Neg for $ty<T> {
            type Output = $ty<T>;
            fn neg(self) -> Self {
                $ty(std::array::from_fn(|i| -self.0[i].clone()))
            }
        }
    };
}

impl_vec_ops!(Vec4, 4);
impl_vec_ops!(Vec3, 3);

/// The imaginary units with a 4×4 representation on ℝ⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuatUnit {
    I,
    J,
    K,
}

impl QuatUnit {
    pub const ALL: [QuatUnit; 3] = [QuatUnit::I, QuatUnit::J, QuatUnit::K];
}

/// Entries of Ω_ν = ν₁ i + ν₂ j + ν₃ k, row-major.
pub fn field_matrix_entries<T: Scalar>(nu: &Vec3<T>) -> [[T; 4]; 4] {
    let [n1, n2, n3] = nu.0.clone();
    let z = T::zero;
    [
        [z(), -n1.clone(), -n2.clone(), -n3.clone()],
        [n1.clone(), z(), -n3.clone(), n2.clone()],
        [n2.clone(), n3.clone(), z(), -n1.clone()],
        [n3, -n2, n1, z()],
    ]
}

/// Matrix of a unit quaternion acting on ℝ⁴ (left multiplication).
pub fn unit_matrix(u: QuatUnit) -> Matrix4<f64> {
    let nu = match u {
        QuatUnit::I => Vec3::new(1.0, 0.0, 0.0),
        QuatUnit::J => Vec3::new(0.0, 1.0, 0.0),
        QuatUnit::K => Vec3::new(0.0, 0.0, 1.0),
    };
    field_matrix(&nu).0
}

/// The 4×4 antisymmetric matrix Ω_ν of a uniform field ν ∈ Im ℍ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldMatrix(pub Matrix4<f64>);

impl FieldMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn apply(&self, x: &Vec4) -> Vec4 {
        let y = self.0 * nalgebra::Vector4::from(x.0);
        Vec4([y[0], y[1], y[2], y[3]])
    }

    /// max |Ωᵀ + Ω|
    pub fn antisymmetry_residual(&self) -> f64 {
        (self.0.transpose() + self.0).amax()
    }

    /// max |Ω² + ‖ν‖² I₄| for the field this matrix was built from.
    pub fn square_residual(&self, nu: &Vec3) -> f64 {
        (self.0 * self.0 + Matrix4::identity() * nu.norm_sqr()).amax()
    }
}

pub fn field_matrix(nu: &Vec3) -> FieldMatrix {
    let e = field_matrix_entries(nu);
    FieldMatrix(Matrix4::from_fn(|r, c| e[r][c]))
}

/// Ω_{E,B}: the general constant curvature matrix with electric part E and
/// magnetic part B. Equals `field_matrix(B)` when E = B.
pub fn field_matrix_eb(e: &Vec3, b: &Vec3) -> Matrix4<f64> {
    let mut m = field_matrix(b).0;
    for a in 0..3 {
        m[(a + 1, 0)] = e.0[a];
        m[(0, a + 1)] = -e.0[a];
    }
    m
}

/// A(x) = Ω_ν x.
pub fn vector_potential<T: Scalar>(nu: &Vec3<T>, x: &Vec4<T>) -> Vec4<T> {
    let m = field_matrix_entries(nu);
    Vec4(std::array::from_fn(|r| {
        (0..4).fold(T::zero(), |acc, c| acc + m[r][c].clone() * x.0[c].clone())
    }))
}

/// ω(x, y) from the explicit component formulas.
pub fn omega_form<T: Scalar>(x: &Vec4<T>, y: &Vec4<T>) -> Vec3<T> {
    let [x0, x1, x2, x3] = x.0.clone();
    let [y0, y1, y2, y3] = y.0.clone();
    Vec3([
        x0.clone() * y1.clone() - x1.clone() * y0.clone() + x2.clone() * y3.clone() - x3.clone() * y2.clone(),
        x0.clone() * y2.clone() - x2.clone() * y0.clone() + x3.clone() * y1.clone() - x1.clone() * y3.clone(),
        x0 * y3 - x3 * y0 + x1 * y2 - x2 * y1,
    ])
}

/// ω(x, y) = Im ½(y x̄ − x ȳ), computed with the Hamilton product.
pub fn omega_quaternionic<T: Scalar>(x: &Vec4<T>, y: &Vec4<T>) -> Vec3<T> {
    let (qx, qy) = (x.to_quaternion(), y.to_quaternion());
    let d = quat_mul(&qy, &qx.conj()) - quat_mul(&qx, &qy.conj());
    d.scale(half()).imag()
}

/// A 2-vector on ℝ⁴ with components on (e0∧e1, e0∧e2, e0∧e3, e2∧e3, e3∧e1, e1∧e2).
///
/// In this order the Hodge star is the swap of the two halves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bivector<T = f64>(pub [T; 6]);

impl<T> Bivector<T> {
    pub const LABELS: [&'static str; 6] = ["01", "02", "03", "23", "31", "12"];
}

impl<T: Clone> Bivector<T> {
    pub fn hodge_star(&self) -> Self {
        let c = &self.0;
        Bivector([
            c[3].clone(),
            c[4].clone(),
            c[5].clone(),
            c[0].clone(),
            c[1].clone(),
            c[2].clone(),
        ])
    }
}

impl<T: Clone + PartialEq> Bivector<T> {
    pub fn is_self_dual(&self) -> bool {
        self.hodge_star() == *self
    }
}

impl Bivector<f64> {
    /// Components F_{βα} = m[β][α] of an antisymmetric matrix, i.e. the
    /// curvature ½(∂_α A_β − ∂_β A_α) of the potential A = m x.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        Bivector([m[(1, 0)], m[(2, 0)], m[(3, 0)], m[(3, 2)], m[(1, 3)], m[(2, 1)]])
    }
}

pub fn hodge_star<T: Clone>(b: &Bivector<T>) -> Bivector<T> {
    b.hodge_star()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basis_table() {
        let (i, j, k) = (Quaternion::<f64>::i(), Quaternion::j(), Quaternion::k());
        let one = Quaternion::one();
        assert_eq!(i * j, k);
        assert_eq!(j * i, k.scale(-1.0));
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        for u in [i, j, k] {
            assert_eq!(u * u, one.scale(-1.0));
        }
        assert_eq!((i * j) * k, one.scale(-1.0));
    }

    #[test]
    fn conj_times_self_is_norm() {
        let q = Quaternion::new(rat(1, 2), rat(-3, 1), rat(2, 7), rat(5, 3));
        let p = quat_mul(&q.conj(), &q);
        assert_eq!(p, Quaternion::one().scale(q.norm_sqr()));
    }

    #[test]
    fn unit_matrix_i_layout() {
        let m = unit_matrix(QuatUnit::I);
        let mut expect = Matrix4::zeros();
        expect[(0, 1)] = -1.0;
        expect[(1, 0)] = 1.0;
        expect[(2, 3)] = -1.0;
        expect[(3, 2)] = 1.0;
        assert_eq!(m, expect);
    }

    #[test]
    fn unit_matrices_multiply_like_quaternions() {
        let (i, j, k) = (
            unit_matrix(QuatUnit::I),
            unit_matrix(QuatUnit::J),
            unit_matrix(QuatUnit::K),
        );
        // explicit row-by-column product of the displayed matrices
        let mut ij = Matrix4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                for s in 0..4 {
                    ij[(r, c)] += i[(r, s)] * j[(s, c)];
                }
            }
        }
        assert_eq!(ij, k);
        assert_eq!(i * i, -Matrix4::identity());
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
    }

    #[test]
    fn omega_examples() {
        let e = |a| Vec4::<f64>::basis(a);
        assert_eq!(omega_form(&e(0), &e(1)), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(omega_form(&e(2), &e(3)), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(omega_quaternionic(&e(2), &e(3)), Vec3::new(1.0, 0.0, 0.0));
        let x = Vec4::new(0.3, -1.2, 2.0, 0.7);
        assert_eq!(omega_form(&x, &x), Vec3::zero());
    }

    #[test]
    fn omega_routes_agree_exactly_on_rationals() {
        let x = Vec4::new(rat(1, 3), rat(-2, 5), rat(7, 2), rat(0, 1));
        let y = Vec4::new(rat(-4, 1), rat(1, 9), rat(3, 4), rat(-5, 6));
        assert_eq!(omega_form(&x, &y), omega_quaternionic(&x, &y));
        assert_eq!(omega_form(&x, &y), -omega_form(&y, &x));
    }

    #[test]
    fn field_matrix_b3_layout() {
        let b3 = 2.5;
        let m = field_matrix(&Vec3::new(0.0, 0.0, b3)).0;
        let mut expect = Matrix4::zeros();
        expect[(0, 3)] = -b3;
        expect[(1, 2)] = -b3;
        expect[(2, 1)] = b3;
        expect[(3, 0)] = b3;
        assert_eq!(m, expect);
        assert_eq!(field_matrix(&Vec3::zero()).0, Matrix4::zeros());
    }

    #[test]
    fn field_matrix_squares_to_minus_norm() {
        let nu = Vec3::new(0.3, -1.7, 2.2);
        let f = field_matrix(&nu);
        assert!(f.square_residual(&nu) < 1e-12);
        assert_eq!(f.antisymmetry_residual(), 0.0);
    }

    #[test]
    fn vector_potential_at_e0() {
        let nu = Vec3::new(1.5, -2.0, 0.25);
        let a = vector_potential(&nu, &Vec4::basis(0));
        assert_eq!(a, Vec4::new(0.0, 1.5, -2.0, 0.25));
        assert_eq!(vector_potential(&nu, &Vec4::zero()), Vec4::zero());
        let x = Vec4::new(rat(1, 2), rat(3, 1), rat(-1, 7), rat(2, 3));
        let nu_q = Vec3::new(rat(2, 1), rat(-1, 3), rat(5, 4));
        assert_eq!(vector_potential(&nu_q, &x).dot(&x), rat(0, 1));
    }

    #[test]
    fn vector_potential_matches_displayed_column() {
        let (b1, b2, b3): (f64, f64, f64) = (0.7, -1.1, 2.3);
        let x = Vec4::new(0.4, -0.9, 1.3, 2.1);
        let a = vector_potential(&Vec3::new(b1, b2, b3), &x);
        let [x0, x1, x2, x3] = x.0;
        let expect = [
            -b1 * x1 - b2 * x2 - b3 * x3,
            b1 * x0 - b3 * x2 + b2 * x3,
            b2 * x0 + b3 * x1 - b1 * x3,
            b3 * x0 - b2 * x1 + b1 * x2,
        ];
        for r in 0..4 {
            assert!((a.0[r] - expect[r]).abs() < 1e-15);
        }
    }

    #[test]
    fn hodge_star_basis() {
        let mut e01 = Bivector([0.0; 6]);
        e01.0[0] = 1.0;
        let mut e23 = Bivector([0.0; 6]);
        e23.0[3] = 1.0;
        assert_eq!(hodge_star(&e01), e23);
        for idx in 0..6 {
            let mut b = Bivector([0.0; 6]);
            b.0[idx] = 1.0;
            assert_eq!(b.hodge_star().hodge_star(), b);
        }
    }

    #[test]
    fn self_duality_forces_e_equal_b() {
        let b = Vec3::new(0.5, 1.5, -2.0);
        let same = Bivector::from_matrix(&field_matrix_eb(&b, &b));
        assert!(same.is_self_dual());
        let e = Vec3::new(0.5, 1.5, -1.0);
        let diff = Bivector::from_matrix(&field_matrix_eb(&e, &b));
        assert!(!diff.is_self_dual());
        assert_eq!(field_matrix_eb(&b, &b), field_matrix(&b).0);
    }

    #[test]
    fn curvature_of_potential_recovers_field() {
        // ½(∂_α A_β − ∂_β A_α) for A = Ω x, by differencing the linear map
        let nu = Vec3::new(0.6, -1.4, 0.9);
        let a = |x: &Vec4| vector_potential(&nu, x);
        let mut comps = [0.0; 6];
        let pairs = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];
        for (n, &(al, be)) in pairs.iter().enumerate() {
            let d_al_a_be = a(&Vec4::basis(al)).0[be];
            let d_be_a_al = a(&Vec4::basis(be)).0[al];
            comps[n] = 0.5 * (d_al_a_be - d_be_a_al);
        }
        assert_eq!(Bivector(comps), Bivector::from_matrix(&field_matrix(&nu).0));
        assert_eq!(&comps[..3], &nu.0);
        assert_eq!(&comps[3..], &nu.0);
    }
}
