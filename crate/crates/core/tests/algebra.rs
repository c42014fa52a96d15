use nalgebra::Matrix4;
use num::BigRational;
use proptest::prelude::*;
use qlandau::algebra::*;

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-3.0f64..3.0).prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn vec4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-3.0f64..3.0).prop_map(Vec4)
}

fn vec3() -> impl Strategy<Value = Vec3> {
    prop::array::uniform3(-3.0f64..3.0).prop_map(Vec3)
}

fn rational4() -> impl Strategy<Value = Vec4<BigRational>> {
    prop::array::uniform4((-50i64..50, 1i64..12))
        .prop_map(|a| Vec4(a.map(|(n, d)| BigRational::new(n.into(), d.into()))))
}

fn qdist(p: &Quaternion, q: &Quaternion) -> f64 {
    (*p - *q).norm()
}

#[test]
fn triple_product_of_units() {
    let ijk = quat_mul(&quat_mul(&Quaternion::i(), &Quaternion::j()), &Quaternion::k());
    assert_eq!(ijk, Quaternion::new(-1.0, 0.0, 0.0, 0.0));
    assert_eq!(
        quat_mul(&Quaternion::j(), &Quaternion::i()),
        Quaternion::k().scale(-1.0)
    );
}

#[test]
fn zero_field() {
    assert_eq!(*field_matrix(&Vec3::zero()).matrix(), Matrix4::zeros());
    assert_eq!(vector_potential(&Vec3::new(1.0, 2.0, 3.0), &Vec4::zero()), Vec4::zero());
}

#[test]
fn hodge_star_basis_sweep() {
    // ⋆ e0∧e1 = e2∧e3 and friends, and ⋆⋆ = id on every basis vector
    for k in 0..6 {
        let mut c = [0.0; 6];
        c[k] = 1.0;
        let b = Bivector(c);
        let s = hodge_star(&b);
        assert_eq!(s.0[(k + 3) % 6], 1.0);
        assert_eq!(hodge_star(&s), b);
    }
}

#[test]
fn self_duality_forces_equal_parts() {
    let b = Vec3::new(0.3, -1.2, 2.0);
    assert!(Bivector::from_matrix(&field_matrix_eb(&b, &b)).is_self_dual());
    assert!(!Bivector::from_matrix(&field_matrix_eb(&Vec3::new(0.3, -1.2, 2.5), &b)).is_self_dual());
}

proptest! {
    #[test]
    fn product_is_associative(p in quat(), q in quat(), r in quat()) {
        let lhs = quat_mul(&quat_mul(&p, &q), &r);
        let rhs = quat_mul(&p, &quat_mul(&q, &r));
        prop_assert!(qdist(&lhs, &rhs) <= 1e-12 * p.norm().max(1.0) * q.norm().max(1.0) * r.norm().max(1.0));
    }

    #[test]
    fn one_is_neutral(q in quat()) {
        prop_assert_eq!(quat_mul(&q, &Quaternion::one()), q);
        prop_assert_eq!(quat_mul(&Quaternion::one(), &q), q);
    }

    #[test]
    fn conjugate_gives_the_norm(q in quat()) {
        let n = quat_mul(&q.conj(), &q);
        prop_assert!(qdist(&n, &Quaternion::new(q.norm_sqr(), 0.0, 0.0, 0.0)) <= 1e-12 * q.norm_sqr().max(1.0));
    }

    #[test]
    fn field_matrix_is_skew_and_squares_to_minus_norm(nu in vec3()) {
        let m = field_matrix(&nu);
        prop_assert_eq!(m.antisymmetry_residual(), 0.0);
        prop_assert!(m.square_residual(&nu) <= 1e-12 * nu.norm_sqr().max(1.0));
        let sum = unit_matrix(QuatUnit::I) * nu.0[0] + unit_matrix(QuatUnit::J) * nu.0[1] + unit_matrix(QuatUnit::K) * nu.0[2];
        prop_assert_eq!(*m.matrix(), sum);
    }

    #[test]
    fn omega_is_antisymmetric(x in vec4(), y in vec4()) {
        let gap = (omega_form(&x, &y) + omega_form(&y, &x)).norm();
        prop_assert!(gap <= 1e-12 * x.norm().max(1.0) * y.norm().max(1.0));
        prop_assert_eq!(omega_form(&x, &x), Vec3::zero());
    }

    #[test]
    fn omega_routes_agree(x in vec4(), y in vec4()) {
        let gap = (omega_form(&x, &y) - omega_quaternionic(&x, &y)).norm();
        prop_assert!(gap <= 1e-12 * x.norm().max(1.0) * y.norm().max(1.0));
    }

    #[test]
    fn omega_routes_agree_exactly(x in rational4(), y in rational4()) {
        prop_assert_eq!(omega_form(&x, &y), omega_quaternionic(&x, &y));
    }

    #[test]
    fn potential_is_orthogonal_to_position(nu in vec3(), x in vec4()) {
        let a = vector_potential(&nu, &x);
        prop_assert!(a.dot(&x).abs() <= 1e-12 * nu.norm().max(1.0) * x.dot(&x).max(1.0));
        prop_assert_eq!(a, field_matrix(&nu).apply(&x));
    }

    #[test]
    fn hodge_star_is_an_involution(c in prop::array::uniform6(-5.0f64..5.0)) {
        let b = Bivector(c);
        prop_assert_eq!(b.hodge_star().hodge_star(), b);
    }
}
