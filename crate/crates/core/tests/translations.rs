use num::complex::Complex64;
use proptest::prelude::*;
use qlandau::algebra::{field_matrix, Vec3, Vec4};
use qlandau::translations::*;

fn sample_f() -> TestFunction {
    let terms = vec![
        ([0, 0, 0, 0], Complex64::new(1.0, 0.0)),
        ([1, 0, 0, 0], Complex64::new(0.3, -0.2)),
        ([0, 1, 1, 0], Complex64::new(-0.4, 0.1)),
        ([0, 0, 0, 2], Complex64::new(0.2, 0.5)),
    ];
    TestFunction::new(terms, 0.6, Vec4::new(0.2, -0.1, 0.4, 0.3))
        .unwrap()
        .modulated(&Vec4::new(0.5, -0.3, 0.2, 0.7))
}

#[test]
fn closed_form_translation_matches_definition() {
    let f = sample_f();
    let t = MagneticTranslation::new(Vec4::new(0.7, -0.4, 0.9, 0.1), Vec3::new(1.0, -2.0, 0.5));
    let pts = sample_points(&f, 100, 7);
    assert!(translation_check(&t, &f, &pts) <= 1e-14);
    let zero = MagneticTranslation::new(Vec4::zero(), Vec3::new(1.0, -2.0, 0.5));
    assert_eq!(translation_check(&zero, &f, &pts), 0.0);
}

#[test]
fn phase_vanishes_at_origin() {
    // a very wide Gaussian is nearly constant, and at x = 0 only f(a) survives
    let f = TestFunction::gaussian(1e-6, Vec4::zero()).unwrap();
    let a = Vec4::new(1.0, 2.0, -1.0, 0.5);
    let g = apply_translation(&MagneticTranslation::new(a, Vec3::new(0.3, 0.2, 0.1)), &f);
    let got = g.value(&Vec4::zero());
    assert!((got - f.value(&a)).norm() < 1e-15);
    assert!((got - 1.0).norm() < 1e-5);
}

#[test]
fn composition_law() {
    let f = sample_f();
    let pts = sample_points(&f, 100, 3);
    let nu = Vec3::new(0.4, 1.1, -0.7);
    let a = Vec4::new(0.5, -0.2, 0.3, 0.8);
    assert!(composition_check(&a, &Vec4::new(-0.6, 0.9, 0.1, -0.3), &nu, &f, &pts) <= 1e-12);
    // b = −a undoes the translation
    let ta = MagneticTranslation::new(a, nu);
    let back = ta.inverse().apply(&ta.apply(&f));
    let gap = pts
        .iter()
        .map(|x| (back.value(x) - f.value(x)).norm())
        .fold(0.0, f64::max);
    assert!(gap < 1e-14, "{gap}");
    // ν = 0: ordinary translations, phase 1
    let zero = Vec3::zero();
    assert_eq!(
        commutator_phase(&a, &Vec4::new(1.0, 2.0, 3.0, 4.0), &zero),
        Complex64::new(1.0, 0.0)
    );
    assert!(composition_check(&a, &Vec4::new(1.0, 2.0, 3.0, 4.0), &zero, &f, &pts) <= 1e-12);
}

#[test]
fn commutator_phase_on_coordinate_axes() {
    let nu = Vec3::new(0.0, 0.0, 1.0);
    let (a, b) = (Vec4::basis(1), Vec4::basis(2));
    // ⟨Ω e1, e2⟩ read off the matrix
    let entry = field_matrix(&nu).matrix()[(2, 1)];
    assert_eq!(entry, 1.0);
    let want = Complex64::new(0.0, 2.0 * entry).exp();
    assert!((commutator_phase(&a, &b, &nu) - Complex64::new(2f64.cos(), 2f64.sin())).norm() < 1e-15);
    assert!((commutator_phase(&a, &b, &nu) - want).norm() < 1e-15);
    let f = sample_f();
    assert!(commutator_check(&a, &b, &nu, &f, &sample_points(&f, 100, 1)) <= 1e-12);
    // b = a commutes
    assert_eq!(commutator_phase(&a, &a, &nu), Complex64::new(1.0, 0.0));
}

#[test]
fn noncommutativity_vanishes_exactly_when_the_pairing_does() {
    let nu = Vec3::new(1.0, 0.0, 0.0);
    // Ω_{e'1} pairs e0 with e1 and e2 with e3 only
    let f = sample_f();
    let pts = sample_points(&f, 50, 2);
    let (a, b) = (Vec4::basis(0), Vec4::basis(2));
    assert_eq!(commutator_phase(&a, &b, &nu), Complex64::new(1.0, 0.0));
    assert!(commutator_check(&a, &b, &nu, &f, &pts) <= 1e-12);
    let c = Vec4::basis(1);
    assert!((commutator_phase(&a, &c, &nu) - Complex64::new(1.0, 0.0)).norm() > 0.1);
}

#[test]
fn intertwining() {
    let f = sample_f();
    let pts = sample_points(&f, 100, 5);
    let nu = Vec3::new(-0.8, 0.6, 1.3);
    assert_eq!(intertwine_check(&nu, &Vec4::zero(), &f, &pts), 0.0);
    assert!(intertwine_check(&Vec3::zero(), &Vec4::new(0.3, 0.2, -0.5, 1.0), &f, &pts) <= 1e-12);
    assert!(intertwine_check(&nu, &Vec4::new(0.3, 0.2, -0.5, 1.0), &f, &pts) <= 1e-10);
    assert!(covariance_check(&nu, &Vec4::new(0.3, 0.2, -0.5, 1.0), &f, &pts) <= 1e-10);
}

#[test]
fn landau_apply_on_a_gaussian() {
    // H_0 on a Gaussian: −Δ e^{−σr²} = (8σ − 4σ²r²) e^{−σr²} in four dimensions
    let s = 0.7;
    let f = TestFunction::gaussian(s, Vec4::zero()).unwrap();
    let x = Vec4::new(0.3, -0.2, 0.5, 0.1);
    let r2 = x.dot(&x);
    let want = (8.0 * s - 4.0 * s * s * r2) * (-s * r2).exp();
    assert!((landau_apply(&Vec3::zero(), &f, &x) - want).norm() < 1e-14);
}

#[test]
fn derivatives_match_finite_differences() {
    for case in random_cases(11, 20) {
        let pts = sample_points(&case.f, 20, 4);
        let r = derivative_self_test(&case.f, &pts);
        assert!(r <= 1e-8, "{r}");
    }
}

#[test]
fn seeded_draws_meet_all_tolerances() {
    let cases = random_cases(42, 100);
    assert_eq!(cases, random_cases(42, 100));
    for (i, c) in cases.iter().enumerate() {
        let pts = sample_points(&c.f, 100, i as u64);
        let t = MagneticTranslation::new(c.a, c.nu);
        assert!(translation_check(&t, &c.f, &pts) <= 1e-14);
        assert!(composition_check(&c.a, &c.b, &c.nu, &c.f, &pts) <= 1e-12);
        assert!(commutator_check(&c.a, &c.b, &c.nu, &c.f, &pts) <= 1e-12);
        assert!(intertwine_check(&c.nu, &c.a, &c.f, &pts) <= 1e-10);
        assert!(covariance_check(&c.nu, &c.a, &c.f, &pts) <= 1e-10);
    }
}

fn vec4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-1.5f64..1.5).prop_map(Vec4)
}

proptest! {
    #[test]
    fn phase_is_antisymmetric(a in vec4(), b in vec4(), n in prop::array::uniform3(-2.0f64..2.0)) {
        let nu = Vec3(n);
        let p = commutator_phase(&a, &b, &nu) * commutator_phase(&b, &a, &nu);
        prop_assert!((p - 1.0).norm() < 1e-14);
    }

    #[test]
    fn realized_law_is_associative(a in vec4(), b in vec4(), c in vec4(), n in prop::array::uniform3(-2.0f64..2.0)) {
        let nu = Vec3(n);
        let f = sample_f();
        let t = |v: Vec4| MagneticTranslation::new(v, nu);
        let lhs = t(c).apply(&t(b).apply(&t(a).apply(&f)));
        // cocycles of (a, b) and then (a + b, c)
        let pair = |u: &Vec4, v: &Vec4| t(*u).phase_vector().dot(v);
        let phase = Complex64::new(0.0, pair(&a, &b) + pair(&(a + b), &c)).exp();
        let abc = t(a + b + c);
        for x in sample_points(&f, 20, 9) {
            let rhs = phase * translate_direct(&abc, &f, &x);
            prop_assert!((lhs.value(&x) - rhs).norm() <= 1e-12 * f.value(&f.center).norm().max(1.0));
        }
    }
}
