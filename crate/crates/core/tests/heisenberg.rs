use num::{BigRational, Zero};
use proptest::prelude::*;
use qlandau::algebra::{omega_form, Vec3, Vec4};
use qlandau::heisenberg::*;

type Q = BigRational;

fn q() -> impl Strategy<Value = Q> {
    (-60i64..60, 1i64..10).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn element() -> impl Strategy<Value = HeisElement<Q>> {
    (prop::array::uniform3(q()), prop::array::uniform4(q())).prop_map(|(t, x)| HeisElement::new(Vec3(t), Vec4(x)))
}

#[test]
fn identity_matrix_at_the_origin() {
    assert_eq!(heis_matrix(&HeisElement::<Q>::identity()), HeisMatrix::<Q>::identity());
}

#[test]
fn structure_report_is_clean() {
    let rep = verify_structure();
    assert_eq!(rep.brackets.len(), 21);
    assert_eq!(rep.violations(), 0);
    assert_eq!(rep.max_residual, 0.0);
}

#[test]
fn central_brackets_vanish() {
    let gens = generator_matrices::<Q>();
    for t in 4..7 {
        for g in &gens {
            assert!(matrix_bracket(&gens[t], g).iter().all(|v| v.is_zero()));
        }
    }
}

proptest! {
    #[test]
    fn zeta_is_a_homomorphism(g in element(), h in element()) {
        prop_assert_eq!(heis_matrix(&g) * heis_matrix(&h), heis_matrix(&heis_mul(&g, &h)));
    }

    #[test]
    fn inverse_matrix(g in element()) {
        prop_assert_eq!(heis_matrix(&g) * heis_matrix(&g.inverse()), HeisMatrix::<Q>::identity());
        prop_assert_eq!(heis_mul(&g, &g.inverse()), HeisElement::identity());
    }

    #[test]
    fn group_law_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(heis_mul(&heis_mul(&a, &b), &c), heis_mul(&a, &heis_mul(&b, &c)));
    }

    #[test]
    fn commutator_in_the_center_is_twice_omega(g in element(), h in element()) {
        let gh = heis_mul(&g, &h);
        let hg = heis_mul(&h, &g);
        let two = Q::from_integer(2.into());
        let w = omega_form(&g.x, &h.x);
        prop_assert_eq!(gh.t - hg.t, w.scale(two));
        prop_assert_eq!(gh.x, hg.x);
    }
}
