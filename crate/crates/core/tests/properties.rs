use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use symwald_core::cache::{polynomial_from_text, polynomial_to_text};
use symwald_core::field::{parse_rational, rat, rational_string, FieldElement, Rational};
use symwald_core::group::h4_generators;
use symwald_core::matrix::{Matrix4, Vec4};
use symwald_core::poly::{monomials_of_degree, Polynomial, VarSet};
use symwald_core::projective::ProjectivePoint;
use symwald_core::properties::{field_axioms, superadditivity};
use symwald_core::waldschmidt::{f4_ledger_numeric, Affine};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=15).prop_map(|(n, d)| rat(n, d))
}

fn field() -> impl Strategy<Value = FieldElement> {
    (rational(), rational()).prop_map(|(a, b)| FieldElement::new(a, b))
}

fn form(vars: VarSet, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    (0..=max_deg).prop_flat_map(move |deg| {
        let monos = monomials_of_degree(4, deg);
        let n = monos.len();
        vec((0..n, field()), 0..=5).prop_map(move |ts| Polynomial::from_terms(vars, ts.into_iter().map(|(i, c)| (monos[i], c))))
    })
}

fn point() -> impl Strategy<Value = [FieldElement; 4]> {
    [field(), field(), field(), field()]
}

/// A word of length up to 6 in the `W(H4)` generators.
fn h4_word() -> impl Strategy<Value = Matrix4> {
    vec(0usize..4, 0..=6).prop_map(|w| {
        let g = h4_generators();
        w.iter().fold(Matrix4::identity(), |acc, &i| acc.mul(&g[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_laws(a in field(), b in field(), c in field()) {
        prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
    }

    #[test]
    fn field_matches_floating_point(a in field(), b in field()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        let prod = (&a * &b).to_f64();
        prop_assert!((prod - x * y).abs() <= 1e-9 * (1.0 + (x * y).abs()));
        prop_assert!(((&a + &b).to_f64() - (x + y)).abs() <= 1e-9 * (1.0 + x.abs() + y.abs()));
    }

    #[test]
    fn rational_strings_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&rational_string(&r)).unwrap(), r);
    }

    #[test]
    fn polynomial_ring_laws(f in form(VarSet::Xyzw, 3), g in form(VarSet::Xyzw, 3), h in form(VarSet::Xyzw, 3)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(f in form(VarSet::Xyzw, 4), g in form(VarSet::Xyzw, 4), v in point()) {
        prop_assert_eq!((&f * &g).evaluate(&v), &f.evaluate(&v) * &g.evaluate(&v));
        prop_assert_eq!((&f + &g).evaluate(&v), &f.evaluate(&v) + &g.evaluate(&v));
    }

    #[test]
    fn substitution_is_evaluation_at_the_image(f in form(VarSet::Xyzw, 4), m in h4_word(), v in point()) {
        let mv: Vec4 = m.mul_vec(&v);
        prop_assert_eq!(f.linear_substitute(&m).evaluate(&v), f.evaluate(&mv));
    }

    #[test]
    fn text_round_trips(f in form(VarSet::Xyzw, 5), g in form(VarSet::Fundamental, 5)) {
        prop_assert_eq!(Polynomial::from_text(VarSet::Xyzw, &f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(polynomial_from_text(&polynomial_to_text(&g)).unwrap(), g);
    }

    #[test]
    fn matrix_strings_round_trip(m in h4_word()) {
        prop_assert_eq!(Matrix4::parse_canonical(&m.canonical_string()).unwrap(), m);
    }

    #[test]
    fn projective_points_ignore_scaling(v in point(), k in field()) {
        prop_assume!(v.iter().any(|x| !x.is_zero()) && !k.is_zero());
        let w: Vec4 = v.clone().map(|x| &x * &k);
        prop_assert_eq!(ProjectivePoint::new(v).unwrap(), ProjectivePoint::new(w).unwrap());
    }

    #[test]
    fn ceiling_at_odd_p(n in -200i64..=200, d in 1i64..=6, k in -20i64..=20, q in 0i64..=500) {
        let a = Affine { c0: rat(n, d), c1: rat(k, 2) };
        let c = a.ceil_for_odd_p().unwrap();
        let p = 2 * q + 1;
        prop_assert_eq!(c.eval(p), a.eval(p).ceil());
    }

    #[test]
    fn ledger_terminates_at_the_same_vector(q in 0i64..=100_000) {
        prop_assert_eq!(f4_ledger_numeric(2 * q + 1).unwrap(), [4, 1, 0, 4]);
    }

    #[test]
    fn superadditive_sequences_pass(step in 1u32..=10, len in 1usize..=8) {
        let linear: Vec<u32> = (1..=len as u32).map(|m| step * m).collect();
        prop_assert_eq!(superadditivity(&linear), Ok(()));
    }
}

#[test]
fn ledger_rejects_even_p() {
    assert!(f4_ledger_numeric(2).is_err());
    assert!(f4_ledger_numeric(0).is_err());
}

#[test]
fn golden_ratio_identities() {
    let phi = FieldElement::phi();
    assert_eq!(&phi * &phi, &phi + &FieldElement::one());
    assert_eq!(&FieldElement::c() * &FieldElement::c(), FieldElement::from_ratio(5, 4));
}
