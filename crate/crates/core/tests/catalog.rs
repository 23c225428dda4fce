//! Catalog constructions checked against hand-expanded formulas.

mod common;

use common::*;
use foliation_core::form::contract;
use foliation_core::parser::parse_polynomial;
use foliation_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p3(text: &str) -> Poly {
    parse_polynomial(text, 3).unwrap()
}

fn d(p: &Poly) -> Form {
    Form::function(p.clone()).exterior_derivative().unwrap()
}

#[test]
fn degrees_of_the_examples() {
    assert_eq!(rational_1_4().e(), 5);
    assert_eq!(logarithmic_1_2_3().e(), 6);
    assert_eq!(type_1_1().e(), 2);
    assert_eq!(logarithmic_1_2_3().factor_degrees(), Some(vec![1, 2, 3]));
}

#[test]
fn rational_formula() {
    let fol = type_1_1();
    let (f, g) = (p3("x0+2*x1-x2"), p3("3*x0-x1+x2"));
    let expected = d(&g).mul_poly(&f).checked_sub(&d(&f).mul_poly(&g)).unwrap();
    assert_eq!(fol.omega(), &expected);
    assert_eq!(
        fol.domega(),
        &d(&f).wedge(&d(&g)).unwrap().scale(&Scalar::from_int(2))
    );
}

#[test]
fn logarithmic_formula_three_lines() {
    let (f0, f1, f2) = (p3("x0"), p3("x1"), p3("x2"));
    let l = [
        Scalar::from_int(1),
        Scalar::I,
        &Scalar::from_int(-1) - &Scalar::I,
    ];
    let fol = FoliationSpec::Logarithmic(LogarithmicSpec {
        factors: vec![f0.clone(), f1.clone(), f2.clone()],
        lambdas: l.to_vec(),
    })
    .build()
    .unwrap();
    let expected = d(&f0)
        .mul_poly(&(&f1 * &f2))
        .scale(&l[0])
        .checked_add(&d(&f1).mul_poly(&(&f0 * &f2)).scale(&l[1]))
        .unwrap()
        .checked_add(&d(&f2).mul_poly(&(&f0 * &f1)).scale(&l[2]))
        .unwrap();
    assert_eq!(fol.omega(), &expected);
    assert!(fol.warnings().is_empty());
}

#[test]
fn repeated_residues_warn() {
    let fol = FoliationSpec::Logarithmic(LogarithmicSpec {
        factors: vec![p3("x0"), p3("x1"), p3("x2^2")],
        lambdas: vec![
            Scalar::from_int(1),
            Scalar::from_int(1),
            Scalar::from_int(-1),
        ],
    })
    .build()
    .unwrap();
    assert!(!fol.warnings().is_empty());
}

#[test]
fn rejects_bad_input() {
    let bad = FoliationSpec::Rational(RationalSpec {
        f: p3("x0+x1^2"),
        g: p3("x2"),
        r: 1,
        s: 1,
    });
    assert!(bad.build().is_err());
    let contact = Form::one_form(&[
        parse_polynomial("x1", 4).unwrap(),
        parse_polynomial("-x0", 4).unwrap(),
        parse_polynomial("x3", 4).unwrap(),
        parse_polynomial("-x2", 4).unwrap(),
    ]);
    assert!(FoliationSpec::Raw(contact).build().is_err());
    let non_descending = Form::one_form(&[p3("x0"), p3("x1"), p3("x2")]);
    assert!(FoliationSpec::Raw(non_descending).build().is_err());
}

#[test]
fn raw_form_round_trip() {
    let fol = type_1_1();
    let raw = FoliationSpec::Raw(fol.omega().clone()).build().unwrap();
    assert_eq!(raw.e(), fol.e());
    assert_eq!(raw.omega(), fol.omega());
    assert!(raw.factors().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_foliations_are_integrable(seed in any::<u64>(), r in 1u32..3, s in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_rational(&mut rng, 4, r, s);
        let omega = fol.omega();
        prop_assert_eq!(fol.e(), (r + s) as i64);
        prop_assert!(omega.wedge(fol.domega()).unwrap().is_zero());
        prop_assert!(contract(&Form::radial(4), omega).unwrap().is_zero());
        // i_R dω = e ω for any descending ω of degree e
        let ir = contract(&Form::radial(4), fol.domega()).unwrap();
        prop_assert_eq!(ir, omega.scale(&Scalar::from_int(fol.e())));
    }

    #[test]
    fn integrating_factor_fg(seed in any::<u64>(), r in 1u32..3, s in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_rational(&mut rng, 3, r, s);
        let FoliationSpec::Rational(spec) = fol.spec() else { unreachable!() };
        let fg = &spec.f * &spec.g;
        let lhs = fol.domega().mul_poly(&fg);
        let rhs = fol.omega().wedge(&d(&fg)).unwrap();
        prop_assert!(lhs.checked_add(&rhs).unwrap().is_zero());
    }

    #[test]
    fn logarithmic_product_is_integrating_factor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_logarithmic(&mut rng, 3, &[1, 1, 2]);
        let prod = fol.factors().unwrap().iter().fold(Poly::one(3), |acc, f| &acc * f);
        let lhs = fol.domega().mul_poly(&prod);
        let rhs = fol.omega().wedge(&d(&prod)).unwrap();
        prop_assert!(lhs.checked_add(&rhs).unwrap().is_zero());
    }
}
