//! Unfoldings, their module structure and the three routes to the quotient.

mod common;

use common::*;
use foliation_core::form::contract;
use foliation_core::linalg::{SliceBasis, SparseVec};
use foliation_core::poly::monomial_basis;
use foliation_core::unfolding::{act, detect_plateau, Plateau, UnfoldingElement};
use foliation_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn d(p: &Poly) -> Form {
    Form::function(p.clone()).exterior_derivative().unwrap()
}

/// `dim U(a)` from scratch: nullity of `(h, η) ↦ a·h·dω - e·ω∧(η - dh)`
/// minus the pairs `(0, mω)`.
fn unfolding_dim_oracle(fol: &Foliation, a: i64) -> usize {
    let n = fol.nvars();
    let e = fol.e();
    let target = SliceBasis::new(n, 2, a + e);
    let forms = SliceBasis::new(n, 1, a);
    let mut cols: Vec<SparseVec> = Vec::new();
    for m in monomial_basis(n, a) {
        let h = Poly::term(Scalar::ONE, m);
        let image = fol
            .domega()
            .mul_poly(&h)
            .scale(&Scalar::from_int(a))
            .checked_add(
                &fol.omega()
                    .wedge(&d(&h))
                    .unwrap()
                    .scale(&Scalar::from_int(e)),
            )
            .unwrap();
        cols.push(target.coordinates(&image).unwrap());
    }
    for k in 0..forms.dim() {
        cols.push(
            target
                .coordinates(&fol.omega().wedge(&forms.element(k)).unwrap())
                .unwrap(),
        );
    }
    let nullity = cols.len() - dense_rank(target.dim(), &cols);
    nullity - monomial_basis(n, a - e).len()
}

#[test]
fn pencil_of_lines_has_trivial_quotient() {
    let fol = type_1_1();
    let engine = Engine::new(fol.clone());
    for a in 1..=6 {
        let (dim_i, dim_j) = ideal_oracle(&fol, a);
        assert_eq!(dim_i, dim_j, "I({a}) != J({a})");
        let row = engine.ubar_dims(a).unwrap();
        assert_eq!((row.dim_i, row.dim_j), (dim_i, dim_j));
        assert_eq!(row.ubar_l, 0);
        assert_eq!(row.dim_u, unfolding_dim_oracle(&fol, a));
    }
}

#[test]
fn pencil_of_lines_elements() {
    let fol = type_1_1();
    let FoliationSpec::Rational(spec) = fol.spec() else {
        unreachable!()
    };
    // (F, 0) and (G, 0) are unfoldings of degree 1
    for h in [&spec.f, &spec.g] {
        UnfoldingElement {
            h: h.clone(),
            eta: Form::zero(3, 1),
            a: 1,
        }
        .check(&fol)
        .unwrap();
    }
    // (0, ω) is trivial and (1, 0) is not an unfolding
    UnfoldingElement {
        h: Poly::zero(3),
        eta: fol.omega().clone(),
        a: 2,
    }
    .check(&fol)
    .unwrap();
    let bad = UnfoldingElement {
        h: Poly::var(3, 0) * Poly::var(3, 0),
        eta: Form::zero(3, 1),
        a: 2,
    };
    assert!(bad.check(&fol).unwrap_err().is_falsification());
    let engine = Engine::new(fol.clone());
    let slice = engine.unfolding_slice(1).unwrap();
    assert_eq!(slice.dim, 2);
    for u in &slice.elements {
        u.check(&fol).unwrap();
    }
}

#[test]
fn routes_agree_on_random_foliations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let foliations = [
        random_rational(&mut rng, 3, 1, 2),
        random_rational(&mut rng, 3, 2, 2),
        random_rational(&mut rng, 4, 1, 2),
        random_logarithmic(&mut rng, 3, &[1, 1, 1]),
        random_logarithmic(&mut rng, 3, &[1, 2]),
    ];
    for fol in foliations {
        let engine = Engine::new(fol.clone());
        for a in 1..=fol.e() + 2 {
            let row = engine.graded_row(a).unwrap();
            assert!(row.agrees(), "{row:?}");
            assert_eq!(row.dim_u, unfolding_dim_oracle(&fol, a));
            assert_eq!((row.dim_i, row.dim_j), ideal_oracle(&fol, a));
        }
    }
}

#[test]
fn integrating_factors_of_a_pencil() {
    let fol = type_1_1();
    let FoliationSpec::Rational(spec) = fol.spec() else {
        unreachable!()
    };
    let engine = Engine::new(fol.clone());
    let factors = engine.integrating_factors().unwrap();
    assert_eq!(factors.len(), 3);
    let basis = SliceBasis::functions(3, 2);
    let coords: Vec<SparseVec> = factors
        .iter()
        .map(|f| basis.poly_coordinates(f).unwrap())
        .collect();
    for g in [&spec.f * &spec.f, &spec.f * &spec.g, &spec.g * &spec.g] {
        let mut with = coords.clone();
        with.push(basis.poly_coordinates(&g).unwrap());
        assert_eq!(dense_rank(basis.dim(), &with), 3);
    }
}

#[test]
fn deformations_of_a_pencil() {
    let engine = Engine::new(type_1_1());
    let v = engine.pi2_analysis().unwrap();
    assert_eq!((v.dim_k, v.dim_d), (3, 2));
    assert!(v.epimorphism() && v.exact_at_u);
}

#[test]
fn plateau_rule() {
    let seq = |v: &[usize]| {
        v.iter()
            .enumerate()
            .map(|(k, &x)| (k as i64 + 1, x))
            .collect::<Vec<_>>()
    };
    assert_eq!(
        detect_plateau(&seq(&[1, 4, 4, 4])),
        Plateau::Declared { value: 4, onset: 2 }
    );
    assert_eq!(detect_plateau(&seq(&[1, 4, 4])), Plateau::Inconclusive);
    assert_eq!(
        detect_plateau(&seq(&[3, 3, 3, 3, 3])),
        Plateau::Declared { value: 3, onset: 1 }
    );
    assert_eq!(detect_plateau(&[]), Plateau::Inconclusive);
}

#[test]
fn degree_zero_is_rejected() {
    let engine = Engine::new(type_1_1());
    assert!(engine.unfolding_matrix(0).is_err());
    assert!(engine.hilbert_scan(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_action_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_rational(&mut rng, 3, 1, 2);
        let engine = Engine::new(fol.clone());
        let slice = engine.unfolding_slice(1).unwrap();
        let f = random_nonzero(&mut rng, 3, 1, 3);
        let g = random_nonzero(&mut rng, 3, 1, 3);
        for u in &slice.elements {
            let one = act(&Poly::one(3), u).unwrap();
            prop_assert_eq!(&one, u);
            let nested = engine.module_action(&f, &engine.module_action(&g, u).unwrap()).unwrap();
            let direct = engine.module_action(&(&f * &g), u).unwrap();
            prop_assert_eq!(nested, direct);
        }
    }

    #[test]
    fn first_integral_pairs(seed in any::<u64>(), r in 1u32..3, s in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_rational(&mut rng, 3, r, s);
        let FoliationSpec::Rational(spec) = fol.spec() else { unreachable!() };
        let u = UnfoldingElement { h: spec.f.clone(), eta: Form::zero(3, 1), a: r as i64 };
        u.check(&fol).unwrap();
        // g·(F, 0) = (gF, F dg - (b/r) g dF)
        let g = random_nonzero(&mut rng, 3, 1, 3);
        let moved = act(&g, &u).unwrap();
        let expected = d(&g)
            .mul_poly(&spec.f)
            .checked_sub(&d(&spec.f).mul_poly(&g).scale(&Scalar::ratio(1, r as i64)))
            .unwrap();
        prop_assert_eq!(&moved.eta, &expected);
        moved.check(&fol).unwrap();
        prop_assert!(contract(&Form::radial(3), &moved.eta).unwrap().is_zero());
    }

    #[test]
    fn coboundaries_are_unfoldings(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fol = random_logarithmic(&mut rng, 3, &[1, 1, 2]);
        let engine = Engine::new(fol.clone());
        for a in [fol.e(), fol.e() + 1] {
            for u in engine.coboundary_generators(a).unwrap() {
                u.check(&fol).unwrap();
            }
        }
    }
}
