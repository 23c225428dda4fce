//! The three complexes attached to a foliation, against dense oracles.

mod common;

use common::*;
use foliation_core::complex::{ClComparison, IdealKoszul};
use foliation_core::form::contract;
use foliation_core::linalg::{SliceBasis, SparseVec};
use foliation_core::parser::parse_polynomial;
use foliation_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `H¹(L)` at degree `a` from scratch: `i_X dω` into `Ω¹(a)`, then `dω∧`.
fn h1_l_oracle(fol: &Foliation, a: i64) -> usize {
    let n = fol.nvars();
    let e = fol.e();
    let fields = SliceBasis::new(n, -1, a - e);
    let ones = SliceBasis::new(n, 1, a);
    let threes = SliceBasis::new(n, 3, a + e);
    let incoming: Vec<SparseVec> = (0..fields.dim())
        .map(|k| {
            ones.coordinates(&contract(&fields.element(k), fol.domega()).unwrap())
                .unwrap()
        })
        .collect();
    let outgoing: Vec<SparseVec> = (0..ones.dim())
        .map(|k| {
            threes
                .coordinates(&fol.domega().wedge(&ones.element(k)).unwrap())
                .unwrap()
        })
        .collect();
    ones.dim() - dense_rank(threes.dim(), &outgoing) - dense_rank(ones.dim(), &incoming)
}

#[test]
fn differentials_square_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let engines = [
        Engine::new(type_1_1()),
        Engine::new(random_rational(&mut rng, 3, 1, 2)),
    ];
    for engine in &engines {
        for which in [ComplexKind::L, ComplexKind::C, ComplexKind::K] {
            for a in 1..=4 {
                for s in 0..=2 {
                    engine
                        .slice(which, a, s)
                        .unwrap()
                        .check_d_squared()
                        .unwrap();
                }
            }
        }
    }
}

#[test]
fn l_homology_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fol in [
        type_1_1(),
        random_rational(&mut rng, 3, 1, 2),
        random_logarithmic(&mut rng, 3, &[1, 1, 1]),
    ] {
        let engine = Engine::new(fol.clone());
        for a in 1..=5 {
            let h = engine.homology_dims(ComplexKind::L, a, 1).unwrap();
            assert_eq!(h.homology, h1_l_oracle(&fol, a), "a = {a}");
        }
    }
}

#[test]
fn c_and_l_agree_away_from_e() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for fol in [
        type_1_1(),
        random_rational(&mut rng, 3, 1, 2),
        random_rational(&mut rng, 4, 1, 2),
    ] {
        let engine = Engine::new(fol);
        let e = engine.e();
        for a in (1..=e + 2).filter(|&a| a != e) {
            for s in 0..=1 {
                let cmp = engine.compare_cl(a, s).unwrap();
                assert!(cmp.agrees(), "{cmp:?}");
                let phi = engine.verify_phi(a, s).unwrap();
                assert!(phi.cycles_mapped && phi.boundaries_mapped, "{phi:?}");
                assert_eq!(phi.cycles_c, phi.cycles_l);
            }
        }
        assert!(matches!(
            engine.compare_cl(e, 1).unwrap(),
            ClComparison::Excluded { .. }
        ));
        assert!(engine.verify_phi(e, 1).is_err());
    }
}

#[test]
fn koszul_of_a_generic_pencil() {
    let engine = Engine::new(type_1_1());
    for a in 0..=5 {
        assert_eq!(
            engine.homology_dims(ComplexKind::K, a, 0).unwrap().homology,
            0
        );
        assert_eq!(
            engine.homology_dims(ComplexKind::K, a, 1).unwrap().homology,
            0
        );
    }
    let domega = engine.foliation().domega().clone();
    assert!(engine.koszul_class_is_nonzero(&domega).unwrap());
}

#[test]
fn koszul_detects_a_common_factor() {
    let p = |t: &str| parse_polynomial(t, 3).unwrap();
    let omega = Form::one_form(&[p("x0*x1^2"), p("-x0^2*x1"), p("0")]);
    let engine = Engine::new(FoliationSpec::Raw(omega).build().unwrap());
    let h1: usize = (0..=4)
        .map(|a| engine.homology_dims(ComplexKind::K, a, 1).unwrap().homology)
        .sum();
    assert!(h1 > 0);
}

#[test]
fn koszul_of_a_regular_sequence() {
    let gens: Vec<Poly> = (0..3).map(|k| Poly::var(3, k)).collect();
    let k = IdealKoszul::new(gens).unwrap();
    for c in 0..4 {
        for deg in 0..3 {
            assert_eq!(
                k.homology_dims(deg, c).unwrap().homology,
                0,
                "H^{deg} at {c}"
            );
        }
    }
    // the top homology is the residue field, at coefficient degree zero
    assert_eq!(k.homology_dims(3, 0).unwrap().homology, 1);
    assert_eq!(k.homology_dims(3, 1).unwrap().homology, 0);
}
