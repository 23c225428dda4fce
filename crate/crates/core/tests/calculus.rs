//! Algebraic identities of polynomials and forms on random exact data.

mod common;

use common::*;
use foliation_core::form::{contract, lie_derivative, triangle, FormDegree};
use foliation_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn d(f: &Form) -> Form {
    f.exterior_derivative().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (small_scalar(&mut r), small_scalar(&mut r), small_scalar(&mut r));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn ring_axioms(seed in any::<u64>(), n in 2usize..5) {
        let mut r = rng(seed);
        let p = random_homogeneous(&mut r, n, 2, 4);
        let q = random_homogeneous(&mut r, n, 1, 3);
        let s = random_homogeneous(&mut r, n, 1, 3);
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(n), p.clone());
    }

    #[test]
    fn euler_identity(seed in any::<u64>(), n in 2usize..5, deg in 0i64..4) {
        let mut r = rng(seed);
        let f = random_homogeneous(&mut r, n, deg, 5);
        let df = d(&Form::function(f.clone()));
        if deg == 0 {
            prop_assert!(df.is_zero());
        } else {
            let euler = contract(&Form::radial(n), &df).unwrap();
            prop_assert_eq!(euler, Form::function(f.scale(&Scalar::from_int(deg))));
        }
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), n in 2usize..5, deg in 0i32..3) {
        let mut r = rng(seed);
        let tau = random_form(&mut r, n, deg, deg as i64 + 2, 5);
        prop_assert!(d(&d(&tau)).is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), n in 2usize..5, ra in 0i32..2, rb in 0i32..2) {
        let mut r = rng(seed);
        let a = random_form(&mut r, n, ra, ra as i64 + 1, 4);
        let b = random_form(&mut r, n, rb, rb as i64 + 2, 4);
        let lhs = d(&a.wedge(&b).unwrap());
        let sign = if ra % 2 == 0 { Scalar::ONE } else { -Scalar::ONE };
        let rhs = d(&a)
            .wedge(&b)
            .unwrap()
            .checked_add(&a.wedge(&d(&b)).unwrap().scale(&sign))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_split_reconstructs(seed in any::<u64>(), n in 2usize..5, deg in 1i32..3) {
        let mut r = rng(seed);
        let p = deg as i64 + r.gen_range(1i64..3);
        let tau = random_form(&mut r, n, deg, p, 6);
        let split = tau.cartan_split(p).unwrap();
        prop_assert_eq!(split.reconstruct().unwrap(), tau.clone());
        let radial = Form::radial(n);
        // τ_r descends, τ_d is exact
        if split.tau_r.r() >= 1 {
            prop_assert!(contract(&radial, &split.tau_r).unwrap().is_zero());
        }
        prop_assert!(d(&split.tau_d).is_zero());
        // homogeneity degree p means L_R τ = p τ
        prop_assert_eq!(
            lie_derivative(&radial, &tau).unwrap(),
            tau.scale(&Scalar::from_int(p))
        );
    }

    #[test]
    fn triangle_squares_to_zero_rational(seed in any::<u64>(), rr in 1u32..3, ss in 1u32..3) {
        let mut r = rng(seed);
        let fol = random_rational(&mut r, 3, rr, ss);
        let omega = fol.omega();
        for deg in [1, 3] {
            let tau = random_form(&mut r, 3, deg, deg as i64 + 2, 5);
            let once = triangle(omega, &tau).unwrap();
            prop_assert!(triangle(omega, &once).unwrap().is_zero());
        }
    }

    #[test]
    fn triangle_squares_to_zero_logarithmic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fol = random_logarithmic(&mut r, 4, &[1, 1, 1]);
        let omega = fol.omega();
        prop_assert!(omega.wedge(&d(omega)).unwrap().is_zero());
        let tau = random_form(&mut r, 4, 1, 2, 5);
        let once = triangle(omega, &tau).unwrap();
        prop_assert!(triangle(omega, &once).unwrap().is_zero());
        let x = random_form(&mut r, 4, -1, -1, 4);
        let lx = triangle(omega, &x).unwrap();
        prop_assert!(triangle(omega, &lx).unwrap().is_zero());
    }

    #[test]
    fn foliations_descend(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rational = random_rational(&mut r, 4, 1, 2);
        let log = random_logarithmic(&mut r, 3, &[1, 2]);
        for fol in [rational, log] {
            let radial = Form::radial(fol.nvars());
            prop_assert!(contract(&radial, fol.omega()).unwrap().is_zero());
            prop_assert_eq!(fol.omega().homogeneous_degree(), FormDegree::Degree(fol.e()));
        }
    }
}

#[test]
fn kappa_values() {
    use foliation_core::form::kappa;
    assert_eq!(kappa(-1), Scalar::ZERO);
    assert_eq!(kappa(1), Scalar::ONE);
    assert_eq!(kappa(3), Scalar::from_int(2));
}

#[test]
fn triangle_on_vector_fields_is_lie_derivative() {
    let fol = type_1_1();
    let x = Form::partial(3, 1);
    let lx = triangle(fol.omega(), &x).unwrap();
    assert_eq!(lx, lie_derivative(&x, fol.omega()).unwrap());
}
