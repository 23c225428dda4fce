//! Exact elimination against a dense row-reduction oracle.

mod common;

use common::*;
use foliation_core::linalg::{ExactMatrix, SparseVec, Subspace};
use foliation_core::Scalar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random sparse matrix, often rank deficient: some columns are
/// combinations of earlier ones.
fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix {
    let mut columns: Vec<SparseVec> = Vec::with_capacity(cols);
    for _ in 0..cols {
        let v = if !columns.is_empty() && r.gen_bool(0.3) {
            let a = columns[r.gen_range(0..columns.len())].clone();
            let b = columns[r.gen_range(0..columns.len())].clone();
            a.axpy(&small_scalar(r), &b)
        } else {
            let mut pairs = Vec::new();
            for i in 0..rows {
                if r.gen_bool(0.4) {
                    pairs.push((i, small_scalar(r)));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        columns.push(v);
    }
    ExactMatrix::from_columns(rows, columns).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_oracle_and_transpose(seed in any::<u64>(), rows in 1usize..9, cols in 1usize..9) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut r, rows, cols);
        let rank = m.rank();
        prop_assert_eq!(rank, dense_rank(rows, m.columns()));
        prop_assert_eq!(rank, m.transpose().rank());
        prop_assert_eq!(rank, m.image().dim());
        prop_assert_eq!(rank, m.coimage().dim());
    }

    #[test]
    fn kernel_vectors_vanish(seed in any::<u64>(), rows in 1usize..9, cols in 1usize..9) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut r, rows, cols);
        let ker = m.kernel();
        prop_assert_eq!(ker.dim() + m.rank(), cols);
        for v in ker.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(dense_rank(cols, ker.basis()), ker.dim());
    }

    #[test]
    fn membership_matches_oracle(seed in any::<u64>(), ambient in 1usize..8, k in 0usize..6) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_matrix(&mut r, ambient, k.max(1)).columns().to_vec();
        let space = Subspace::from_vectors(ambient, gens.clone());
        let probe = random_matrix(&mut r, ambient, 1).column(0).clone();
        let mut with = gens.clone();
        with.push(probe.clone());
        let inside = dense_rank(ambient, &with) == dense_rank(ambient, &gens);
        prop_assert_eq!(space.contains(&probe), inside);
        // combinations of generators are always members
        let combo = gens.iter().fold(SparseVec::new(), |acc, g| acc.axpy(&small_scalar(&mut r), g));
        prop_assert!(space.contains(&combo));
        if let Some(c) = space.coordinates(&combo) {
            let rebuilt = space
                .basis()
                .iter()
                .zip(&c)
                .fold(SparseVec::new(), |acc, (b, x)| acc.axpy(x, b));
            prop_assert_eq!(rebuilt, combo);
        } else {
            prop_assert!(false, "member without coordinates");
        }
    }

    #[test]
    fn intersection_dimension_formula(seed in any::<u64>(), ambient in 1usize..8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = Subspace::from_vectors(ambient, random_matrix(&mut r, ambient, 3).columns().to_vec());
        let b = Subspace::from_vectors(ambient, random_matrix(&mut r, ambient, 3).columns().to_vec());
        let sum = a.sum(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        prop_assert_eq!(meet.dim() + sum.dim(), a.dim() + b.dim());
        prop_assert!(a.contains_subspace(&meet).unwrap());
        prop_assert!(b.contains_subspace(&meet).unwrap());
        prop_assert_eq!(a.intersection_dim(&b).unwrap(), meet.dim());
    }

    #[test]
    fn annihilator_is_orthogonal_complement(seed in any::<u64>(), ambient in 1usize..8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = Subspace::from_vectors(ambient, random_matrix(&mut r, ambient, 4).columns().to_vec());
        let ann = s.annihilator();
        prop_assert_eq!(ann.dim() + s.dim(), ambient);
        for u in s.basis() {
            for v in ann.basis() {
                let dot = u.entries().iter().fold(Scalar::ZERO, |acc, (i, x)| &acc + &(x * &v.get(*i)));
                prop_assert!(dot.is_zero());
            }
        }
    }
}

#[test]
fn compose_and_identity() {
    let m = ExactMatrix::from_rows(&[
        vec![Scalar::from_int(1), Scalar::from_int(2)],
        vec![Scalar::from_int(2), Scalar::from_int(4)],
        vec![Scalar::ZERO, Scalar::I],
    ])
    .unwrap();
    assert_eq!(m.compose(&ExactMatrix::identity(2)).unwrap(), m);
    assert_eq!(m.rank(), 2);
    assert_eq!(m.nullity(), 0);
    assert!(ExactMatrix::from_columns(2, vec![SparseVec::unit(3)]).is_err());
}
