//! Shared fixtures: catalog foliations, random exact data, and a dense
//! elimination oracle that shares no code with the library's echelon.

#![allow(dead_code)]

use foliation_core::linalg::{SliceBasis, SparseVec};
use foliation_core::parser::{parse_polynomial_with, parse_scalar, VarNaming};
use foliation_core::poly::monomial_basis;
use foliation_core::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn one_based(text: &str) -> Poly {
    parse_polynomial_with(
        text,
        VarNaming {
            nvars: 4,
            one_based: true,
        },
    )
    .unwrap()
}

pub fn rational_1_4() -> Foliation {
    FoliationSpec::Rational(RationalSpec {
        f: one_based("x1"),
        g: one_based("x1^4+x2^4+x3^4+x4^4"),
        r: 1,
        s: 4,
    })
    .build()
    .unwrap()
}

pub fn logarithmic_1_2_3() -> Foliation {
    FoliationSpec::Logarithmic(LogarithmicSpec {
        factors: vec![
            one_based("x1"),
            one_based("x1^2-x2^2+i*x3^2-i*x4^2"),
            one_based("x1^2*x2+x1*x3^2+x2^2*x4+x3*x4^2"),
        ],
        lambdas: vec![
            parse_scalar("1").unwrap(),
            parse_scalar("i").unwrap(),
            parse_scalar("-1/3-(2/3)*i").unwrap(),
        ],
    })
    .build()
    .unwrap()
}

/// Pencil of lines through a point in the plane: `F`, `G` linear.
pub fn type_1_1() -> Foliation {
    let p = |t: &str| foliation_core::parser::parse_polynomial(t, 3).unwrap();
    FoliationSpec::Rational(RationalSpec {
        f: p("x0+2*x1-x2"),
        g: p("3*x0-x1+x2"),
        r: 1,
        s: 1,
    })
    .build()
    .unwrap()
}

pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rng.gen_range(-4i64..=4);
    let im = if rng.gen_bool(0.3) {
        rng.gen_range(-3i64..=3)
    } else {
        0
    };
    let den = rng.gen_range(1i64..=3);
    &Scalar::ratio(re, den) + &(&Scalar::from_int(im) * &Scalar::I)
}

/// Random homogeneous polynomial of degree `d` with at most `terms` terms.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, nvars: usize, d: i64, terms: usize) -> Poly {
    let basis = monomial_basis(nvars, d);
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p.add_term(m, &small_scalar(rng));
    }
    p
}

/// Nonzero random homogeneous polynomial.
pub fn random_nonzero(rng: &mut ChaCha8Rng, nvars: usize, d: i64, terms: usize) -> Poly {
    loop {
        let p = random_homogeneous(rng, nvars, d, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random homogeneous form of degree `r` and homogeneity `p`.
pub fn random_form(rng: &mut ChaCha8Rng, nvars: usize, r: i32, p: i64, terms: usize) -> Form {
    let basis = SliceBasis::new(nvars, r, p);
    let mut out = Form::zero(nvars, r);
    if basis.dim() == 0 {
        return out;
    }
    for _ in 0..terms {
        let k = rng.gen_range(0..basis.dim());
        out = out
            .checked_add(&basis.element(k).scale(&small_scalar(rng)))
            .unwrap();
    }
    out
}

/// Random rational foliation of type `(r, s)`.
pub fn random_rational(rng: &mut ChaCha8Rng, nvars: usize, r: u32, s: u32) -> Foliation {
    loop {
        let f = random_nonzero(rng, nvars, r as i64, 4);
        let g = random_nonzero(rng, nvars, s as i64, 5);
        if let Ok(fol) = FoliationSpec::Rational(RationalSpec { f, g, r, s }).build() {
            if !fol.omega().is_zero() {
                return fol;
            }
        }
    }
}

/// Dense rank by textbook row reduction over `ℚ(i)`.
pub fn dense_rank(rows: usize, columns: &[SparseVec]) -> usize {
    let mut m: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| columns.iter().map(|c| c.get(i)).collect())
        .collect();
    let mut rank = 0;
    for j in 0..columns.len() {
        let Some(p) = (rank..rows).find(|&i| !m[i][j].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][j].inv().unwrap();
        for i in 0..rows {
            if i == rank || m[i][j].is_zero() {
                continue;
            }
            let factor = &m[i][j] * &inv;
            let pivot_row = m[rank].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(j) {
                *x = &*x - &(&factor * p);
            }
        }
        rank += 1;
    }
    rank
}

/// `dim span(vectors)` through [`dense_rank`].
pub fn dense_span_dim(ambient: usize, vectors: &[SparseVec]) -> usize {
    dense_rank(ambient, vectors)
}

/// `h·dω` for every monomial `h` of `S(a)` and `ω∧β` for every basis
/// form `β` of `Ω¹(a)`, as coordinate columns in `Ω²(a + e)`.
pub fn ideal_oracle(fol: &Foliation, a: i64) -> (usize, usize) {
    let n = fol.nvars();
    let target = SliceBasis::new(n, 2, a + fol.e());
    let funcs = monomial_basis(n, a);
    let forms = SliceBasis::new(n, 1, a);
    let h_cols: Vec<SparseVec> = funcs
        .iter()
        .map(|m| target.coordinates(&fol.domega().mul_monomial(m)).unwrap())
        .collect();
    let w_cols: Vec<SparseVec> = (0..forms.dim())
        .map(|k| {
            target
                .coordinates(&fol.omega().wedge(&forms.element(k)).unwrap())
                .unwrap()
        })
        .collect();
    let rank_w = dense_rank(target.dim(), &w_cols);
    let all: Vec<SparseVec> = w_cols.iter().chain(&h_cols).cloned().collect();
    let rank_all = dense_rank(target.dim(), &all);
    // dim I(a) = dim S(a) - (rank of the h-part modulo the ω∧ image)
    let dim_i = funcs.len() - (rank_all - rank_w);
    let mut j_vectors = Vec::new();
    let basis = SliceBasis::functions(n, a);
    for m in monomial_basis(n, a - fol.e() + 1) {
        for c in fol.coeffs() {
            j_vectors.push(basis.poly_coordinates(&c.mul_monomial(&m)).unwrap());
        }
    }
    (dim_i, dense_span_dim(funcs.len(), &j_vectors))
}

/// Random logarithmic foliation with factor degrees `degrees`; the last
/// residue is solved from `Σ λ_i d_i = 0`.
pub fn random_logarithmic(rng: &mut ChaCha8Rng, nvars: usize, degrees: &[i64]) -> Foliation {
    loop {
        let factors: Vec<Poly> = degrees
            .iter()
            .map(|&d| random_nonzero(rng, nvars, d, 4))
            .collect();
        let mut lambdas: Vec<Scalar> = degrees[..degrees.len() - 1]
            .iter()
            .map(|_| small_scalar(rng))
            .collect();
        let mut weight = Scalar::ZERO;
        for (l, &d) in lambdas.iter().zip(degrees) {
            weight += &(l * &Scalar::from_int(d));
        }
        let last = Scalar::from_int(*degrees.last().unwrap());
        lambdas.push(-(&weight * &last.inv().unwrap()));
        if let Ok(fol) = FoliationSpec::Logarithmic(LogarithmicSpec { factors, lambdas }).build() {
            if !fol.omega().is_zero() {
                return fol;
            }
        }
    }
}
