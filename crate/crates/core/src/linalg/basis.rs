use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::form::{Form, FormDegree, IndexTuple};
use crate::poly::{monomial_basis, Monomial, Poly};

use super::vector::SparseVec;

/// Strictly increasing `r`-subsets of `0..nvars` in lexicographic order.
/// Degree `-1` (vector fields) uses the singletons.
pub fn index_tuples(nvars: usize, r: i32) -> Vec<IndexTuple> {
    if r < 0 {
        return (0..nvars).map(|i| vec![i]).collect();
    }
    let r = r as usize;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, nvars: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..nvars {
            cur.push(i);
            rec(i + 1, nvars, r, cur, out);
            cur.pop();
        }
    }
    rec(0, nvars, r, &mut cur, &mut out);
    out
}

/// Canonical basis of the homogeneous slice `Ωʳ_S(p)`: elements
/// `m · dx_I` with `deg m = p - r`, ordered tuple-major, then by monomial
/// (largest first).
#[derive(Clone)]
pub struct SliceBasis {
    nvars: usize,
    r: i32,
    p: i64,
    tuples: Vec<IndexTuple>,
    monomials: Vec<Monomial>,
    tuple_index: HashMap<IndexTuple, usize>,
    monomial_index: HashMap<Monomial, usize>,
}

impl SliceBasis {
    pub fn new(nvars: usize, r: i32, p: i64) -> Self {
        assert!(r >= -1, "form degree must be >= -1");
        let tuples = if r > nvars as i32 {
            Vec::new()
        } else {
            index_tuples(nvars, r)
        };
        let monomials = monomial_basis(nvars, p - r as i64);
        let tuple_index = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, t)| (t, k))
            .collect();
        let monomial_index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        SliceBasis {
            nvars,
            r,
            p,
            tuples,
            monomials,
            tuple_index,
            monomial_index,
        }
    }

    /// Polynomials of degree `d`, viewed as 0-forms.
    pub fn functions(nvars: usize, d: i64) -> Self {
        SliceBasis::new(nvars, 0, d)
    }

    /// `T_S(q)`: vector fields with coefficients of degree `q + 1`.
    pub fn vector_fields(nvars: usize, q: i64) -> Self {
        SliceBasis::new(nvars, -1, q)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn r(&self) -> i32 {
        self.r
    }

    /// Homogeneity degree of every element.
    pub fn p(&self) -> i64 {
        self.p
    }

    /// Degree of the polynomial coefficients.
    pub fn coefficient_degree(&self) -> i64 {
        self.p - self.r as i64
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.monomials.len()
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The `k`-th element as `(tuple, monomial)`.
    pub fn label(&self, k: usize) -> (&IndexTuple, &Monomial) {
        let nm = self.monomials.len();
        (&self.tuples[k / nm], &self.monomials[k % nm])
    }

    pub fn element(&self, k: usize) -> Form {
        let (t, m) = self.label(k);
        let coeff = Poly::term(crate::scalar::Scalar::ONE, m.clone());
        Form::from_terms(self.nvars, self.r, [(t.clone(), coeff)]).expect("basis label is valid")
    }

    pub fn index_of(&self, tuple: &[usize], m: &Monomial) -> Option<usize> {
        let t = self.tuple_index.get(tuple)?;
        let j = self.monomial_index.get(m)?;
        Some(t * self.monomials.len() + j)
    }

    /// Coordinates of `f` in this basis; fails when `f` does not live in
    /// the slice.
    pub fn coordinates(&self, f: &Form) -> Result<SparseVec> {
        if f.nvars() != self.nvars || f.r() != self.r {
            return Err(Error::usage(format!(
                "form of degree {} in {} variables is not in {self}",
                f.r(),
                f.nvars()
            )));
        }
        match f.homogeneous_degree() {
            FormDegree::AnyDegree => return Ok(SparseVec::new()),
            FormDegree::Degree(q) if q == self.p => {}
            other => {
                return Err(Error::usage(format!(
                    "form with homogeneity {other:?} is not in {self}"
                )))
            }
        }
        let mut pairs = Vec::new();
        for (t, poly) in f.terms() {
            for (m, c) in poly.terms() {
                let k = self
                    .index_of(t, m)
                    .ok_or_else(|| Error::usage(format!("term {m} d{t:?} is not in {self}")))?;
                pairs.push((k, c.clone()));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Inverse of [`SliceBasis::coordinates`].
    pub fn form_from(&self, v: &SparseVec) -> Form {
        let mut out = Form::zero(self.nvars, self.r);
        for (k, c) in v.entries() {
            let (t, m) = self.label(*k);
            out.add_term(t.clone(), &Poly::term(c.clone(), m.clone()));
        }
        out
    }

    /// Coordinates of a polynomial in a degree-`d` function slice.
    pub fn poly_coordinates(&self, p: &Poly) -> Result<SparseVec> {
        self.coordinates(&Form::function(p.clone()))
    }

    pub fn poly_from(&self, v: &SparseVec) -> Poly {
        self.form_from(v).as_function().expect("function slice")
    }
}

impl fmt::Display for SliceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r < 0 {
            write!(f, "T({}) in {} variables", self.p, self.nvars)
        } else {
            write!(
                f,
                "Omega^{}({}) in {} variables",
                self.r, self.p, self.nvars
            )
        }
    }
}

impl fmt::Debug for SliceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SliceBasis({self}, dim {})", self.dim())
    }
}
