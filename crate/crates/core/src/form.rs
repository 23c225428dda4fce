//! Polynomial differential forms Ωʳ_S and vector fields T_S = Ω⁻¹_S.
//!
//! A [`Form`] of degree `r >= 0` is a sum of `f_I dx_I` over strictly
//! increasing index tuples `I` of length `r`. Degree `r = -1` stores a vector
//! field `Σ g_i ∂/∂x_i`, keyed by one-element tuples `[i]`.
//!
//! Homogeneity counts `dx_i` as `+1` and `∂/∂x_i` as `-1`, so `ω = Σ A_i dx_i`
//! with `deg A_i = e - 1` lives in degree `e`, and the radial field has
//! degree `0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Homogeneity, Monomial, Poly};
use crate::scalar::Scalar;

pub type IndexTuple = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormDegree {
    AnyDegree,
    Degree(i64),
    NotHomogeneous,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    r: i32,
    terms: BTreeMap<IndexTuple, Poly>,
}

/// `κ(r) = (r + 1) / 2`, integral on the odd degrees where it is used.
pub fn kappa(r: i32) -> Scalar {
    assert!(
        r >= -1 && r % 2 != 0,
        "kappa is only used on odd degrees, got {r}"
    );
    Scalar::from_int(((r + 1) / 2) as i64)
}

/// Sign of the permutation sorting the concatenation `a ++ b`, or `None`
/// when the tuples share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(IndexTuple, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining elements of a
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

impl Form {
    pub fn zero(nvars: usize, r: i32) -> Self {
        assert!(r >= -1, "form degree must be >= -1");
        Form {
            nvars,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(tuple, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        nvars: usize,
        r: i32,
        terms: impl IntoIterator<Item = (IndexTuple, Poly)>,
    ) -> Result<Self> {
        let mut out = Form::zero(nvars, r);
        let width = if r < 0 { 1 } else { r as usize };
        for (idx, p) in terms {
            if idx.len() != width
                || idx.windows(2).any(|w| w[0] >= w[1])
                || idx.iter().any(|&i| i >= nvars)
            {
                return Err(Error::usage(format!(
                    "index tuple {idx:?} is not a strictly increasing {width}-tuple in 0..{nvars}"
                )));
            }
            if p.nvars() != nvars {
                return Err(Error::usage("coefficient has wrong variable count"));
            }
            out.add_term(idx, &p);
        }
        Ok(out)
    }

    pub fn function(p: Poly) -> Self {
        let nvars = p.nvars();
        let mut f = Form::zero(nvars, 0);
        f.add_term(Vec::new(), &p);
        f
    }

    pub fn dx(nvars: usize, i: usize) -> Self {
        let mut f = Form::zero(nvars, 1);
        f.add_term(vec![i], &Poly::one(nvars));
        f
    }

    /// `Σ coeffs[i] dx_i`.
    pub fn one_form(coeffs: &[Poly]) -> Self {
        let nvars = coeffs.len();
        let mut f = Form::zero(nvars, 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(vec![i], c);
        }
        f
    }

    /// `Σ coeffs[i] ∂/∂x_i`.
    pub fn vector_field(coeffs: &[Poly]) -> Self {
        let nvars = coeffs.len();
        let mut f = Form::zero(nvars, -1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(vec![i], c);
        }
        f
    }

    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut f = Form::zero(nvars, -1);
        f.add_term(vec![i], &Poly::one(nvars));
        f
    }

    /// The radial field `R = Σ x_i ∂/∂x_i`.
    pub fn radial(nvars: usize) -> Self {
        let coeffs: Vec<Poly> = (0..nvars).map(|i| Poly::var(nvars, i)).collect();
        Form::vector_field(&coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn r(&self) -> i32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_vector_field(&self) -> bool {
        self.r == -1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Coefficient of `dx_i` (or `∂/∂x_i`) for degree ±1 forms.
    pub fn component(&self, i: usize) -> Poly {
        self.coeff(&[i])
    }

    /// Value of a 0-form as a polynomial.
    pub fn as_function(&self) -> Option<Poly> {
        (self.r == 0).then(|| self.coeff(&[]))
    }

    pub fn add_term(&mut self, idx: IndexTuple, p: &Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn add_scaled_term(&mut self, idx: IndexTuple, p: &Poly, negative: bool) {
        if negative {
            self.add_term(idx, &-p);
        } else {
            self.add_term(idx, p);
        }
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::usage(format!(
                "forms in {} and {} variables cannot be combined",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        if self.r != other.r {
            return Err(Error::usage(format!(
                "cannot add forms of degree {} and {}",
                self.r, other.r
            )));
        }
        let mut out = self.clone();
        for (idx, p) in &other.terms {
            out.add_term(idx.clone(), p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Form) -> Result<Form> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.r);
        }
        Form {
            nvars: self.nvars,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// `f · τ` for a polynomial `f`.
    pub fn mul_poly(&self, f: &Poly) -> Form {
        let mut out = Form::zero(self.nvars, self.r);
        for (idx, p) in &self.terms {
            out.add_term(idx.clone(), &(p * f));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Form {
        Form {
            nvars: self.nvars,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (k.clone(), p.mul_monomial(m)))
                .collect(),
        }
    }

    /// Degree of homogeneity, counting `dx_i` as +1 and `∂/∂x_i` as -1.
    pub fn homogeneous_degree(&self) -> FormDegree {
        let mut found: Option<i64> = None;
        for p in self.terms.values() {
            match p.homogeneous_degree() {
                Homogeneity::AnyDegree => {}
                Homogeneity::NotHomogeneous => return FormDegree::NotHomogeneous,
                Homogeneity::Degree(d) => {
                    let total = d as i64 + self.r as i64;
                    match found {
                        None => found = Some(total),
                        Some(t) if t != total => return FormDegree::NotHomogeneous,
                        _ => {}
                    }
                }
            }
        }
        found.map_or(FormDegree::AnyDegree, FormDegree::Degree)
    }

    /// Exterior product. Vector fields are rejected; use [`contract`].
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        if self.r < 0 || other.r < 0 {
            return Err(Error::usage(
                "wedge is not defined for vector fields; contraction is the pairing",
            ));
        }
        let mut out = Form::zero(self.nvars, self.r + other.r);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((idx, negative)) = merge_sign(a, b) {
                    out.add_scaled_term(idx, &(p * q), negative);
                }
            }
        }
        Ok(out)
    }

    pub fn exterior_derivative(&self) -> Result<Form> {
        if self.r < 0 {
            return Err(Error::usage("exterior derivative of a vector field"));
        }
        let mut out = Form::zero(self.nvars, self.r + 1);
        for (idx, p) in &self.terms {
            for k in 0..self.nvars {
                if idx.binary_search(&k).is_ok() {
                    continue;
                }
                let dp = p.partial_derivative(k)?;
                if dp.is_zero() {
                    continue;
                }
                if let Some((merged, negative)) = merge_sign(&[k], idx) {
                    out.add_scaled_term(merged, &dp, negative);
                }
            }
        }
        Ok(out)
    }

    /// `τ = τ_d + τ_r` with `τ_d = d(i_R τ)/p` and `τ_r = i_R(dτ)/p`.
    pub fn cartan_split(&self, p: i64) -> Result<CartanSplit> {
        if p == 0 {
            return Err(Error::usage(
                "cartan split needs a nonzero homogeneity degree",
            ));
        }
        if self.r < 0 {
            return Err(Error::usage(
                "cartan split is defined on forms of degree >= 0",
            ));
        }
        match self.homogeneous_degree() {
            FormDegree::NotHomogeneous => {
                return Err(Error::usage("cartan split of a non-homogeneous form"))
            }
            FormDegree::Degree(q) if q != p => {
                return Err(Error::usage(format!(
                    "form has homogeneity {q}, not the requested {p}"
                )))
            }
            _ => {}
        }
        let inv_p = Scalar::ratio(1, p);
        let radial = Form::radial(self.nvars);
        let tau_r = contract(&radial, &self.exterior_derivative()?)?.scale(&inv_p);
        let tau_d = if self.r == 0 {
            Form::zero(self.nvars, 0)
        } else {
            contract(&radial, self)?
                .exterior_derivative()?
                .scale(&inv_p)
        };
        Ok(CartanSplit { tau_d, tau_r, p })
    }
}

/// Interior product `i_X τ`.
pub fn contract(x: &Form, tau: &Form) -> Result<Form> {
    x.check_compatible(tau)?;
    if !x.is_vector_field() {
        return Err(Error::usage("contraction needs a vector field (r = -1)"));
    }
    if tau.r < 1 {
        return Err(Error::usage(format!(
            "contraction needs a form of degree >= 1, got {}",
            tau.r
        )));
    }
    let mut out = Form::zero(tau.nvars, tau.r - 1);
    for (idx, p) in &tau.terms {
        for (pos, &i) in idx.iter().enumerate() {
            let xi = x.coeff(&[i]);
            if xi.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(pos);
            out.add_scaled_term(rest, &(p * &xi), pos % 2 == 1);
        }
    }
    Ok(out)
}

/// Lie derivative by Cartan's formula `L_X τ = i_X dτ + d i_X τ`.
pub fn lie_derivative(x: &Form, tau: &Form) -> Result<Form> {
    if tau.r < 0 {
        return Err(Error::usage(
            "Lie derivative of a vector field is not provided",
        ));
    }
    let first = contract(x, &tau.exterior_derivative()?)?;
    if tau.r == 0 {
        return Ok(first);
    }
    first.checked_add(&contract(x, tau)?.exterior_derivative()?)
}

/// `ω₀ △ τ`: `ω₀∧dτ + κ(r) dω₀∧τ` on odd `r`, and `L_X ω₀` on vector fields.
pub fn triangle(omega0: &Form, tau: &Form) -> Result<Form> {
    if omega0.r != 1 {
        return Err(Error::usage("triangle needs a 1-form on the left"));
    }
    omega0.check_compatible(tau)?;
    match tau.r {
        -1 => lie_derivative(tau, omega0),
        r if r >= 1 && r % 2 == 1 => {
            let a = omega0.wedge(&tau.exterior_derivative()?)?;
            let b = omega0.exterior_derivative()?.wedge(tau)?.scale(&kappa(r));
            a.checked_add(&b)
        }
        r => Err(Error::usage(format!(
            "triangle is defined on vector fields and odd-degree forms, got degree {r}"
        ))),
    }
}

/// Exact and radial parts of a homogeneous form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSplit {
    pub tau_d: Form,
    pub tau_r: Form,
    pub p: i64,
}

impl CartanSplit {
    /// For a 1-form `η`, the pair `(h, η_r)` with `h = -(1/p) i_R η`, so that
    /// `η = η_r - dh`.
    pub fn unfolding_pair(&self) -> Result<(Poly, Form)> {
        if self.tau_r.r() != 1 {
            return Err(Error::usage("unfolding pair is defined for 1-forms"));
        }
        let nvars = self.tau_r.nvars();
        let h = contract(&Form::radial(nvars), &self.tau_d.checked_add(&self.tau_r)?)?
            .as_function()
            .expect("contraction of a 1-form is a function")
            .scale(&Scalar::ratio(-1, self.p));
        Ok((h, self.tau_r.clone()))
    }

    pub fn reconstruct(&self) -> Result<Form> {
        self.tau_d.checked_add(&self.tau_r)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.r == 0 {
            return write!(f, "{}", self.coeff(&[]));
        }
        for (n, (idx, p)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let basis = if self.r < 0 {
                format!("d/dx{}", idx[0])
            } else {
                idx.iter()
                    .map(|i| format!("dx{i}"))
                    .collect::<Vec<_>>()
                    .join("^")
            };
            if p.len() > 1 {
                write!(f, "({p})*{basis}")?;
            } else if p.to_string() == "1" {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{p}*{basis}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
