//! Rational and logarithmic foliations and their integrability checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::form::{contract, Form, FormDegree};
use crate::poly::{Homogeneity, Poly};
use crate::scalar::Scalar;

/// `ω = r F dG - s G dF`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSpec {
    pub f: Poly,
    pub g: Poly,
    pub r: u32,
    pub s: u32,
}

/// `ω = Σ λ_i F_i df_i` with `F_i = ∏_{j≠i} f_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogarithmicSpec {
    pub factors: Vec<Poly>,
    pub lambdas: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoliationSpec {
    Rational(RationalSpec),
    Logarithmic(LogarithmicSpec),
    /// An integrable 1-form given by its coefficients.
    Raw(Form),
}

/// A homogeneous integrable 1-form `ω = Σ A_i dx_i` of degree `e`
/// (coefficients of degree `e - 1`) with `i_R ω = 0`.
#[derive(Debug, Clone)]
pub struct Foliation {
    omega: Form,
    domega: Form,
    coeffs: Vec<Poly>,
    e: i64,
    spec: FoliationSpec,
    warnings: Vec<String>,
}

fn degree_of(p: &Poly, what: &str) -> Result<u32> {
    match p.homogeneous_degree() {
        Homogeneity::Degree(d) => Ok(d),
        Homogeneity::AnyDegree => Err(Error::usage(format!("{what} is zero"))),
        Homogeneity::NotHomogeneous => Err(Error::usage(format!("{what} is not homogeneous"))),
    }
}

/// True iff `ω ∧ dω = 0` and `i_R ω = 0`.
pub fn check_integrable(omega: &Form) -> Result<bool> {
    if omega.r() != 1 {
        return Err(Error::usage("integrability is checked on 1-forms"));
    }
    if omega.homogeneous_degree() == FormDegree::NotHomogeneous {
        return Err(Error::usage("integrability check needs a homogeneous form"));
    }
    let radial = Form::radial(omega.nvars());
    if !contract(&radial, omega)?.is_zero() {
        return Ok(false);
    }
    Ok(omega.wedge(&omega.exterior_derivative()?)?.is_zero())
}

pub fn build_rational(spec: RationalSpec) -> Result<Foliation> {
    let RationalSpec { f, g, r, s } = &spec;
    if f.nvars() != g.nvars() {
        return Err(Error::usage("F and G have different variable counts"));
    }
    let (df, dg) = (degree_of(f, "F")?, degree_of(g, "G")?);
    if df != *r || dg != *s || *r == 0 || *s == 0 {
        return Err(Error::usage(format!(
            "need deg F = r >= 1 and deg G = s >= 1; got deg F = {df}, r = {r}, deg G = {dg}, s = {s}"
        )));
    }
    let nvars = f.nvars();
    let big_f = Form::function(f.clone());
    let big_g = Form::function(g.clone());
    let omega = big_g
        .exterior_derivative()?
        .mul_poly(f)
        .scale(&Scalar::from_int(*r as i64))
        .checked_sub(
            &big_f
                .exterior_derivative()?
                .mul_poly(g)
                .scale(&Scalar::from_int(*s as i64)),
        )?;
    debug_assert_eq!(omega.nvars(), nvars);
    finish(omega, FoliationSpec::Rational(spec), Vec::new(), true)
}

pub fn build_logarithmic(spec: LogarithmicSpec) -> Result<Foliation> {
    let LogarithmicSpec { factors, lambdas } = &spec;
    if factors.len() < 2 {
        return Err(Error::spec(
            "a logarithmic foliation needs at least two factors",
        ));
    }
    if factors.len() != lambdas.len() {
        return Err(Error::spec(format!(
            "{} factors but {} residues",
            factors.len(),
            lambdas.len()
        )));
    }
    let nvars = factors[0].nvars();
    if factors.iter().any(|f| f.nvars() != nvars) {
        return Err(Error::usage("factors have different variable counts"));
    }
    let degrees = factors
        .iter()
        .enumerate()
        .map(|(i, f)| degree_of(f, &format!("f{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    if degrees.contains(&0) {
        return Err(Error::spec("factors must have positive degree"));
    }
    let balance = lambdas
        .iter()
        .zip(&degrees)
        .fold(Scalar::ZERO, |acc, (l, d)| {
            acc + l * &Scalar::from_int(*d as i64)
        });
    if !balance.is_zero() {
        return Err(Error::spec(format!(
            "residues violate sum(lambda_i * d_i) = 0: the sum is {balance}"
        )));
    }
    let mut warnings = Vec::new();
    for (i, l) in lambdas.iter().enumerate() {
        if l.is_zero() {
            warnings.push(format!("lambda_{} is zero", i + 1));
        }
        for (j, m) in lambdas.iter().enumerate().skip(i + 1) {
            if l == m {
                warnings.push(format!("lambda_{} = lambda_{}", i + 1, j + 1));
            }
        }
    }
    for w in &warnings {
        log::warn!("genericity: {w}");
    }
    let mut omega = Form::zero(nvars, 1);
    for (i, (f, l)) in factors.iter().zip(lambdas).enumerate() {
        let cof = cofactor(factors, &[i]);
        let term = Form::function(f.clone())
            .exterior_derivative()?
            .mul_poly(&cof)
            .scale(l);
        omega = omega.checked_add(&term)?;
    }
    finish(omega, FoliationSpec::Logarithmic(spec), warnings, true)
}

/// Accepts an arbitrary integrable 1-form.
pub fn build_raw(omega: Form) -> Result<Foliation> {
    finish(omega.clone(), FoliationSpec::Raw(omega), Vec::new(), false)
}

fn finish(
    omega: Form,
    spec: FoliationSpec,
    warnings: Vec<String>,
    constructed: bool,
) -> Result<Foliation> {
    let e = match omega.homogeneous_degree() {
        FormDegree::Degree(e) => e,
        FormDegree::AnyDegree => return Err(Error::spec("the 1-form is zero")),
        FormDegree::NotHomogeneous => return Err(Error::spec("the 1-form is not homogeneous")),
    };
    if !check_integrable(&omega)? {
        let msg = "the 1-form is not integrable or does not descend (omega^domega != 0 or i_R omega != 0)";
        return Err(if constructed {
            Error::falsification(msg)
        } else {
            Error::spec(msg)
        });
    }
    let coeffs = (0..omega.nvars()).map(|i| omega.component(i)).collect();
    let domega = omega.exterior_derivative()?;
    Ok(Foliation {
        omega,
        domega,
        coeffs,
        e,
        spec,
        warnings,
    })
}

/// `∏_{k ∉ skip} f_k`.
fn cofactor(factors: &[Poly], skip: &[usize]) -> Poly {
    let nvars = factors[0].nvars();
    factors
        .iter()
        .enumerate()
        .filter(|(k, _)| !skip.contains(k))
        .fold(Poly::one(nvars), |acc, (_, f)| &acc * f)
}

impl FoliationSpec {
    pub fn build(self) -> Result<Foliation> {
        match self {
            FoliationSpec::Rational(s) => build_rational(s),
            FoliationSpec::Logarithmic(s) => build_logarithmic(s),
            FoliationSpec::Raw(w) => build_raw(w),
        }
    }
}

impl Foliation {
    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn domega(&self) -> &Form {
        &self.domega
    }

    /// `A_0..A_n`.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn nvars(&self) -> usize {
        self.omega.nvars()
    }

    /// Projective dimension `n`.
    pub fn n(&self) -> usize {
        self.nvars() - 1
    }

    pub fn spec(&self) -> &FoliationSpec {
        &self.spec
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.spec, FoliationSpec::Rational(_))
    }

    /// The factors `f_i`; `(F, G)` for a rational foliation.
    pub fn factors(&self) -> Option<Vec<Poly>> {
        match &self.spec {
            FoliationSpec::Rational(s) => Some(vec![s.f.clone(), s.g.clone()]),
            FoliationSpec::Logarithmic(s) => Some(s.factors.clone()),
            FoliationSpec::Raw(_) => None,
        }
    }

    pub fn factor_degrees(&self) -> Option<Vec<i64>> {
        self.factors().map(|fs| {
            fs.iter()
                .map(|f| f.total_degree().expect("factor is nonzero") as i64)
                .collect()
        })
    }

    /// Residues; a rational `(F, G, r, s)` reads as `f = (F, G)`,
    /// `λ = (-s, r)`.
    pub fn lambdas(&self) -> Option<Vec<Scalar>> {
        match &self.spec {
            FoliationSpec::Rational(s) => Some(vec![
                Scalar::from_int(-(s.s as i64)),
                Scalar::from_int(s.r as i64),
            ]),
            FoliationSpec::Logarithmic(s) => Some(s.lambdas.clone()),
            FoliationSpec::Raw(_) => None,
        }
    }

    /// `F_i = ∏_{j≠i} f_j` (0-based `i`).
    pub fn big_f(&self, i: usize) -> Option<Poly> {
        self.factors().map(|fs| cofactor(&fs, &[i]))
    }

    /// `F_{ji} = ∏_{k∉{i,j}} f_k`.
    pub fn big_f2(&self, j: usize, i: usize) -> Option<Poly> {
        self.factors().map(|fs| cofactor(&fs, &[i, j]))
    }

    /// The logarithmic form with the same factors and residues `mu`, i.e.
    /// `Σ mu_i F_i df_i`.
    pub fn with_residues(&self, mu: &[Scalar]) -> Option<Form> {
        let fs = self.factors()?;
        let mut out = Form::zero(self.nvars(), 1);
        for (i, (f, m)) in fs.iter().zip(mu).enumerate() {
            let t = Form::function(f.clone())
                .exterior_derivative()
                .ok()?
                .mul_poly(&cofactor(&fs, &[i]))
                .scale(m);
            out = out.checked_add(&t).ok()?;
        }
        Some(out)
    }
}

impl fmt::Display for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.omega)
    }
}
