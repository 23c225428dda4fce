//! Graded projective unfoldings `𝕌(ω)`, the ideals `I(ω) ⊇ J(ω)`,
//! deformations, and the Hilbert function of `𝕌̄(ω)`.
//!
//! The degree-`a` slice of `𝕌(ω)` is the kernel of
//! `(h, η) ↦ a·h·dω - e·ω∧(η - dh)` on `S(a) ⊕ Ω¹(a)`, modulo
//! `W(a) = {(0, fω) : f ∈ S(a - e)}`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{memo, ComplexKind, Engine, MapKind};
use crate::error::{Error, Result};
use crate::foliation::Foliation;
use crate::form::{contract, Form};
use crate::linalg::{ExactMatrix, SparseVec, Subspace};
use crate::poly::{monomial_basis, Homogeneity, Poly};
use crate::scalar::Scalar;

/// Trailing run of equal values needed to declare the Hilbert plateau.
pub const PLATEAU_WINDOW: usize = 3;

/// A pair `(h, η)` of degree `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldingElement {
    pub h: Poly,
    pub eta: Form,
    pub a: i64,
}

impl UnfoldingElement {
    /// Exact check of `a·h·dω = e·ω∧(η - dh)` and `i_R η = 0`.
    pub fn check(&self, fol: &Foliation) -> Result<()> {
        let e = Scalar::from_int(fol.e());
        let lhs = fol
            .domega()
            .mul_poly(&self.h)
            .scale(&Scalar::from_int(self.a));
        let dh = Form::function(self.h.clone()).exterior_derivative()?;
        let rhs = fol.omega().wedge(&self.eta.checked_sub(&dh)?)?.scale(&e);
        if lhs != rhs {
            return Err(Error::falsification(format!(
                "(h, eta) of degree {} fails a*h*domega = e*omega^(eta - dh) with h = {}",
                self.a, self.h
            )));
        }
        if !self.eta.is_zero() {
            let ir = contract(&Form::radial(fol.nvars()), &self.eta)?;
            if !ir.is_zero() {
                return Err(Error::falsification(format!(
                    "i_R eta = {ir} is nonzero for an unfolding of degree {}",
                    self.a
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for UnfoldingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.eta)
    }
}

/// `f·(h, η) = (fh, ((a+b)/a) fη + (1/a)(a h df - b f dh))` for
/// `deg f = b`, `deg(h, η) = a`.
pub fn act(f: &Poly, u: &UnfoldingElement) -> Result<UnfoldingElement> {
    if u.a == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    let b = match f.homogeneous_degree() {
        Homogeneity::Degree(b) => b as i64,
        Homogeneity::AnyDegree => 0,
        Homogeneity::NotHomogeneous => {
            return Err(Error::usage("the acting polynomial must be homogeneous"))
        }
    };
    let a = u.a;
    let df = Form::function(f.clone()).exterior_derivative()?;
    let dh = Form::function(u.h.clone()).exterior_derivative()?;
    let eta = u
        .eta
        .mul_poly(f)
        .scale(&Scalar::ratio(a + b, a))
        .checked_add(&df.mul_poly(&u.h))?
        .checked_sub(&dh.mul_poly(f).scale(&Scalar::ratio(b, a)))?;
    Ok(UnfoldingElement {
        h: f * &u.h,
        eta,
        a: a + b,
    })
}

/// One row of the Hilbert scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedRow {
    pub a: i64,
    pub dim_u: usize,
    pub dim_cu: usize,
    /// `H¹(L•(ω, a))`.
    pub ubar_l: usize,
    /// `dim U(a) - dim C_U(a)`.
    pub ubar_quot: usize,
    /// `dim I(a) - dim J(a)`.
    pub ubar_ij: usize,
    pub dim_i: usize,
    pub dim_j: usize,
}

impl GradedRow {
    pub fn agrees(&self) -> bool {
        self.ubar_l == self.ubar_quot && self.ubar_quot == self.ubar_ij
    }

    pub fn ensure_agrees(&self) -> Result<()> {
        if self.agrees() {
            return Ok(());
        }
        Err(Error::falsification(format!(
            "routes disagree at a = {}: H1(L) = {}, U/C_U = {}, I/J = {}",
            self.a, self.ubar_l, self.ubar_quot, self.ubar_ij
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plateau {
    Declared { value: usize, onset: i64 },
    Inconclusive,
}

/// Applies the plateau rule: the last [`PLATEAU_WINDOW`] values are equal.
/// The onset is the first degree of the final constant run.
pub fn detect_plateau(values: &[(i64, usize)]) -> Plateau {
    let Some(&(_, last)) = values.last() else {
        return Plateau::Inconclusive;
    };
    let run = values.iter().rev().take_while(|(_, v)| *v == last).count();
    if run < PLATEAU_WINDOW {
        return Plateau::Inconclusive;
    }
    Plateau::Declared {
        value: last,
        onset: values[values.len() - run].0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedReport {
    pub rows: Vec<GradedRow>,
    pub plateau: Plateau,
}

impl GradedReport {
    pub fn ubar(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.ubar_l).collect()
    }

    pub fn disagreements(&self) -> Vec<GradedRow> {
        self.rows.iter().filter(|r| !r.agrees()).copied().collect()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        self.rows.iter().try_for_each(GradedRow::ensure_agrees)
    }
}

/// Dimensions from the unfolding map alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnfoldingDims {
    pub dim_u: usize,
    pub dim_cu: usize,
}

/// Explicit slice of `𝕌(ω)`: a transversal to `W(a)` in the kernel.
#[derive(Debug, Clone)]
pub struct UnfoldingSlice {
    pub a: i64,
    pub dim: usize,
    pub elements: Vec<UnfoldingElement>,
    /// The kernel in `S(a) ⊕ Ω¹(a)` coordinates, `W(a)` included.
    pub kernel: Subspace,
}

#[derive(Debug, Clone)]
pub struct IdealSlices {
    pub a: i64,
    /// `I(a)` in the monomial coordinates of `S(a)`.
    pub i: Subspace,
    pub j: Subspace,
}

impl IdealSlices {
    pub fn dim_i(&self) -> usize {
        self.i.dim()
    }

    pub fn dim_j(&self) -> usize {
        self.j.dim()
    }
}

/// Descending kernel of `ω△` on `Ω¹(e)`; `D(ω)` is its quotient by `ℂω`.
#[derive(Debug, Clone)]
pub struct Deformations {
    pub kernel: Arc<Subspace>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct PerturbationSpans {
    /// Dimensions modulo `ℂω`.
    pub dim_f: usize,
    pub dim_lambda: usize,
    pub dim_sum: usize,
    pub dim_d: usize,
    /// `dim D(ω) - dim(D(ω,f̄) + D(ω,λ̄))`.
    pub residual: usize,
    pub direct: bool,
    /// `D(ω,f̄) + ℂω` in `Ω¹(e)` coordinates.
    pub span_f: Subspace,
    pub span_sum: Subspace,
}

#[derive(Debug, Clone)]
pub struct SequenceVerdict {
    pub rational: bool,
    pub dim_k: usize,
    pub dim_u: usize,
    pub dim_d: usize,
    pub dim_image: usize,
    pub spans: Option<PerturbationSpans>,
    /// `(F, 0) ∈ U(e)` for every integrating factor and these are
    /// independent modulo `W(e)`.
    pub inclusion_ok: bool,
    pub image_in_deformations: bool,
    pub image_equals_d: bool,
    pub image_equals_df: Option<bool>,
    /// `dim U = dim K + dim im π₂`.
    pub exact_at_u: bool,
}

impl SequenceVerdict {
    pub fn epimorphism(&self) -> bool {
        self.image_equals_d
    }

    /// The short exact sequence in the rational case; image equal to
    /// `D(ω,f̄)` in the logarithmic case.
    pub fn ensure(&self) -> Result<()> {
        let mut failures = Vec::new();
        if !self.inclusion_ok {
            failures.push("K -> U is not an injection into U(e)");
        }
        if !self.image_in_deformations {
            failures.push("image of pi2 is not contained in ker(omega triangle)");
        }
        if !self.exact_at_u {
            failures.push("dim U(e) != dim K + dim im pi2");
        }
        if self.rational && !self.image_equals_d {
            failures.push("pi2 is not onto D(omega)");
        }
        if !self.rational && self.image_equals_df == Some(false) {
            failures.push("image of pi2 differs from D(omega, f)");
        }
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::falsification(failures.join("; ")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct ThetaGenerator {
    /// 0-based factor index.
    pub i: usize,
    pub element: UnfoldingElement,
    /// Number of `g ∈ S(d_i)` checked.
    pub checked: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityRow {
    pub a: i64,
    pub h1_c: usize,
    pub dim_i: usize,
    pub dim_j: usize,
}

#[derive(Debug, Clone)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub rows: Vec<RegularityRow>,
    /// First degree `a < e` with `H¹(C•(ω, a)) ≠ 0`, and a cycle that is not
    /// a boundary there.
    pub witness: Option<(i64, Form)>,
}

fn check_degree(a: i64) -> Result<()> {
    if a < 1 {
        return Err(Error::UnsupportedDegree(a));
    }
    Ok(())
}

impl Engine {
    /// The map `(h, η) ↦ a·h·dω - e·ω∧(η - dh)` into `Ω²(a + e)`.
    pub fn unfolding_matrix(&self, a: i64) -> Result<Arc<ExactMatrix>> {
        check_degree(a)?;
        memo(&self.unfolding, a, || {
            let fol = self.foliation();
            let e = self.e();
            let target = self.basis(2, a + e);
            let funcs = self.basis(0, a);
            let mut columns = Vec::with_capacity(funcs.dim() + self.basis(1, a).dim());
            for m in funcs.monomials() {
                let dm =
                    Form::function(Poly::term(Scalar::ONE, m.clone())).exterior_derivative()?;
                let col = fol
                    .domega()
                    .mul_monomial(m)
                    .scale(&Scalar::from_int(a))
                    .checked_add(&fol.omega().wedge(&dm)?.scale(&Scalar::from_int(e)))?;
                columns.push(target.coordinates(&col)?);
            }
            let wedge = self.matrix(MapKind::WedgeOmega, 1, a)?;
            let minus_e = Scalar::from_int(-e);
            columns.extend(wedge.columns().iter().map(|c| c.scale(&minus_e)));
            ExactMatrix::from_columns(target.dim(), columns)
        })
    }

    pub fn encode(&self, u: &UnfoldingElement) -> Result<SparseVec> {
        let funcs = self.basis(0, u.a);
        let h = funcs.poly_coordinates(&u.h)?;
        let eta = self.basis(1, u.a).coordinates(&u.eta)?;
        Ok(h.concat(funcs.dim(), &eta))
    }

    pub fn decode(&self, a: i64, v: &SparseVec) -> UnfoldingElement {
        let funcs = self.basis(0, a);
        let forms = self.basis(1, a);
        let n = funcs.dim();
        UnfoldingElement {
            h: funcs.poly_from(&v.slice(0..n)),
            eta: forms.form_from(&v.slice(n..n + forms.dim())),
            a,
        }
    }

    /// `W(a)`: the pairs `(0, m·ω)`.
    fn w_vectors(&self, a: i64) -> Result<Vec<SparseVec>> {
        let n = self.basis(0, a).dim();
        let forms = self.basis(1, a);
        monomial_basis(self.nvars(), a - self.e())
            .iter()
            .map(|m| {
                Ok(SparseVec::new().concat(
                    n,
                    &forms.coordinates(&self.foliation().omega().mul_monomial(m))?,
                ))
            })
            .collect()
    }

    /// Generators `(i_X ω, (a i_X dω + e d i_X ω)/e)` of `C_U(a)`.
    pub fn coboundary_generators(&self, a: i64) -> Result<Vec<UnfoldingElement>> {
        check_degree(a)?;
        let fol = self.foliation();
        let e = self.e();
        let fields = self.basis(-1, a - e);
        (0..fields.dim())
            .map(|k| {
                let x = fields.element(k);
                let h_form = contract(&x, fol.omega())?;
                let eta = contract(&x, fol.domega())?
                    .scale(&Scalar::ratio(a, e))
                    .checked_add(&h_form.exterior_derivative()?)?;
                Ok(UnfoldingElement {
                    h: h_form.as_function().expect("function"),
                    eta,
                    a,
                })
            })
            .collect()
    }

    fn ensure_in_kernel(
        &self,
        m: &ExactMatrix,
        vectors: &[SparseVec],
        what: &str,
        a: i64,
    ) -> Result<()> {
        if let Some(k) = vectors.iter().position(|v| !m.apply(v).is_zero()) {
            return Err(Error::Containment(format!(
                "{what} generator {k} at a = {a} is not an unfolding"
            )));
        }
        Ok(())
    }

    /// `dim U(a)` and `dim C_U(a)` modulo `W(a)`, with `C_U(a) ⊆ U(a)` checked.
    pub fn unfolding_dims(&self, a: i64) -> Result<UnfoldingDims> {
        check_degree(a)?;
        let m = self.unfolding_matrix(a)?;
        let nullity = m.cols() - m.rank();
        let w = self.w_vectors(a)?;
        let cu = self
            .coboundary_generators(a)?
            .iter()
            .map(|u| self.encode(u))
            .collect::<Result<Vec<_>>>()?;
        self.ensure_in_kernel(&m, &w, "W", a)?;
        self.ensure_in_kernel(&m, &cu, "C_U", a)?;
        let w_dim = Subspace::from_vectors(m.cols(), w.iter().cloned()).dim();
        let cu_w = Subspace::from_vectors(m.cols(), w.into_iter().chain(cu)).dim();
        Ok(UnfoldingDims {
            dim_u: nullity - w_dim,
            dim_cu: cu_w - w_dim,
        })
    }

    /// Explicit `U(a)`, with a transversal basis to `W(a)`.
    pub fn unfolding_slice(&self, a: i64) -> Result<UnfoldingSlice> {
        check_degree(a)?;
        let m = self.unfolding_matrix(a)?;
        let kernel = m.kernel();
        let mut span = Subspace::from_vectors(m.cols(), self.w_vectors(a)?);
        let mut elements = Vec::new();
        for v in kernel.basis() {
            if span.insert(v) {
                let u = self.decode(a, v);
                u.check(self.foliation())?;
                elements.push(u);
            }
        }
        Ok(UnfoldingSlice {
            a,
            dim: elements.len(),
            elements,
            kernel,
        })
    }

    /// Transversal basis of `C_U(a)` modulo `W(a)`.
    pub fn coboundary_slice(&self, a: i64) -> Result<Vec<UnfoldingElement>> {
        let m = self.unfolding_matrix(a)?;
        let mut span = Subspace::from_vectors(m.cols(), self.w_vectors(a)?);
        let mut out = Vec::new();
        for u in self.coboundary_generators(a)? {
            let v = self.encode(&u)?;
            if !m.apply(&v).is_zero() {
                return Err(Error::Containment(format!(
                    "C_U element {u} is not in U({a})"
                )));
            }
            if span.insert(&v) {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// `I(a)`: the `h`-projection of the kernel of `(h, η̃) ↦ h·dω - ω∧η̃`
    /// on `S(a) ⊕ Ω¹(a)`.
    fn ideal_slice(&self, a: i64) -> Result<Subspace> {
        let fol = self.foliation();
        let target = self.basis(2, a + self.e());
        let funcs = self.basis(0, a);
        let mut columns = funcs
            .monomials()
            .iter()
            .map(|m| target.coordinates(&fol.domega().mul_monomial(m)))
            .collect::<Result<Vec<_>>>()?;
        let minus_one = Scalar::from_int(-1);
        let wedge = self.matrix(MapKind::WedgeOmega, 1, a)?;
        columns.extend(wedge.columns().iter().map(|c| c.scale(&minus_one)));
        let kernel = ExactMatrix::from_columns(target.dim(), columns)?.kernel();
        let n = funcs.dim();
        Ok(Subspace::from_vectors(
            n,
            kernel.basis().iter().map(|v| v.slice(0..n)),
        ))
    }

    fn j_vectors(&self, a: i64) -> Result<Vec<SparseVec>> {
        let funcs = self.basis(0, a);
        let mut out = Vec::new();
        for m in monomial_basis(self.nvars(), a - self.e() + 1) {
            for c in self.foliation().coeffs() {
                out.push(funcs.poly_coordinates(&c.mul_monomial(&m))?);
            }
        }
        Ok(out)
    }

    /// `(dim I(a), dim J(a))` with `J(a) ⊆ I(a)` checked.
    pub fn ideal_dims(&self, a: i64) -> Result<(usize, usize)> {
        let slices = self.ideal_slices(a)?;
        Ok((slices.dim_i(), slices.dim_j()))
    }

    pub fn ideal_slices(&self, a: i64) -> Result<IdealSlices> {
        if a < 0 {
            return Err(Error::usage("ideal slices need a >= 0"));
        }
        let i = self.ideal_slice(a)?;
        let j = Subspace::from_vectors(i.ambient(), self.j_vectors(a)?);
        if !i.contains_subspace(&j)? {
            return Err(Error::Containment(format!(
                "J({a}) is not contained in I({a})"
            )));
        }
        Ok(IdealSlices { a, i, j })
    }

    /// The degree-`a` slice of the ideal generated by `gens`, in `S(a)`
    /// coordinates.
    pub fn ideal_slice_of(&self, gens: &[Poly], a: i64) -> Result<Subspace> {
        let funcs = self.basis(0, a);
        let mut vectors = Vec::new();
        for g in gens {
            let d = g
                .total_degree()
                .ok_or_else(|| Error::usage("zero generator"))? as i64;
            for m in monomial_basis(self.nvars(), a - d) {
                vectors.push(funcs.poly_coordinates(&g.mul_monomial(&m))?);
            }
        }
        Ok(Subspace::from_vectors(funcs.dim(), vectors))
    }

    /// One row of the scan: all three routes at degree `a`.
    pub fn graded_row(&self, a: i64) -> Result<GradedRow> {
        check_degree(a)?;
        let ubar_l = self.homology_dims(ComplexKind::L, a, 1)?.homology;
        let UnfoldingDims { dim_u, dim_cu } = self.unfolding_dims(a)?;
        let (dim_i, dim_j) = self.ideal_dims(a)?;
        if dim_cu > dim_u {
            return Err(Error::Containment(format!("dim C_U({a}) > dim U({a})")));
        }
        Ok(GradedRow {
            a,
            dim_u,
            dim_cu,
            ubar_l,
            ubar_quot: dim_u - dim_cu,
            ubar_ij: dim_i - dim_j,
            dim_i,
            dim_j,
        })
    }

    /// `dim 𝕌̄(a)` by all three routes; disagreement is a falsification.
    pub fn ubar_dims(&self, a: i64) -> Result<GradedRow> {
        let row = self.graded_row(a)?;
        row.ensure_agrees()?;
        Ok(row)
    }

    /// Rows `a = 1..=a_max`, computed in parallel and returned in order.
    pub fn hilbert_scan(&self, a_max: i64) -> Result<GradedReport> {
        if a_max < 1 {
            return Err(Error::usage("a_max must be at least 1"));
        }
        let rows = (1..=a_max)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|a| {
                let row = self.graded_row(a);
                log::info!("degree {a} done");
                row
            })
            .collect::<Result<Vec<_>>>()?;
        let values: Vec<(i64, usize)> = rows.iter().map(|r| (r.a, r.ubar_l)).collect();
        Ok(GradedReport {
            plateau: detect_plateau(&values),
            rows,
        })
    }

    /// `K(ω)`: all `F ∈ S(e)` with `F dω = -ω∧dF`.
    pub fn integrating_factors(&self) -> Result<Vec<Poly>> {
        let fol = self.foliation();
        let e = self.e();
        let funcs = self.basis(0, e);
        let target = self.basis(2, 2 * e);
        let columns = funcs
            .monomials()
            .iter()
            .map(|m| {
                let dm =
                    Form::function(Poly::term(Scalar::ONE, m.clone())).exterior_derivative()?;
                let img = fol
                    .domega()
                    .mul_monomial(m)
                    .checked_add(&fol.omega().wedge(&dm)?)?;
                target.coordinates(&img)
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel = ExactMatrix::from_columns(target.dim(), columns)?.kernel();
        Ok(kernel.basis().iter().map(|v| funcs.poly_from(v)).collect())
    }

    fn omega_coordinates(&self) -> Result<SparseVec> {
        self.basis(1, self.e())
            .coordinates(self.foliation().omega())
    }

    /// Forms `η ∈ Ω¹(e)` with `ω△η = 0` and `i_R η = 0`; contains `ω`.
    pub fn deformations(&self) -> Result<Deformations> {
        let e = self.e();
        let forms = self.basis(1, e);
        let funcs = self.basis(0, e);
        let triangle = self.matrix(MapKind::Triangle, 1, e)?;
        let radial = Form::radial(self.nvars());
        let columns = (0..forms.dim())
            .map(|k| {
                let ir = contract(&radial, &forms.element(k))?
                    .as_function()
                    .expect("function");
                Ok(triangle
                    .column(k)
                    .concat(triangle.rows(), &funcs.poly_coordinates(&ir)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel = ExactMatrix::from_columns(triangle.rows() + funcs.dim(), columns)?.kernel();
        if !kernel.contains(&self.omega_coordinates()?) {
            return Err(Error::falsification(
                "omega is not in the kernel of omega triangle",
            ));
        }
        Ok(Deformations {
            dim: kernel.dim() - 1,
            kernel: Arc::new(kernel),
        })
    }

    /// `η_{g,i} = Σ_{j≠i} λ_j g F_{ji} df_j + λ_i F_i dg`: the first-order
    /// change of `ω` when `f_i` moves in the direction `g`.
    pub fn factor_perturbation(&self, i: usize, g: &Poly) -> Result<Form> {
        let fol = self.foliation();
        let (fs, ls) = match (fol.factors(), fol.lambdas()) {
            (Some(f), Some(l)) => (f, l),
            _ => {
                return Err(Error::usage(
                    "perturbations need a rational or logarithmic foliation",
                ))
            }
        };
        let mut out = Form::function(g.clone())
            .exterior_derivative()?
            .mul_poly(&fol.big_f(i).expect("factors"))
            .scale(&ls[i]);
        for (j, f) in fs.iter().enumerate() {
            if j == i {
                continue;
            }
            let t = Form::function(f.clone())
                .exterior_derivative()?
                .mul_poly(&(g * &fol.big_f2(j, i).expect("factors")))
                .scale(&ls[j]);
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    pub fn perturbation_spans(&self) -> Result<PerturbationSpans> {
        let fol = self.foliation();
        let degrees = fol.factor_degrees().ok_or_else(|| {
            Error::usage("perturbation spans need a rational or logarithmic foliation")
        })?;
        let e = self.e();
        let forms = self.basis(1, e);
        let triangle = self.matrix(MapKind::Triangle, 1, e)?;
        let omega = self.omega_coordinates()?;
        let mut f_gens = Vec::new();
        for (i, d) in degrees.iter().enumerate() {
            for m in monomial_basis(self.nvars(), *d) {
                let g = Poly::term(Scalar::ONE, m);
                f_gens.push(forms.coordinates(&self.factor_perturbation(i, &g)?)?);
            }
        }
        let s = degrees.len();
        let mut l_gens = Vec::new();
        for k in 0..s - 1 {
            let mut mu = vec![Scalar::ZERO; s];
            mu[k] = Scalar::from_int(degrees[s - 1]);
            mu[s - 1] = Scalar::from_int(-degrees[k]);
            let eta = fol.with_residues(&mu).expect("factors");
            l_gens.push(forms.coordinates(&eta)?);
        }
        if f_gens
            .iter()
            .chain(&l_gens)
            .any(|v| !triangle.apply(v).is_zero())
        {
            return Err(Error::falsification(
                "a parameter perturbation is not a first-order deformation",
            ));
        }
        let span = |gens: &[SparseVec]| {
            Subspace::from_vectors(
                forms.dim(),
                std::iter::once(omega.clone()).chain(gens.iter().cloned()),
            )
        };
        let span_f = span(&f_gens);
        let span_l = span(&l_gens);
        let span_sum = span_f.sum(&span_l)?;
        let dim_d = self.deformations()?.dim;
        let (dim_f, dim_lambda, dim_sum) = (span_f.dim() - 1, span_l.dim() - 1, span_sum.dim() - 1);
        Ok(PerturbationSpans {
            dim_f,
            dim_lambda,
            dim_sum,
            dim_d,
            residual: dim_d.checked_sub(dim_sum).ok_or_else(|| {
                Error::falsification("perturbations span more than the deformations")
            })?,
            direct: dim_sum == dim_f + dim_lambda,
            span_f,
            span_sum,
        })
    }

    /// Dimensions and subspace comparisons for `0 → K(ω) → U(ω) → D(ω)`,
    /// without asserting the expected outcome.
    pub fn sequence_verdict(&self) -> Result<SequenceVerdict> {
        let fol = self.foliation();
        let e = self.e();
        let m = self.unfolding_matrix(e)?;
        let kernel = m.kernel();
        let offset = self.basis(0, e).dim();
        let forms = self.basis(1, e);
        let omega = self.omega_coordinates()?;
        let image = Subspace::from_vectors(
            forms.dim(),
            std::iter::once(omega).chain(
                kernel
                    .basis()
                    .iter()
                    .map(|v| v.slice(offset..offset + forms.dim())),
            ),
        );
        let factors = self.integrating_factors()?;
        let mut w = Subspace::from_vectors(m.cols(), self.w_vectors(e)?);
        let mut inclusion_ok = true;
        for f in &factors {
            let v = self.encode(&UnfoldingElement {
                h: f.clone(),
                eta: Form::zero(self.nvars(), 1),
                a: e,
            })?;
            inclusion_ok &= m.apply(&v).is_zero() && w.insert(&v);
        }
        let dim_u = kernel.dim() - 1;
        let deformations = self.deformations()?;
        let spans = if fol.factors().is_some() {
            Some(self.perturbation_spans()?)
        } else {
            None
        };
        let dim_image = image.dim() - 1;
        Ok(SequenceVerdict {
            rational: fol.is_rational() || fol.factors().is_some_and(|f| f.len() == 2),
            dim_k: factors.len(),
            dim_u,
            dim_d: deformations.dim,
            dim_image,
            image_in_deformations: deformations.kernel.contains_subspace(&image)?,
            image_equals_d: image.same_as(&deformations.kernel)?,
            image_equals_df: spans
                .as_ref()
                .map(|s| image.same_as(&s.span_f))
                .transpose()?,
            exact_at_u: dim_u == factors.len() + dim_image,
            inclusion_ok,
            spans,
        })
    }

    /// [`Engine::sequence_verdict`] with its expected outcome asserted.
    pub fn pi2_analysis(&self) -> Result<SequenceVerdict> {
        let v = self.sequence_verdict()?;
        v.ensure()?;
        Ok(v)
    }

    /// `(F_i, θ_i)` with
    /// `θ_i = (b_i/(eλ_i)) Σ_{j≠i} (λ_j - λ_i) F_{ji} df_j + dF_i`, each
    /// checked to lie in `𝕌(ω)(b_i)`, together with the check that
    /// `π₂(g·(F_i, θ_i)) = (1/λ_i) η_{g,i}` for every monomial `g ∈ S(d_i)`.
    pub fn theta_generators(&self) -> Result<Vec<ThetaGenerator>> {
        let fol = self.foliation();
        let (fs, ls) = match (fol.factors(), fol.lambdas()) {
            (Some(f), Some(l)) => (f, l),
            _ => {
                return Err(Error::usage(
                    "theta generators need a rational or logarithmic foliation",
                ))
            }
        };
        let e = self.e();
        let degrees = fol.factor_degrees().expect("factors");
        let mut out = Vec::new();
        for i in 0..fs.len() {
            let li_inv = ls[i]
                .inv()
                .ok_or_else(|| Error::usage(format!("lambda_{} is zero", i + 1)))?;
            let b = e - degrees[i];
            let big_fi = fol.big_f(i).expect("factors");
            let mut sum = Form::zero(self.nvars(), 1);
            for (j, f) in fs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let t = Form::function(f.clone())
                    .exterior_derivative()?
                    .mul_poly(&fol.big_f2(j, i).expect("factors"))
                    .scale(&(&ls[j] - &ls[i]));
                sum = sum.checked_add(&t)?;
            }
            let coef = &Scalar::ratio(b, e) * &li_inv;
            let theta = sum
                .scale(&coef)
                .checked_add(&Form::function(big_fi.clone()).exterior_derivative()?)?;
            let element = UnfoldingElement {
                h: big_fi,
                eta: theta,
                a: b,
            };
            element.check(fol)?;
            let mut checked = 0;
            for m in monomial_basis(self.nvars(), degrees[i]) {
                let g = Poly::term(Scalar::ONE, m);
                let moved = self.module_action(&g, &element)?;
                let expected = self.factor_perturbation(i, &g)?.scale(&li_inv);
                if moved.eta != expected {
                    return Err(Error::falsification(format!(
                        "pi2(g.(F_{0}, theta_{0})) differs from the f_{0} -> g perturbation for g = {g}",
                        i + 1
                    )));
                }
                checked += 1;
            }
            out.push(ThetaGenerator {
                i,
                element,
                checked,
            });
        }
        Ok(out)
    }

    /// `f·u`, checked against the slice equation in degree `a + b`.
    pub fn module_action(&self, f: &Poly, u: &UnfoldingElement) -> Result<UnfoldingElement> {
        let out = act(f, u)?;
        out.check(self.foliation())?;
        Ok(out)
    }

    /// Regular iff `H¹(C•(ω, a)) = 0` for all `1 <= a < e`; each degree is
    /// cross-checked against `dim I(a) - dim J(a)`.
    pub fn regularity(&self) -> Result<RegularityVerdict> {
        let e = self.e();
        let mut rows = Vec::new();
        let mut witness = None;
        for a in 1..e {
            let h1_c = self.homology_dims(ComplexKind::C, a, 1)?.homology;
            let (dim_i, dim_j) = self.ideal_dims(a)?;
            if h1_c != dim_i - dim_j {
                return Err(Error::falsification(format!(
                    "at a = {a}: H1(C) = {h1_c} but dim I - dim J = {}",
                    dim_i - dim_j
                )));
            }
            if h1_c > 0 && witness.is_none() {
                let cycles = self.kernel(MapKind::Triangle, 1, a)?;
                let boundaries = self.image(MapKind::Triangle, -1, a - e)?;
                let class = cycles
                    .basis()
                    .iter()
                    .find(|v| !boundaries.contains(v))
                    .expect("nonzero homology has a representative");
                witness = Some((a, self.basis(1, a).form_from(class)));
            }
            rows.push(RegularityRow {
                a,
                h1_c,
                dim_i,
                dim_j,
            });
        }
        Ok(RegularityVerdict {
            regular: witness.is_none(),
            rows,
            witness,
        })
    }
}
