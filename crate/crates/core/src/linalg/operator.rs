use crate::error::{Error, Result};
use crate::form::{contract, triangle, Form, FormDegree};
use crate::scalar::Scalar;

use super::basis::SliceBasis;
use super::matrix::ExactMatrix;

/// Symbolic description of a homogeneous linear map between form slices.
#[derive(Clone, Debug)]
pub enum Operator {
    Identity,
    /// `τ ↦ α ∧ τ`.
    WedgeLeft(Form),
    /// `τ ↦ ω △ τ`.
    Triangle(Form),
    /// `X ↦ i_X α` on vector fields.
    ContractInto(Form),
    /// `τ ↦ i_X τ` for a fixed field `X`.
    ContractWith(Form),
    ExteriorDerivative,
    Scaled(Scalar, Box<Operator>),
    Sum(Vec<Operator>),
    /// `outer ∘ inner`.
    Compose(Box<Operator>, Box<Operator>),
}

fn form_shift(f: &Form) -> Option<i64> {
    match f.homogeneous_degree() {
        FormDegree::Degree(p) => Some(p),
        _ => None,
    }
}

impl Operator {
    pub fn apply(&self, tau: &Form) -> Result<Form> {
        match self {
            Operator::Identity => Ok(tau.clone()),
            Operator::WedgeLeft(alpha) => alpha.wedge(tau),
            Operator::Triangle(omega) => triangle(omega, tau),
            Operator::ContractInto(alpha) => contract(tau, alpha),
            Operator::ContractWith(x) => contract(x, tau),
            Operator::ExteriorDerivative => tau.exterior_derivative(),
            Operator::Scaled(c, op) => Ok(op.apply(tau)?.scale(c)),
            Operator::Sum(ops) => {
                let mut parts = ops.iter().map(|op| op.apply(tau));
                let first = parts
                    .next()
                    .ok_or_else(|| Error::usage("empty operator sum"))??;
                parts.try_fold(first, |acc, p| acc.checked_add(&p?))
            }
            Operator::Compose(outer, inner) => outer.apply(&inner.apply(tau)?),
        }
    }

    /// Change `(Δr, Δp)` in form degree and homogeneity. `None` for the
    /// homogeneity shift means "any" (a zero operand).
    pub fn shift(&self) -> Result<(i32, Option<i64>)> {
        Ok(match self {
            Operator::Identity => (0, Some(0)),
            Operator::WedgeLeft(alpha) => (alpha.r(), form_shift(alpha)),
            Operator::Triangle(omega) => (2, form_shift(omega)),
            Operator::ContractInto(alpha) => (alpha.r(), form_shift(alpha)),
            Operator::ContractWith(x) => (-1, form_shift(x)),
            Operator::ExteriorDerivative => (1, Some(0)),
            Operator::Scaled(_, op) => op.shift()?,
            Operator::Sum(ops) => {
                let mut out: Option<(i32, Option<i64>)> = None;
                for op in ops {
                    let s = op.shift()?;
                    out = match out {
                        None => Some(s),
                        Some((dr, dp)) => {
                            if dr != s.0 || (dp.is_some() && s.1.is_some() && dp != s.1) {
                                return Err(Error::usage("summands of different degrees"));
                            }
                            Some((dr, dp.or(s.1)))
                        }
                    };
                }
                out.ok_or_else(|| Error::usage("empty operator sum"))?
            }
            Operator::Compose(outer, inner) => {
                let (dr1, dp1) = inner.shift()?;
                let (dr2, dp2) = outer.shift()?;
                let dp = match (dp1, dp2) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
                (dr1 + dr2, dp)
            }
        })
    }

    /// Matrix of the operator: column `j` holds the target coordinates of the
    /// image of source basis element `j`.
    pub fn materialize(&self, source: &SliceBasis, target: &SliceBasis) -> Result<ExactMatrix> {
        let (dr, dp) = self.shift()?;
        let degree_ok = target.r() == source.r() + dr
            && dp.is_none_or(|dp| target.p() == source.p() + dp)
            && source.nvars() == target.nvars();
        if !degree_ok {
            return Err(Error::usage(format!(
                "operator shifts degrees by ({dr}, {dp:?}) and cannot map {source} to {target}"
            )));
        }
        let columns = (0..source.dim())
            .map(|j| target.coordinates(&self.apply(&source.element(j))?))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_columns(target.dim(), columns)
    }
}
