//! Polynomial expressions and foliation spec files.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'i' | var | '(' expr ')'
//! rational := uint ('/' uint)?
//! var      := 'x' uint
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::{FoliationSpec, LogarithmicSpec, RationalSpec};
use crate::form::Form;
use crate::poly::{Homogeneity, Poly};
use crate::scalar::Scalar;
use malachite_base::num::basic::traits::Zero;
use malachite_q::Rational;

/// Variable naming used by the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarNaming {
    pub nvars: usize,
    /// Read `x1..x{nvars}` as `x0..x{nvars-1}`.
    pub one_based: bool,
}

impl VarNaming {
    pub fn zero_based(nvars: usize) -> Self {
        VarNaming {
            nvars,
            one_based: false,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    naming: VarNaming,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn uint(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error(start, "expected an unsigned integer"));
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.naming.nvars, c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    return Err(self.error(
                        self.pos,
                        "implicit multiplication is not allowed; write '*' explicitly",
                    ));
                }
                Some('/') => {
                    return Err(self.error(
                        self.pos,
                        "'/' is only allowed inside a rational literal such as 2/3",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let at = self.pos;
            let (digits, _) = self
                .uint()
                .map_err(|_| self.error(at, "exponent must be an unsigned integer"))?;
            let k: u32 = digits
                .parse()
                .map_err(|_| self.error(at, "exponent is too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly> {
        self.skip_ws();
        let at = self.pos;
        match self.peek_raw() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error(self.pos, "expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some('i') => {
                self.bump();
                if matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(self.error(at, "unknown identifier"));
                }
                Ok(self.constant(Scalar::I))
            }
            Some('x') => {
                self.pos += 1;
                if !matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                    return Err(self.error(self.pos, "expected a variable index after 'x'"));
                }
                let (digits, _) = self.uint()?;
                let written: usize = digits
                    .parse()
                    .map_err(|_| self.error(at, "variable index is too large"))?;
                let index = if self.naming.one_based {
                    if written == 0 {
                        return Err(Error::VariableRange {
                            index: 0,
                            nvars: self.naming.nvars,
                        });
                    }
                    written - 1
                } else {
                    written
                };
                if index >= self.naming.nvars {
                    return Err(Error::VariableRange {
                        index: written,
                        nvars: self.naming.nvars,
                    });
                }
                Ok(Poly::var(self.naming.nvars, index))
            }
            Some(c) if c.is_ascii_digit() => {
                let (num, _) = self.uint()?;
                let mut value: Rational = num.parse().expect("digits");
                if self.peek_raw() == Some('/') {
                    self.pos += 1;
                    let den_at = self.pos;
                    if !matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error(den_at, "expected a denominator"));
                    }
                    let (den, _) = self.uint()?;
                    let den: Rational = den.parse().expect("digits");
                    if den == Rational::ZERO {
                        return Err(self.error(den_at, "zero denominator"));
                    }
                    value /= den;
                }
                Ok(self.constant(Scalar::from(value)))
            }
            Some(c) => Err(self.error(at, format!("unexpected character '{c}'"))),
            None => Err(self.error(at, "unexpected end of input")),
        }
    }

    fn finish(mut self, p: Poly) -> Result<Poly> {
        if let Some(c) = self.peek() {
            return Err(self.error(self.pos, format!("unexpected character '{c}'")));
        }
        Ok(p)
    }
}

pub fn parse_polynomial_with(text: &str, naming: VarNaming) -> Result<Poly> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        naming,
    };
    let p = parser.expr()?;
    parser.finish(p)
}

/// Parses with canonical names `x0..x{nvars-1}`.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Poly> {
    parse_polynomial_with(text, VarNaming::zero_based(nvars))
}

/// A constant expression, such as `-1/3-2/3*i` or `(2/3)*(1+i)`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let p = parse_polynomial(text, 0)?;
    let c = p.terms().next().map_or(Scalar::ZERO, |(_, c)| c.clone());
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecKind {
    Rational,
    Logarithmic,
    RawForm,
}

/// The `[foliation]` table of a spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSection {
    pub nvars: usize,
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub one_based_vars: bool,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub big_f: Option<String>,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub big_g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    /// Coefficients `A_0..A_n` of a raw 1-form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
}

/// The optional `[run]` table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

/// A parsed spec document, before semantic validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub foliation: FoliationSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run: Option<RunSection>,
}

fn toml_error(text: &str, err: &toml::de::Error) -> Error {
    let at = err.span().map_or(0, |s| s.start);
    let before = &text[..at.min(text.len())];
    Error::Syntax {
        line: before.matches('\n').count() + 1,
        column: before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1,
        message: err.message().to_string(),
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        toml::from_str(text).map_err(|e| toml_error(text, &e))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("spec file serializes")
    }

    pub fn naming(&self) -> VarNaming {
        VarNaming {
            nvars: self.foliation.nvars,
            one_based: self.foliation.one_based_vars,
        }
    }

    fn poly(&self, key: &str, text: &str) -> Result<Poly> {
        parse_polynomial_with(text, self.naming()).map_err(|e| match e {
            Error::Syntax {
                line,
                column,
                message,
            } => Error::Syntax {
                line,
                column,
                message: format!("in key '{key}': {message}"),
            },
            other => other,
        })
    }

    fn homogeneous(&self, key: &str, text: &str) -> Result<(Poly, u32)> {
        let p = self.poly(key, text)?;
        match p.homogeneous_degree() {
            Homogeneity::Degree(d) => Ok((p, d)),
            Homogeneity::AnyDegree => Err(Error::spec(format!("'{key}' is zero"))),
            Homogeneity::NotHomogeneous => {
                Err(Error::spec(format!("'{key}' is not homogeneous: {p}")))
            }
        }
    }

    fn require<'s, T>(&self, value: &'s Option<T>, key: &str) -> Result<&'s T> {
        value.as_ref().ok_or_else(|| {
            Error::spec(format!(
                "{:?} foliation needs the key '{key}'",
                self.foliation.kind
            ))
        })
    }

    fn forbid<T>(&self, value: &Option<T>, key: &str) -> Result<()> {
        if value.is_some() {
            return Err(Error::spec(format!(
                "key '{key}' does not apply to a {:?} foliation",
                self.foliation.kind
            )));
        }
        Ok(())
    }

    /// Validated foliation data. The `Σ λ_i d_i = 0` constraint is left to
    /// the catalog builder.
    pub fn foliation_spec(&self) -> Result<FoliationSpec> {
        let sec = &self.foliation;
        if sec.nvars < 2 {
            return Err(Error::spec("nvars must be at least 2"));
        }
        match sec.kind {
            SpecKind::Rational => {
                self.forbid(&sec.f, "f")?;
                self.forbid(&sec.lambda, "lambda")?;
                self.forbid(&sec.coeffs, "coeffs")?;
                let (f, df) = self.homogeneous("F", self.require(&sec.big_f, "F")?)?;
                let (g, dg) = self.homogeneous("G", self.require(&sec.big_g, "G")?)?;
                let r = *self.require(&sec.r, "r")?;
                let s = *self.require(&sec.s, "s")?;
                if df != r || dg != s {
                    return Err(Error::spec(format!(
                        "degrees do not match: deg F = {df}, r = {r}, deg G = {dg}, s = {s}"
                    )));
                }
                Ok(FoliationSpec::Rational(RationalSpec { f, g, r, s }))
            }
            SpecKind::Logarithmic => {
                for (v, k) in [(&sec.big_f, "F"), (&sec.big_g, "G")] {
                    self.forbid(v, k)?;
                }
                self.forbid(&sec.r, "r")?;
                self.forbid(&sec.s, "s")?;
                self.forbid(&sec.coeffs, "coeffs")?;
                let fs = self.require(&sec.f, "f")?;
                let ls = self.require(&sec.lambda, "lambda")?;
                if fs.len() != ls.len() {
                    return Err(Error::spec(format!(
                        "{} factors but {} residues",
                        fs.len(),
                        ls.len()
                    )));
                }
                let factors = fs
                    .iter()
                    .enumerate()
                    .map(|(k, t)| self.homogeneous(&format!("f[{k}]"), t).map(|(p, _)| p))
                    .collect::<Result<Vec<_>>>()?;
                let lambdas = ls
                    .iter()
                    .map(|t| parse_scalar(t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FoliationSpec::Logarithmic(LogarithmicSpec {
                    factors,
                    lambdas,
                }))
            }
            SpecKind::RawForm => {
                for (v, k) in [(&sec.big_f, "F"), (&sec.big_g, "G")] {
                    self.forbid(v, k)?;
                }
                self.forbid(&sec.f, "f")?;
                self.forbid(&sec.lambda, "lambda")?;
                let cs = self.require(&sec.coeffs, "coeffs")?;
                if cs.len() != sec.nvars {
                    return Err(Error::spec(format!(
                        "{} coefficients for {} variables",
                        cs.len(),
                        sec.nvars
                    )));
                }
                let coeffs = cs
                    .iter()
                    .enumerate()
                    .map(|(k, t)| self.poly(&format!("coeffs[{k}]"), t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FoliationSpec::Raw(Form::one_form(&coeffs)))
            }
        }
    }
}

/// Parses a spec document into its foliation data and run block.
pub fn parse_spec(text: &str) -> Result<(FoliationSpec, RunSection)> {
    let file = SpecFile::parse(text)?;
    let spec = file.foliation_spec()?;
    Ok((spec, file.run.unwrap_or_default()))
}
