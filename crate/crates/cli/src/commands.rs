//! The subcommands, each turning an [`Engine`] into a [`Report`].

use clap::ValueEnum;
use foliation_core::complex::genericity_report;
use foliation_core::unfolding::{Plateau, PLATEAU_WINDOW};
use foliation_core::{Engine, Error, FoliationSpec, Result};

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build the foliation and print its basic data.
    Check,
    /// Hilbert function of the unfolding quotient by all three routes.
    Scan,
    /// The plateau value `N`, the number of isolated singular points.
    IsolatedPoints,
    /// Regularity via the triangle complex below the degree.
    Regularity,
    /// Integrating factors, unfoldings and deformations in degree `e`.
    Sequences,
    /// Koszul homology of the multiplication-by-omega complex.
    Koszul,
}

impl std::str::FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Command as ValueEnum>::from_str(s, true).map_err(|_| format!("unknown command '{s}'"))
    }
}

/// Default scan bound: the degree plus `n + 1`.
pub fn default_a_max(engine: &Engine) -> i64 {
    engine.e() + engine.foliation().n() as i64 + 1
}

pub fn run(command: Command, engine: &Engine, a_max: i64) -> Result<Report> {
    match command {
        Command::Check => check(engine),
        Command::Scan => scan(engine, a_max),
        Command::IsolatedPoints => isolated_points(engine, a_max),
        Command::Regularity => regularity(engine),
        Command::Sequences => sequences(engine),
        Command::Koszul => koszul(engine, a_max),
    }
}

fn kind_name(engine: &Engine) -> &'static str {
    match engine.foliation().spec() {
        FoliationSpec::Rational(_) => "rational",
        FoliationSpec::Logarithmic(_) => "logarithmic",
        FoliationSpec::Raw(_) => "raw-form",
    }
}

fn require_catalog(engine: &Engine, what: &str) -> Result<()> {
    if engine.foliation().factors().is_none() {
        return Err(Error::usage(format!(
            "{what} needs a rational or logarithmic spec"
        )));
    }
    Ok(())
}

fn check(engine: &Engine) -> Result<Report> {
    let fol = engine.foliation();
    let mut r = Report::new();
    r.verdict("kind", kind_name(engine));
    r.verdict("nvars", fol.nvars());
    r.verdict("e", fol.e());
    r.verdict("foliation degree", fol.e() - 2);
    if let Some(d) = fol.factor_degrees() {
        r.verdict("factor degrees", join(&d));
    }
    r.verdict("integrable", true);
    r.verdict("omega", fol.omega());
    for w in fol.warnings() {
        r.note(format!("warning: {w}"));
    }
    Ok(r)
}

fn scan_report(engine: &Engine, a_max: i64) -> Result<foliation_core::unfolding::GradedReport> {
    let report = engine.hilbert_scan(a_max)?;
    if let Some(row) = report.disagreements().first() {
        return Err(Error::falsification(format!(
            "routes disagree at a = {}: H1(L) = {}, U/C_U = {} - {}, I/J = {} - {}",
            row.a, row.ubar_l, row.dim_u, row.dim_cu, row.dim_i, row.dim_j
        )));
    }
    Ok(report)
}

fn plateau_verdicts(r: &mut Report, plateau: Plateau, a_max: i64) {
    match plateau {
        Plateau::Declared { value, onset } => {
            r.verdict("N", value);
            r.verdict("plateau_onset", onset);
        }
        Plateau::Inconclusive => {
            r.verdict("N", "inconclusive");
            r.note(format!(
                "no run of {PLATEAU_WINDOW} equal values ends at a_max = {a_max}; raise --a-max"
            ));
        }
    }
}

fn scan(engine: &Engine, a_max: i64) -> Result<Report> {
    let report = scan_report(engine, a_max)?;
    let mut r = Report::new();
    r.columns(&["a", "dimU", "dimCU", "ubar_L", "ubar_quot", "ubar_IJ"]);
    for row in &report.rows {
        r.row([
            row.a,
            row.dim_u as i64,
            row.dim_cu as i64,
            row.ubar_l as i64,
            row.ubar_quot as i64,
            row.ubar_ij as i64,
        ]);
    }
    plateau_verdicts(&mut r, report.plateau, a_max);
    Ok(r)
}

fn isolated_points(engine: &Engine, a_max: i64) -> Result<Report> {
    let report = scan_report(engine, a_max)?;
    let mut r = Report::new();
    r.verdict("ubar", join(&report.ubar()));
    plateau_verdicts(&mut r, report.plateau, a_max);
    Ok(r)
}

fn regularity(engine: &Engine) -> Result<Report> {
    require_catalog(engine, "regularity")?;
    let v = engine.regularity()?;
    let mut r = Report::new();
    r.columns(&["a", "H1_C", "dimI", "dimJ"]);
    for row in &v.rows {
        r.row([row.a, row.h1_c as i64, row.dim_i as i64, row.dim_j as i64]);
    }
    r.verdict("regular", v.regular);
    if let Some((a, class)) = &v.witness {
        r.verdict("witness degree", a);
        r.verdict("witness class", class);
    }
    Ok(r)
}

fn sequences(engine: &Engine) -> Result<Report> {
    require_catalog(engine, "sequences")?;
    let v = engine.pi2_analysis()?;
    let thetas = engine.theta_generators()?;
    let mut r = Report::new();
    r.verdict("dim K", v.dim_k);
    r.verdict("dim U(e)", v.dim_u);
    r.verdict("dim D", v.dim_d);
    r.verdict("dim im pi2", v.dim_image);
    r.verdict("pi2 epimorphism", v.epimorphism());
    if let Some(s) = &v.spans {
        r.verdict("dim D(f)", s.dim_f);
        r.verdict("dim D(lambda)", s.dim_lambda);
        r.verdict("direct sum", s.direct);
        r.verdict("residual", s.residual);
    }
    if let Some(eq) = v.image_equals_df {
        r.verdict("im pi2 = D(f)", eq);
    }
    r.verdict("exact at U", v.exact_at_u);
    r.verdict(
        "theta generators",
        format!(
            "{} verified ({} actions)",
            thetas.len(),
            thetas.iter().map(|t| t.checked).sum::<usize>()
        ),
    );
    Ok(r)
}

fn koszul(engine: &Engine, a_max: i64) -> Result<Report> {
    let g = genericity_report(engine, a_max)?;
    let mut r = Report::new();
    r.columns(&["a", "H0_K", "H1_K"]);
    for &(a, h0, h1) in &g.omega_koszul {
        r.row([a, h0 as i64, h1 as i64]);
    }
    r.verdict("H1 vanishes", g.consistent_with_codim2());
    let domega = engine.foliation().domega().clone();
    r.verdict(
        "domega class nonzero",
        engine.koszul_class_is_nonzero(&domega)?,
    );
    r.verdict("domega coefficients regular", g.consistent_with_codim3());
    Ok(r)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
