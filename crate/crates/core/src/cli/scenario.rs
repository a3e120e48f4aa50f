//! Scenario files.
//!
//! A scenario is a TOML document. Top-level keys:
//!
//! | key | modes | meaning |
//! |-----|-------|---------|
//! | `mode` | all | `symmetry`, `constraint`, `dirac`, `generalized`, or `quantum` |
//! | `variables` | classical | coordinate names of `M` |
//! | `degree` | all | check degree `D` (default 2) |
//! | `work_degree` | classical | lift degree (default `D + 2`) |
//! | `jacobi_degree` | classical | Jacobiator sweep degree (default 3) |
//! | `bivector` | classical | list of `{ i, j, coeff }`; unlisted components are zero |
//! | `submanifold` | classical | coordinates vanishing on `N` |
//! | `b_fields` | classical | fields spanning `B`, each `{ var = "poly", ... }` |
//! | `symmetries` | symmetry | fields generating the symmetry |
//! | `constraints` | constraint, dirac | constraint functions (default: the `submanifold` coordinates) |
//! | `two_stage` | generalized | also run constraints-then-symmetries |
//! | `certificate` | generalized, quantum | `{ b_minus, b_plus }` |
//! | `dimension`, `hbar` | quantum | matrix size `d` and `ħ` |
//! | `b`, `s` | quantum | spanning matrices, rows of `"re + im i"` strings |
//!
//! Classical certificates give `b_minus` (and optionally `b_plus`) as lists
//! of fields whose invariants form the space; quantum certificates give
//! spanning matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::classical_reduce::{Certificate, ReductionScenario};
use crate::exactalg::{parse_gaussian, parse_polynomial, parse_rational, CoordinateSet, Polynomial, Rational};
use crate::liejordan::{HermitianElement, LJAlgebra, QuantumCertificate};
use crate::poisson::{PoissonBivector, PolyVectorField};
use crate::subspaces::{ExplicitSpan, StructuredSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SchemaError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{}", SchemaList(.0))]
    Schema(Vec<SchemaError>),
}

struct SchemaList<'a>(&'a [SchemaError]);

impl fmt::Display for SchemaList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symmetry,
    Constraint,
    Dirac,
    Generalized,
    Quantum,
}

impl Mode {
    fn parse(s: &str) -> Option<Mode> {
        Some(match s {
            "symmetry" => Mode::Symmetry,
            "constraint" => Mode::Constraint,
            "dirac" => Mode::Dirac,
            "generalized" => Mode::Generalized,
            "quantum" => Mode::Quantum,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Symmetry => "symmetry",
            Mode::Constraint => "constraint",
            Mode::Dirac => "dirac",
            Mode::Generalized => "generalized",
            Mode::Quantum => "quantum",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Header {
    /// File stem of the scenario.
    pub name: String,
    /// Coordinate names (classical modes).
    pub variables: Vec<String>,
    /// Matrix size (quantum mode).
    pub dimension: Option<usize>,
    pub hbar: Option<Rational>,
    pub degree: u32,
    pub work_degree: u32,
    pub jacobi_degree: u32,
}

#[derive(Debug, Clone)]
pub struct ClassicalBody {
    pub scenario: ReductionScenario,
    pub two_stage: bool,
}

#[derive(Debug, Clone)]
pub struct QuantumBody {
    pub algebra: LJAlgebra,
    pub b: ExplicitSpan,
    pub s: ExplicitSpan,
    pub certificate: Option<QuantumCertificate>,
}

#[derive(Debug, Clone)]
pub enum ScenarioBody {
    Classical(ClassicalBody),
    Quantum(QuantumBody),
}

#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub header: Header,
    pub mode: Mode,
    pub body: ScenarioBody,
}

impl ScenarioFile {
    /// Overrides the check degree, keeping the gap to the work degree.
    pub fn with_degree(mut self, degree: u32) -> Self {
        let slack = self.header.work_degree - self.header.degree;
        self.header.degree = degree;
        self.header.work_degree = degree + slack;
        if let ScenarioBody::Classical(body) = &mut self.body {
            body.scenario.check_degree = degree;
            body.scenario.work_degree = degree + slack;
        }
        self
    }

    pub fn classical(&self) -> Option<&ClassicalBody> {
        match &self.body {
            ScenarioBody::Classical(b) => Some(b),
            ScenarioBody::Quantum(_) => None,
        }
    }

    pub fn quantum(&self) -> Option<&QuantumBody> {
        match &self.body {
            ScenarioBody::Quantum(b) => Some(b),
            ScenarioBody::Classical(_) => None,
        }
    }
}

type Field = Spanned<BTreeMap<String, Spanned<String>>>;
type Matrix = Spanned<Vec<Vec<Spanned<String>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    i: Spanned<String>,
    j: Spanned<String>,
    coeff: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassicalCertificate {
    b_minus: Vec<Field>,
    b_plus: Option<Vec<Field>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantumCertificate {
    b_minus: Vec<Matrix>,
    b_plus: Vec<Matrix>,
}

#[derive(Deserialize)]
struct ModeOnly {
    mode: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario<C> {
    mode: Spanned<String>,
    variables: Option<Vec<Spanned<String>>>,
    degree: Option<Spanned<u32>>,
    work_degree: Option<Spanned<u32>>,
    jacobi_degree: Option<u32>,
    bivector: Option<Vec<RawEntry>>,
    submanifold: Option<Vec<Spanned<String>>>,
    b_fields: Option<Vec<Field>>,
    symmetries: Option<Vec<Field>>,
    constraints: Option<Vec<Spanned<String>>>,
    two_stage: Option<bool>,
    certificate: Option<Spanned<C>>,
    dimension: Option<Spanned<usize>>,
    hbar: Option<Spanned<String>>,
    b: Option<Vec<Matrix>>,
    s: Option<Vec<Matrix>>,
}

struct Ctx<'a> {
    src: &'a str,
    errors: Vec<SchemaError>,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.src[..offset.min(self.src.len())].matches('\n').count() + 1
    }

    fn error(&mut self, span: Range<usize>, message: impl Into<String>) {
        let line = self.line(span.start);
        self.errors.push(SchemaError { line, message: message.into() });
    }

    fn polynomial(&mut self, src: &Spanned<String>, names: &[String]) -> Option<Polynomial> {
        match parse_polynomial(src.get_ref(), names) {
            Ok(p) => Some(p),
            Err(e) => {
                self.error(src.span(), format!("polynomial `{}`: {}", src.get_ref(), e));
                None
            }
        }
    }

    fn variable(&mut self, name: &Spanned<String>, names: &[String]) -> Option<usize> {
        let found = names.iter().position(|v| v == name.get_ref());
        if found.is_none() {
            self.error(name.span(), format!("undeclared variable `{}`", name.get_ref()));
        }
        found
    }

    fn field(&mut self, raw: &Field, names: &[String]) -> Option<PolyVectorField> {
        let n = names.len();
        let mut comps = vec![Polynomial::zero(n); n];
        let mut ok = true;
        for (var, coeff) in raw.get_ref() {
            match names.iter().position(|v| v == var) {
                Some(k) => match self.polynomial(coeff, names) {
                    Some(p) => comps[k] = p,
                    None => ok = false,
                },
                None => {
                    self.error(raw.span(), format!("undeclared variable `{}`", var));
                    ok = false;
                }
            }
        }
        ok.then(|| PolyVectorField::new(comps))
    }

    fn fields(&mut self, raw: &[Field], names: &[String]) -> Option<Vec<PolyVectorField>> {
        let out: Vec<Option<PolyVectorField>> = raw.iter().map(|f| self.field(f, names)).collect();
        out.into_iter().collect()
    }

    fn matrix(&mut self, raw: &Matrix, d: usize) -> Option<HermitianElement> {
        let rows = raw.get_ref();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            self.error(raw.span(), format!("expected a {}x{} matrix", d, d));
            return None;
        }
        let mut entries = Vec::with_capacity(d * d);
        for cell in rows.iter().flatten() {
            match parse_gaussian(cell.get_ref()) {
                Ok(z) => entries.push(z),
                Err(e) => {
                    self.error(cell.span(), format!("matrix entry `{}`: {}", cell.get_ref(), e));
                    return None;
                }
            }
        }
        match HermitianElement::from_entries(d, entries) {
            Ok(h) => Some(h),
            Err(e) => {
                self.error(raw.span(), e.to_string());
                None
            }
        }
    }

    fn span(&mut self, raw: &[Matrix], d: usize, at: Range<usize>) -> Option<ExplicitSpan> {
        let elems: Vec<Option<HermitianElement>> = raw.iter().map(|m| self.matrix(m, d)).collect();
        let elems: Vec<HermitianElement> = elems.into_iter().collect::<Option<_>>()?;
        match HermitianElement::span(d, &elems) {
            Ok(s) => Some(s),
            Err(e) => {
                self.error(at, e.to_string());
                None
            }
        }
    }
}

/// Reads and validates a scenario file.
pub fn parse_scenario(path: &Path) -> Result<ScenarioFile, ScenarioError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let name = path.file_stem().map_or_else(|| "scenario".to_string(), |s| s.to_string_lossy().into_owned());
    parse_scenario_str(&src, &name)
}

/// Validates scenario text; `name` labels the resulting reports.
pub fn parse_scenario_str(src: &str, name: &str) -> Result<ScenarioFile, ScenarioError> {
    let mut ctx = Ctx { src, errors: Vec::new() };
    let schema = |ctx: &Ctx, e: toml::de::Error| {
        let line = e.span().map_or(1, |s| ctx.line(s.start));
        ScenarioError::Schema(vec![SchemaError { line, message: e.message().trim().to_string() }])
    };
    let head: ModeOnly = toml::from_str(src).map_err(|e| schema(&ctx, e))?;
    let Some(mode) = Mode::parse(head.mode.get_ref()) else {
        let line = ctx.line(head.mode.span().start);
        let message = format!("unknown mode `{}`", head.mode.get_ref());
        return Err(ScenarioError::Schema(vec![SchemaError { line, message }]));
    };
    let result = if mode == Mode::Quantum {
        let raw: RawScenario<RawQuantumCertificate> = toml::from_str(src).map_err(|e| schema(&ctx, e))?;
        let mut header = header(&mut ctx, &raw, name);
        quantum_body(&mut ctx, &raw, &mut header)
            .map(|b| ScenarioFile { header, mode, body: ScenarioBody::Quantum(b) })
    } else {
        let raw: RawScenario<RawClassicalCertificate> = toml::from_str(src).map_err(|e| schema(&ctx, e))?;
        let mut header = header(&mut ctx, &raw, name);
        classical_body(&mut ctx, &raw, &mut header, mode)
            .map(|b| ScenarioFile { header, mode, body: ScenarioBody::Classical(b) })
    };
    if ctx.errors.is_empty() {
        Ok(result.expect("no errors recorded"))
    } else {
        Err(ScenarioError::Schema(ctx.errors))
    }
}

fn header<C>(ctx: &mut Ctx, raw: &RawScenario<C>, name: &str) -> Header {
    let degree = raw.degree.as_ref().map_or(2, |d| *d.get_ref());
    if degree == 0 {
        ctx.error(raw.degree.as_ref().unwrap().span(), "degree must be at least 1");
    }
    let work_degree = raw.work_degree.as_ref().map_or(degree + 2, |d| *d.get_ref());
    if work_degree < degree {
        ctx.error(raw.work_degree.as_ref().unwrap().span(), "work_degree below degree");
    }
    Header {
        name: name.to_string(),
        variables: Vec::new(),
        dimension: None,
        hbar: None,
        degree,
        work_degree,
        jacobi_degree: raw.jacobi_degree.unwrap_or(3),
    }
}

fn require<'a, T>(ctx: &mut Ctx, value: &'a Option<T>, key: &str, mode: &Spanned<String>) -> Option<&'a T> {
    if value.is_none() {
        ctx.error(mode.span(), format!("mode `{}` requires `{}`", mode.get_ref(), key));
    }
    value.as_ref()
}

fn classical_body(ctx: &mut Ctx, raw: &RawScenario<RawClassicalCertificate>, header: &mut Header, mode: Mode) -> Option<ClassicalBody> {
    for (present, key) in [
        (raw.dimension.is_some(), "dimension"),
        (raw.hbar.is_some(), "hbar"),
        (raw.b.is_some(), "b"),
        (raw.s.is_some(), "s"),
    ] {
        if present {
            ctx.error(raw.mode.span(), format!("`{}` is only valid in quantum mode", key));
        }
    }
    let vars = require(ctx, &raw.variables, "variables", &raw.mode)?;
    let names: Vec<String> = vars.iter().map(|v| v.get_ref().clone()).collect();
    for (k, v) in vars.iter().enumerate() {
        if names[..k].contains(v.get_ref()) {
            ctx.error(v.span(), format!("duplicate variable `{}`", v.get_ref()));
        }
    }
    header.variables = names.clone();
    let n = names.len();

    let mut bivector = PoissonBivector::zero(n);
    for e in raw.bivector.iter().flatten() {
        let (i, j, c) = (ctx.variable(&e.i, &names), ctx.variable(&e.j, &names), ctx.polynomial(&e.coeff, &names));
        if let (Some(i), Some(j), Some(c)) = (i, j, c) {
            if let Err(err) = bivector.set(i, j, c) {
                ctx.error(e.i.span(), err.to_string());
            }
        }
    }

    let mut sc = ReductionScenario::new(names.clone(), bivector, header.degree);
    sc.work_degree = header.work_degree;
    let sub: Vec<usize> =
        raw.submanifold.iter().flatten().filter_map(|v| ctx.variable(v, &names)).collect();
    sc.submanifold = CoordinateSet::new(n, sub).expect("indices in range");
    sc.b_fields = ctx.fields(raw.b_fields.as_deref().unwrap_or_default(), &names)?;
    sc.e_fields = ctx.fields(raw.symmetries.as_deref().unwrap_or_default(), &names)?;
    if mode == Mode::Symmetry && sc.e_fields.is_empty() {
        ctx.error(raw.mode.span(), "mode `symmetry` requires `symmetries`");
    }
    if let Some(cs) = &raw.constraints {
        let parsed: Vec<Option<Polynomial>> = cs.iter().map(|c| ctx.polynomial(c, &names)).collect();
        sc.constraints = parsed.into_iter().collect::<Option<_>>()?;
    }
    if let Some(cert) = &raw.certificate {
        let c = cert.get_ref();
        let b_minus = StructuredSpace::invariant(n, ctx.fields(&c.b_minus, &names)?);
        let b_plus = match &c.b_plus {
            Some(f) => Some(StructuredSpace::invariant(n, ctx.fields(f, &names)?)),
            None => None,
        };
        sc.certificate = Some(Certificate { b_minus, b_plus });
    }
    Some(ClassicalBody { scenario: sc, two_stage: raw.two_stage.unwrap_or(false) })
}

fn quantum_body(ctx: &mut Ctx, raw: &RawScenario<RawQuantumCertificate>, header: &mut Header) -> Option<QuantumBody> {
    for (present, key) in [
        (raw.variables.is_some(), "variables"),
        (raw.bivector.is_some(), "bivector"),
        (raw.submanifold.is_some(), "submanifold"),
        (raw.b_fields.is_some(), "b_fields"),
        (raw.symmetries.is_some(), "symmetries"),
        (raw.constraints.is_some(), "constraints"),
    ] {
        if present {
            ctx.error(raw.mode.span(), format!("`{}` is not valid in quantum mode", key));
        }
    }
    let d = *require(ctx, &raw.dimension, "dimension", &raw.mode)?.get_ref();
    if d == 0 {
        ctx.error(raw.dimension.as_ref().unwrap().span(), "dimension must be at least 1");
        return None;
    }
    let hbar = match &raw.hbar {
        Some(h) => match parse_rational(h.get_ref()) {
            Ok(v) => v,
            Err(e) => {
                ctx.error(h.span(), format!("hbar `{}`: {}", h.get_ref(), e));
                return None;
            }
        },
        None => Rational::from_integer(1.into()),
    };
    header.dimension = Some(d);
    header.hbar = Some(hbar.clone());
    let algebra = match LJAlgebra::new(d, hbar) {
        Ok(a) => a,
        Err(e) => {
            ctx.error(raw.hbar.as_ref().map_or(raw.mode.span(), |h| h.span()), e.to_string());
            return None;
        }
    };
    let b_raw = require(ctx, &raw.b, "b", &raw.mode)?;
    let b = ctx.span(b_raw, d, raw.mode.span())?;
    let s = ctx.span(raw.s.as_deref().unwrap_or_default(), d, raw.mode.span())?;
    let certificate = match &raw.certificate {
        Some(cert) => Some(QuantumCertificate {
            b_minus: ctx.span(&cert.get_ref().b_minus, d, cert.span())?,
            b_plus: ctx.span(&cert.get_ref().b_plus, d, cert.span())?,
        }),
        None => None,
    };
    Some(QuantumBody { algebra, b, s, certificate })
}
