//! Problem files, command dispatch and report rendering for the `logres`
//! command line tool.
//!
//! A problem file is a list of `key: value` lines:
//!
//! ```text
//! # U12 with a parameter
//! vars: z, x, y
//! weights: 3, 4, 4
//! param: t
//! f: x^3+y^3+z^4+t*x*y*z^2
//! ```
//!
//! The first variable is the distinguished one.

mod emit;
mod problem;

use std::sync::Arc;

use clap::{Parser, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::coeffield::{locus, parse_rational, render_rational, Rational};
use crate::error::{Error, Result};
use crate::gaussmanin::{connection_report, integral_dependence_f2, IntegralRelation};
use crate::linalg::Row;
use crate::localstd::{Germ, QuotientAlgebra};
use crate::logvf::{logvf_basis, Method, VectorField};
use crate::poly::{LocalFraction, Polynomial, Ring};
use crate::residues::{regular_meromorphic_basis, torsion_basis, Form};

pub use emit::{emit, Format};
pub use problem::{parse_problem_file, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Invariants,
    Logvf,
    Torsion,
    Residues,
    GaussManin,
    Integral,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::Logvf => "logvf",
            Command::Torsion => "torsion",
            Command::Residues => "residues",
            Command::GaussManin => "gauss-manin",
            Command::Integral => "integral",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Polar,
    Jacobi,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Polar => Method::Polar,
            MethodArg::Jacobi => Method::Jacobi,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub method: Method,
    pub t_value: Option<Rational>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            method: Method::Polar,
            t_value: None,
        }
    }
}

/// Everything a command reports; `payload` depends on the command.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputReport {
    pub command: String,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub f: String,
    pub mu: usize,
    pub tau: usize,
    pub mu_hyperplane: usize,
    pub quasi_homogeneous: bool,
    pub payload: Value,
    pub warnings: Vec<String>,
}

impl OutputReport {
    /// Counts are strings so that every number in the output is exact text.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "vars": self.vars,
            "weights": self.weights.iter().map(u32::to_string).collect::<Vec<_>>(),
            "f": self.f,
            "mu": self.mu.to_string(),
            "tau": self.tau.to_string(),
            "mu_hyperplane": self.mu_hyperplane.to_string(),
            "quasi_homogeneous": self.quasi_homogeneous,
            "payload": self.payload,
            "warnings": self.warnings,
        })
    }
}

/// Renders polynomial data, specializing the parameter first when asked.
struct Ctx {
    value: Option<Rational>,
    target: Arc<Ring>,
}

impl Ctx {
    fn new(ring: &Arc<Ring>, value: Option<Rational>) -> Result<Self> {
        if value.is_some() && ring.param().is_none() {
            return Err(Error::Precondition("--t-value needs a `param:` line".into()));
        }
        Ok(Self {
            value,
            target: ring.specialized(),
        })
    }

    fn poly(&self, p: &Polynomial) -> Result<String> {
        Ok(match &self.value {
            Some(v) => p.specialize(v, &self.target)?.render(),
            None => p.render(),
        })
    }

    fn frac(&self, a: &LocalFraction) -> Result<String> {
        Ok(match &self.value {
            Some(v) => a.specialize(v, &self.target)?.render(),
            None => a.render(),
        })
    }

    fn form(&self, f: &Form) -> Result<String> {
        Ok(match &self.value {
            Some(v) => f.specialize(v, &self.target)?.render(),
            None => f.render(),
        })
    }

    fn coords(&self, row: &Row, alg: &QuotientAlgebra) -> Result<String> {
        self.poly(&alg.element(row))
    }

    fn field(&self, v: &VectorField) -> Result<Value> {
        let coefficients = v
            .coefficients()
            .iter()
            .map(|a| self.frac(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "coefficients": coefficients,
            "cofactor": self.frac(v.cofactor())?,
        }))
    }

    fn relation(&self, rel: &IntegralRelation, names: &[String]) -> Result<Value> {
        let linear = rel
            .linear_coeffs
            .iter()
            .map(|a| self.poly(a))
            .collect::<Result<Vec<_>>>()?;
        let quadratic = rel
            .quadratic_coeffs
            .iter()
            .map(|(&(i, j), a)| {
                Ok(json!({
                    "i": names[i],
                    "j": names[j],
                    "coefficient": self.poly(a)?,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "unit": self.poly(&rel.unit_factor)?,
            "linear": linear,
            "quadratic": quadratic,
        }))
    }
}

fn monomial_list(alg: &QuotientAlgebra, ring: &Ring) -> Vec<String> {
    alg.basis()
        .monomials()
        .iter()
        .map(|m| m.render(ring.names()))
        .collect()
}

pub fn run_command(spec: &ProblemSpec, command: Command, options: &Options) -> Result<OutputReport> {
    locus::clear();
    let ring = &spec.ring;
    let germ = Germ::new(spec.f.clone())?;
    let ctx = Ctx::new(ring, options.t_value.clone())?;
    let mut warnings = Vec::new();
    let method = options.method;
    let payload = match command {
        Command::Invariants => json!({
            "milnor_basis": monomial_list(germ.milnor_algebra()?, ring),
            "tjurina_basis": monomial_list(germ.tjurina_algebra()?, ring),
        }),
        Command::Logvf => {
            let basis = logvf_basis(&germ, method)?;
            let fields = basis
                .fields
                .iter()
                .zip(&basis.witnesses)
                .map(|(v, w)| {
                    let mut field = ctx.field(v)?;
                    field["witness"] = json!(ctx.poly(w)?);
                    Ok(field)
                })
                .collect::<Result<Vec<_>>>()?;
            json!({ "method": method.name(), "fields": fields })
        }
        Command::Torsion => {
            let basis = logvf_basis(&germ, method)?;
            let torsion = torsion_basis(&basis)
                .iter()
                .map(|c| {
                    Ok(json!({
                        "form": ctx.form(&c.representative)?,
                        "witness": ctx.field(&c.witness)?,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({ "method": method.name(), "torsion": torsion })
        }
        Command::Residues => {
            warnings.push(
                "the condition on the distinguished partial beyond zero-dimensionality of the polar ideal is assumed"
                    .to_string(),
            );
            let residues = regular_meromorphic_basis(&germ, method)?
                .iter()
                .map(|r| {
                    let xi = ctx.form(&r.xi)?;
                    let g = ctx.poly(&r.denominator)?;
                    Ok(json!({
                        "representative": format!("({xi})/({g})|_S"),
                        "xi": xi,
                        "denominator": g,
                        "eta": ctx.form(&r.eta)?,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({ "method": method.name(), "residues": residues })
        }
        Command::GaussManin => {
            let report = connection_report(&germ)?;
            let alg = germ.milnor_algebra()?;
            let entries = report
                .entries
                .iter()
                .map(|e| {
                    let own = alg.coords(&e.witness_b);
                    let fd: Row = e.reduced.iter().zip(&own).map(|(a, c)| a - c).collect();
                    Ok(json!({
                        "b": ctx.poly(&e.witness_b)?,
                        "field": ctx.field(&e.field)?,
                        "divergence": ctx.frac(&e.divergence)?,
                        "d_fb": ctx.coords(&e.reduced, alg)?,
                        "fd_b": ctx.coords(&fd, alg)?,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            let saturation = match &report.saturation {
                None => Value::Null,
                Some(h) => {
                    let d2 = match &h.step {
                        Some(s) => json!(ctx.coords(&s.reduced, alg)?),
                        None => {
                            warnings.push("the residual term is not in J; no D^2(f^2) value".to_string());
                            Value::Null
                        }
                    };
                    json!({
                        "relation": ctx.relation(&h.relation, ring.names())?,
                        "d_f_squared": ctx.coords(&h.d_f_squared, alg)?,
                        "d2_f_squared": d2,
                    })
                }
            };
            json!({
                "basis_m": monomial_list(alg, ring),
                "entries": entries,
                "saturation": saturation,
            })
        }
        Command::Integral => {
            let rel = integral_dependence_f2(&germ)?;
            json!({ "relation": ctx.relation(&rel, ring.names())? })
        }
    };
    let report = OutputReport {
        command: command.name().to_string(),
        vars: ring.names().to_vec(),
        weights: ring.weights().as_slice().to_vec(),
        f: spec.f.render(),
        mu: germ.mu()?,
        tau: germ.tau()?,
        mu_hyperplane: germ.mu_hyperplane()?,
        quasi_homogeneous: germ.is_quasi_homogeneous()?,
        payload,
        warnings,
    };
    finish(report, ring, &options.t_value)
}

/// Adds the non-genericity locus to the warnings and rejects a
/// specialization value on it.
fn finish(mut report: OutputReport, ring: &Ring, value: &Option<Rational>) -> Result<OutputReport> {
    let seen = locus::take();
    let sym = ring.param_symbol();
    for p in &seen {
        if let Some(v) = value {
            if p.eval(v).is_zero() {
                return Err(Error::Specialization {
                    value: render_rational(v),
                    detail: format!("{} vanishes there", p.render(sym)),
                });
            }
        }
    }
    if !seen.is_empty() {
        let list: Vec<String> = seen.iter().map(|p| p.render(sym)).collect();
        report.warnings.push(format!(
            "generic in {sym}; not valid where any of these vanish: {}",
            list.join(", ")
        ));
    }
    if let Some(v) = value {
        report.warnings.push(format!(
            "specialized at {sym} = {} after computing over Q({sym}); mu, tau and mu_hyperplane are the generic values",
            render_rational(v)
        ));
    }
    Ok(report)
}

#[derive(Parser, Debug)]
#[command(
    name = "logres",
    version,
    about = "Logarithmic vector fields, residues and Gauss-Manin data for isolated hypersurface singularities"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem file with `vars:`, optional `weights:` and `param:`, and `f:` lines
    pub file: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "polar")]
    pub method: MethodArg,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Specialize the parameter to this rational value after computing
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    pub t_value: Option<String>,
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one invocation given parsed arguments.
pub fn execute(args: &Args) -> Outcome {
    let format = if args.json { Format::Json } else { Format::Text };
    let result = (|| {
        let text = std::fs::read_to_string(&args.file).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read {}: {e}", args.file.display()),
        })?;
        let spec = parse_problem_file(&text)?;
        let options = Options {
            method: args.method.into(),
            t_value: args.t_value.as_deref().map(parse_rational).transpose()?,
        };
        run_command(&spec, args.command, &options)
    })();
    match result {
        Ok(report) => Outcome {
            stdout: emit(&report, format),
            stderr: String::new(),
            code: 0,
        },
        Err(e) => error_outcome(&e, format),
    }
}

pub fn error_outcome(e: &Error, format: Format) -> Outcome {
    let (stdout, stderr) = match format {
        Format::Json => {
            let v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
            (
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
                String::new(),
            )
        }
        Format::Text => (String::new(), format!("error[{}]: {e}\n", e.code())),
    };
    Outcome {
        stdout,
        stderr,
        code: e.exit_code(),
    }
}
