//! Batch command-line front end.
//!
//! Every command produces one JSON record; `text` and `csv` outputs are
//! renderings of that record. JSON keys are sorted and floats are rounded to
//! 12 significant digits so repeated runs are byte-identical.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::cells::{cell_of_subset, enumerate_cells, Cell};
use crate::classifier::{l2_norm_integral, Classifier, ClassificationReport, ConvergenceReport, QuadratureConfig};
use crate::error::Error;
use crate::model::{build_model_catalog, verify_multiplicity_one, ModelCatalog};
use crate::potential::{canonical_potential, parse_rational, NewtonConfig, Potential, PotentialSpec};
use crate::root_system::{RootDatum, Weight};

pub const THREADS_ENV: &str = "WEYL_MODEL_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "weyl-model", version, about = "Weyl chamber cells, moment images and the multiplicity-one model")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub output: OutputFormat,

    /// Write the record to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Residual tolerance for moment-map inversion.
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub tol: f64,

    /// Relative-increment threshold of the quadrature oracle.
    #[arg(long, default_value_t = 1e-6, global = true)]
    pub quad_eps: f64,

    /// Comma-separated, strictly increasing box half-widths.
    #[arg(long, default_value = "2,4,8,16,32", global = true)]
    pub radii: String,

    /// Exponents above this bound are reported as overflow.
    #[arg(long, default_value_t = 700.0, global = true)]
    pub exp_bound: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan matrix, symmetrizers, positive roots and fundamental-weight Gram matrix.
    Roots { spec: String },
    /// The 2^n cells of the closed Weyl chamber.
    Cells { spec: String },
    /// Occurrence and square-integrability of one highest weight.
    Classify {
        spec: String,
        /// Pinned simple-root labels, comma separated (empty for the open chamber).
        #[arg(long, default_value = "")]
        cell: String,
        /// Fundamental-weight coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Potential spec file; defaults to the canonical potential of the cell.
        #[arg(long)]
        potential: Option<PathBuf>,
        /// Also run the quadrature oracle.
        #[arg(long)]
        with_integral: bool,
    },
    /// Quadrature of the reduced norm integral over nested boxes.
    #[command(name = "l2-oracle")]
    L2Oracle {
        spec: String,
        #[arg(long, default_value = "")]
        cell: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        potential: Option<PathBuf>,
        /// Gauss–Legendre points per panel.
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 1.0)]
        panel_width: f64,
    },
    /// Sweep all parabolics and check that every weight occurs exactly once.
    Model {
        spec: String,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
}

/// A failed command: exit code plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionTooLarge { .. } | Error::BudgetExceeded { .. } | Error::Overflow { .. } => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Rendered output of a successful command.
struct Record {
    json: Value,
    text: String,
    csv: Vec<Vec<String>>,
    code: i32,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };

    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                let _ = writeln!(stderr, "error: {THREADS_ENV} must be a positive integer, got `{v}`");
                return EXIT_INPUT;
            }
        },
        Err(_) => None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_LIMIT;
        }
    };

    match pool.install(|| execute(&cfg)) {
        Ok(record) => {
            let rendered = render(&record, cfg.output);
            let written = match &cfg.out {
                Some(path) => fs::write(path, rendered.as_bytes()).map_err(|e| e.to_string()),
                None => stdout.write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_LIMIT;
            }
            record.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cfg: &CliConfig) -> Result<Record, Failure> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(Error::ToleranceInvalid(cfg.tol).into());
    }
    match &cfg.command {
        Command::Roots { spec } => cmd_roots(&RootDatum::from_spec_str(spec)?),
        Command::Cells { spec } => cmd_cells(&RootDatum::from_spec_str(spec)?),
        Command::Classify {
            spec,
            cell,
            lambda,
            potential,
            with_integral,
        } => {
            let datum = RootDatum::from_spec_str(spec)?;
            let (cell, potential) = resolve_potential(&datum, cell, potential.as_ref(), cfg.exp_bound)?;
            let lambda = parse_weight(&datum, lambda)?;
            let quad = if *with_integral {
                Some(quadrature_config(cfg, 10, 1.0)?)
            } else {
                None
            };
            cmd_classify(&cell, &potential, &lambda, cfg.tol, quad.as_ref())
        }
        Command::L2Oracle {
            spec,
            cell,
            lambda,
            potential,
            order,
            panel_width,
        } => {
            let datum = RootDatum::from_spec_str(spec)?;
            let (cell, potential) = resolve_potential(&datum, cell, potential.as_ref(), cfg.exp_bound)?;
            let lambda = parse_weight(&datum, lambda)?;
            let quad = quadrature_config(cfg, *order, *panel_width)?;
            cmd_l2_oracle(&cell, &potential, &lambda, &quad)
        }
        Command::Model { spec, bound } => cmd_model(&RootDatum::from_spec_str(spec)?, *bound),
    }
}

fn quadrature_config(cfg: &CliConfig, order: usize, panel_width: f64) -> Result<QuadratureConfig, Failure> {
    let radii = cfg
        .radii
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| input_error(format!("cannot parse radii `{}`", cfg.radii)))?;
    let quad = QuadratureConfig {
        radii,
        order,
        panel_width,
        eps: cfg.quad_eps,
        exponent_bound: cfg.exp_bound,
        ..QuadratureConfig::default()
    };
    quad.validate()?;
    Ok(quad)
}

fn parse_labels(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| input_error(format!("bad simple-root label `{t}`"))))
        .collect()
}

fn parse_weight(datum: &RootDatum, s: &str) -> Result<Weight, Failure> {
    let coords = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<Rational64>, Error>>()?;
    if coords.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: coords.len(),
        }
        .into());
    }
    Ok(Weight::new(coords))
}

fn resolve_potential(
    datum: &RootDatum,
    cell_arg: &str,
    file: Option<&PathBuf>,
    exp_bound: f64,
) -> Result<(Cell, Potential), Failure> {
    let labels = parse_labels(cell_arg)?;
    let (cell, potential) = match file {
        None => {
            let cell = cell_of_subset(datum, &labels)?;
            (cell, canonical_potential(&cell))
        }
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let spec: PotentialSpec =
                serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let potential = spec.build(datum)?;
            let cell = *potential.cell();
            if !cell_arg.trim().is_empty() && cell_of_subset(datum, &labels)? != cell {
                return Err(Error::CellMismatch {
                    potential: cell.pinned_labels(),
                    requested: labels,
                }
                .into());
            }
            (cell, potential)
        }
    };
    Ok((cell, potential.with_exponent_bound(exp_bound)))
}

// ---------------------------------------------------------------------------
// Commands

fn rational_str(q: &Rational64) -> String {
    q.to_string()
}

fn weight_json(w: &Weight) -> Value {
    Value::Array(
        w.coords()
            .iter()
            .map(|c| {
                if c.is_integer() {
                    json!(c.to_integer())
                } else {
                    json!(rational_str(c))
                }
            })
            .collect(),
    )
}

fn weight_str(w: &Weight) -> String {
    w.coords().iter().map(rational_str).collect::<Vec<_>>().join(" ")
}

fn labels_str(cell: &Cell) -> String {
    cell.pinned_labels()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cell_json(cell: &Cell) -> Value {
    json!({ "S": cell.pinned_labels(), "m": cell.dim() })
}

/// Rounds to 12 significant digits; non-finite values become `null`.
pub fn float_json(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn float_str(x: f64) -> String {
    format!("{x:.11e}")
}

fn floats_json(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float_json(x)).collect())
}

fn cmd_roots(datum: &RootDatum) -> Result<Record, Failure> {
    let gram: Vec<Vec<String>> = datum
        .gram_fw()
        .iter()
        .map(|row| row.iter().map(rational_str).collect())
        .collect();
    let d: Vec<String> = datum.symmetrizers().iter().map(rational_str).collect();
    let json = json!({
        "spec": datum.spec().to_string(),
        "rank": datum.rank(),
        "cartan": datum.cartan(),
        "symmetrizers": d,
        "positive_root_count": datum.positive_roots().len(),
        "positive_roots": datum.positive_roots(),
        "gram_fw": gram,
    });
    let mut text = format!(
        "root system {}\nrank {}\npositive roots {}\ncartan\n",
        datum.spec(),
        datum.rank(),
        datum.positive_roots().len()
    );
    for row in datum.cartan() {
        text.push_str(&format!("  {}\n", row.iter().map(|v| format!("{v:>3}")).collect::<String>()));
    }
    text.push_str(&format!("symmetrizers {}\ngram_fw\n", d.join(" ")));
    for row in &gram {
        text.push_str(&format!("  {}\n", row.join(" ")));
    }
    let mut csv = vec![vec!["root".to_string(), "height".to_string()]];
    for r in datum.positive_roots() {
        csv.push(vec![
            r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            r.iter().sum::<i64>().to_string(),
        ]);
    }
    Ok(Record {
        json,
        text,
        csv,
        code: EXIT_OK,
    })
}

fn cmd_cells(datum: &RootDatum) -> Result<Record, Failure> {
    if datum.rank() > 16 {
        return Err(Error::DimensionTooLarge {
            dim: datum.rank(),
            max: 16,
        }
        .into());
    }
    let cells = enumerate_cells(datum);
    let json = json!({
        "spec": datum.spec().to_string(),
        "count": cells.len(),
        "cells": cells.iter().map(cell_json).collect::<Vec<_>>(),
    });
    let mut text = format!("{} cells of {}\n", cells.len(), datum.spec());
    let mut csv = vec![vec!["S".to_string(), "m".to_string()]];
    for c in &cells {
        text.push_str(&format!("  {c} m={}\n", c.dim()));
        csv.push(vec![labels_str(c), c.dim().to_string()]);
    }
    Ok(Record {
        json,
        text,
        csv,
        code: EXIT_OK,
    })
}

pub fn classification_json(report: &ClassificationReport, integral: Option<&ConvergenceReport>) -> Value {
    let d = &report.details;
    json!({
        "lambda": weight_json(&report.lambda),
        "S": report.cell.pinned_labels(),
        "m": report.cell.dim(),
        "occurs": report.occurs,
        "l2": report.in_l2.as_str(),
        "method": report.method.as_str(),
        "details": {
            "residual": d.residual.map_or(Value::Null, float_json),
            "iterations": d.iterations,
            "point": d.point.as_deref().map_or(Value::Null, floats_json),
        },
        "integral": integral.map_or(Value::Null, convergence_json),
    })
}

pub fn convergence_json(r: &ConvergenceReport) -> Value {
    json!({
        "radii": floats_json(&r.radii),
        "partial_integrals": floats_json(&r.partial_integrals),
        "verdict": r.verdict.as_str(),
        "limit_estimate": r.limit_estimate.map_or(Value::Null, float_json),
    })
}

fn cmd_classify(
    cell: &Cell,
    potential: &Potential,
    lambda: &Weight,
    tol: f64,
    quad: Option<&QuadratureConfig>,
) -> Result<Record, Failure> {
    let classifier = Classifier::new(NewtonConfig::default());
    let report = classifier.square_integrable(cell, potential, lambda, tol)?;
    let integral = match quad {
        Some(q) if cell.spans(lambda) => Some(l2_norm_integral(cell, potential, lambda, q)?),
        _ => None,
    };
    let json = classification_json(&report, integral.as_ref());
    let mut text = format!(
        "lambda ({}) on cell {}: occurs={} l2={} method={}\n",
        weight_str(lambda),
        cell,
        report.occurs,
        report.in_l2,
        report.method.as_str()
    );
    if let Some(r) = &integral {
        text.push_str(&convergence_text(r));
    }
    let csv = vec![
        vec!["lambda", "S", "m", "occurs", "l2", "method"]
            .into_iter()
            .map(String::from)
            .collect(),
        vec![
            weight_str(lambda),
            labels_str(cell),
            cell.dim().to_string(),
            report.occurs.to_string(),
            report.in_l2.as_str().to_string(),
            report.method.as_str().to_string(),
        ],
    ];
    Ok(Record {
        json,
        text,
        csv,
        code: EXIT_OK,
    })
}

fn convergence_text(r: &ConvergenceReport) -> String {
    let mut text = String::new();
    for (radius, value) in r.radii.iter().zip(&r.partial_integrals) {
        text.push_str(&format!("  R={radius:<8} I={}\n", float_str(*value)));
    }
    text.push_str(&format!("  verdict {}", r.verdict.as_str()));
    if let Some(l) = r.limit_estimate {
        text.push_str(&format!(" limit {}", float_str(l)));
    }
    text.push('\n');
    text
}

fn cmd_l2_oracle(cell: &Cell, potential: &Potential, lambda: &Weight, quad: &QuadratureConfig) -> Result<Record, Failure> {
    let report = l2_norm_integral(cell, potential, lambda, quad)?;
    let mut json = convergence_json(&report);
    json["S"] = json!(cell.pinned_labels());
    json["m"] = json!(cell.dim());
    json["lambda"] = weight_json(lambda);
    let text = format!("lambda ({}) on cell {}\n{}", weight_str(lambda), cell, convergence_text(&report));
    let mut csv = vec![vec!["R".to_string(), "partial_integral".to_string()]];
    for (radius, value) in report.radii.iter().zip(&report.partial_integrals) {
        csv.push(vec![radius.to_string(), float_str(*value)]);
    }
    Ok(Record {
        json,
        text,
        csv,
        code: EXIT_OK,
    })
}

pub fn catalog_json(catalog: &ModelCatalog) -> Value {
    let report = verify_multiplicity_one(catalog);
    json!({
        "spec": catalog.datum.spec().to_string(),
        "rank": catalog.datum.rank(),
        "bound": catalog.bound,
        "cells": catalog.cell_count,
        "weights": catalog.entries.len(),
        "ok": report.ok && catalog.violations.is_empty(),
        "summary": report.summary(),
        "assignments": catalog.entries.iter().map(|e| json!({
            "lambda": weight_json(&e.lambda),
            "S": e.assignment().map(|c| c.pinned_labels()),
            "expected_S": e.expected.pinned_labels(),
        })).collect::<Vec<_>>(),
        "violations": catalog.violations.iter().map(|v| json!({
            "lambda": weight_json(&v.lambda),
            "kind": v.kind.as_str(),
            "contributors": v.contributors.iter().map(Cell::pinned_labels).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_model(datum: &RootDatum, bound: u32) -> Result<Record, Failure> {
    let catalog = build_model_catalog(datum, bound)?;
    let report = verify_multiplicity_one(&catalog);
    let ok = report.ok && catalog.violations.is_empty();
    let mut text = String::new();
    for e in &catalog.entries {
        let assigned = e.assignment().map_or_else(|| "-".to_string(), |c| c.to_string());
        text.push_str(&format!("  ({}) -> {assigned}\n", weight_str(&e.lambda)));
    }
    for v in &catalog.violations {
        text.push_str(&format!("  violation {} at ({})\n", v.kind.as_str(), weight_str(&v.lambda)));
    }
    text.push_str(&report.summary());
    text.push('\n');
    let mut csv = vec![vec!["lambda".to_string(), "S".to_string(), "m".to_string(), "contributors".to_string()]];
    for e in &catalog.entries {
        let (labels, m) = e
            .assignment()
            .map_or((String::new(), String::new()), |c| (labels_str(&c), c.dim().to_string()));
        csv.push(vec![weight_str(&e.lambda), labels, m, e.contributors.len().to_string()]);
    }
    Ok(Record {
        json: catalog_json(&catalog),
        text,
        csv,
        code: if ok { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn render(record: &Record, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&record.json).expect("values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => record.text.clone(),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &record.csv {
                w.write_record(row).expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
        }
    }
}
