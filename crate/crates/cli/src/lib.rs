//! Command-line front end: argument definitions, the subcommands, and the
//! JSON report they produce. `main.rs` only prints and sets the exit code.

pub mod source;

use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use exact_algebra::{AlgebraError, ExactMatrix, FieldSpec};
use matroid_core::{Budget, MatroidError, MinorResult, RepresentedMatroid};
use partial_field::{pf_catalog, pf_hom_to_field, pf_is_p_matrix, FracMatrix, MembershipOracle, PartialField, PfError};
use poly_groebner::GbBudget;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use template_engine::{epsilon_formula, TemplateError, YTemplate};
use upf_charset::{
    characteristic_set, compose, find_homomorphism, is_representable_over, template_representation,
    universal_partial_field, variable_representation, Answer, UpfError, UpfOptions, DEFAULT_PRIMES,
};

pub use source::{matrix_literal, resolve_matrix, resolve_matroid, resolve_template};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable read for `--budget-seconds` when the flag is absent.
pub const BUDGET_ENV: &str = "UPFM_BUDGET_SECONDS";

/// Fields a partial field is mapped into when looking for a reason that
/// no homomorphism exists.
const CERTIFICATE_FIELDS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// Complete assignments tried by the homomorphism search in `pfcheck`.
const HOM_TRIES: usize = 200_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TemplateError> for CliError {
    fn from(e: TemplateError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PfError> for CliError {
    fn from(e: PfError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<UpfError> for CliError {
    fn from(e: UpfError) -> Self {
        match e {
            UpfError::Budget(b) => CliError::Budget(b.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "upfm", version, about = "Exact matroid representation computations")]
pub struct Cli {
    /// Field for matrix literals and files without a header (`4`, `GF(5)`, `Q`).
    #[arg(long, global = true, default_value = "4")]
    pub field: String,
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// S-pair cap for each Gröbner basis computation.
    #[arg(long, global = true)]
    pub budget_spairs: Option<usize>,
    /// Wall-clock cap in seconds for each search or Gröbner computation.
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget_seconds: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TemplateSource {
    /// One of T2, G, HP, MK.
    #[arg(long)]
    pub family: Option<String>,
    /// `YT:<P0>;<P1>` or a JSON file.
    #[arg(long)]
    pub template: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristics over which the matroid is representable.
    Charset {
        source: String,
        /// Comma-separated primes; defaults to 2,3,5,7,11,13.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
        /// Also test characteristic zero (the default without --primes).
        #[arg(long)]
        zero: bool,
        #[arg(long, conflicts_with = "zero")]
        no_zero: bool,
    },
    /// Universal partial field of a GF(4) matrix.
    Upf {
        /// A catalog P0 name (`I`..`XVIII`, `III'`) or a full matrix.
        #[arg(long)]
        matrix: String,
        /// Treat a literal or file as P0 of `[I | D | P0]`.
        #[arg(long)]
        p0: bool,
        /// Variables the substitution must leave free.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<usize>,
    },
    /// Minor containment with a witness.
    Minor {
        #[arg(long)]
        host: String,
        #[arg(long)]
        target: String,
    },
    /// Size of the simplified rank-r universal matroid, counted two ways.
    Epsilon {
        #[command(flatten)]
        source: TemplateSource,
        /// Rank.
        #[arg(short = 'r')]
        r: usize,
    },
    /// Rank-r universal matrix of a template.
    Template {
        #[command(flatten)]
        source: TemplateSource,
        /// Rank.
        #[arg(short = 'r')]
        r: usize,
        /// Print the matrix in text format.
        #[arg(long)]
        emit: bool,
    },
    /// Whether a matroid is representable over a partial field.
    Pfcheck {
        #[arg(long)]
        matrix: String,
        /// U2, K2, P4, G, PPap, PT or GF(q).
        #[arg(long)]
        pf: String,
    },
    /// The built-in named objects.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

/// What a subcommand hands back before it is wrapped in a [`Report`].
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub inputs: Value,
    /// Some part of the answer was cut short by a budget.
    pub truncated: bool,
    /// One-line summary, or matrix text for `--emit`.
    pub text: String,
}

#[derive(Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub budget_spairs: Option<usize>,
    pub budget_seconds: Option<f64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.outcome.truncated {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let digest = Sha256::digest(self.outcome.inputs.to_string().as_bytes());
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs_digest": digest.iter().map(|b| format!("{b:02x}")).collect::<String>(),
            "result": self.outcome.result,
            "status": if self.outcome.truncated { "unknown" } else { "definitive" },
            "elapsed_ms": self.elapsed.as_millis() as u64,
            "budget": {
                "spairs": self.budget_spairs,
                "seconds": self.budget_seconds,
                "truncated": self.outcome.truncated,
            },
        })
    }
}

struct Ctx {
    field: FieldSpec,
    gb: GbBudget,
    search: Budget,
}

/// Parses `args` (program name first), runs the command, and returns what
/// should be printed together with the exit code.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli) {
        Ok(report) => {
            let report = Report { command, ..report };
            let out = if cli.json { serde_json::to_string_pretty(&report.to_json()).expect("json") } else { report.outcome.text.clone() };
            (report.exit_code(), out)
        }
        Err(CliError::Budget(msg)) => {
            let out = json!({"schema": SCHEMA_VERSION, "command": command, "status": "unknown", "reason": msg});
            (2, if cli.json { out.to_string() } else { format!("unknown: {msg}") })
        }
        Err(e) => (1, format!("error: {e}")),
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let field = FieldSpec::parse(&cli.field)?;
    let seconds = cli.budget_seconds.filter(|s| *s > 0.0).map(Duration::from_secs_f64);
    let ctx = Ctx {
        field,
        gb: GbBudget { max_spairs: cli.budget_spairs, max_time: seconds },
        search: Budget { max_nodes: None, max_time: seconds },
    };
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Charset { source, primes, zero, no_zero } => {
            let zero = *zero || (primes.is_none() && !*no_zero);
            cmd_charset(&ctx, source, primes.as_deref().unwrap_or(&DEFAULT_PRIMES), zero)?
        }
        Command::Upf { matrix, p0, keep } => cmd_upf(&ctx, matrix, *p0, keep)?,
        Command::Minor { host, target } => cmd_minor(&ctx, host, target)?,
        Command::Epsilon { source, r } => cmd_epsilon(&ctx, source, *r)?,
        Command::Template { source, r, emit } => cmd_template(&ctx, source, *r, *emit)?,
        Command::Pfcheck { matrix, pf } => cmd_pfcheck(&ctx, matrix, pf)?,
        Command::Catalog { action } => cmd_catalog(&ctx, action)?,
    };
    Ok(Report {
        command: Vec::new(),
        outcome,
        elapsed: start.elapsed(),
        budget_spairs: cli.budget_spairs,
        budget_seconds: cli.budget_seconds,
    })
}

fn matroid_inputs(m: &RepresentedMatroid) -> Value {
    json!({ "labels": m.ground(), "matrix": m.matrix().to_text() })
}

fn cmd_charset(ctx: &Ctx, source: &str, primes: &[u32], zero: bool) -> Result<Outcome, CliError> {
    let m = resolve_matroid(ctx.field, source)?;
    let report = characteristic_set(&m, primes, zero, ctx.gb)?;
    let mut result = report.to_json(source);
    let mut flat = serde_json::Map::new();
    for (p, a) in &report.solvable_at {
        flat.insert(p.to_string(), a.to_json());
    }
    if let Some(a) = &report.zero {
        flat.insert("0".into(), a.to_json());
    }
    result["characteristics"] = Value::Object(flat);
    result["solvable"] = json!(report.solvable());
    Ok(Outcome {
        inputs: json!({ "cmd": "charset", "matroid": matroid_inputs(&m), "primes": primes, "zero": zero }),
        truncated: report.has_unknown(),
        text: format!("{source}: {}", result["characteristics"]),
        result,
    })
}

fn cmd_upf(ctx: &Ctx, src: &str, as_p0: bool, keep: &[usize]) -> Result<Outcome, CliError> {
    let catalog_p0 = catalog::catalog_matrix(src).ok();
    let a = match &catalog_p0 {
        Some(m) => m.clone(),
        None => resolve_matrix(ctx.field, src)?,
    };
    let rep = if catalog_p0.is_some() || as_p0 { template_representation(&a, false)? } else { variable_representation(&a)? };
    let m = rep.matroid()?;
    let opts = UpfOptions { keep: keep.to_vec(), budget: ctx.gb, ..UpfOptions::default() };
    let inputs = json!({ "cmd": "upf", "matrix": a.to_text(), "p0": catalog_p0.is_some() || as_p0, "keep": keep });
    let result = match universal_partial_field(&m, &rep, &opts) {
        Ok(u) => {
            let mut v = u.to_json();
            v["name"] = json!(u.identification.as_ref().map(|i| i.name.clone()));
            v["variables"] = json!(rep.names());
            v
        }
        Err(UpfError::UnitIdeal) => json!({ "unit_ideal": true, "name": null }),
        Err(e) => return Err(e.into()),
    };
    let text = match result["name"].as_str() {
        Some(n) => format!("{src}: universal partial field {n}"),
        None if result.get("unit_ideal").is_some() => format!("{src}: not representable over any partial field"),
        None => format!("{src}: universal partial field not in the catalog; generators {}", result["generators"]),
    };
    Ok(Outcome { result, inputs, truncated: false, text })
}

fn cmd_minor(ctx: &Ctx, host: &str, target: &str) -> Result<Outcome, CliError> {
    let h = resolve_matroid(ctx.field, host)?;
    let t = resolve_matroid(ctx.field, target)?;
    let found = h.has_minor(&t, ctx.search);
    let witness = match &found {
        MinorResult::Found(w) => {
            let replay = h.replay_witness(w)?;
            if replay.is_isomorphic(&t).is_none() && !replay.matroids_equal(&t).unwrap_or(false) {
                return Err(CliError::Inconsistent("witness does not replay to the target".into()));
            }
            json!(w)
        }
        _ => Value::Null,
    };
    let answer = match &found {
        MinorResult::Found(_) => json!(true),
        MinorResult::NotFound => json!(false),
        MinorResult::Unknown => json!("unknown"),
    };
    let text = match &found {
        MinorResult::Found(w) => {
            format!("{target} is a minor of {host}: contract {:?}, delete {:?}", w.contracted, w.deleted)
        }
        MinorResult::NotFound => format!("{target} is not a minor of {host}"),
        MinorResult::Unknown => format!("unknown: search for {target} in {host} ran out of budget"),
    };
    Ok(Outcome {
        result: json!({ "host": host, "target": target, "minor": answer, "witness": witness }),
        inputs: json!({ "cmd": "minor", "host": matroid_inputs(&h), "target": matroid_inputs(&t) }),
        truncated: matches!(found, MinorResult::Unknown),
        text,
    })
}

fn template_of(ctx: &Ctx, s: &TemplateSource) -> Result<(String, YTemplate), CliError> {
    match (&s.family, &s.template) {
        (Some(f), _) => Ok((f.clone(), resolve_template(ctx.field, f)?)),
        (_, Some(t)) => Ok((t.clone(), resolve_template(ctx.field, t)?)),
        _ => Err(CliError::Input("give --family or --template".into())),
    }
}

/// ε of the rank-`r` universal matroid by direct count and by formula.
/// A disagreement is an error.
pub fn epsilon_both(yt: &YTemplate, r: usize) -> Result<(usize, usize), CliError> {
    let direct = yt.universal_matroid(r)?.epsilon();
    let formula = epsilon_formula(yt.stats()?, r)?;
    if direct != formula {
        return Err(CliError::Inconsistent(format!("ε formula gives {formula}, direct count {direct}")));
    }
    Ok((direct, formula))
}

fn cmd_epsilon(ctx: &Ctx, s: &TemplateSource, r: usize) -> Result<Outcome, CliError> {
    let (name, yt) = template_of(ctx, s)?;
    let (direct, formula) = epsilon_both(&yt, r)?;
    Ok(Outcome {
        result: json!({ "template": name, "r": r, "epsilon": direct, "direct": direct, "formula": formula }),
        inputs: json!({ "cmd": "epsilon", "template": yt.to_json(), "r": r }),
        truncated: false,
        text: direct.to_string(),
    })
}

fn cmd_template(ctx: &Ctx, s: &TemplateSource, r: usize, emit: bool) -> Result<Outcome, CliError> {
    let (name, yt) = template_of(ctx, s)?;
    let a = yt.universal_matrix(r)?;
    let m = RepresentedMatroid::from_matrix(&a)?;
    let text = if emit { a.to_text() } else { format!("{name} at rank {r}: {} elements, {} after simplification", m.size(), m.epsilon()) };
    Ok(Outcome {
        result: json!({
            "template": yt.to_json(),
            "r": r,
            "labels": a.col_labels(),
            "matrix": a.to_text(),
            "elements": m.size(),
            "simple_elements": m.epsilon(),
        }),
        inputs: json!({ "cmd": "template", "template": yt.to_json(), "r": r }),
        truncated: false,
        text,
    })
}

fn answer_value(a: &Answer) -> Value {
    a.to_json()
}

fn cmd_pfcheck(ctx: &Ctx, src: &str, pf_name: &str) -> Result<Outcome, CliError> {
    let a = resolve_matrix(ctx.field, src)?;
    let m = RepresentedMatroid::from_matrix(&a)?;
    let pf = pf_catalog(pf_name)?;
    let inputs = json!({ "cmd": "pfcheck", "matrix": a.to_text(), "pf": pf.name() });
    let target = match pf {
        PartialField::Field(f) => {
            let q = f.order().expect("catalog fields are finite") as u32;
            let ans = is_representable_over(&m, q, ctx.gb)?;
            let truncated = matches!(ans, Answer::Unknown(_));
            return Ok(Outcome {
                text: format!("{src} over GF({q}): {}", answer_value(&ans)),
                result: json!({ "pf": pf_name, "representable": answer_value(&ans), "method": "entry system over GF(q)" }),
                inputs,
                truncated,
            });
        }
        PartialField::Symbolic(p) => p,
    };
    let rep = variable_representation(&a)?;
    let upf = match universal_partial_field(&rep.matroid()?, &rep, &UpfOptions { budget: ctx.gb, ..UpfOptions::default() }) {
        Ok(u) => Some(u),
        Err(UpfError::UnitIdeal) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(u) = &upf {
        if let Some(images) = find_homomorphism(&u.presentation, &target, HOM_TRIES) {
            let ideal = target.ideal();
            let mut entries = Vec::with_capacity(u.matrix.nrows() * u.matrix.ncols());
            for r in 0..u.matrix.nrows() {
                for c in 0..u.matrix.ncols() {
                    let e = compose(u.matrix.get(r, c), &images)
                        .and_then(|x| x.reduce(ideal))
                        .ok_or_else(|| CliError::Inconsistent("homomorphism hits a pole".into()))?;
                    entries.push(e);
                }
            }
            let mapped = FracMatrix::new(u.matrix.nrows(), u.matrix.ncols(), entries, u.matrix.col_labels().to_vec())?;
            let oracle = MembershipOracle::new(&target);
            if let Err(w) = pf_is_p_matrix(&mapped, &oracle) {
                return Err(CliError::Inconsistent(format!(
                    "image matrix fails at rows {:?}, columns {:?}",
                    w.rows, w.cols
                )));
            }
            let names = u.presentation.variables();
            let hom: Vec<Value> = images
                .iter()
                .enumerate()
                .filter_map(|(i, x)| x.as_ref().map(|x| json!([names[i], x.to_text(target.variables())])))
                .collect();
            return Ok(Outcome {
                text: format!("{src} over {pf_name}: true"),
                result: json!({
                    "pf": pf_name,
                    "representable": true,
                    "universal_partial_field": u.identification.as_ref().map(|i| i.name.clone()),
                    "homomorphism": hom,
                    "matrix": mapped.to_texts(target.variables()),
                }),
                inputs,
                truncated: false,
            });
        }
    }
    // a homomorphism into pf composed with pf -> GF(q) would represent M over GF(q)
    let pf = PartialField::Symbolic(target);
    for q in CERTIFICATE_FIELDS {
        if pf_hom_to_field(&pf, q)?.is_none() {
            continue;
        }
        if is_representable_over(&m, q, ctx.gb)? == Answer::No {
            return Ok(Outcome {
                text: format!("{src} over {pf_name}: false (maps to GF({q}), matroid is not GF({q})-representable)"),
                result: json!({
                    "pf": pf_name,
                    "representable": false,
                    "certificate": { "field": q, "reason": "partial field maps to GF(q); matroid has no GF(q) representation" },
                }),
                inputs,
                truncated: false,
            });
        }
    }
    Ok(Outcome {
        text: format!("{src} over {pf_name}: unknown"),
        result: json!({ "pf": pf_name, "representable": "unknown" }),
        inputs,
        truncated: true,
    })
}

fn cmd_catalog(ctx: &Ctx, action: &CatalogAction) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let entries = catalog::entries();
            let text = entries.iter().map(|e| format!("{:<10} {:<9} {}", e.name, e.kind.as_str(), e.note)).collect::<Vec<_>>().join("\n");
            let result = json!(entries
                .iter()
                .map(|e| json!({ "name": e.name, "kind": e.kind.as_str(), "note": e.note }))
                .collect::<Vec<_>>());
            Ok(Outcome { result, inputs: json!({ "cmd": "catalog list" }), truncated: false, text })
        }
        CatalogAction::Show { name } => {
            let inputs = json!({ "cmd": "catalog show", "name": name });
            let shown = |kind: &str, a: &ExactMatrix| Outcome {
                result: json!({ "name": name, "kind": kind, "labels": a.col_labels(), "matrix": a.to_text() }),
                inputs: inputs.clone(),
                truncated: false,
                text: a.to_text(),
            };
            if let Ok(a) = catalog::catalog_matrix(name) {
                return Ok(shown("matrix", &a));
            }
            if let Ok(m) = catalog::catalog_matroid(name) {
                return Ok(shown("matroid", m.matrix()));
            }
            if let Ok(t) = resolve_template(ctx.field, name) {
                let v = t.to_json();
                return Ok(Outcome {
                    text: serde_json::to_string_pretty(&v).expect("json"),
                    result: json!({ "name": name, "kind": "template", "template": v }),
                    inputs,
                    truncated: false,
                });
            }
            Err(CliError::Input(format!("unknown catalog name `{name}`")))
        }
    }
}
