//! `conedual`: command-line front end for the exact cone-duality toolkit.
//!
//! Exit codes: 0 success or property holds, 1 property or check fails,
//! 2 parse error, 3 semantic or invariant error.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use conedual_core::banach_sums::{
    ando_decompose, check_block_polars, sampled_lp_mode, sum_constant, verify_normality_duality, verify_additivity_duality,
    AndoDecomposition, DualConstantsReport, BlockPolarReport, SampledReport,
};
use conedual_core::cstar_checks::{check_cone_polars, check_order_inequality, SampleReport, INEQUALITY_TOL};
use conedual_core::duality_props::check_property;
use conedual_core::random::DEFAULT_SEED;
use conedual_core::{
    one_sided_polar, suites, ConstantReport, DirectSumInstance, Exponent, Extended, Polyhedron,
    Property, Quadruple, RatVector, SumProperty,
};

/// Largest accepted ambient dimension.
const MAX_DIM: u64 = 10;
/// Largest accepted number of inequality rows or generators per polyhedron.
const MAX_ROWS: usize = 40;

#[derive(Parser)]
#[command(name = "conedual", version, about = "Exact duality checks for cones, balls and direct sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count for sampled checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Relative tolerance for sampled checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// One-sided polar of a polyhedron.
    Polar,
    /// Check a property of a quadruple (C, D, B1, B2) and its optimal constant.
    Check {
        /// normal, additive, conormal or coadditive; all four when omitted.
        #[arg(long)]
        property: Option<Property>,
    },
    /// Minimum-norm decomposition of a point over a direct-sum instance.
    Ando {
        /// Comma-separated rationals; overrides the "x" field of the input.
        #[arg(long)]
        x: Option<String>,
        /// Overrides the exponent of the input.
        #[arg(long)]
        p: Option<Exponent>,
    },
    /// Constants, polar correspondences and dual agreement of a direct sum.
    Sums {
        /// Overrides the exponent of the input.
        #[arg(long)]
        p: Option<Exponent>,
    },
    /// Sampled inequalities on complex matrices.
    Cstar {
        #[arg(long)]
        item: u8,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Check the polar identities instead of the norm inequalities.
        #[arg(long)]
        polar: bool,
    },
    /// Every exact suite at reduced size.
    Selftest,
}

enum Failure {
    Parse(String),
    Semantic(String),
}

impl From<conedual_core::Error> for Failure {
    fn from(e: conedual_core::Error) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Failure::Semantic(e.to_string()),
            Category::Io | Category::Syntax | Category::Eof => Failure::Parse(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// A finished report: JSON payload, text summary, and whether it passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(report: &impl Serialize, text: String, ok: bool) -> CliResult<Outcome> {
        Ok(Outcome {
            json: serde_json::to_value(report).map_err(|e| Failure::Semantic(e.to_string()))?,
            text,
            ok,
        })
    }
}

fn read_input(path: &Option<PathBuf>) -> CliResult<Value> {
    let raw = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Semantic(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Semantic(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Ok(serde_json::from_str(&raw)?)
}

fn too_large(msg: String) -> Failure {
    Failure::Semantic(conedual_core::Error::TooLarge(msg).to_string())
}

/// Rejects inputs beyond the practical size of exact double description.
fn check_size(v: &Value) -> CliResult<()> {
    match v {
        Value::Object(map) => {
            for key in ["dim", "d"] {
                if let Some(n) = map.get(key).and_then(Value::as_u64) {
                    if n > MAX_DIM {
                        return Err(too_large(format!("{key} = {n} exceeds {MAX_DIM}")));
                    }
                }
            }
            if let (Some(d), Some(m)) = (map.get("d").and_then(Value::as_u64), map.get("m").and_then(Value::as_u64)) {
                if d.saturating_mul(m) > MAX_DIM {
                    return Err(too_large(format!("d*m = {} exceeds {MAX_DIM}", d.saturating_mul(m))));
                }
            }
            let len = |k: &str| map.get(k).and_then(Value::as_array).map_or(0, Vec::len);
            if len("h") > MAX_ROWS {
                return Err(too_large(format!("{} inequality rows exceed {MAX_ROWS}", len("h"))));
            }
            if len("vertices") + len("rays") > MAX_ROWS {
                return Err(too_large(format!(
                    "{} generators exceed {MAX_ROWS}",
                    len("vertices") + len("rays")
                )));
            }
            map.values().try_for_each(check_size)
        }
        Value::Array(items) => {
            if items.len() as u64 > MAX_DIM + 1 && items.iter().all(|x| !x.is_array() && !x.is_object()) {
                return Err(too_large(format!("vector of length {} exceeds {}", items.len(), MAX_DIM + 1)));
            }
            items.iter().try_for_each(check_size)
        }
        _ => Ok(()),
    }
}

fn load<T: serde::de::DeserializeOwned>(v: Value) -> CliResult<T> {
    check_size(&v)?;
    Ok(serde_json::from_value(v)?)
}

fn cmd_polar(input: Value) -> CliResult<Outcome> {
    let p: Polyhedron = load(input)?;
    let polar = one_sided_polar(&p)?;
    let text = format!(
        "polar in R^{}: {} inequalities, {} vertices, {} rays\n",
        polar.dim(),
        polar.rows().len(),
        polar.vertices().len(),
        polar.rays().len()
    );
    Outcome::new(&polar, text, true)
}

#[derive(Serialize)]
struct CheckReport {
    property: Property,
    holds: bool,
    /// A point of the inner side outside the outer side.
    witness: Option<RatVector>,
    alpha_star: Extended,
    constant: ConstantReport,
    dual_property: Property,
    dual_holds: bool,
    dual_alpha_star: Extended,
}

fn check_one(q: &Quadruple, polar: &Quadruple, property: Property) -> CliResult<CheckReport> {
    let primal = check_property(property, q);
    let dual = check_property(property.dual(), polar);
    let constant = conedual_core::optimal_constant(property, q);
    let dual_constant = conedual_core::optimal_constant(property.dual(), polar);
    if primal.holds != dual.holds || constant.alpha_star != dual_constant.alpha_star {
        return Err(Failure::Semantic(format!(
            "duality violated for {property}: holds {} vs {}, alpha* {} vs {}",
            primal.holds, dual.holds, constant.alpha_star, dual_constant.alpha_star
        )));
    }
    Ok(CheckReport {
        property,
        holds: primal.holds,
        witness: primal.witness,
        alpha_star: constant.alpha_star.clone(),
        constant,
        dual_property: property.dual(),
        dual_holds: dual.holds,
        dual_alpha_star: dual_constant.alpha_star,
    })
}

fn check_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{}: {} (alpha* = {}, dual {} alpha* = {})\n",
        r.property,
        if r.holds { "holds" } else { "fails" },
        r.alpha_star,
        r.dual_property,
        r.dual_alpha_star
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "  witness {w}");
    }
    s
}

fn cmd_check(input: Value, property: Option<Property>) -> CliResult<Outcome> {
    let q: Quadruple = load(input)?;
    let polar = q.polar();
    match property {
        Some(p) => {
            let r = check_one(&q, &polar, p)?;
            let text = check_text(&r);
            let ok = r.holds;
            Outcome::new(&r, text, ok)
        }
        None => {
            let reports = Property::ALL
                .iter()
                .map(|&p| check_one(&q, &polar, p))
                .collect::<CliResult<Vec<_>>>()?;
            let text = reports.iter().map(check_text).collect();
            let ok = reports.iter().all(|r| r.holds);
            Outcome::new(&reports, text, ok)
        }
    }
}

fn parse_point(s: &str) -> CliResult<RatVector> {
    let parts: Vec<Value> = s.split(',').map(|t| Value::String(t.trim().to_string())).collect();
    serde_json::from_value(Value::Array(parts)).map_err(|e| Failure::Parse(format!("bad point {s:?}: {e}")))
}

fn instance(input: Value, p: Option<Exponent>) -> CliResult<DirectSumInstance> {
    let inst: DirectSumInstance = load(input)?;
    Ok(match p {
        Some(p) => inst.with_exponent(p),
        None => inst,
    })
}

fn cmd_ando(mut input: Value, x: Option<String>, p: Option<Exponent>) -> CliResult<Outcome> {
    let field = input.as_object_mut().and_then(|m| m.remove("x"));
    let x = match (x, field) {
        (Some(s), _) => parse_point(&s)?,
        (None, Some(v)) => serde_json::from_value(v)?,
        (None, None) => return Err(Failure::Semantic("missing point: give \"x\" or --x".into())),
    };
    let inst = instance(input, p)?;
    let r: AndoDecomposition = ando_decompose(&inst, &x.0)?;
    let mut text = format!("x = {} decomposes with norm {}\n", r.x, conedual_core::polyrat::format_rational(&r.norm));
    for (w, xi) in r.xi.iter().enumerate() {
        let _ = writeln!(text, "  xi[{w}] = {xi}");
    }
    Outcome::new(&r, text, true)
}

#[derive(Serialize)]
struct ExactSumsReport {
    d: usize,
    m: usize,
    p: Exponent,
    constants: Vec<ConstantReport>,
    polars: BlockPolarReport,
    normality_conormality: DualConstantsReport,
    additivity_coadditivity: DualConstantsReport,
    ok: bool,
}

fn cmd_sums(cli: &Cli, input: Value, p: Option<Exponent>) -> CliResult<Outcome> {
    let inst = instance(input, p)?;
    if !inst.p.is_exact() {
        let r: SampledReport = sampled_lp_mode(
            &inst,
            cli.samples.unwrap_or(1000),
            cli.seed,
            cli.tol.unwrap_or(INEQUALITY_TOL),
        )?;
        let mut text = format!("p = {}, q = {}, {} trials\n", r.p, r.q, r.trials);
        for x in &r.ratios {
            let bound = x.bound.map_or("inf".to_string(), |b| format!("{b:.6}"));
            let _ = writeln!(
                text,
                "  {}: max ratio {:.6}, bound {bound}, {} violations",
                x.property, x.max_observed, x.violations
            );
        }
        let ok = r.ok;
        return Outcome::new(&r, text, ok);
    }
    let constants = SumProperty::ALL
        .iter()
        .map(|&prop| sum_constant(&inst, prop))
        .collect::<conedual_core::Result<Vec<_>>>()?;
    let polars = check_block_polars(&inst)?;
    let nc = verify_normality_duality(&inst)?;
    let ac = verify_additivity_duality(&inst)?;
    let ok = polars.all_hold && nc.all_hold && ac.all_hold;
    let mut text = format!("d = {}, m = {}, p = {}\n", inst.d(), inst.m(), inst.p);
    for (prop, c) in SumProperty::ALL.iter().zip(&constants) {
        let _ = writeln!(text, "  {prop}: {}", c.alpha_star);
    }
    let _ = writeln!(
        text,
        "  polar correspondences: {}\n  dual constants agree: {}",
        if polars.all_hold { "hold" } else { "fail" },
        if nc.all_hold && ac.all_hold { "yes" } else { "no" }
    );
    let r = ExactSumsReport {
        d: inst.d(),
        m: inst.m(),
        p: inst.p.clone(),
        constants,
        polars,
        normality_conormality: nc,
        additivity_coadditivity: ac,
        ok,
    };
    Outcome::new(&r, text, ok)
}

fn cmd_cstar(cli: &Cli, item: u8, n: usize, polar: bool) -> CliResult<Outcome> {
    let samples = cli.samples.unwrap_or(1000);
    let tol = cli.tol.unwrap_or(INEQUALITY_TOL);
    let r: SampleReport = if polar {
        check_cone_polars(item, n, samples, cli.seed, tol)?
    } else {
        check_order_inequality(item, n, samples, cli.seed, tol)?
    };
    let text = format!(
        "{} item {item}, n = {n}: {} samples, max violation {:e}, {} violations\n",
        if polar { "polar identity" } else { "inequality" },
        r.samples,
        r.max_violation,
        r.violations
    );
    let ok = r.ok;
    Outcome::new(&r, text, ok)
}

/// Suite outcome without wall-clock time, so reports are reproducible.
#[derive(Serialize)]
struct SuiteLine {
    name: String,
    instances: usize,
    passed: bool,
    failures: Vec<String>,
}

fn cmd_selftest(seed: u64) -> CliResult<Outcome> {
    let lines: Vec<SuiteLine> = suites::selftest(seed)
        .into_iter()
        .map(|o| SuiteLine {
            passed: o.passed(),
            name: o.name,
            instances: o.instances,
            failures: o.failures,
        })
        .collect();
    let mut text = String::new();
    for l in &lines {
        let _ = writeln!(text, "{} {} ({} instances)", if l.passed { "PASS" } else { "FAIL" }, l.name, l.instances);
        for f in &l.failures {
            let _ = writeln!(text, "    {f}");
        }
    }
    let ok = lines.iter().all(|l| l.passed);
    Outcome::new(&lines, text, ok)
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Polar => cmd_polar(read_input(&cli.input)?),
        Command::Check { property } => cmd_check(read_input(&cli.input)?, *property),
        Command::Ando { x, p } => cmd_ando(read_input(&cli.input)?, x.clone(), p.clone()),
        Command::Sums { p } => cmd_sums(cli, read_input(&cli.input)?, p.clone()),
        Command::Cstar { item, n, polar } => cmd_cstar(cli, *item, *n, *polar),
        Command::Selftest => cmd_selftest(cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("values always serialise")
                ),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("conedual: parse error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Semantic(msg)) => {
            eprintln!("conedual: {msg}");
            ExitCode::from(3)
        }
    }
}
