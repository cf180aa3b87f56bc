//! `grassmirror` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a mismatch or failed
//! computation, 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use grassmirror::arith::{format_rational, LaurentPoly, PowerSeries};
use grassmirror::dop::{pf_fit, DOp, FitBounds};
use grassmirror::grass;
use grassmirror::hypergeom::{self, ASeries, ASeriesSpec};
use grassmirror::laurent_mirror::{self as lm, MirrorCoeffs};
use grassmirror::mirror;
use grassmirror::pipeline::{self, PipelineConfig, RunReport};
use grassmirror::qh;
use grassmirror::registry::{self, CyCase};

const MAX_ORDER_ENV: &str = "GRASSMIRROR_MAX_ORDER";
/// Facet enumeration is skipped above this dimension.
const MAX_FACET_DIM: usize = 10;

#[derive(Parser)]
#[command(name = "grassmirror", version, about = "Periods, Picard-Fuchs operators and instanton numbers of Calabi-Yau complete intersections in Grassmannians")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Case registry (TOML); defaults to the bundled one.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polytope Δ(k,n), reflexivity, poset binomials and nef-partition.
    Toric { k: usize, n: usize },
    /// A-series of P(k,n).
    Aseries {
        k: usize,
        n: usize,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Keep the auxiliary variables of the grid sum.
        #[arg(long)]
        keep_params: bool,
    },
    /// Factorially modified A-series of a registry case, in z.
    Phi {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Fits a Picard-Fuchs operator to a series.
    PfFit {
        /// Registry case whose modified A-series is fitted.
        #[arg(long, conflicts_with = "series")]
        case: Option<String>,
        /// JSON power series {"var", "trunc", "coeffs"}.
        #[arg(long)]
        series: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 5)]
        max_zdeg: usize,
        #[arg(long, default_value_t = 10)]
        guard: usize,
    },
    /// Scalar operator of the quantum differential system of G(k,n).
    QhOperator { k: usize, n: usize },
    /// Checks that the quantum cohomology operator annihilates the A-series.
    VerifyConjecture {
        k: usize,
        n: usize,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Yukawa coupling K_z of a registry case or of an explicit operator.
    Yukawa {
        #[arg(long)]
        case: Option<String>,
        /// Operator in D = z d/dz form; needs --n0.
        #[arg(long, requires = "n0", conflicts_with = "case")]
        operator: Option<String>,
        #[arg(long)]
        n0: Option<i64>,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Full pipeline for one registry case.
    Instanton {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        yukawa_order: usize,
    },
    /// Lax operator of G(r,s) and its two-point correlators.
    Lax {
        r: usize,
        s: usize,
        /// Largest m for <σ_m([V]) P>.
        #[arg(long, default_value_t = 0)]
        correlators: u32,
    },
    /// Constant-term period Σ_m CT(g^m).
    Period {
        /// JSON {"poly": LaurentPoly, "grading": [...], "params": 1}.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// Mirror complete-intersection system and its period.
    MirrorSystem {
        k: usize,
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Parts separated by '/', entries by ',', e.g. 1/5/2,3,4.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Runs every registry case concurrently.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

/// Command failure, mapped to the exit code.
enum Failure {
    Usage(String),
    Compute(String),
}

type CmdResult = Result<Outcome, Failure>;

struct Outcome {
    json: Value,
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, pass: true }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn max_order() -> Result<usize, Failure> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_ORDER_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(hypergeom::DEFAULT_MAX_TRUNC),
    }
}

fn check_order(order: usize) -> Result<usize, Failure> {
    let cap = max_order()?;
    if order > cap {
        return Err(Failure::Usage(format!(
            "order {order} exceeds the cap {cap} (set {MAX_ORDER_ENV} to raise it)"
        )));
    }
    Ok(cap)
}

fn load_cases(path: &Option<PathBuf>) -> Result<Vec<CyCase>, Failure> {
    match path {
        Some(p) => registry::registry_load(p).map_err(usage),
        None => Ok(registry::default_registry()),
    }
}

fn find(cases: &[CyCase], name: &str) -> Result<CyCase, Failure> {
    registry::find_case(cases, name).map_err(usage)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: malformed JSON: {e}", path.display())))
}

fn series_json(s: &PowerSeries) -> Value {
    json!({ "series": to_json(s), "text": s.polynomial_string() })
}

fn cmd_toric(k: usize, n: usize) -> CmdResult {
    let delta = grass::build_delta(k, n).map_err(usage)?;
    let expected = grass::expected_vertex_count(k, n);
    let hull = if delta.dim <= MAX_FACET_DIM {
        Some(grass::facets_and_reflexivity(&delta.vertices).map_err(compute)?)
    } else {
        None
    };
    let binomials = grass::binomial_equations(k, n).map_err(compute)?;
    let nef = grass::nef_partition_sets(k, n).map_err(compute)?;
    let degree = grass::degree_grassmannian(k, n).map_err(compute)?;
    let facet_count = hull.as_ref().map(|h| h.facets.len());
    let reflexive = hull.as_ref().map(|h| h.reflexive);
    let binom_expected = hypergeom_binomial(n, k);
    let pass = delta.vertices.len() == expected
        && reflexive.unwrap_or(true)
        && facet_count.is_none_or(|c| c as u64 == binom_expected);
    let mut text = format!(
        "Δ({k},{n}): {} vertices (expected {expected}), dimension {}\n",
        delta.vertices.len(),
        delta.dim
    );
    for (l, v) in delta.labels.iter().zip(&delta.vertices) {
        text.push_str(&format!("  {l} = {v:?}\n"));
    }
    match &hull {
        Some(h) => text.push_str(&format!("facets: {} (C(n,k) = {binom_expected}), reflexive: {}\n", h.facets.len(), h.reflexive)),
        None => text.push_str(&format!("facets: skipped (dimension > {MAX_FACET_DIM})\n")),
    }
    text.push_str(&format!("binomial equations: {}\n", binomials.len()));
    for b in &binomials {
        text.push_str(&format!("  {b}\n"));
    }
    text.push_str("nef-partition:\n");
    for (i, set) in nef.iter().enumerate() {
        let names: Vec<String> = set.iter().map(ToString::to_string).collect();
        text.push_str(&format!("  E_{} = {{{}}}\n", i + 1, names.join(", ")));
    }
    text.push_str(&format!("degree of G({k},{n}): {degree}"));
    let json = json!({
        "k": k,
        "n": n,
        "dim": delta.dim,
        "vertices": delta.labels.iter().zip(&delta.vertices).map(|(l, v)| json!({"label": l.to_string(), "coords": v})).collect::<Vec<_>>(),
        "vertex_count": delta.vertices.len(),
        "expected_vertex_count": expected,
        "facet_count": facet_count,
        "reflexive": reflexive,
        "binomials": binomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "nef_partition": nef.iter().map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degree": degree.to_string(),
        "pass": pass,
    });
    Ok(Outcome { json, text, pass })
}

fn hypergeom_binomial(n: usize, k: usize) -> u64 {
    grassmirror::arith::binomial(n as u64, k as u64)
        .try_into()
        .expect("small binomial")
}

fn cmd_aseries(k: usize, n: usize, order: usize, keep_params: bool) -> CmdResult {
    let cap = check_order(order)?;
    let spec = ASeriesSpec::new(k, n, order).keep_params(keep_params).max_trunc(cap);
    match hypergeom::a_series(&spec).map_err(usage)? {
        ASeries::Specialized(s) => Ok(Outcome::ok(series_json(&s), s.polynomial_string())),
        ASeries::Full(multi) => {
            let terms: Vec<Value> = multi
                .terms()
                .map(|((m, aux), c)| json!({"m": m, "aux": aux, "coeff": format_rational(c)}))
                .collect();
            let text = multi
                .terms()
                .map(|((m, aux), c)| format!("q^{m} {aux:?}: {}", format_rational(c)))
                .collect::<Vec<_>>()
                .join("\n");
            let specialized = multi.specialize_ones("q");
            let json = json!({"terms": terms, "specialized": series_json(&specialized)});
            Ok(Outcome::ok(json, text))
        }
    }
}

fn cmd_phi(cases: &[CyCase], name: &str, order: usize) -> CmdResult {
    let cap = check_order(order)?;
    let case = find(cases, name)?;
    let phi = pipeline::modified_series(&case, order, cap).map_err(compute)?;
    Ok(Outcome::ok(
        json!({"case": case.name, "phi": series_json(&phi)}),
        phi.polynomial_string(),
    ))
}

fn cmd_pf_fit(cases: &[CyCase], case: Option<String>, series: Option<PathBuf>, bounds: FitBounds) -> CmdResult {
    let input = match (case, series) {
        (Some(name), None) => {
            let case = find(cases, &name)?;
            let need = (bounds.max_order + 1) * (bounds.max_zdeg + 1) + bounds.guard;
            let cap = check_order(need)?;
            pipeline::modified_series(&case, need, cap).map_err(compute)?
        }
        (None, Some(path)) => {
            let value = read_json(&path)?;
            serde_json::from_value::<PowerSeries>(value).map_err(|e| Failure::Usage(format!("series: {e}")))?
        }
        _ => return Err(Failure::Usage("give exactly one of --case or --series".into())),
    };
    let op = pf_fit(&input, bounds).map_err(compute)?;
    let text = op.to_string();
    Ok(Outcome::ok(json!({"operator": to_json(&op), "text": text}), text))
}

fn cmd_qh_operator(k: usize, n: usize) -> CmdResult {
    let m = qh::build_qh_matrix(k, n, qh::DEFAULT_MAX_DIM).map_err(usage)?;
    let red = qh::scalar_operator(&m, 1).map_err(compute)?;
    let text = red.operator.to_string();
    let json = json!({
        "k": k,
        "n": n,
        "dimension": m.dim(),
        "order": red.operator.order(),
        "operator": to_json(&red.operator),
        "text": text,
    });
    Ok(Outcome::ok(json, text))
}

fn cmd_verify_conjecture(k: usize, n: usize, order: usize) -> CmdResult {
    check_order(order)?;
    let report = qh::verify_conjecture(k, n, order).map_err(compute)?;
    let text = format!(
        "G({k},{n}): operator of order {} {} the A-series to order {order}",
        report.operator.order(),
        if report.pass { "annihilates" } else { "does not annihilate" }
    );
    Ok(Outcome {
        pass: report.pass,
        json: to_json(&report),
        text,
    })
}

fn cmd_yukawa(cases: &[CyCase], case: Option<String>, operator: Option<String>, n0: Option<i64>, order: usize) -> CmdResult {
    let cap = check_order(order)?;
    let (op, n0, case) = match (case, operator) {
        (Some(name), None) => {
            let case = find(cases, &name)?;
            let config = PipelineConfig {
                max_trunc: cap.max(PipelineConfig::default().series_trunc()),
                ..PipelineConfig::default()
            };
            let (op, _) = pipeline::fit_operator(&case, &config).map_err(compute)?;
            (op, case.n0(), Some(case))
        }
        (None, Some(text)) => {
            let op = DOp::parse(&text).map_err(usage)?.with_var("z");
            let n0 = n0.ok_or_else(|| Failure::Usage("--operator needs --n0".into()))?;
            (op, n0.into(), None)
        }
        _ => return Err(Failure::Usage("give exactly one of --case or --operator".into())),
    };
    let kz = mirror::yukawa_z(&op, &n0, order).map_err(compute)?;
    let fixture = case.as_ref().and_then(|c| c.yukawa_fixture(order));
    let matches = fixture.as_ref().map(|f| *f == kz);
    let mut text = kz.polynomial_string();
    if let Some(m) = matches {
        text.push_str(&format!("\nfixture match: {m}"));
    }
    let json = json!({
        "case": case.as_ref().map(|c| c.name.clone()),
        "operator": op.to_string(),
        "n0": n0.to_string(),
        "kz3": series_json(&kz),
        "fixture": fixture.as_ref().map(series_json),
        "fixture_match": matches,
    });
    Ok(Outcome {
        json,
        text,
        pass: matches.unwrap_or(true),
    })
}

fn report_text(r: &RunReport) -> String {
    let mut text = format!(
        "{}: {}\n  operator: {}\n  n_m: {}\n",
        r.case,
        if r.pass { "PASS" } else { "FAIL" },
        r.operator,
        r.instantons.join(", ")
    );
    if !r.expected_instantons.is_empty() {
        text.push_str(&format!("  expected: {}\n", r.expected_instantons.join(", ")));
    }
    if let Some(m) = r.kz_fixture_match {
        text.push_str(&format!("  K_z fixture match: {m}\n"));
    }
    for d in &r.diffs {
        text.push_str(&format!("  mismatch in {}: expected [{}], computed [{}]\n", d.field, d.expected, d.computed));
    }
    text.trim_end().to_string()
}

fn pipeline_config(count: usize, yukawa_order: usize) -> Result<PipelineConfig, Failure> {
    let config = PipelineConfig {
        instanton_count: count,
        yukawa_order,
        ..PipelineConfig::default()
    };
    let cap = check_order(config.series_trunc().max(yukawa_order + 1))?;
    Ok(PipelineConfig { max_trunc: cap, ..config })
}

fn cmd_instanton(cases: &[CyCase], name: &str, count: usize, yukawa_order: usize) -> CmdResult {
    let case = find(cases, name)?;
    let config = pipeline_config(count, yukawa_order)?;
    let report = pipeline::run_case(&case, &config).map_err(compute)?;
    Ok(Outcome {
        pass: report.pass,
        text: report_text(&report),
        json: to_json(&report),
    })
}

fn cmd_verify_all(cases: &[CyCase], count: usize) -> CmdResult {
    let config = pipeline_config(count, PipelineConfig::default().yukawa_order)?;
    let results: Vec<Result<RunReport, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|case| scope.spawn(move || pipeline::run_case(case, &config).map_err(|e| e.to_string())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("worker panicked".into())))
            .collect()
    });
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut passed = 0;
    for (case, result) in cases.iter().zip(&results) {
        match result {
            Ok(r) => {
                passed += usize::from(r.pass);
                lines.push(report_text(r));
                entries.push(to_json(r));
            }
            Err(e) => {
                lines.push(format!("{}: ERROR {e}", case.name));
                entries.push(json!({"case": case.name, "error": e, "pass": false}));
            }
        }
    }
    let pass = passed == cases.len();
    lines.push(format!("{passed}/{} cases pass", cases.len()));
    Ok(Outcome {
        json: json!({"cases": entries, "passed": passed, "total": cases.len(), "pass": pass}),
        text: lines.join("\n"),
        pass,
    })
}

fn cmd_lax(r: usize, s: usize, max_m: u32) -> CmdResult {
    let lax = lm::lax_operator(r, s).map_err(usage)?;
    let text_poly = lm::render(&lax.poly, r, s);
    let mut text = format!("L = {text_poly}\nmonomials: {}", lax.poly.len());
    let correlators = if max_m > 0 {
        let c = lm::correlators(&lax, max_m);
        for x in &c {
            let value = format_rational(&x.value);
            match x.qdeg {
                Some(d) => text.push_str(&format!("\n<σ_{}([V]) P> = {value} q^{d}", x.m)),
                None => text.push_str(&format!("\n<σ_{}([V]) P> = 0", x.m)),
            }
        }
        Some(c)
    } else {
        None
    };
    let json = json!({
        "r": r,
        "s": s,
        "poly": to_json(&lax.poly),
        "text": text_poly,
        "grading": lax.grading(),
        "correlators": correlators.map(|c| to_json(&c)),
    });
    Ok(Outcome::ok(json, text))
}

fn cmd_period(path: &PathBuf, order: usize) -> CmdResult {
    check_order(order)?;
    let value = read_json(path)?;
    let poly: LaurentPoly = serde_json::from_value(value.get("poly").cloned().unwrap_or(Value::Null))
        .map_err(|e| Failure::Usage(format!("poly: {e}")))?;
    let grading: Vec<i64> = serde_json::from_value(value.get("grading").cloned().unwrap_or(Value::Null))
        .map_err(|e| Failure::Usage(format!("grading: {e}")))?;
    let params = value.get("params").and_then(Value::as_u64).unwrap_or(1) as usize;
    if params == 0 || params > poly.nvars() {
        return Err(Failure::Usage(format!("params must be between 1 and {}", poly.nvars())));
    }
    if params == 1 {
        let s = lm::period_ct(&poly, &grading, order, "z").map_err(usage)?;
        return Ok(Outcome::ok(series_json(&s), s.polynomial_string()));
    }
    let map = lm::period_ct_multi(&[poly], &grading, params, order).map_err(usage)?;
    let terms: Vec<Value> = map
        .iter()
        .map(|(e, c)| json!({"exp": e, "coeff": format_rational(c)}))
        .collect();
    let text = map
        .iter()
        .map(|(e, c)| format!("{e:?}: {}", format_rational(c)))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::ok(json!({"terms": terms}), text))
}

fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split('/')
        .map(|part| {
            part.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad partition entry `{x}`"))))
                .collect()
        })
        .collect()
}

fn cmd_mirror_system(k: usize, n: usize, degrees: &[u32], partition: Option<String>, order: usize) -> CmdResult {
    check_order(order)?;
    let partition = match partition {
        Some(p) => parse_partition(&p)?,
        None => lm::default_partition(degrees),
    };
    let coeffs = MirrorCoeffs::canonical(k, n).map_err(usage)?;
    let sys = lm::mirror_system(k, n, degrees, &partition, &coeffs).map_err(usage)?;
    let period = sys.period(order).map_err(compute)?;
    let equations: Vec<String> = sys
        .equations
        .iter()
        .map(|g| format!("1 - ({})", lm::render(g, k, n)))
        .collect();
    let mut text = String::new();
    for (part, eq) in partition.iter().zip(&equations) {
        text.push_str(&format!("J = {part:?}: {eq} = 0\n"));
    }
    text.push_str(&format!("period: {}", period.polynomial_string()));
    let json = json!({
        "k": k,
        "n": n,
        "degrees": degrees,
        "partition": partition,
        "coefficients": to_json(&sys.coeffs),
        "polys": to_json(&sys.polys),
        "equations": equations,
        "period": series_json(&period),
    });
    Ok(Outcome::ok(json, text))
}

fn run(cli: Cli) -> CmdResult {
    let cases = load_cases(&cli.registry)?;
    match cli.command {
        Command::Toric { k, n } => cmd_toric(k, n),
        Command::Aseries { k, n, order, keep_params } => cmd_aseries(k, n, order, keep_params),
        Command::Phi { case, order } => cmd_phi(&cases, &case, order),
        Command::PfFit {
            case,
            series,
            max_order,
            max_zdeg,
            guard,
        } => cmd_pf_fit(
            &cases,
            case,
            series,
            FitBounds {
                max_order,
                max_zdeg,
                guard,
            },
        ),
        Command::QhOperator { k, n } => cmd_qh_operator(k, n),
        Command::VerifyConjecture { k, n, order } => cmd_verify_conjecture(k, n, order),
        Command::Yukawa { case, operator, n0, order } => cmd_yukawa(&cases, case, operator, n0, order),
        Command::Instanton {
            case,
            count,
            yukawa_order,
        } => cmd_instanton(&cases, &case, count, yukawa_order),
        Command::Lax { r, s, correlators } => cmd_lax(r, s, correlators),
        Command::Period { poly, order } => cmd_period(&poly, order),
        Command::MirrorSystem {
            k,
            n,
            degrees,
            partition,
            order,
        } => cmd_mirror_system(k, n, &degrees, partition, order),
        Command::VerifyAll { count } => cmd_verify_all(&cases, count),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(body: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{body}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.json).expect("valid JSON")
            } else {
                out.text
            };
            emit(&body);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            let (code, kind, msg) = match failure {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Compute(m) => (1, "failure", m),
            };
            if json {
                emit(&json!({"error": msg, "kind": kind}).to_string());
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
