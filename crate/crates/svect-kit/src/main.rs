use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Map, Value};
use svect::bundles::{parse_bundle, shom_dims, shom_routes};
use svect::coxzoo::{
    ade_table, classify_nakayama, classify_table, coxeter_number, coxpol, cy_dimension, factor_cyclotomic,
    orlov_trichotomy, TypeSymbol,
};
use svect::picard::parse_lelt;
use svect::selfcheck::{run_suite, Suite};
use svect::tubular::{cover_structure_236, parse_rational, TubularType};
use svect::{Error, WeightTriple};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_MAX_N: i64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "svect-kit", version, about = "Invariants of stable categories of vector bundles on weighted projective lines")]
struct Cli {
    /// Output format; `cover` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical invariants of a weight triple.
    Info { a: i64, b: i64, c: i64 },
    /// Coxeter polynomial of a symbol such as `svect:2,3,7` or `nak:12,3`.
    Coxpol {
        symbol: String,
        /// Also factor into cyclotomic polynomials.
        #[arg(long)]
        factor: bool,
    },
    /// Symbols sharing the Coxeter polynomial of the Nakayama algebra A_n(r).
    Classify { n: i64, r: i64 },
    /// Regenerate a table.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Run an invariant suite: all, picard, bundles, ktheory, coxzoo, tubular.
    Check { suite: String },
    /// Suspension slope map and its inverse for a tubular type.
    SlopeMap {
        #[arg(value_name = "TYPE")]
        kind: String,
        q: String,
    },
    /// Projective cover of a homogeneous quasi-simple of slope d/r.
    Cover {
        #[arg(value_name = "TYPE")]
        kind: String,
        slope: String,
    },
    /// Normal form and dimensions of an element of the grading group.
    Lelt { a: i64, b: i64, c: i64, expr: String },
    /// Determinant, rank, slope and hulls of an extension bundle.
    Bundle { a: i64, b: i64, c: i64, expr: String },
    /// Dimension of stable Hom from one bundle to a shift of another.
    Shom {
        a: i64,
        b: i64,
        c: i64,
        source: String,
        target: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Debug, Subcommand)]
enum TableKind {
    /// Nakayama classification table.
    Hs {
        #[arg(long, default_value_t = 12)]
        max_n: i64,
    },
    /// The (2,3,n) chain with CY dimension, Euler characteristic, Coxeter number and type.
    Ade {
        #[arg(long, default_value_t = 9)]
        max_p: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::NotReducible(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    command: String,
    data: Value,
    provenance: Vec<String>,
}

struct Outcome {
    report: Report,
    ok: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report data serializes")
}

fn rational(q: Rational64) -> String {
    q.to_string()
}

fn triple(a: i64, b: i64, c: i64) -> Result<WeightTriple, Failure> {
    Ok(WeightTriple::new(a, b, c)?)
}

fn max_n() -> Result<i64, Failure> {
    match std::env::var("SVECTKIT_MAX_N") {
        Ok(v) => v
            .trim()
            .parse::<i64>()
            .map_err(|_| Failure::Usage(format!("SVECTKIT_MAX_N must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn cmd_info(a: i64, b: i64, c: i64) -> Result<(Value, Vec<String>), Failure> {
    let w = triple(a, b, c)?;
    let cy = cy_dimension(w);
    let orlov = orlov_trichotomy(w);
    let data = json!({
        "weights": w.weights(),
        "chi": rational(w.euler_characteristic()),
        "pbar": w.pbar(),
        "omega": w.omega().to_string(),
        "dom": w.dom().to_string(),
        "gorenstein": w.gorenstein_number(),
        "cy": cy.to_string(),
        "cy_canceled": rational(cy.canceled),
        "coxeter_number": coxeter_number(w)?,
        "coh_rank": w.coh_rank(),
        "stab_rank": w.stab_rank(),
        "orlov_verdict": orlov.verdict.to_string(),
        "orlov_window": orlov.window.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    let provenance = vec![
        format!("cy formula: case {}", cy.case),
        "coxeter number: formula checked against matrix order".into(),
        "gorenstein number: rank difference of Grothendieck groups".into(),
    ];
    Ok((data, provenance))
}

fn cmd_coxpol(symbol: &str, factor: bool) -> Result<(Value, Vec<String>), Failure> {
    let s: TypeSymbol = symbol.parse()?;
    let p = coxpol(&s)?;
    let mut data = Map::new();
    data.insert("symbol".into(), json!(s.to_string()));
    data.insert("degree".into(), json!(p.degree()));
    data.insert("coxpol".into(), json!(p.to_string()));
    if factor {
        let f = factor_cyclotomic(&p)?;
        data.insert("factorization".into(), json!(f.to_string()));
        data.insert("cyclotomic".into(), json!(f.is_complete()));
    }
    let formula = match s {
        TypeSymbol::StableVect(_) => "product formula in u_n = x^n - 1",
        TypeSymbol::Canonical(_) => "(x-1)^2 v_a v_b v_c",
        _ => "characteristic polynomial of -C^{-T} C",
    };
    Ok((Value::Object(data), vec![format!("formula: {formula}")]))
}

fn symbols(v: &[TypeSymbol]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn cmd_classify(n: i64, r: i64) -> Result<(Value, Vec<String>), Failure> {
    let cap = max_n()?;
    if n > cap {
        return Err(Failure::Usage(format!("n = {n} exceeds the configured maximum {cap}")));
    }
    let c = classify_nakayama(n, r)?;
    let data = json!({
        "n": c.n,
        "r": c.r,
        "coxpol": c.coxpol.to_string(),
        "matches": symbols(&c.matches),
        "spontaneous": symbols(&c.spontaneous),
    });
    Ok((data, vec!["matches certify equal Coxeter polynomials only".into()]))
}

fn cmd_table(kind: &TableKind) -> Result<(Value, Vec<String>), Failure> {
    match *kind {
        TableKind::Hs { max_n: bound } => {
            let cap = max_n()?;
            if !(2..=cap).contains(&bound) {
                return Err(Failure::Usage(format!("--max-n must lie in 2..={cap}")));
            }
            let rows: Vec<Value> = classify_table(bound)?
                .iter()
                .map(|c| {
                    json!({
                        "n": c.n,
                        "r": c.r,
                        "matches": symbols(&c.matches).join(" "),
                        "spontaneous": symbols(&c.spontaneous).join(" "),
                    })
                })
                .collect();
            Ok((Value::Array(rows), vec!["rows in (n, r) order".into()]))
        }
        TableKind::Ade { max_p } => {
            let cap = max_n()?;
            if !(2..=cap).contains(&max_p) {
                return Err(Failure::Usage(format!("--max-p must lie in 2..={cap}")));
            }
            let rows: Vec<Value> = ade_table(max_p)?
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "cy": r.cy.to_string(),
                        "cy_canceled": rational(r.cy.canceled),
                        "chi": rational(r.chi),
                        "h": r.h,
                        "type": r.kind,
                        "flags": r.flags.join("; "),
                    })
                })
                .collect();
            Ok((Value::Array(rows), vec!["printed values compared where available".into()]))
        }
    }
}

fn cmd_check(suite: &str) -> Result<(Value, Vec<String>, bool), Failure> {
    let s: Suite = suite.parse()?;
    let outcomes = run_suite(s);
    let ok = outcomes.iter().all(|o| o.passed);
    Ok((to_value(&outcomes), vec![format!("suite: {s}")], ok))
}

fn cmd_slope_map(kind: &str, q: &str) -> Result<(Value, Vec<String>), Failure> {
    let t: TubularType = kind.parse()?;
    let q = parse_rational(q)?;
    let data = json!({
        "type": t.to_string(),
        "q": rational(q),
        "alpha": rational(t.alpha(q)),
        "alpha_inv": rational(t.alpha_inv(q)),
    });
    Ok((data, vec![]))
}

fn cmd_cover(kind: &str, slope: &str) -> Result<(Value, Vec<String>), Failure> {
    let t: TubularType = kind.parse()?;
    if t != TubularType::T236 {
        return Err(Failure::Usage(format!("cover is implemented for type 236 only, got {t}")));
    }
    let (d, r) = slope
        .split_once('/')
        .ok_or_else(|| Failure::Usage(format!("slope must be d/r, got {slope:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| Failure::Usage(format!("bad integer {s:?}")))
    };
    let cover = cover_structure_236(parse(d)?, parse(r)?)?;
    let terms: Vec<Value> = cover
        .terms
        .iter()
        .map(|t| json!({ "twist": t.twist.to_string(), "degree": t.twist.delta(), "multiplicity": t.multiplicity }))
        .collect();
    let data = json!({
        "terms": terms,
        "summands": cover.summand_count(),
        "s_rank": cover.s_rank,
        "s_degree": cover.s_degree,
        "kernel_rank": cover.kernel_rank,
        "kernel_degree": cover.kernel_degree,
        "kernel_slope": rational(cover.kernel_slope),
    });
    Ok((data, vec![]))
}

fn cmd_lelt(a: i64, b: i64, c: i64, expr: &str) -> Result<(Value, Vec<String>), Failure> {
    let w = triple(a, b, c)?;
    let x = parse_lelt(w, expr)?;
    let data = json!({
        "normal_form": x.to_string(),
        "l": x.l(),
        "m": x.m(),
        "delta": x.delta(),
        "dim_p": x.dim_p(),
        "dim_s": x.dim_s(),
        "in_cuboid": x.in_cuboid(),
    });
    Ok((data, vec![]))
}

fn cmd_bundle(a: i64, b: i64, c: i64, expr: &str) -> Result<(Value, Vec<String>), Failure> {
    let w = triple(a, b, c)?;
    let input = parse_bundle(w, expr)?;
    let e = input.normalized();
    let unshifted = e.with_susp(0);
    let strs = |h: [svect::LElt; 4]| h.iter().map(|z| z.to_string()).collect::<Vec<_>>();
    let data = json!({
        "input": input.to_string(),
        "bundle": e.to_string(),
        "det": e.det().to_string(),
        "rank": e.rank(),
        "slope": rational(e.slope()),
        "suspension": e.suspend(1).to_string(),
        "tau": e.tau().to_string(),
        "injective_hull": strs(unshifted.injective_hull()?.summands),
        "projective_cover": strs(unshifted.projective_cover()?.summands),
    });
    Ok((data, vec!["hulls are computed for the unshifted bundle".into()]))
}

fn cmd_shom(a: i64, b: i64, c: i64, source: &str, target: &str, n: i64) -> Result<(Value, Vec<String>), Failure> {
    let w = triple(a, b, c)?;
    let s = parse_bundle(w, source)?;
    let t = parse_bundle(w, target)?;
    let value = shom_dims(&s, &t, n)?;
    let routes: Vec<String> = shom_routes(&s, &t, n)?
        .iter()
        .map(|(r, v)| format!("{r:?}={v}"))
        .collect();
    let data = json!({
        "source": s.to_string(),
        "target": t.to_string(),
        "n": n,
        "dim": value.map_or(Value::String("unknown".into()), |v| json!(v)),
        "routes": routes,
    });
    Ok((data, vec![]))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let (command, result) = match &cli.command {
        Command::Info { a, b, c } => (format!("info {a} {b} {c}"), cmd_info(*a, *b, *c)),
        Command::Coxpol { symbol, factor } => (format!("coxpol {symbol}"), cmd_coxpol(symbol, *factor)),
        Command::Classify { n, r } => (format!("classify {n} {r}"), cmd_classify(*n, *r)),
        Command::Table { kind } => {
            let name = match kind {
                TableKind::Hs { max_n } => format!("table hs --max-n {max_n}"),
                TableKind::Ade { max_p } => format!("table ade --max-p {max_p}"),
            };
            (name, cmd_table(kind))
        }
        Command::Check { suite } => {
            let (data, provenance, ok) = cmd_check(suite)?;
            let report = Report {
                tool: "svect-kit",
                version: VERSION,
                command: format!("check {suite}"),
                data,
                provenance,
            };
            return Ok(Outcome { report, ok });
        }
        Command::SlopeMap { kind, q } => (format!("slope-map {kind} {q}"), cmd_slope_map(kind, q)),
        Command::Cover { kind, slope } => (format!("cover {kind} {slope}"), cmd_cover(kind, slope)),
        Command::Lelt { a, b, c, expr } => (format!("lelt {a} {b} {c} {expr}"), cmd_lelt(*a, *b, *c, expr)),
        Command::Bundle { a, b, c, expr } => (format!("bundle {a} {b} {c} {expr}"), cmd_bundle(*a, *b, *c, expr)),
        Command::Shom { a, b, c, source, target, n } => (
            format!("shom {a} {b} {c} {source} {target} {n}"),
            cmd_shom(*a, *b, *c, source, target, *n),
        ),
    };
    let (data, provenance) = result?;
    Ok(Outcome {
        report: Report {
            tool: "svect-kit",
            version: VERSION,
            command,
            data,
            provenance,
        },
        ok: true,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn table_rows(v: &Value) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let items = v.as_array()?;
    let first = items.first()?.as_object()?;
    let header: Vec<String> = first.keys().cloned().collect();
    let rows = items
        .iter()
        .map(|item| header.iter().map(|k| item.get(k).map(scalar).unwrap_or_default()).collect())
        .collect();
    Some((header, rows))
}

fn render_text(report: &Report) -> String {
    let mut out = format!("svect-kit {} :: {}\n", report.version, report.command);
    if let Some((header, rows)) = table_rows(&report.data) {
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push_str(&line(&header));
        out.push('\n');
        for row in &rows {
            out.push_str(&line(row));
            out.push('\n');
        }
    } else if let Some(obj) = report.data.as_object() {
        let width = obj.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in obj {
            match v {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", scalar_object(item)));
                    }
                }
                _ => out.push_str(&format!("{k:<width$}  {}\n", scalar(v))),
            }
        }
    } else if report.data.as_array().is_some_and(|a| a.is_empty()) {
        out.push_str("(no rows)\n");
    }
    for p in &report.provenance {
        out.push_str(&format!("# {p}\n"));
    }
    out
}

fn scalar_object(v: &Value) -> String {
    match v.as_object() {
        Some(obj) => obj
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join("  "),
        None => scalar(v),
    }
}

fn render_tsv(report: &Report) -> String {
    let mut out = String::new();
    if let Some((header, rows)) = table_rows(&report.data) {
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
    } else if let Some(obj) = report.data.as_object() {
        out.push_str("key\tvalue\n");
        for (k, v) in obj {
            out.push_str(&format!("{k}\t{}\n", scalar(v)));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_format = match cli.command {
        Command::Cover { .. } => Format::Json,
        _ => Format::Text,
    };
    let format = cli.format.unwrap_or(default_format);
    match run(&cli) {
        Ok(outcome) => {
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => render_text(&outcome.report),
                Format::Tsv => render_tsv(&outcome.report),
            };
            print!("{text}");
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                if let Some(items) = outcome.report.data.as_array() {
                    for item in items.iter().filter(|i| i["passed"] == Value::Bool(false)) {
                        eprintln!("FAILED {}/{}: {}", scalar(&item["suite"]), scalar(&item["name"]), scalar(&item["detail"]));
                    }
                }
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("svect-kit: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("svect-kit: {msg}");
            ExitCode::from(1)
        }
    }
}
