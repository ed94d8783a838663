//! Command implementations. Each returns the text to emit and an exit code;
//! a report is still produced when verification fails.

use std::str::FromStr;
use std::time::Instant;

use ncinvert::freealg::{FormalMap, NCSeries};
use ncinvert::inversion::{verify_inverse, Engine};
use ncinvert::random::Sampler;
use ncinvert::rings::{PrimeField, Rationals, Ring};
use ncinvert::suite::{identity_names, run_identity, SuiteConfig};
use ncinvert::trees::{
    enumerate_pbtrees, factorial_identity_check, gf_identity_check, TreeExpansion,
};
use serde_json::{json, Value};

use crate::engines::{check_engine, EngineRing};
use crate::error::CliError;
use crate::pretty::{format_map, format_series};
use crate::source::{MapSource, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json or text")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub ring: RingSpec,
    pub degree: usize,
    pub vars: Option<Vec<String>>,
    pub format: Format,
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub exit: u8,
}

impl Report {
    fn new(body: String, ok: bool) -> Self {
        Self {
            body,
            exit: if ok { 0 } else { 4 },
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn check_degree(degree: usize) -> Result<(), CliError> {
    if degree == 0 {
        return Err(CliError::Precondition(
            "the degree must be at least 1".into(),
        ));
    }
    Ok(())
}

fn prime_field(p: u64) -> Result<PrimeField, CliError> {
    Ok(PrimeField::new(p)?)
}

fn series_json<R: Ring>(s: &[NCSeries<R>]) -> Value {
    json!(s.iter().map(NCSeries::to_json).collect::<Vec<_>>())
}

pub fn invert(text: &str, engine: Option<Engine>, opts: &Options) -> Result<Report, CliError> {
    check_degree(opts.degree)?;
    let src = MapSource::parse(text, opts.vars.as_deref())?;
    match opts.ring {
        RingSpec::Rational => invert_in(&Rationals, &src, engine, opts),
        RingSpec::Gfp(p) => invert_in(&prime_field(p)?, &src, engine, opts),
    }
}

fn invert_in<R: EngineRing>(
    ring: &R,
    src: &MapSource,
    engine: Option<Engine>,
    opts: &Options,
) -> Result<Report, CliError> {
    let engine = engine.unwrap_or_else(|| ring.default_engine());
    check_engine(engine, ring, &opts.ring.to_string())?;
    let f = src.f_map(ring, opts.degree)?;
    let start = Instant::now();
    let g = ring.run(engine, &f.nonlinear_part())?;
    let invert_ms = millis(start);
    let start = Instant::now();
    let summary = verify_inverse(&f, &g)?.summary();
    let verify_ms = millis(start);
    let body = match opts.format {
        Format::Json => {
            let mut v = json!({
                "engine": engine.name(),
                "ring": opts.ring.to_string(),
                "degree": opts.degree,
                "vars": src.vars,
                "map": series_json(g.components()),
                "verified": summary.verified,
                "verification": summary,
            });
            if opts.timings {
                v["timings_ms"] = json!({ "invert": invert_ms, "verify": verify_ms });
            }
            json_text(&v)
        }
        Format::Text => {
            let mut s = format!(
                "# inverse by {engine} over {}, D = {}, {}\n",
                opts.ring,
                opts.degree,
                if summary.verified {
                    "verified"
                } else {
                    "NOT verified"
                }
            );
            if opts.timings {
                s.push_str(&format!("# invert {invert_ms} ms, verify {verify_ms} ms\n"));
            }
            s.push_str(&format_map(g.components(), &src.vars));
            s
        }
    };
    Ok(Report::new(body, summary.verified))
}

pub fn verify(f_text: &str, g_text: &str, opts: &Options) -> Result<Report, CliError> {
    check_degree(opts.degree)?;
    let f_src = MapSource::parse(f_text, opts.vars.as_deref())?;
    let g_src = MapSource::parse(g_text, Some(&f_src.vars))?;
    match opts.ring {
        RingSpec::Rational => verify_in(&Rationals, &f_src, &g_src, opts),
        RingSpec::Gfp(p) => verify_in(&prime_field(p)?, &f_src, &g_src, opts),
    }
}

fn verify_in<R: Ring>(
    ring: &R,
    f_src: &MapSource,
    g_src: &MapSource,
    opts: &Options,
) -> Result<Report, CliError> {
    let f = f_src.f_map(ring, opts.degree)?;
    let g = g_src.general_map(ring, opts.degree)?;
    let summary = verify_inverse(&f, &g)?.summary();
    let body = match opts.format {
        Format::Json => json_text(&json!({
            "ring": opts.ring.to_string(),
            "degree": opts.degree,
            "verification": summary,
        })),
        Format::Text => match &summary.first_residual {
            None => format!("verified to degree {}\n", opts.degree),
            Some(r) => {
                let word: Vec<&str> = r.word.iter().map(|&l| f_src.vars[l - 1].as_str()).collect();
                format!(
                    "not verified: first failing degree {}, {} component {} has {} * {}\n",
                    summary.first_failing_degree.unwrap_or(0),
                    r.direction,
                    r.component,
                    r.coeff,
                    if word.is_empty() {
                        "1".to_string()
                    } else {
                        word.join("*")
                    }
                )
            }
        },
    };
    Ok(Report::new(body, summary.verified))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreesMode {
    List,
    Identity,
    Invert(String),
}

pub fn trees(leaves: usize, mode: &TreesMode, opts: &Options) -> Result<Report, CliError> {
    if leaves == 0 {
        return Err(CliError::Precondition(
            "trees need at least one leaf".into(),
        ));
    }
    match mode {
        TreesMode::List => {
            let list = enumerate_pbtrees(leaves)?;
            let body = match opts.format {
                Format::Text => list
                    .iter()
                    .map(|t| format!("{} {}\n", t.serialize(), t.reduced_factorial()))
                    .collect(),
                Format::Json => json_text(&json!({
                    "leaves": leaves,
                    "count": list.len(),
                    "trees": list.iter().map(|t| json!({
                        "tree": t.serialize(),
                        "factorial": t.reduced_factorial().to_string(),
                    })).collect::<Vec<_>>(),
                })),
            };
            Ok(Report::new(body, true))
        }
        TreesMode::Identity => {
            let sums = factorial_identity_check(leaves);
            let gf = gf_identity_check(leaves);
            let ok = gf && sums.iter().all(|(_, s)| *s == num_traits::One::one());
            let rows: Vec<_> = sums
                .iter()
                .map(|(m, s)| json!({ "leaves": m, "sum": s.to_string() }))
                .collect();
            let body = match opts.format {
                Format::Json => json_text(&json!({
                    "leaves": leaves,
                    "sums": rows,
                    "generating_function": gf,
                    "holds": ok,
                })),
                Format::Text => {
                    let mut s: String = sums
                        .iter()
                        .map(|(m, q)| format!("m = {m}: sum of 1/T! = {q}\n"))
                        .collect();
                    s.push_str(&format!("generating function check: {gf}\n"));
                    s
                }
            };
            Ok(Report::new(body, ok))
        }
        TreesMode::Invert(text) => {
            check_degree(opts.degree)?;
            if opts.ring != RingSpec::Rational {
                return Err(CliError::Precondition(
                    "the tree expansion divides by tree factorials and needs --ring rational"
                        .into(),
                ));
            }
            let src = MapSource::parse(text, opts.vars.as_deref())?;
            let f = src.f_map(&Rationals, opts.degree)?;
            let mut expansion = TreeExpansion::new(&f.nonlinear_part())?;
            let nm = expansion.nm(leaves)?;
            let count = enumerate_pbtrees(leaves)?.len();
            let body = match opts.format {
                Format::Json => json_text(&json!({
                    "leaves": leaves,
                    "trees": count,
                    "degree": opts.degree,
                    "vars": src.vars,
                    "n_m": series_json(&nm),
                })),
                Format::Text => {
                    let mut s = format!("# N_[{leaves}] from {count} trees, D = {}\n", opts.degree);
                    s.push_str(&format_map(&nm, &src.vars));
                    s
                }
            };
            Ok(Report::new(body, true))
        }
    }
}

pub fn identities(
    config: &SuiteConfig,
    only: &[String],
    opts: &Options,
) -> Result<Report, CliError> {
    let names: Vec<&str> = if only.is_empty() {
        identity_names()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let mut results = Vec::new();
    for name in names {
        let outcome = run_identity(name, config).ok_or_else(|| {
            CliError::Precondition(format!(
                "unknown identity {name:?}; known: {}",
                identity_names().join(", ")
            ))
        })?;
        results.push(outcome);
    }
    let ok = results.iter().all(|r| r.ok());
    let body = match opts.format {
        Format::Json => json_text(&json!({
            "config": config,
            "results": results,
            "passed": ok,
        })),
        Format::Text => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &results {
                s.push_str(&format!(
                    "{} {:width$} {}/{}\n",
                    if r.ok() { "PASS" } else { "FAIL" },
                    r.name,
                    r.passed,
                    r.trials
                ));
                for e in &r.errors {
                    s.push_str(&format!("     {e}\n"));
                }
            }
            s
        }
    };
    Ok(Report::new(body, ok))
}

/// A single degree `D` or an inclusive range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub from: usize,
    pub to: usize,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected a degree or a range like 4..8, found {s:?}");
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None => {
                let d = s.parse().map_err(|_| bad())?;
                (d, d)
            }
        };
        if from == 0 || from > to {
            return Err(bad());
        }
        Ok(Self { from, to })
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    /// Map texts with display names; random maps are drawn when empty.
    pub maps: Vec<(String, String)>,
    pub degrees: DegreeRange,
    pub engines: Vec<Engine>,
    pub seed: u64,
    pub random_maps: usize,
    pub arity: usize,
}

pub fn bench(plan: &BenchPlan, opts: &Options) -> Result<Report, CliError> {
    match opts.ring {
        RingSpec::Rational => bench_in(&Rationals, plan, opts),
        RingSpec::Gfp(p) => bench_in(&prime_field(p)?, plan, opts),
    }
}

fn random_source<R: Ring>(ring: &R, sampler: &mut Sampler, arity: usize) -> MapSource {
    let vars: Vec<String> = (1..=arity).map(|i| format!("z{i}")).collect();
    let h = sampler.h(ring, arity, 3, 3);
    let components = h
        .iter()
        .enumerate()
        .map(|(i, hi)| {
            (
                format!("{} - ({})", vars[i], format_series(hi, &vars)),
                crate::expr::Pos {
                    line: i + 1,
                    col: 1,
                },
            )
        })
        .collect();
    MapSource { vars, components }
}

fn bench_in<R: EngineRing>(ring: &R, plan: &BenchPlan, opts: &Options) -> Result<Report, CliError> {
    let engines: Vec<Engine> = if plan.engines.is_empty() {
        Engine::for_characteristic(ring.characteristic())
    } else {
        for &e in &plan.engines {
            check_engine(e, ring, &opts.ring.to_string())?;
        }
        plan.engines.clone()
    };
    let mut sources = Vec::new();
    for (name, text) in &plan.maps {
        sources.push((name.clone(), MapSource::parse(text, opts.vars.as_deref())?));
    }
    if sources.is_empty() {
        let mut sampler = Sampler::new(plan.seed);
        for i in 0..plan.random_maps {
            sources.push((
                format!("random-{i}"),
                random_source(ring, &mut sampler, plan.arity),
            ));
        }
    }
    let mut csv = String::from("map,engine,n,D,wall_ms,term_count,max_coeff_bits\n");
    for (name, src) in &sources {
        for d in plan.degrees.from..=plan.degrees.to {
            let f = src.f_map(ring, d)?;
            let h = f.nonlinear_part();
            let mut reference: Option<FormalMap<R>> = None;
            let mut rows = Vec::new();
            for &engine in &engines {
                let start = Instant::now();
                let g = ring.run(engine, &h)?;
                let ms = millis(start);
                match &reference {
                    None => {
                        if !verify_inverse(&f, &g)?.verified() {
                            return Err(CliError::Verification(format!(
                                "{engine} inverse of {name} fails at D = {d}"
                            )));
                        }
                        reference = Some(g.clone());
                    }
                    Some(r) if *r != g => {
                        return Err(CliError::Verification(format!(
                            "{engine} disagrees with {} on {name} at D = {d}",
                            engines[0]
                        )));
                    }
                    Some(_) => {}
                }
                let bits = g
                    .components()
                    .iter()
                    .flat_map(|c| c.terms().map(|(_, v)| ring.coeff_bits(v)))
                    .max()
                    .unwrap_or(0);
                let wall = if opts.timings {
                    format!("{ms}")
                } else {
                    "-".into()
                };
                rows.push(format!(
                    "{name},{engine},{},{d},{wall},{},{bits}\n",
                    src.arity(),
                    g.term_count()
                ));
            }
            csv.extend(rows);
        }
    }
    Ok(Report::new(csv, true))
}
