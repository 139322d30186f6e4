//! One function per subcommand; each returns the process exit code.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use seqsubset::bounds::{self, BoundReport, Outcome, Selection};
use seqsubset::channel::{apply_channel, ErrorPattern};
use seqsubset::constructions::{
    construct1, construct2, construct3, construct4, construct4_prime, ConstructionCertificate,
    Indexing,
};
use seqsubset::distance::{bruteforce_distance, seqsubset_distance, Side};
use seqsubset::{Code, DecodeOptions, Error, Pool};
use serde_json::{json, Value};

use crate::grid::parse_list;
use crate::io::{emit, Io};
use crate::{BoundSelection, Cli, Command, ConstructOut, Construction, Format, InnerCodes};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_NOT_APPLICABLE: u8 = 4;
pub const EXIT_CONTRADICTION: u8 = 5;

/// Bad flag combination detected after argument parsing.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<Usage>().is_some() {
            return EXIT_USAGE;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::NotApplicable(_) => EXIT_NOT_APPLICABLE,
                Error::Contradiction(_) => EXIT_CONTRADICTION,
                _ => EXIT_DATA,
            };
        }
    }
    EXIT_DATA
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let io = |multiset: bool| Io {
        dna: g.dna,
        multiset,
    };
    match &cli.command {
        Command::Distance {
            a,
            b,
            multiset,
            oracle,
        } => distance(&io(*multiset), g.format, a, b, *oracle),
        Command::Mindist {
            code,
            multiset,
            pairs,
        } => mindist(&io(*multiset), g.format, g.verbose, code, *pairs),
        Command::Decode {
            code,
            received,
            multiset,
            dedup,
        } => decode(&io(*multiset), g.format, code, received, *dedup),
        Command::Construct { which } => construct(&io(false), g.verbose, which),
        Command::Bound {
            kind,
            q,
            len,
            m,
            d,
            k,
            inner,
        } => bound(
            g.format,
            *kind,
            q,
            len,
            m,
            d.as_deref(),
            k.as_deref(),
            inner.as_deref(),
        ),
        Command::Simulate {
            code,
            pattern,
            trials,
            seed,
            codeword,
        } => simulate(
            &io(false),
            g.format,
            code,
            pattern,
            *trials,
            *seed,
            *codeword,
        ),
        Command::Verify {
            code,
            multiset,
            spot,
            seed,
        } => verify(&io(*multiset), g.format, code, *spot, *seed),
    }
}

fn jsonl(v: Value) {
    println!("{v}");
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn distance(io: &Io, format: Format, a_path: &Path, b_path: &Path, oracle: bool) -> Result<u8> {
    let a = io.pool(a_path)?;
    let b = io.pool(b_path)?;
    let r = seqsubset_distance(&a, &b)?;
    let checked = if oracle {
        let brute = bruteforce_distance(&a, &b).context("oracle")?;
        if brute.distance != r.distance {
            return Err(Error::Contradiction(format!(
                "matching gives {} but exhaustive search gives {}",
                r.distance, brute.distance
            ))
            .into());
        }
        Some(brute.distance)
    } else {
        None
    };

    let (dom, cod) = match r.domain {
        Side::First => (&a, &b),
        Side::Second => (&b, &a),
    };
    let len = a.params().len() as u64;
    let mut used = vec![false; cod.len()];
    let mut matched = Vec::new();
    for (i, &j) in r.witness.images().iter().enumerate() {
        used[j] = true;
        let (x, y) = (&dom.members()[i], &cod.members()[j]);
        let cost = seqsubset::hamming(x, y)?;
        matched.push((io.seq(x), io.seq(y), cost));
    }
    let unmatched: Vec<String> = cod
        .members()
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(s, _)| io.seq(s))
        .collect();
    let side = |s: Side| match s {
        Side::First => "first",
        Side::Second => "second",
    };
    let other = match r.domain {
        Side::First => Side::Second,
        Side::Second => Side::First,
    };

    match format {
        Format::Text => {
            println!("{}", r.distance);
            println!("witness ({} -> {}):", side(r.domain), side(other));
            for (x, y, c) in &matched {
                println!("  {x} -> {y}  {c}");
            }
            for y in &unmatched {
                println!("  unmatched {y}  {len}");
            }
            if let Some(o) = checked {
                println!("oracle: {o} (agrees)");
            }
        }
        Format::Csv => {
            println!("distance,oracle,witness");
            let w: Vec<String> = matched.iter().map(|(x, y, _)| format!("{x}>{y}")).collect();
            let o = checked.map(|o| o.to_string()).unwrap_or_default();
            println!("{},{o},{}", r.distance, csv_field(&w.join(";")));
        }
        Format::Jsonl => jsonl(json!({
            "distance": r.distance,
            "domain": side(r.domain),
            "witness": matched.iter().map(|(x, y, c)| json!({"from": x, "to": y, "cost": c})).collect::<Vec<_>>(),
            "unmatched": unmatched,
            "oracle": checked,
        })),
    }
    Ok(EXIT_OK)
}

fn mindist(io: &Io, format: Format, verbose: u8, path: &Path, pairs: bool) -> Result<u8> {
    let code = io.code(path)?;
    let d = code.min_distance()?;
    let radius = code.correction_radius()?;
    if verbose > 0 {
        eprintln!(
            "{} codewords, q={}, L={}, sizes {}..={}",
            code.len(),
            code.params().q(),
            code.params().len(),
            code.codewords().iter().map(Pool::len).min().unwrap_or(0),
            code.max_size()
        );
    }
    let all = if pairs {
        code.pairwise_distances()?
    } else {
        Vec::new()
    };
    match format {
        Format::Text => {
            println!("{d}");
            if pairs {
                for (i, j, dij) in &all {
                    println!("X{} X{} {dij}", i + 1, j + 1);
                }
            }
        }
        Format::Csv => {
            if pairs {
                println!("i,j,distance");
                for (i, j, dij) in &all {
                    println!("{},{},{dij}", i + 1, j + 1);
                }
            } else {
                println!("min_distance,radius,codewords");
                println!("{d},{radius},{}", code.len());
            }
        }
        Format::Jsonl => {
            jsonl(json!({"min_distance": d, "radius": radius, "codewords": code.len()}));
            for (i, j, dij) in &all {
                jsonl(json!({"i": i + 1, "j": j + 1, "distance": dij}));
            }
        }
    }
    Ok(EXIT_OK)
}

fn decode(io: &Io, format: Format, code_path: &Path, received: &Path, dedup: bool) -> Result<u8> {
    let code = io.code(code_path)?;
    let y = io.pool(received)?;
    let out = code.decode(
        &y,
        DecodeOptions {
            dedup_multiset: dedup,
        },
    )?;
    let runner = out
        .runner_up_distance
        .map(|r| r.to_string())
        .unwrap_or_default();
    match format {
        Format::Text => {
            let flag = if out.ambiguous { " (ambiguous)" } else { "" };
            println!("X{} distance={}{flag}", out.index + 1, out.distance);
            if let Some(r) = out.runner_up_distance {
                println!("runner_up={r}");
            }
            println!("decoded={}", io.pool_inline(&out.decoded));
        }
        Format::Csv => {
            println!("index,distance,runner_up,ambiguous");
            println!(
                "{},{},{runner},{}",
                out.index + 1,
                out.distance,
                out.ambiguous
            );
        }
        Format::Jsonl => jsonl(json!({
            "index": out.index + 1,
            "distance": out.distance,
            "runner_up": out.runner_up_distance,
            "ambiguous": out.ambiguous,
            "decoded": out.decoded.members().iter().map(|s| io.seq(s)).collect::<Vec<_>>(),
        })),
    }
    Ok(EXIT_OK)
}

fn inner_codes(
    io: &Io,
    inner: &InnerCodes,
) -> Result<(
    seqsubset::conventional::ConventionalCode,
    seqsubset::conventional::ConventionalCode,
)> {
    Ok((
        io.conventional(&inner.c1, inner.trust_d1)?,
        io.conventional(&inner.c2, inner.trust_d2)?,
    ))
}

fn read_index_map(path: &Path) -> Result<Vec<usize>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| {
            t.parse::<usize>().map_err(|_| {
                anyhow!(Error::InvalidParams(format!(
                    "index map entry '{t}' is not a position"
                )))
            })
        })
        .collect()
}

fn construct(io: &Io, verbose: u8, which: &Construction) -> Result<u8> {
    let (built, out): (_, &ConstructOut) = match which {
        Construction::C1 { q, len, m, n, out } => (construct1(*q, *len, *m, *n)?, out),
        Construction::C2 { inner, out } => {
            let (c1, c2) = inner_codes(io, inner)?;
            (construct2(&c1, &c2)?, out)
        }
        Construction::C3 {
            inner,
            index_map,
            as_listed,
            out,
        } => {
            let (c1, c2) = inner_codes(io, inner)?;
            let indexing = match (index_map, as_listed) {
                (Some(p), _) => Indexing::Explicit(read_index_map(p)?),
                (None, true) => Indexing::AsListed,
                (None, false) => Indexing::Canonical,
            };
            (construct3(&c1, &c2, &indexing)?, out)
        }
        Construction::C4 { inner, out } => {
            let (c1, c2) = inner_codes(io, inner)?;
            (construct4(&c1, &c2)?, out)
        }
        Construction::C4p { inner, fold, out } => {
            let (c1, c2) = inner_codes(io, inner)?;
            (construct4_prime(&c1, &c2, *fold)?, out)
        }
    };
    let (code, mut cert) = built;
    let mut status = EXIT_OK;
    let mut problem = None;
    if !out.no_verify {
        match cert.verify(&code) {
            Ok(()) => {}
            Err(e @ Error::InstanceTooLarge { .. }) => eprintln!("note: not verified: {e}"),
            Err(e @ Error::Contradiction(_)) => {
                status = EXIT_CONTRADICTION;
                problem = Some(e);
            }
            Err(e) => return Err(e.into()),
        }
    }
    let text = format!(
        "{}{}",
        cert.to_comment_lines(),
        seqsubset::format::serialize_code(&code)
    );
    emit(out.output.as_deref(), &io.render(text))?;

    let claim = cert
        .claimed_min_distance
        .map_or_else(|| "undefined".to_string(), |d| d.to_string());
    let observed = cert
        .observed_min_distance
        .map_or_else(|| "not computed".to_string(), |d| d.to_string());
    if verbose > 0 || out.output.is_some() {
        eprintln!(
            "{}: {} codewords, q={}, L={}, claimed d >= {claim}, observed d = {observed}",
            cert.construction,
            code.len(),
            code.params().q(),
            code.params().len()
        );
    }
    if let Some(e) = problem {
        eprintln!("error: {e}");
    }
    Ok(status)
}

#[derive(Debug)]
struct Row {
    q: u32,
    len: usize,
    m: u64,
    d: Option<u64>,
    k: Option<u64>,
    inner: Option<u64>,
    report: BoundReport,
}

#[allow(clippy::too_many_arguments)]
fn bound(
    format: Format,
    kind: BoundSelection,
    q: &str,
    len: &str,
    m: &str,
    d: Option<&str>,
    k: Option<&str>,
    inner: Option<&str>,
) -> Result<u8> {
    let selection = match kind {
        BoundSelection::Special => Selection::Special,
        BoundSelection::Plotkin => Selection::Plotkin,
        BoundSelection::Singleton => Selection::Singleton,
        BoundSelection::Recursive => Selection::Recursive,
        BoundSelection::All => Selection::All,
    };
    if d.is_none() && selection != Selection::Special {
        return Err(usage(format!(
            "bound {} needs --d",
            format!("{kind:?}").to_lowercase()
        )));
    }
    if (k.is_some() || inner.is_some()) && !matches!(selection, Selection::Recursive) {
        return Err(usage("--K and --inner only apply to the recursive bound"));
    }
    let list = |name: &str, s: &str| parse_list(s).map_err(|e| usage(format!("--{name}: {e:#}")));
    let opt_list = |name: &str, s: Option<&str>| -> Result<Vec<Option<u64>>> {
        Ok(match s {
            Some(s) => list(name, s)?.into_iter().map(Some).collect(),
            None => vec![None],
        })
    };
    let qs = list("q", q)?;
    let ls = list("L", len)?;
    let ms = list("M", m)?;
    let ds = opt_list("d", d)?;
    let ks = opt_list("K", k)?;
    let inners = opt_list("inner", inner)?;

    let mut points = Vec::new();
    for &q in &qs {
        for &l in &ls {
            for &m in &ms {
                for &d in &ds {
                    for &k in &ks {
                        for &i in &inners {
                            points.push((q, l, m, d, k, i));
                        }
                    }
                }
            }
        }
    }
    if points.len() > 1 << 20 {
        return Err(usage(format!(
            "grid has {} points; the limit is {}",
            points.len(),
            1 << 20
        )));
    }
    let rows: Vec<Row> = points
        .par_iter()
        .map(|&(q, l, m, d, k, i)| -> Result<Vec<Row>> {
            let q32 = u32::try_from(q)
                .map_err(|_| Error::InvalidParams(format!("q={q} is too large")))?;
            let reports = bounds::evaluate(
                selection,
                q32,
                l as usize,
                m,
                d,
                k.map(BigUint::from),
                i.map(BigUint::from),
            )?;
            Ok(reports
                .into_iter()
                .map(|report| Row {
                    q: q32,
                    len: l as usize,
                    m,
                    d,
                    k,
                    inner: i,
                    report,
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
    let value = |r: &BoundReport| match &r.outcome {
        Outcome::Value(v) => v.to_string(),
        Outcome::NotApplicable(_) => "n/a".to_string(),
    };
    let reason = |r: &BoundReport| match &r.outcome {
        Outcome::Value(_) => String::new(),
        Outcome::NotApplicable(why) => why.clone(),
    };
    let k_shown = |row: &Row| {
        row.report
            .params
            .k
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_else(|| opt(row.k))
    };
    match format {
        Format::Text => {
            let header = ["q", "L", "M", "d", "K", "inner", "bound", "value"];
            let cells: Vec<[String; 8]> = rows
                .iter()
                .map(|r| {
                    [
                        r.q.to_string(),
                        r.len.to_string(),
                        r.m.to_string(),
                        opt(r.d),
                        k_shown(r),
                        opt(r.inner),
                        r.report.kind.to_string(),
                        value(&r.report),
                    ]
                })
                .collect();
            let mut widths = header.map(str::len);
            for c in &cells {
                for (w, s) in widths.iter_mut().zip(c) {
                    *w = (*w).max(s.chars().count());
                }
            }
            let line = |c: &[String]| {
                c.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("{}", line(&header.map(String::from)));
            for (c, r) in cells.iter().zip(&rows) {
                let why = reason(&r.report);
                if why.is_empty() {
                    println!("{}", line(c));
                } else {
                    println!("{}  ({why})", line(c));
                }
            }
        }
        Format::Csv => {
            println!("q,L,M,d,K,inner,bound,value,applicable,reason");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.q,
                    r.len,
                    r.m,
                    opt(r.d),
                    k_shown(r),
                    opt(r.inner),
                    r.report.kind,
                    value(&r.report),
                    r.report.is_applicable(),
                    csv_field(&reason(&r.report))
                );
            }
        }
        Format::Jsonl => {
            for r in &rows {
                let v = match r.report.value() {
                    Some(bounds::BoundValue::Integer(n)) => json!(n.to_string()),
                    Some(bounds::BoundValue::Real(x)) => json!(x),
                    None => Value::Null,
                };
                jsonl(json!({
                    "q": r.q, "L": r.len, "M": r.m, "d": r.d, "K": r.report.params.k.as_ref().map(ToString::to_string),
                    "inner": r.inner, "bound": r.report.kind.name(), "value": v,
                    "applicable": r.report.is_applicable(),
                    "reason": match &r.report.outcome { Outcome::NotApplicable(w) => Some(w), _ => None },
                }));
            }
        }
    }
    if rows.iter().any(|r| r.report.is_applicable()) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_NOT_APPLICABLE)
    }
}

fn parse_pattern(s: &str) -> Result<ErrorPattern> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("pattern '{s}' must be nI,nD,nS")))?;
    match parts[..] {
        [n_i, n_d, n_s] => Ok(ErrorPattern::new(n_i, n_d, n_s)),
        _ => Err(usage(format!("pattern '{s}' must be nI,nD,nS"))),
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    recovered: u64,
    ambiguous: u64,
    violations: u64,
    infeasible: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            recovered: self.recovered + o.recovered,
            ambiguous: self.ambiguous + o.ambiguous,
            violations: self.violations + o.violations,
            infeasible: self.infeasible + o.infeasible,
        }
    }
}

fn simulate(
    io: &Io,
    format: Format,
    path: &Path,
    pattern: &str,
    trials: u64,
    seed: u64,
    codeword: Option<usize>,
) -> Result<u8> {
    let code = io.code(path)?;
    let pattern = parse_pattern(pattern)?;
    if code.is_empty() {
        return Err(Error::EmptyCode.into());
    }
    if let Some(c) = codeword {
        if c == 0 || c > code.len() {
            return Err(usage(format!("--codeword must be in 1..={}", code.len())));
        }
    }
    let radius = code.correction_radius().ok();
    let len = code.params().len();
    let bound = pattern.bound(len);

    let tally = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Tally> {
            let idx = codeword.map_or((t % code.len() as u64) as usize, |c| c - 1);
            let sent = &code.codewords()[idx];
            let tr = match apply_channel(sent, &pattern, seed.wrapping_add(t)) {
                Ok(tr) => tr,
                Err(Error::Infeasible(_)) => {
                    return Ok(Tally {
                        infeasible: 1,
                        ..Tally::default()
                    })
                }
                Err(e) => return Err(e.into()),
            };
            let (d, b) = tr.distance_and_bound()?;
            let out = code.decode(&tr.output, DecodeOptions::default())?;
            Ok(Tally {
                recovered: u64::from(out.index == idx && !out.ambiguous),
                ambiguous: u64::from(out.ambiguous),
                violations: u64::from(d > b),
                infeasible: 0,
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;

    let run = trials - tally.infeasible;
    let radius_text = radius
        .map(|r| r.to_string())
        .unwrap_or_else(|| "undefined".into());
    match format {
        Format::Text => {
            println!("{}/{run} recovered", tally.recovered);
            println!("ambiguous={}", tally.ambiguous);
            println!("bound_violations={}", tally.violations);
            println!("infeasible={}", tally.infeasible);
            println!("pattern_bound={bound} radius={radius_text}");
        }
        Format::Csv => {
            println!("trials,recovered,ambiguous,bound_violations,infeasible,pattern_bound,radius");
            println!(
                "{trials},{},{},{},{},{bound},{}",
                tally.recovered,
                tally.ambiguous,
                tally.violations,
                tally.infeasible,
                radius.map(|r| r.to_string()).unwrap_or_default()
            );
        }
        Format::Jsonl => jsonl(json!({
            "trials": trials, "recovered": tally.recovered, "ambiguous": tally.ambiguous,
            "bound_violations": tally.violations, "infeasible": tally.infeasible,
            "pattern_bound": bound, "radius": radius,
        })),
    }
    let guaranteed = radius.is_some_and(|r| bound <= r);
    if tally.violations > 0 {
        eprintln!(
            "error: {} transcripts exceed the pattern bound",
            tally.violations
        );
        return Ok(EXIT_CONTRADICTION);
    }
    if guaranteed && tally.recovered < run {
        eprintln!(
            "error: {} trials within the correction radius were not recovered",
            run - tally.recovered
        );
        return Ok(EXIT_CONTRADICTION);
    }
    if tally.infeasible > 0 {
        eprintln!(
            "error: {} trials could not realize the pattern",
            tally.infeasible
        );
        return Ok(EXIT_DATA);
    }
    Ok(EXIT_OK)
}

/// Metric axioms on codeword triples: all of them for small codes, else
/// `spot` random ones.
fn metric_spot_check(code: &Code, spot: usize, seed: u64) -> Result<(usize, Vec<String>)> {
    let n = code.len();
    let cw = code.codewords();
    let triples: Vec<(usize, usize, usize)> = if n <= 24 {
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..spot)
            .map(|_| {
                (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
            .collect()
    };
    let problems: Vec<String> = triples
        .par_iter()
        .map(|&(i, j, k)| -> Result<Option<String>> {
            let d = |a: usize, b: usize| seqsubset::distance::distance(&cw[a], &cw[b]);
            let (ij, ji, ik, kj) = (d(i, j)?, d(j, i)?, d(i, k)?, d(k, j)?);
            Ok(if ij != ji {
                Some(format!(
                    "d(X{0},X{1}) = {ij} but d(X{1},X{0}) = {ji}",
                    i + 1,
                    j + 1
                ))
            } else if (ij == 0) != (i == j) {
                Some(format!("d(X{},X{}) = {ij}", i + 1, j + 1))
            } else if ij > ik + kj {
                Some(format!(
                    "d(X{i1},X{j1}) = {ij} > d(X{i1},X{k1}) + d(X{k1},X{j1}) = {}",
                    ik + kj,
                    i1 = i + 1,
                    j1 = j + 1,
                    k1 = k + 1
                ))
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((triples.len(), problems))
}

fn verify(io: &Io, format: Format, path: &Path, spot: usize, seed: u64) -> Result<u8> {
    let code = io.code(path)?;
    let raw = io.code_text(path)?;
    let mut contradictions: Vec<String> = Vec::new();
    let mut lines: Vec<(String, Value)> = Vec::new();

    let min = match code.min_distance() {
        Ok(d) => Some(d),
        Err(Error::UndefinedMinimum) => None,
        Err(e) => return Err(e.into()),
    };
    lines.push((
        format!(
            "min_distance={}",
            min.map_or_else(|| "undefined".into(), |d| d.to_string())
        ),
        json!({"check": "min_distance", "value": min}),
    ));

    match ConstructionCertificate::from_comment_lines(&raw)? {
        Some(mut cert) => {
            let claim = cert.claimed_min_distance;
            match cert.verify(&code) {
                Ok(()) => lines.push((
                    format!(
                        "certificate: ok ({}, claimed {}, observed {})",
                        cert.construction,
                        claim.map_or("undefined".into(), |d| d.to_string()),
                        cert.observed_min_distance.map_or("n/a".into(), |d| d.to_string())
                    ),
                    json!({"check": "certificate", "ok": true, "construction": cert.construction.to_string(),
                           "claimed": claim, "observed": cert.observed_min_distance}),
                )),
                Err(Error::Contradiction(msg)) => {
                    lines.push((
                        format!("certificate: VIOLATED ({msg})"),
                        json!({"check": "certificate", "ok": false, "reason": msg}),
                    ));
                    contradictions.push(msg);
                }
                Err(e) => return Err(e.into()),
            }
        }
        None => lines.push((
            "certificate: none".into(),
            json!({"check": "certificate", "ok": null}),
        )),
    }

    if code.len() >= 2 && code.is_constant_size() {
        let check = bounds::check_code_against_bounds(&code)?;
        let applicable = check.reports.iter().filter(|r| r.is_applicable()).count();
        lines.push((
            format!(
                "bounds: {applicable} applicable, {} contradictions",
                check.contradictions.len()
            ),
            json!({"check": "bounds", "applicable": applicable, "contradictions": check.contradictions}),
        ));
        contradictions.extend(check.contradictions);
    } else {
        lines.push((
            "bounds: not applicable (needs two or more codewords of one size)".into(),
            json!({"check": "bounds", "applicable": 0}),
        ));
    }

    let (count, problems) = metric_spot_check(&code, spot, seed)?;
    lines.push((
        format!("metric: {count} triples, {} violations", problems.len()),
        json!({"check": "metric", "triples": count, "violations": problems}),
    ));
    contradictions.extend(problems);

    let ok = contradictions.is_empty();
    match format {
        Format::Text => {
            for (t, _) in &lines {
                println!("{t}");
            }
            println!("{}", if ok { "ok" } else { "CONTRADICTION" });
        }
        Format::Csv => {
            println!("check,result");
            for (t, _) in &lines {
                let (k, v) = t.split_once([':', '=']).unwrap_or((t, ""));
                println!("{},{}", csv_field(k.trim()), csv_field(v.trim()));
            }
        }
        Format::Jsonl => {
            for (_, v) in lines {
                jsonl(v);
            }
            jsonl(json!({"check": "overall", "ok": ok}));
        }
    }
    for c in &contradictions {
        eprintln!("contradiction: {c}");
    }
    Ok(if ok { EXIT_OK } else { EXIT_CONTRADICTION })
}
