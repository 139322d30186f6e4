//! Text formats for pools, codes, explicit sequence lists and generator matrices.
//!
//! Pool file:
//!
//! ```text
//! #q=2 L=4
//! 0 0 1 1
//! 1 0 1 0
//! ```
//!
//! The header is optional when the caller supplies the parameters. Blank lines
//! are ignored and any other line starting with `#` is a comment. A code file
//! has the same header and separates codewords with a line holding exactly
//! `---`; a generator matrix file uses the header `#q=<q> k=<k> n=<n>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::codebook::Code;
use crate::error::{Error, Result};
use crate::seq::{AlphabetParams, Pool, Sequence};

pub const CODEWORD_SEPARATOR: &str = "---";

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Parameters to use when the file has no header; must agree with it otherwise.
    pub params: Option<AlphabetParams>,
    pub multiset: bool,
}

/// Sequences in file order, before any canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceList {
    pub params: AlphabetParams,
    pub sequences: Vec<Sequence>,
}

enum Line<'a> {
    Blank,
    Comment,
    Header(BTreeMap<String, u64>),
    Separator,
    Symbols(&'a str),
}

fn classify(raw: &str) -> Line<'_> {
    let line = raw.trim();
    if line.is_empty() {
        return Line::Blank;
    }
    if line == CODEWORD_SEPARATOR {
        return Line::Separator;
    }
    if let Some(rest) = line.strip_prefix('#') {
        let mut fields = BTreeMap::new();
        for tok in rest.split_whitespace() {
            let Some((k, v)) = tok.split_once('=') else {
                return Line::Comment;
            };
            let Ok(v) = v.parse::<u64>() else {
                return Line::Comment;
            };
            fields.insert(k.to_string(), v);
        }
        if fields.contains_key("q") {
            return Line::Header(fields);
        }
        return Line::Comment;
    }
    Line::Symbols(line)
}

fn parse_symbols(line_no: usize, text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(line_no, format!("'{tok}' is not a nonnegative integer")))
        })
        .collect()
}

fn header_params(line_no: usize, fields: &BTreeMap<String, u64>) -> Result<AlphabetParams> {
    let q = fields["q"];
    let len = fields
        .get("L")
        .copied()
        .ok_or_else(|| Error::parse(line_no, "header is missing L=<length>"))?;
    let q = u32::try_from(q).map_err(|_| Error::parse(line_no, "q is too large"))?;
    AlphabetParams::new(q, len as usize).map_err(|e| Error::parse(line_no, e.to_string()))
}

fn reconcile(
    line_no: usize,
    from_header: AlphabetParams,
    opts: &ParseOptions,
) -> Result<AlphabetParams> {
    if let Some(p) = opts.params {
        if p != from_header {
            return Err(Error::parse(
                line_no,
                format!(
                    "header says q={} L={} but q={} L={} was requested",
                    from_header.q(),
                    from_header.len(),
                    p.q(),
                    p.len()
                ),
            ));
        }
    }
    Ok(from_header)
}

/// Raw parse shared by every sequence-bearing format: returns the parameters
/// and the sequences grouped into `---`-separated blocks.
fn parse_blocks(
    text: &str,
    opts: &ParseOptions,
) -> Result<(AlphabetParams, Vec<Vec<Sequence>>, bool)> {
    let mut params = opts.params;
    let mut raw_rows: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut blocks_rows: Vec<Vec<(usize, Vec<u32>)>> = Vec::new();
    let mut saw_separator = false;
    let mut saw_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        match classify(raw) {
            Line::Blank | Line::Comment => {}
            Line::Header(fields) => {
                if saw_header {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                saw_header = true;
                params = Some(reconcile(line_no, header_params(line_no, &fields)?, opts)?);
            }
            Line::Separator => {
                saw_separator = true;
                blocks_rows.push(std::mem::take(&mut raw_rows));
            }
            Line::Symbols(body) => raw_rows.push((line_no, parse_symbols(line_no, body)?)),
        }
    }
    blocks_rows.push(raw_rows);

    let params = match params {
        Some(p) => p,
        None => {
            let first = blocks_rows.iter().flatten().next().ok_or_else(|| {
                Error::parse(1, "no header and no sequences to infer q and L from")
            })?;
            let max = blocks_rows
                .iter()
                .flatten()
                .flat_map(|(_, r)| r.iter().copied())
                .max()
                .unwrap_or(0);
            AlphabetParams::new((max + 1).max(2), first.1.len())
                .map_err(|e| Error::parse(first.0, e.to_string()))?
        }
    };

    let mut blocks = Vec::with_capacity(blocks_rows.len());
    for rows in blocks_rows {
        let mut seqs = Vec::with_capacity(rows.len());
        for (line_no, row) in rows {
            if row.len() != params.len() {
                return Err(Error::parse(
                    line_no,
                    format!("expected {} symbols, found {}", params.len(), row.len()),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&s| s >= params.q()) {
                return Err(Error::parse(
                    line_no,
                    format!("symbol {bad} is not below q={}", params.q()),
                ));
            }
            seqs.push(
                Sequence::new(row, &params).map_err(|e| Error::parse(line_no, e.to_string()))?,
            );
        }
        blocks.push(seqs);
    }
    Ok((params, blocks, saw_separator))
}

fn first_duplicate_line(text: &str, seq: &Sequence) -> usize {
    let mut seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        if let Line::Symbols(body) = classify(raw) {
            let row: Vec<u32> = body
                .split_whitespace()
                .filter_map(|t| t.parse().ok())
                .collect();
            if row
                .iter()
                .map(|&s| s as u16)
                .eq(seq.symbols().iter().copied())
            {
                seen += 1;
                if seen == 2 {
                    return idx + 1;
                }
            }
        }
    }
    0
}

pub fn parse_sequence_list(text: &str, opts: &ParseOptions) -> Result<SequenceList> {
    let (params, blocks, saw_separator) = parse_blocks(text, opts)?;
    if saw_separator {
        return Err(Error::parse(
            0,
            "unexpected codeword separator in a sequence list",
        ));
    }
    let sequences = blocks.into_iter().next().unwrap_or_default();
    Ok(SequenceList { params, sequences })
}

pub fn parse_pool(text: &str, opts: &ParseOptions) -> Result<Pool> {
    let list = parse_sequence_list(text, opts)?;
    let built = if opts.multiset {
        Pool::new_multiset(list.params, list.sequences.clone())
    } else {
        Pool::new(list.params, list.sequences.clone())
    };
    built.map_err(|e| match e {
        Error::DuplicateMember => {
            let mut sorted = list.sequences.clone();
            sorted.sort();
            let dup = sorted
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0].clone())
                .expect("duplicate exists");
            Error::parse(
                first_duplicate_line(text, &dup),
                format!("duplicate sequence {dup} in a set-mode pool"),
            )
        }
        other => other,
    })
}

fn write_header(out: &mut String, params: &AlphabetParams) {
    let _ = writeln!(out, "#q={} L={}", params.q(), params.len());
}

fn write_sequence(out: &mut String, s: &Sequence) {
    for (i, sym) in s.symbols().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{sym}");
    }
    out.push('\n');
}

/// Header plus one line per member, in canonical order.
pub fn serialize_pool(pool: &Pool) -> String {
    let mut out = String::new();
    write_header(&mut out, &pool.params());
    for m in pool.members() {
        write_sequence(&mut out, m);
    }
    out
}

pub fn serialize_sequence_list(list: &SequenceList) -> String {
    let mut out = String::new();
    write_header(&mut out, &list.params);
    for s in &list.sequences {
        write_sequence(&mut out, s);
    }
    out
}

/// A file with no separator and no sequence lines holds zero codewords; every
/// separator otherwise delimits one (possibly empty) codeword.
pub fn parse_code(text: &str, opts: &ParseOptions) -> Result<Code> {
    let (params, blocks, saw_separator) = parse_blocks(text, opts)?;
    let blocks = if !saw_separator && blocks.iter().all(|b| b.is_empty()) {
        Vec::new()
    } else {
        blocks
    };
    let mut codewords = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.into_iter().enumerate() {
        let pool = if opts.multiset {
            Pool::new_multiset(params, block)
        } else {
            Pool::new(params, block)
        }
        .map_err(|e| Error::parse(0, format!("codeword {}: {e}", i + 1)))?;
        codewords.push(pool);
    }
    Code::new(params, codewords)
}

pub fn serialize_code(code: &Code) -> String {
    let mut out = String::new();
    write_header(&mut out, &code.params());
    for (i, cw) in code.codewords().iter().enumerate() {
        if i > 0 {
            out.push_str(CODEWORD_SEPARATOR);
            out.push('\n');
        }
        for m in cw.members() {
            write_sequence(&mut out, m);
        }
    }
    out
}

/// Generator matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub q: u32,
    pub rows: Vec<Vec<u32>>,
}

impl GeneratorMatrix {
    pub fn new(q: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.is_empty() || n == 0 {
            return Err(Error::InvalidParams(
                "generator matrix must be non-empty".into(),
            ));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if let Some(&s) = r.iter().find(|&&s| s >= q) {
                return Err(Error::InvalidSymbol { symbol: s, q });
            }
        }
        Ok(GeneratorMatrix { q, rows })
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }
}

pub fn parse_generator(text: &str) -> Result<GeneratorMatrix> {
    let mut header: Option<(usize, BTreeMap<String, u64>)> = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        match classify(raw) {
            Line::Blank | Line::Comment => {}
            Line::Header(fields) => header = Some((line_no, fields)),
            Line::Separator => return Err(Error::parse(line_no, "unexpected separator")),
            Line::Symbols(body) => rows.push((line_no, parse_symbols(line_no, body)?)),
        }
    }
    let (hline, fields) =
        header.ok_or_else(|| Error::parse(1, "missing header #q=<q> k=<k> n=<n>"))?;
    let get = |key: &str| {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| Error::parse(hline, format!("header is missing {key}=")))
    };
    let q = get("q")? as u32;
    let k = get("k")? as usize;
    let n = get("n")? as usize;
    if rows.len() != k {
        return Err(Error::parse(
            hline,
            format!("header says k={k} but {} rows follow", rows.len()),
        ));
    }
    for (line_no, row) in &rows {
        if row.len() != n {
            return Err(Error::parse(
                *line_no,
                format!("expected {n} symbols, found {}", row.len()),
            ));
        }
        if let Some(&bad) = row.iter().find(|&&s| s >= q) {
            return Err(Error::parse(
                *line_no,
                format!("symbol {bad} is not below q={q}"),
            ));
        }
    }
    GeneratorMatrix::new(q, rows.into_iter().map(|(_, r)| r).collect())
}

/// True when the text carries a generator-matrix header (`k=` present).
pub fn looks_like_generator(text: &str) -> bool {
    text.lines()
        .any(|l| matches!(classify(l), Line::Header(f) if f.contains_key("k")))
}
