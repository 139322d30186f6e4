//! File loading and writing, with the optional ACGT transliteration.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use seqsubset::conventional::{linear_code_from_generator, ConventionalCode};
use seqsubset::format::{self, ParseOptions};
use seqsubset::{Code, Pool, Sequence};

const DNA: [char; 4] = ['A', 'C', 'G', 'T'];

/// How sequences are read and printed.
#[derive(Debug, Clone, Copy, Default)]
pub struct Io {
    pub dna: bool,
    pub multiset: bool,
}

fn is_sequence_line(line: &str) -> bool {
    let t = line.trim();
    !(t.is_empty() || t.starts_with('#') || t == format::CODEWORD_SEPARATOR)
}

fn has_header(text: &str) -> bool {
    text.lines().any(|l| {
        l.trim()
            .strip_prefix('#')
            .is_some_and(|rest| rest.split_whitespace().any(|t| t.starts_with("q=")))
    })
}

/// Rewrites `ACGT` lines as `0 1 2 3` and adds a `q=4` header when absent.
pub fn dna_to_digits(text: &str) -> Result<String> {
    let mut out = String::with_capacity(text.len() * 2);
    let mut first_len = None;
    for (i, line) in text.lines().enumerate() {
        if !is_sequence_line(line) {
            out.push_str(line);
            out.push('\n');
            continue;
        }
        let mut digits = Vec::new();
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            match DNA.iter().position(|&b| b == c.to_ascii_uppercase()) {
                Some(d) => digits.push(d.to_string()),
                None => bail!("line {}: '{c}' is not one of A, C, G, T", i + 1),
            }
        }
        first_len.get_or_insert(digits.len());
        out.push_str(&digits.join(" "));
        out.push('\n');
    }
    if !has_header(text) {
        if let Some(len) = first_len {
            out.insert_str(0, &format!("#q=4 L={len}\n"));
        }
    }
    Ok(out)
}

/// Rewrites `0 1 2 3` sequence lines as `ACGT`.
pub fn digits_to_dna(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        if is_sequence_line(line) {
            for tok in line.split_whitespace() {
                let letter = tok.parse::<usize>().ok().and_then(|d| DNA.get(d).copied());
                match letter {
                    Some(c) => out.push(c),
                    None => out.push('?'),
                }
            }
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

impl Io {
    fn read(&self, path: &Path) -> Result<String> {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        if self.dna {
            dna_to_digits(&text).with_context(|| format!("in {}", path.display()))
        } else {
            Ok(text)
        }
    }

    fn opts(&self) -> ParseOptions {
        ParseOptions {
            params: None,
            multiset: self.multiset,
        }
    }

    pub fn pool(&self, path: &Path) -> Result<Pool> {
        let text = self.read(path)?;
        format::parse_pool(&text, &self.opts()).with_context(|| format!("in {}", path.display()))
    }

    pub fn code(&self, path: &Path) -> Result<Code> {
        let text = self.read(path)?;
        format::parse_code(&text, &self.opts()).with_context(|| format!("in {}", path.display()))
    }

    pub fn code_text(&self, path: &Path) -> Result<String> {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }

    /// A generator matrix or an ordered codeword list.
    pub fn conventional(&self, path: &Path, trusted: Option<u64>) -> Result<ConventionalCode> {
        let raw =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let code = if format::looks_like_generator(&raw) {
            let g =
                format::parse_generator(&raw).with_context(|| format!("in {}", path.display()))?;
            linear_code_from_generator(&g).with_context(|| format!("in {}", path.display()))?
        } else {
            let text = if self.dna { dna_to_digits(&raw)? } else { raw };
            let list = format::parse_sequence_list(&text, &ParseOptions::default())
                .with_context(|| format!("in {}", path.display()))?;
            ConventionalCode::from_list(list.params, list.sequences)
                .with_context(|| format!("in {}", path.display()))?
        };
        Ok(match trusted {
            Some(d) => code.with_trusted_distance(d),
            None => code,
        })
    }

    pub fn seq(&self, s: &Sequence) -> String {
        if self.dna {
            s.symbols()
                .iter()
                .map(|&d| DNA.get(d as usize).copied().unwrap_or('?'))
                .collect()
        } else {
            s.to_string()
        }
    }

    pub fn pool_inline(&self, p: &Pool) -> String {
        let members: Vec<String> = p.members().iter().map(|s| self.seq(s)).collect();
        format!("{{{}}}", members.join(", "))
    }

    pub fn render(&self, text: String) -> String {
        if self.dna {
            digits_to_dna(&text)
        } else {
            text
        }
    }
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
