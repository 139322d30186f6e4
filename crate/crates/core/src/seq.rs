//! Sequences over a q-ary alphabet and pools (sets or multisets) of them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet size; symbols are stored as `u16`.
pub const MAX_Q: u32 = 1 << 16;

/// Alphabet size `q` and common sequence length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphabetParams {
    q: u32,
    len: usize,
}

impl AlphabetParams {
    pub fn new(q: u32, len: usize) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParams(format!(
                "alphabet size q={q} must lie in [2, {MAX_Q}]"
            )));
        }
        if len == 0 {
            return Err(Error::InvalidParams(
                "sequence length must be at least 1".into(),
            ));
        }
        Ok(Self { q, len })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Sequence length `L`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    /// `q^L`, or `None` when it does not fit in a `u128`.
    pub fn space_size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.len {
            acc = acc.checked_mul(self.q as u128)?;
        }
        Some(acc)
    }

    /// `q^L` if it is at most `limit`.
    pub fn space_size_within(&self, limit: u64) -> Result<u64> {
        match self.space_size() {
            Some(n) if n <= limit as u128 => Ok(n as u64),
            _ => Err(Error::too_large(
                format!("q^L for q={} L={}", self.q, self.len),
                limit,
            )),
        }
    }

    pub(crate) fn check_same(&self, other: &AlphabetParams) -> Result<()> {
        if self != other {
            return Err(Error::DimensionMismatch {
                left_q: self.q,
                left_len: self.len,
                right_q: other.q,
                right_len: other.len,
            });
        }
        Ok(())
    }

    /// Every sequence of the space in lexicographic order.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<Sequence>> {
        let total = self.space_size_within(limit)?;
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u16; self.len];
        for _ in 0..total {
            out.push(Sequence(cur.clone().into_boxed_slice()));
            for pos in (0..self.len).rev() {
                if (cur[pos] as u32) + 1 < self.q {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 0;
            }
        }
        Ok(out)
    }
}

/// A fixed-length vector of symbols. Ordering is lexicographic on symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(Box<[u16]>);

impl Sequence {
    /// Validates length and alphabet against `params`.
    pub fn new(symbols: Vec<u32>, params: &AlphabetParams) -> Result<Self> {
        if symbols.len() != params.len() {
            return Err(Error::LengthMismatch {
                expected: params.len(),
                found: symbols.len(),
            });
        }
        let mut out = Vec::with_capacity(symbols.len());
        for s in symbols {
            if s >= params.q() {
                return Err(Error::InvalidSymbol {
                    symbol: s,
                    q: params.q(),
                });
            }
            out.push(s as u16);
        }
        Ok(Sequence(out.into_boxed_slice()))
    }

    /// Parses a compact digit string such as `"0110"` (alphabets up to 10).
    pub fn from_digits(digits: &str, params: &AlphabetParams) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::InvalidParams(format!("'{c}' is not a decimal digit")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Sequence::new(symbols, params)
    }

    pub(crate) fn from_raw(symbols: Vec<u16>) -> Self {
        Sequence(symbols.into_boxed_slice())
    }

    pub fn symbols(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> u64 {
        self.0.iter().filter(|&&s| s != 0).count() as u64
    }

    /// Coordinates restricted to `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> &[u16] {
        &self.0[range]
    }

    pub fn concat(parts: &[&[u16]]) -> Sequence {
        let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            out.extend_from_slice(p);
        }
        Sequence::from_raw(out)
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Sequence {
    /// Digits run together when every symbol is below 10, else space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in self.0.iter() {
                write!(f, "{s}")?;
            }
        } else {
            for (i, s) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// Number of coordinates in which `a` and `b` differ.
pub fn hamming(a: &Sequence, b: &Sequence) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(hamming_unchecked(a, b))
}

#[inline]
pub(crate) fn hamming_unchecked(a: &Sequence, b: &Sequence) -> u64 {
    a.0.iter().zip(b.0.iter()).filter(|(x, y)| x != y).count() as u64
}

/// A finite set, or multiset, of sequences sharing one [`AlphabetParams`].
///
/// Members are kept sorted, so equality ignores insertion order and, in
/// multiset mode, compares multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pool {
    params: AlphabetParams,
    members: Vec<Sequence>,
    multiset: bool,
}

impl Pool {
    pub fn empty(params: AlphabetParams) -> Self {
        Pool {
            params,
            members: Vec::new(),
            multiset: false,
        }
    }

    /// Set-mode pool; rejects duplicates.
    pub fn new<I>(params: AlphabetParams, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Sequence>,
    {
        Self::build(params, members, false)
    }

    pub fn new_multiset<I>(params: AlphabetParams, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Sequence>,
    {
        Self::build(params, members, true)
    }

    fn build<I>(params: AlphabetParams, members: I, multiset: bool) -> Result<Self>
    where
        I: IntoIterator<Item = Sequence>,
    {
        let mut members: Vec<Sequence> = members.into_iter().collect();
        for m in &members {
            if m.len() != params.len() {
                return Err(Error::LengthMismatch {
                    expected: params.len(),
                    found: m.len(),
                });
            }
            if let Some(&s) = m.symbols().iter().find(|&&s| s as u32 >= params.q()) {
                return Err(Error::InvalidSymbol {
                    symbol: s as u32,
                    q: params.q(),
                });
            }
        }
        members.sort();
        if !multiset && members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember);
        }
        Ok(Pool {
            params,
            members,
            multiset,
        })
    }

    /// Convenience constructor from digit strings, e.g. `["0011", "1010"]`.
    pub fn from_digits(params: AlphabetParams, words: &[&str]) -> Result<Self> {
        let seqs = words
            .iter()
            .map(|w| Sequence::from_digits(w, &params))
            .collect::<Result<Vec<_>>>()?;
        Pool::new(params, seqs)
    }

    pub fn multiset_from_digits(params: AlphabetParams, words: &[&str]) -> Result<Self> {
        let seqs = words
            .iter()
            .map(|w| Sequence::from_digits(w, &params))
            .collect::<Result<Vec<_>>>()?;
        Pool::new_multiset(params, seqs)
    }

    pub(crate) fn from_sorted_unchecked(
        params: AlphabetParams,
        members: Vec<Sequence>,
        multiset: bool,
    ) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] <= w[1]));
        Pool {
            params,
            members,
            multiset,
        }
    }

    pub fn params(&self) -> AlphabetParams {
        self.params
    }

    /// Members in canonical (lexicographic) order.
    pub fn members(&self) -> &[Sequence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_multiset(&self) -> bool {
        self.multiset
    }

    pub fn contains(&self, s: &Sequence) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Same members, reinterpreted as a multiset.
    pub fn to_multiset(&self) -> Pool {
        Pool {
            multiset: true,
            ..self.clone()
        }
    }

    /// Collapses repeated members into a set-mode pool.
    pub fn dedup(&self) -> Pool {
        let mut members = self.members.clone();
        members.dedup();
        Pool {
            params: self.params,
            members,
            multiset: false,
        }
    }

    fn check_set_pair(&self, other: &Pool, op: &'static str) -> Result<()> {
        self.params.check_same(&other.params)?;
        if self.multiset || other.multiset {
            return Err(Error::UnsupportedMode(op));
        }
        Ok(())
    }

    /// `self \ other`.
    pub fn difference(&self, other: &Pool) -> Result<Pool> {
        self.check_set_pair(other, "set difference of multisets")?;
        let members = self
            .members
            .iter()
            .filter(|m| !other.contains(m))
            .cloned()
            .collect();
        Ok(Pool::from_sorted_unchecked(self.params, members, false))
    }

    pub fn intersection(&self, other: &Pool) -> Result<Pool> {
        self.check_set_pair(other, "set intersection of multisets")?;
        let members = self
            .members
            .iter()
            .filter(|m| other.contains(m))
            .cloned()
            .collect();
        Ok(Pool::from_sorted_unchecked(self.params, members, false))
    }

    pub fn union(&self, other: &Pool) -> Result<Pool> {
        self.check_set_pair(other, "set union of multisets")?;
        let mut members: Vec<Sequence> = self
            .members
            .iter()
            .chain(other.members.iter())
            .cloned()
            .collect();
        members.sort();
        members.dedup();
        Ok(Pool::from_sorted_unchecked(self.params, members, false))
    }

    pub fn is_subset(&self, other: &Pool) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// `A^L \ self`, materialized; requires `q^L <= limit`.
    pub fn complement(&self, limit: u64) -> Result<Pool> {
        if self.multiset {
            return Err(Error::UnsupportedMode("complement of a multiset"));
        }
        let all = self.params.enumerate(limit)?;
        let members = all.into_iter().filter(|s| !self.contains(s)).collect();
        Ok(Pool::from_sorted_unchecked(self.params, members, false))
    }
}

impl fmt::Display for Pool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}
