//! Code constructions with attached minimum-distance certificates.
//!
//! | id  | inputs                           | claimed minimum distance |
//! |-----|----------------------------------|--------------------------|
//! | c1  | `q, L, M` (optionally `N`)       | `L·M`                    |
//! | c2  | `C1` over `A^L`, binary `C2`     | `d1·⌈d2/2⌉`              |
//! | c3  | `C1` of size `M·q̃`, `C2` over `q̃`| `d1·d2`                  |
//! | c4  | index code `C1`, info code `C2`  | `d2`                     |
//! | c4p | as c4, folded `n` times          | `d2`                     |

use std::fmt;
use std::str::FromStr;

use crate::codebook::Code;
use crate::conventional::ConventionalCode;
use crate::error::{Error, Result};
use crate::seq::{AlphabetParams, Pool, Sequence};

/// Guard on the number of codewords or sequences a construction materializes.
pub const CONSTRUCTION_LIMIT: u64 = 1 << 20;

/// Guard on codeword pairs examined by [`ConstructionCertificate::verify`].
pub const VERIFY_PAIR_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    C1,
    C2,
    C3,
    C4,
    C4Prime,
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionId::C1 => "c1",
            ConstructionId::C2 => "c2",
            ConstructionId::C3 => "c3",
            ConstructionId::C4 => "c4",
            ConstructionId::C4Prime => "c4p",
        })
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c1" => Ok(ConstructionId::C1),
            "c2" => Ok(ConstructionId::C2),
            "c3" => Ok(ConstructionId::C3),
            "c4" => Ok(ConstructionId::C4),
            "c4p" => Ok(ConstructionId::C4Prime),
            other => Err(Error::InvalidParams(format!(
                "unknown construction '{other}'"
            ))),
        }
    }
}

/// Record of what a construction promises about its output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub construction: ConstructionId,
    /// Lower bound on the minimum distance; `None` when an inner code has a
    /// single codeword and the bound is undefined.
    pub claimed_min_distance: Option<u64>,
    pub parameters: Vec<(String, String)>,
    /// Inner-code distances were recomputed rather than taken on trust.
    pub inner_verified: bool,
    /// The code's minimum distance was computed and meets the claim.
    pub verified: bool,
    pub observed_min_distance: Option<u64>,
}

impl ConstructionCertificate {
    fn new(construction: ConstructionId, claimed: Option<u64>, inner_verified: bool) -> Self {
        ConstructionCertificate {
            construction,
            claimed_min_distance: claimed,
            parameters: Vec::new(),
            inner_verified,
            verified: false,
            observed_min_distance: None,
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    /// Computes the minimum distance of `code` exhaustively and checks it
    /// against the claim. A violation is reported as a contradiction.
    pub fn verify(&mut self, code: &Code) -> Result<()> {
        let n = code.len() as u64;
        if n < 2 {
            self.verified = self.claimed_min_distance.is_none();
            return Ok(());
        }
        if n * (n - 1) / 2 > VERIFY_PAIR_LIMIT {
            return Err(Error::too_large(
                "codeword pairs to verify",
                VERIFY_PAIR_LIMIT,
            ));
        }
        let d = code.min_distance()?;
        self.observed_min_distance = Some(d);
        if let Some(claim) = self.claimed_min_distance {
            if d < claim {
                self.verified = false;
                return Err(Error::Contradiction(format!(
                    "{} code has minimum distance {d} below the claimed {claim}",
                    self.construction
                )));
            }
        }
        self.verified = true;
        Ok(())
    }

    /// `#certificate key=value` comment lines.
    pub fn to_comment_lines(&self) -> String {
        let mut out = format!("#certificate construction={}\n", self.construction);
        let claim = self
            .claimed_min_distance
            .map_or_else(|| "undefined".to_string(), |d| d.to_string());
        out.push_str(&format!("#certificate claimed_min_distance={claim}\n"));
        for (k, v) in &self.parameters {
            out.push_str(&format!("#certificate {k}={v}\n"));
        }
        out.push_str(&format!(
            "#certificate inner_verified={}\n",
            self.inner_verified
        ));
        out.push_str(&format!("#certificate verified={}\n", self.verified));
        if let Some(d) = self.observed_min_distance {
            out.push_str(&format!("#certificate observed_min_distance={d}\n"));
        }
        out
    }

    /// Reads back the lines written by [`Self::to_comment_lines`]; `None` if
    /// the text carries no certificate.
    pub fn from_comment_lines(text: &str) -> Result<Option<Self>> {
        let mut fields: Vec<(usize, String, String)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let Some(rest) = line.trim().strip_prefix("#certificate") else {
                continue;
            };
            let (k, v) = rest
                .trim()
                .split_once('=')
                .ok_or_else(|| Error::parse(idx + 1, "certificate line needs key=value"))?;
            fields.push((idx + 1, k.to_string(), v.to_string()));
        }
        if fields.is_empty() {
            return Ok(None);
        }
        let mut cert: Option<ConstructionCertificate> = None;
        let mut claimed = None;
        let mut inner_verified = false;
        let mut verified = false;
        let mut observed = None;
        let mut params = Vec::new();
        for (line, k, v) in fields {
            let bad = |what: &str| Error::parse(line, format!("bad certificate {what} '{v}'"));
            match k.as_str() {
                "construction" => {
                    let id: ConstructionId = v.parse().map_err(|_| bad("construction"))?;
                    cert = Some(ConstructionCertificate::new(id, None, false));
                }
                "claimed_min_distance" => {
                    claimed = if v == "undefined" {
                        None
                    } else {
                        Some(v.parse::<u64>().map_err(|_| bad("distance"))?)
                    }
                }
                "inner_verified" => inner_verified = v.parse().map_err(|_| bad("flag"))?,
                "verified" => verified = v.parse().map_err(|_| bad("flag"))?,
                "observed_min_distance" => observed = Some(v.parse().map_err(|_| bad("distance"))?),
                _ => params.push((k, v)),
            }
        }
        let mut cert = cert.ok_or_else(|| Error::parse(0, "certificate has no construction id"))?;
        cert.claimed_min_distance = claimed;
        cert.inner_verified = inner_verified;
        cert.verified = verified;
        cert.observed_min_distance = observed;
        cert.parameters = params;
        Ok(Some(cert))
    }
}

/// Inner-code distance, `None` when the code has a single codeword and no
/// trusted value.
fn inner_distance(code: &ConventionalCode) -> Result<Option<(u64, bool)>> {
    match code.usable_distance() {
        Ok(d) => Ok(Some(d)),
        Err(Error::UndefinedMinimum) => Ok(code.trusted_distance().map(|d| (d, false))),
        Err(e) => Err(e),
    }
}

/// Largest `m` with `m^L <= M`, and whether it is exact.
fn integer_root(m_size: u64, len: usize) -> (u64, bool) {
    let pow = |b: u64| -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..len {
            acc = acc.checked_mul(b)?;
        }
        Some(acc)
    };
    let (mut lo, mut hi) = (1u64, m_size.max(1));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match pow(mid) {
            Some(v) if v <= m_size => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (lo, pow(lo) == Some(m_size))
}

/// Disjoint-alphabet construction for `d = L·M`.
///
/// The alphabet is split into `N` consecutive blocks of width `⌊q/N⌋`, any
/// leftover symbols joining the last block, and codeword `i` is the first `M`
/// sequences of `W_i^L` in lexicographic order. When `M` is a perfect `L`-th
/// power `m^L` with `m < q`, `N` defaults to `⌊q/m⌋`; otherwise the caller
/// must give an `N` with `⌊q/N⌋^L >= M`.
pub fn construct1(
    q: u32,
    len: usize,
    m_size: usize,
    n_codewords: Option<usize>,
) -> Result<(Code, ConstructionCertificate)> {
    let params = AlphabetParams::new(q, len)?;
    if m_size == 0 {
        return Err(Error::InvalidParams(
            "codeword size M must be positive".into(),
        ));
    }
    let (root, exact) = integer_root(m_size as u64, len);
    let n = match n_codewords {
        Some(n) => n,
        None if exact && root < q as u64 => (q as u64 / root) as usize,
        None if exact => {
            return Err(Error::InvalidParams(format!(
                "M^(1/L) = {root} must be below q = {q}"
            )))
        }
        None => {
            return Err(Error::InvalidParams(format!(
                "M = {m_size} is not an L-th power for L = {len}; give the number of codewords N"
            )))
        }
    };
    if n == 0 || n as u64 > q as u64 {
        return Err(Error::InvalidParams(format!("N = {n} must lie in [1, q]")));
    }
    let width = q as usize / n;
    let capacity = (width as u128).checked_pow(len as u32);
    if capacity.is_some_and(|c| c < m_size as u128) {
        return Err(Error::InvalidParams(format!(
            "blocks of {width} symbols hold only {} sequences, fewer than M = {m_size}",
            capacity.unwrap_or(0)
        )));
    }
    if (n as u64).saturating_mul(m_size as u64) > CONSTRUCTION_LIMIT {
        return Err(Error::too_large(
            "sequences in the constructed code",
            CONSTRUCTION_LIMIT,
        ));
    }

    let mut codewords = Vec::with_capacity(n);
    for i in 0..n {
        let start = i * width;
        let end = if i + 1 == n {
            q as usize
        } else {
            start + width
        };
        let block: Vec<u16> = (start..end).map(|s| s as u16).collect();
        let mut members = Vec::with_capacity(m_size);
        let mut digits = vec![0usize; len];
        for _ in 0..m_size {
            members.push(Sequence::from_raw(
                digits.iter().map(|&d| block[d]).collect(),
            ));
            for pos in (0..len).rev() {
                if digits[pos] + 1 < block.len() {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = 0;
            }
        }
        codewords.push(Pool::from_sorted_unchecked(params, members, false));
    }
    let code = Code::new(params, codewords)?;
    let cert =
        ConstructionCertificate::new(ConstructionId::C1, Some(len as u64 * m_size as u64), true)
            .param("q", q)
            .param("L", len)
            .param("M", m_size)
            .param("N", n)
            .param(
                "root",
                if exact {
                    root.to_string()
                } else {
                    "none".into()
                },
            );
    Ok((code, cert))
}

/// Support construction: codeword `i` collects the `C1` codewords indexed by
/// the support of the `i`-th binary word of `C2`.
pub fn construct2(
    c1: &ConventionalCode,
    c2: &ConventionalCode,
) -> Result<(Code, ConstructionCertificate)> {
    if c2.params().q() != 2 {
        return Err(Error::InvalidParams(
            "the support code must be binary".into(),
        ));
    }
    if c2.block_len() != c1.len() {
        return Err(Error::LengthMismatch {
            expected: c1.len(),
            found: c2.block_len(),
        });
    }
    if c2.len() as u64 > CONSTRUCTION_LIMIT {
        return Err(Error::too_large(
            "codewords in the constructed code",
            CONSTRUCTION_LIMIT,
        ));
    }
    let params = c1.params();
    let codewords = c2
        .codewords()
        .iter()
        .map(|w| {
            let members = w
                .symbols()
                .iter()
                .zip(c1.codewords())
                .filter(|(&bit, _)| bit != 0)
                .map(|(_, x)| x.clone());
            Pool::new(params, members)
        })
        .collect::<Result<Vec<_>>>()?;
    let code = Code::new(params, codewords)?;
    let d1 = inner_distance(c1)?;
    let d2 = inner_distance(c2)?;
    let claimed = d1.zip(d2).map(|((a, _), (b, _))| a * b.div_ceil(2));
    let inner_verified = d1.is_none_or(|(_, v)| v) && d2.is_none_or(|(_, v)| v);
    let mut cert = ConstructionCertificate::new(ConstructionId::C2, claimed, inner_verified)
        .param("q", params.q())
        .param("L", params.len())
        .param("K", c1.len())
        .param("N", c2.len());
    if let Some((d, _)) = d1 {
        cert = cert.param("d1", d);
    }
    if let Some((d, _)) = d2 {
        cert = cert.param("d2", d);
    }
    if let Some(w) = c2.is_constant_weight()? {
        cert = cert.param("constant_size", w);
    }
    Ok((code, cert))
}

/// How the `M·q̃` codewords of `C1` are laid out as `x_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Indexing {
    /// Canonically sorted, then row-major (`i` outer, `j` inner).
    #[default]
    Canonical,
    /// Row-major in the order the list was given.
    AsListed,
    /// `map[i·q̃ + j]` is the position of `x_{i,j}` in the given list.
    Explicit(Vec<usize>),
}

/// Index-symbol construction: codeword `X_c = {x_{1,c_1}, …, x_{M,c_M}}`
/// for each `c` in `C2`.
pub fn construct3(
    c1: &ConventionalCode,
    c2: &ConventionalCode,
    indexing: &Indexing,
) -> Result<(Code, ConstructionCertificate)> {
    let m_size = c2.block_len();
    let q_tilde = c2.params().q() as usize;
    if c1.len() != m_size * q_tilde {
        return Err(Error::InvalidParams(format!(
            "C1 must have M·q̃ = {} codewords, found {}",
            m_size * q_tilde,
            c1.len()
        )));
    }
    let order: Vec<usize> = match indexing {
        Indexing::Canonical => {
            let mut idx: Vec<usize> = (0..c1.len()).collect();
            idx.sort_by(|&a, &b| c1.codewords()[a].cmp(&c1.codewords()[b]));
            idx
        }
        Indexing::AsListed => (0..c1.len()).collect(),
        Indexing::Explicit(map) => {
            let mut seen = vec![false; c1.len()];
            if map.len() != c1.len() {
                return Err(Error::InvalidParams(format!(
                    "index map has {} entries, expected {}",
                    map.len(),
                    c1.len()
                )));
            }
            for &p in map {
                if p >= c1.len() || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidParams(
                        "index map must be a permutation of the C1 positions".into(),
                    ));
                }
            }
            map.clone()
        }
    };
    let params = c1.params();
    let x = |i: usize, j: usize| c1.codewords()[order[i * q_tilde + j]].clone();
    let codewords = c2
        .codewords()
        .iter()
        .map(|c| {
            Pool::new(
                params,
                c.symbols()
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| x(i, j as usize)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let code = Code::new(params, codewords)?;
    let d1 = inner_distance(c1)?;
    let d2 = inner_distance(c2)?;
    let claimed = d1.zip(d2).map(|((a, _), (b, _))| a * b);
    let inner_verified = d1.is_none_or(|(_, v)| v) && d2.is_none_or(|(_, v)| v);
    let mut cert = ConstructionCertificate::new(ConstructionId::C3, claimed, inner_verified)
        .param("q", params.q())
        .param("L", params.len())
        .param("M", m_size)
        .param("q_tilde", q_tilde)
        .param("N", c2.len());
    if let Some((d, _)) = d1 {
        cert = cert.param("d1", d);
    }
    if let Some((d, _)) = d2 {
        cert = cert.param("d2", d);
    }
    Ok((code, cert))
}

/// Sequence-index construction: `x_{i,j} = (s_j, u_i(I_j))`.
pub fn construct4(
    c1: &ConventionalCode,
    c2: &ConventionalCode,
) -> Result<(Code, ConstructionCertificate)> {
    build4(c1, c2, 1, ConstructionId::C4)
}

/// Folded sequence-index construction over index tuples `[N]^n`, taken in
/// lexicographic order with `i_1` varying slowest:
/// `x_{i,j} = (s_j, u_{i_1}(I_j), …, u_{i_n}(I_j))`.
pub fn construct4_prime(
    c1: &ConventionalCode,
    c2: &ConventionalCode,
    fold: usize,
) -> Result<(Code, ConstructionCertificate)> {
    build4(c1, c2, fold, ConstructionId::C4Prime)
}

fn build4(
    c1: &ConventionalCode,
    c2: &ConventionalCode,
    fold: usize,
    id: ConstructionId,
) -> Result<(Code, ConstructionCertificate)> {
    if fold == 0 {
        return Err(Error::InvalidParams("fold count n must be positive".into()));
    }
    if c1.params().q() != c2.params().q() {
        return Err(Error::InvalidParams(
            "index and information codes need one alphabet".into(),
        ));
    }
    let m_size = c1.len();
    if m_size == 0 || c2.is_empty() {
        return Err(Error::EmptyCode);
    }
    let d1 = match inner_distance(c1)? {
        Some(d) => d,
        // a single index: the whole information word is one block
        None => (c2.block_len() as u64, true),
    };
    if c2.block_len() as u64 != d1.0 * m_size as u64 {
        return Err(Error::LengthMismatch {
            expected: (d1.0 * m_size as u64) as usize,
            found: c2.block_len(),
        });
    }
    let d2 = inner_distance(c2)?;
    let n_info = c2.len();
    let total = (n_info as u64)
        .checked_pow(fold as u32)
        .filter(|&t| t <= CONSTRUCTION_LIMIT)
        .ok_or_else(|| Error::too_large("N^n codewords", CONSTRUCTION_LIMIT))?;
    if total.saturating_mul(m_size as u64) > CONSTRUCTION_LIMIT {
        return Err(Error::too_large(
            "sequences in the constructed code",
            CONSTRUCTION_LIMIT,
        ));
    }

    let width = d1.0 as usize;
    let len = c1.block_len() + fold * width;
    let params = AlphabetParams::new(c1.params().q(), len)?;
    let mut codewords = Vec::with_capacity(total as usize);
    let mut tuple = vec![0usize; fold];
    for _ in 0..total {
        let members = (0..m_size).map(|j| {
            let mut parts: Vec<&[u16]> = vec![c1.codewords()[j].symbols()];
            for &i in &tuple {
                parts.push(c2.codewords()[i].slice(j * width..(j + 1) * width));
            }
            Sequence::concat(&parts)
        });
        codewords.push(Pool::new(params, members)?);
        for pos in (0..fold).rev() {
            if tuple[pos] + 1 < n_info {
                tuple[pos] += 1;
                break;
            }
            tuple[pos] = 0;
        }
    }
    let code = Code::new(params, codewords)?;
    let inner_verified = d1.1 && d2.is_none_or(|(_, v)| v);
    let mut cert = ConstructionCertificate::new(id, d2.map(|(d, _)| d), inner_verified)
        .param("q", params.q())
        .param("L", len)
        .param("L1", c1.block_len())
        .param("M", m_size)
        .param("N", n_info)
        .param("d1", d1.0);
    if let Some((d, _)) = d2 {
        cert = cert.param("d2", d);
    }
    if id == ConstructionId::C4Prime {
        cert = cert.param("n", fold);
    }
    Ok((code, cert))
}
