//! Classical Hamming-metric codes used as ingredients of the constructions.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::GeneratorMatrix;
use crate::seq::{hamming_unchecked, AlphabetParams, Sequence};

/// Largest number of messages enumerated from a generator matrix.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Largest `|C|^2` for exhaustive pairwise distance evaluation.
pub const PAIRWISE_LIMIT: u64 = 1 << 24;

/// An ordered list of distinct codewords of common length `n`.
#[derive(Debug, Clone)]
pub struct ConventionalCode {
    params: AlphabetParams,
    codewords: Vec<Sequence>,
    trusted_distance: Option<u64>,
    min_hamming: OnceLock<u64>,
}

impl PartialEq for ConventionalCode {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.codewords == other.codewords
    }
}

impl Eq for ConventionalCode {}

impl ConventionalCode {
    /// Explicit codeword list; order is kept, duplicates are rejected.
    pub fn from_list(params: AlphabetParams, codewords: Vec<Sequence>) -> Result<Self> {
        for c in &codewords {
            if c.len() != params.len() {
                return Err(Error::LengthMismatch {
                    expected: params.len(),
                    found: c.len(),
                });
            }
            if let Some(&s) = c.symbols().iter().find(|&&s| s as u32 >= params.q()) {
                return Err(Error::InvalidSymbol {
                    symbol: s as u32,
                    q: params.q(),
                });
            }
        }
        let mut sorted: Vec<&Sequence> = codewords.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword);
        }
        Ok(ConventionalCode {
            params,
            codewords,
            trusted_distance: None,
            min_hamming: OnceLock::new(),
        })
    }

    pub fn from_digits(params: AlphabetParams, words: &[&str]) -> Result<Self> {
        let seqs = words
            .iter()
            .map(|w| Sequence::from_digits(w, &params))
            .collect::<Result<Vec<_>>>()?;
        ConventionalCode::from_list(params, seqs)
    }

    /// Attaches a caller-asserted minimum distance, used only when the code is
    /// too large to check exhaustively.
    pub fn with_trusted_distance(mut self, d: u64) -> Self {
        self.trusted_distance = Some(d);
        self
    }

    pub fn params(&self) -> AlphabetParams {
        self.params
    }

    /// Block length `n`.
    pub fn block_len(&self) -> usize {
        self.params.len()
    }

    pub fn codewords(&self) -> &[Sequence] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn trusted_distance(&self) -> Option<u64> {
        self.trusted_distance
    }

    /// Exhaustive minimum pairwise Hamming distance; cached.
    pub fn min_hamming_distance(&self) -> Result<u64> {
        if let Some(&d) = self.min_hamming.get() {
            return Ok(d);
        }
        let n = self.codewords.len();
        if n < 2 {
            return Err(Error::UndefinedMinimum);
        }
        if (n as u64).saturating_mul(n as u64) > PAIRWISE_LIMIT {
            return Err(Error::too_large(
                "squared size of a conventional code",
                PAIRWISE_LIMIT,
            ));
        }
        let cw = &self.codewords;
        let d = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| hamming_unchecked(&cw[i], &cw[j]))
                    .min()
                    .unwrap_or(u64::MAX)
            })
            .min()
            .expect("at least one pair");
        Ok(*self.min_hamming.get_or_init(|| d))
    }

    /// The distance a construction may rely on, and whether it was verified.
    ///
    /// Below the pairwise guard the distance is recomputed and a conflicting
    /// trusted claim is an error; above it the trusted claim is required.
    pub fn usable_distance(&self) -> Result<(u64, bool)> {
        match self.min_hamming_distance() {
            Ok(d) => {
                if let Some(claim) = self.trusted_distance {
                    if claim > d {
                        return Err(Error::Contradiction(format!(
                            "claimed minimum distance {claim} exceeds the verified {d}"
                        )));
                    }
                }
                Ok((d, true))
            }
            Err(Error::InstanceTooLarge { .. }) => {
                self.trusted_distance.map(|d| (d, false)).ok_or_else(|| {
                    Error::too_large(
                        "conventional code without a trusted distance",
                        PAIRWISE_LIMIT,
                    )
                })
            }
            Err(e) => Err(e),
        }
    }

    /// Smallest weight of a nonzero codeword.
    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.codewords
            .iter()
            .map(Sequence::weight)
            .filter(|&w| w > 0)
            .min()
    }

    /// Common weight of all codewords, if any (binary codes only).
    pub fn is_constant_weight(&self) -> Result<Option<u64>> {
        if self.params.q() != 2 {
            return Err(Error::Unsupported(
                "constant weight is defined for binary codes".into(),
            ));
        }
        let mut weights = self.codewords.iter().map(Sequence::weight);
        let Some(first) = weights.next() else {
            return Ok(None);
        };
        Ok(weights.all(|w| w == first).then_some(first))
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// All `q^k` codewords `m·G` over GF(q), `q` prime.
///
/// Messages are enumerated by weight, then by support positions in
/// lexicographic order, then by their nonzero values in lexicographic order;
/// for a binary `G` this lists `0`, the rows, the sums of two rows, and so on.
pub fn linear_code_from_generator(g: &GeneratorMatrix) -> Result<ConventionalCode> {
    let q = g.q;
    if !is_prime(q) {
        return Err(Error::Unsupported(format!(
            "generator matrices need a prime field, q={q} is not prime; supply an explicit list"
        )));
    }
    let k = g.k();
    let n = g.n();
    let params = AlphabetParams::new(q, n)?;
    let total = (q as u64)
        .checked_pow(k as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::too_large("q^k messages", ENUMERATION_LIMIT))?;

    let mut codewords = Vec::with_capacity(total as usize);
    for weight in 0..=k {
        for support in combinations(k, weight) {
            let mut values = vec![1u32; weight];
            loop {
                let mut word = vec![0u32; n];
                for (&row, &v) in support.iter().zip(&values) {
                    for (acc, &x) in word.iter_mut().zip(&g.rows[row]) {
                        *acc = ((*acc as u64 + v as u64 * x as u64) % q as u64) as u32;
                    }
                }
                codewords.push(Sequence::new(word, &params)?);
                if !next_values(&mut values, q) {
                    break;
                }
            }
        }
    }
    ConventionalCode::from_list(params, codewords).map_err(|e| match e {
        Error::DuplicateCodeword => {
            Error::InvalidParams("generator matrix is rank deficient (repeated codewords)".into())
        }
        other => other,
    })
}

/// Advances `values` over `{1..q-1}^w` in lexicographic order; false once exhausted.
fn next_values(values: &mut [u32], q: u32) -> bool {
    for pos in (0..values.len()).rev() {
        if values[pos] + 1 < q {
            values[pos] += 1;
            values[pos + 1..].iter_mut().for_each(|v| *v = 1);
            return true;
        }
    }
    false
}

/// `w`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..w).collect();
    if w > k {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = w;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < k - w + i {
                cur[i] += 1;
                for j in i + 1..w {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(q: u32, rows: &[&str]) -> GeneratorMatrix {
        GeneratorMatrix::new(
            q,
            rows.iter()
                .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn digits(c: &ConventionalCode) -> Vec<String> {
        c.codewords().iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn enumeration_order_for_binary_generator() {
        let c = linear_code_from_generator(&gen(2, &["10010", "01001", "00111"])).unwrap();
        assert_eq!(
            digits(&c),
            ["00000", "10010", "01001", "00111", "11011", "10101", "01110", "11100"]
        );
        assert_eq!(c.min_hamming_distance().unwrap(), 2);
        assert_eq!(c.min_nonzero_weight(), Some(2));
    }

    #[test]
    fn identity_generator_lists_messages() {
        let c = linear_code_from_generator(&gen(2, &["100", "010", "001"])).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.min_hamming_distance().unwrap(), 1);
    }

    #[test]
    fn ternary_generator() {
        let c = linear_code_from_generator(&gen(3, &["12"])).unwrap();
        assert_eq!(digits(&c), ["00", "12", "21"]);
    }

    #[test]
    fn rejects_composite_fields_and_rank_deficiency() {
        assert!(matches!(
            linear_code_from_generator(&gen(4, &["13"])),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            linear_code_from_generator(&gen(2, &["110", "110"])),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn constant_weight() {
        let p = AlphabetParams::new(2, 4).unwrap();
        let c = ConventionalCode::from_digits(p, &["1100", "0110", "0011"]).unwrap();
        assert_eq!(c.is_constant_weight().unwrap(), Some(2));
        let z = ConventionalCode::from_digits(p, &["0000"]).unwrap();
        assert_eq!(z.is_constant_weight().unwrap(), Some(0));
        let mixed = ConventionalCode::from_digits(p, &["0000", "1111"]).unwrap();
        assert_eq!(mixed.is_constant_weight().unwrap(), None);
        let p3 = AlphabetParams::new(3, 2).unwrap();
        let t = ConventionalCode::from_digits(p3, &["12"]).unwrap();
        assert!(t.is_constant_weight().is_err());
    }

    #[test]
    fn trusted_claims_are_checked_when_possible() {
        let p = AlphabetParams::new(2, 4).unwrap();
        let rep = ConventionalCode::from_digits(p, &["0000", "1111"]).unwrap();
        assert_eq!(rep.usable_distance().unwrap(), (4, true));
        let liar = rep.clone().with_trusted_distance(5);
        assert!(matches!(
            liar.usable_distance(),
            Err(Error::Contradiction(_))
        ));
    }

    #[test]
    fn combination_order() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }
}
