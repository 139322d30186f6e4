//! Sequence-subset codes: containers, minimum distance, rate and decoding.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::distance;
use crate::error::{Error, Result};
use crate::scalar::{
    ln_binomial, ln_binomial_prefix_sum, ln_binomial_prefix_sum_real, ln_binomial_real, LogReal,
};
use crate::seq::{AlphabetParams, Pool};

/// Materialization limit for the complement code.
pub const COMPLEMENT_LIMIT: u64 = 1 << 20;

/// A code: an ordered list of pairwise distinct pools over one alphabet.
#[derive(Debug, Clone)]
pub struct Code {
    params: AlphabetParams,
    codewords: Vec<Pool>,
    multiset: bool,
    min_distance: OnceLock<u64>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && self.multiset == other.multiset
            && self.codewords == other.codewords
    }
}

impl Eq for Code {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Collapse a multiset received pool to a set before decoding. When off,
    /// a multiset is decoded natively against codewords read as multisets.
    pub dedup_multiset: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub index: usize,
    pub decoded: Pool,
    pub distance: u64,
    /// Another codeword is at the same distance.
    pub ambiguous: bool,
    /// Smallest distance among the other codewords.
    pub runner_up_distance: Option<u64>,
}

impl Code {
    pub fn new(params: AlphabetParams, codewords: Vec<Pool>) -> Result<Self> {
        let multiset = codewords.first().is_some_and(|c| c.is_multiset());
        for cw in &codewords {
            params.check_same(&cw.params())?;
            if cw.is_multiset() != multiset {
                return Err(Error::ModeMismatch);
            }
        }
        let mut sorted: Vec<&Pool> = codewords.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCodeword);
        }
        Ok(Code {
            params,
            codewords,
            multiset,
            min_distance: OnceLock::new(),
        })
    }

    pub fn params(&self) -> AlphabetParams {
        self.params
    }

    pub fn codewords(&self) -> &[Pool] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn is_multiset(&self) -> bool {
        self.multiset
    }

    /// Maximal codeword size `M`.
    pub fn max_size(&self) -> usize {
        self.codewords.iter().map(Pool::len).max().unwrap_or(0)
    }

    pub fn is_constant_size(&self) -> bool {
        self.codewords.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// True when `M > q^L / 2`, outside the usual convention (allowed).
    pub fn exceeds_half_space(&self) -> bool {
        match self.params.space_size() {
            Some(n) => 2 * self.max_size() as u128 > n,
            None => false,
        }
    }

    /// Every pairwise distance `(i, j, d)` with `i < j`, in index order.
    pub fn pairwise_distances(&self) -> Result<Vec<(usize, usize, u64)>> {
        let n = self.codewords.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                Ok((
                    i,
                    j,
                    distance::distance(&self.codewords[i], &self.codewords[j])?,
                ))
            })
            .collect()
    }

    /// Exhaustive pairwise minimum of the distance; cached after the first call.
    pub fn min_distance(&self) -> Result<u64> {
        if let Some(&d) = self.min_distance.get() {
            return Ok(d);
        }
        if self.codewords.len() < 2 {
            return Err(Error::UndefinedMinimum);
        }
        let d = self
            .pairwise_distances()?
            .into_iter()
            .map(|(_, _, d)| d)
            .min()
            .expect("at least one pair");
        Ok(*self.min_distance.get_or_init(|| d))
    }

    /// `⌊(d - 1) / 2⌋`.
    pub fn correction_radius(&self) -> Result<u64> {
        Ok(self.min_distance()?.saturating_sub(1) / 2)
    }

    /// Minimum-distance decoding. Ties go to the smallest codeword in
    /// canonical order and are flagged.
    pub fn decode(&self, received: &Pool, opts: DecodeOptions) -> Result<DecodeOutcome> {
        if self.codewords.is_empty() {
            return Err(Error::EmptyCode);
        }
        self.params.check_same(&received.params())?;
        let received = if opts.dedup_multiset && received.is_multiset() {
            received.dedup()
        } else {
            received.clone()
        };
        let as_multiset = received.is_multiset() || self.multiset;
        let received = if as_multiset {
            received.to_multiset()
        } else {
            received
        };
        let distances: Vec<u64> = self
            .codewords
            .par_iter()
            .map(|cw| {
                if as_multiset {
                    distance::distance(&cw.to_multiset(), &received)
                } else {
                    distance::distance(cw, &received)
                }
            })
            .collect::<Result<_>>()?;

        let mut best = 0;
        for i in 1..distances.len() {
            let better = distances[i] < distances[best]
                || (distances[i] == distances[best] && self.codewords[i] < self.codewords[best]);
            if better {
                best = i;
            }
        }
        let runner_up_distance = distances
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != best)
            .map(|(_, &d)| d)
            .min();
        Ok(DecodeOutcome {
            index: best,
            decoded: self.codewords[best].clone(),
            distance: distances[best],
            ambiguous: runner_up_distance == Some(distances[best]),
            runner_up_distance,
        })
    }

    /// Natural log of the number of candidate codewords: `C(q^L, M)` for
    /// constant-size codes, `Σ_{m<=M} C(q^L, m)` otherwise.
    fn ln_candidates<T: LogReal>(&self) -> T {
        let m = self.max_size() as u64;
        let constant = self.is_constant_size();
        match self.params.space_size().and_then(|n| u64::try_from(n).ok()) {
            Some(n) if constant => ln_binomial(n, m),
            Some(n) => ln_binomial_prefix_sum(n, m),
            None => {
                let n = space_size_real::<T>(&self.params);
                if constant {
                    ln_binomial_real(n, m)
                } else {
                    ln_binomial_prefix_sum_real(n, m)
                }
            }
        }
    }

    /// `log_q |C| / log_q (candidates)`; zero for codes with at most one codeword.
    pub fn rate<T: LogReal>(&self) -> T {
        if self.codewords.len() <= 1 {
            return T::zero();
        }
        let den = self.ln_candidates::<T>();
        if den <= T::zero() {
            return T::zero();
        }
        <T as LogReal>::from_u64(self.codewords.len() as u64).ln() / den
    }

    /// `log_q (candidates) - log_q |C|`.
    pub fn redundancy<T: LogReal>(&self) -> T {
        let ln_q = <T as LogReal>::from_u64(self.params.q() as u64).ln();
        let size = <T as LogReal>::from_u64(self.codewords.len().max(1) as u64);
        let r = (self.ln_candidates::<T>() - size.ln()) / ln_q;
        r.max(T::zero())
    }

    /// Each codeword replaced by its complement in `A^L` (set mode only).
    pub fn complement_code(&self) -> Result<Code> {
        if self.multiset {
            return Err(Error::UnsupportedMode("complement of a multiset code"));
        }
        self.params.space_size_within(COMPLEMENT_LIMIT)?;
        let codewords = self
            .codewords
            .par_iter()
            .map(|cw| cw.complement(COMPLEMENT_LIMIT))
            .collect::<Result<Vec<_>>>()?;
        Code::new(self.params, codewords)
    }

    /// Union of all codewords as a set.
    pub fn support_union(&self) -> Pool {
        let mut members: Vec<_> = self
            .codewords
            .iter()
            .flat_map(|c| c.members().iter().cloned())
            .collect();
        members.sort();
        members.dedup();
        Pool::from_sorted_unchecked(self.params, members, false)
    }
}

fn space_size_real<T: LogReal>(params: &AlphabetParams) -> T {
    <T as LogReal>::from_u64(params.q() as u64).powi(params.len() as i32)
}
