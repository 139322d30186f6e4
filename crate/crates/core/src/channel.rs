//! The pool channel: sequence insertions, sequence deletions and symbol
//! substitutions.
//!
//! [`apply_channel`] realizes a requested [`ErrorPattern`] exactly, drawing
//! every choice from a seeded ChaCha generator. [`Transcript::from_events`]
//! builds a transcript from explicit events instead.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distance;
use crate::error::{Error, Result};
use crate::format::serialize_pool;
use crate::seq::{hamming_unchecked, Pool, Sequence};

/// Attempts per corrupted sequence before giving up on a collision-free draw.
pub const SUBSTITUTION_RETRIES: usize = 64;

/// Spaces at most this large are enumerated when random insertion stalls.
pub const INSERTION_ENUMERATION_LIMIT: u64 = 1 << 20;

/// Counts of inserted sequences, deleted sequences and substituted symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    pub n_i: u64,
    pub n_d: u64,
    pub n_s: u64,
}

impl ErrorPattern {
    pub fn new(n_i: u64, n_d: u64, n_s: u64) -> Self {
        ErrorPattern { n_i, n_d, n_s }
    }

    /// `n_S + L * max(n_I, n_D)`.
    pub fn bound(&self, len: usize) -> u64 {
        pattern_bound(self, len)
    }
}

pub fn pattern_bound(p: &ErrorPattern, len: usize) -> u64 {
    p.n_s + len as u64 * p.n_i.max(p.n_d)
}

/// Reinterprets `min(n_I, n_D)` insertion/deletion pairs as substitutions,
/// each worth at most `L` symbols. Never increases [`pattern_bound`].
pub fn normalize_pattern(p: &ErrorPattern, len: usize) -> ErrorPattern {
    let l = len as u64;
    if p.n_i >= p.n_d {
        ErrorPattern::new(p.n_i - p.n_d, 0, p.n_s + p.n_d * l)
    } else {
        ErrorPattern::new(0, p.n_d - p.n_i, p.n_s + p.n_i * l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub input: Pool,
    pub output: Pool,
    pub realized: ErrorPattern,
    pub deleted: Pool,
    pub inserted: Pool,
    /// `(original, corrupted)` pairs in canonical order of the originals.
    pub substitutions: Vec<(Sequence, Sequence)>,
}

impl Transcript {
    /// Builds a transcript from explicit events on a set-mode input.
    ///
    /// Deleted and substituted members must be distinct members of `input`;
    /// the resulting output must not contain duplicates.
    pub fn from_events(
        input: &Pool,
        deleted: &Pool,
        substitutions: Vec<(Sequence, Sequence)>,
        inserted: &Pool,
    ) -> Result<Transcript> {
        if input.is_multiset() {
            return Err(Error::UnsupportedMode("channel on a multiset input"));
        }
        input.params().check_same(&deleted.params())?;
        input.params().check_same(&inserted.params())?;
        if !deleted.is_subset(input) {
            return Err(Error::Infeasible(
                "deleted sequences must belong to the input".into(),
            ));
        }
        let mut touched: BTreeSet<&Sequence> = deleted.members().iter().collect();
        let mut n_s = 0;
        for (orig, new) in &substitutions {
            if !input.contains(orig) || !touched.insert(orig) {
                return Err(Error::Infeasible(format!(
                    "substituted sequence {orig} is not an untouched input member"
                )));
            }
            if new.len() != orig.len()
                || new
                    .symbols()
                    .iter()
                    .any(|&s| s as u32 >= input.params().q())
            {
                return Err(Error::Infeasible(format!(
                    "corrupted sequence {new} is not in the space"
                )));
            }
            let d = hamming_unchecked(orig, new);
            if d == 0 {
                return Err(Error::Infeasible(format!(
                    "substitution of {orig} changes nothing"
                )));
            }
            n_s += d;
        }
        let mut output: Vec<Sequence> = input
            .members()
            .iter()
            .filter(|m| !touched.contains(m))
            .cloned()
            .collect();
        output.extend(substitutions.iter().map(|(_, new)| new.clone()));
        output.extend(inserted.members().iter().cloned());
        let output = Pool::new(input.params(), output).map_err(|_| {
            Error::Infeasible("events produce a repeated sequence in the output".into())
        })?;
        let mut substitutions = substitutions;
        substitutions.sort();
        Ok(Transcript {
            input: input.clone(),
            output,
            realized: ErrorPattern::new(inserted.len() as u64, deleted.len() as u64, n_s),
            deleted: deleted.clone(),
            inserted: inserted.clone(),
            substitutions,
        })
    }

    /// `(d_S(input, output), pattern bound)`; the first never exceeds the second.
    pub fn distance_and_bound(&self) -> Result<(u64, u64)> {
        let d = distance::distance(&self.input, &self.output)?;
        Ok((d, self.realized.bound(self.input.params().len())))
    }

    /// Checks `output = (input \ deleted \ substituted) ∪ inserted ∪ corrupted`
    /// and that the realized counts match the recorded events.
    pub fn is_consistent(&self) -> bool {
        let rebuilt = Transcript::from_events(
            &self.input,
            &self.deleted,
            self.substitutions.clone(),
            &self.inserted,
        );
        match rebuilt {
            Ok(t) => t.output == self.output && t.realized == self.realized,
            Err(_) => false,
        }
    }

    /// The output pool preceded by a `#pattern nI nD nS` line.
    pub fn to_text(&self) -> String {
        format!(
            "#pattern {} {} {}\n{}",
            self.realized.n_i,
            self.realized.n_d,
            self.realized.n_s,
            serialize_pool(&self.output)
        )
    }
}

/// Runs the channel with a ChaCha8 generator seeded from `seed`.
pub fn apply_channel(input: &Pool, pattern: &ErrorPattern, seed: u64) -> Result<Transcript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    apply_channel_with(input, pattern, &mut rng)
}

/// Runs the channel with a caller-provided generator.
///
/// Deletes `n_D` uniformly chosen members, spreads `n_S` substitutions over
/// the survivors (uniform multinomial, at most `L` per sequence, distinct
/// positions, new symbol always differs), then inserts `n_I` uniform fresh
/// sequences. Corrupted and inserted sequences never coincide with an input
/// member or another output member.
pub fn apply_channel_with<R: Rng + ?Sized>(
    input: &Pool,
    pattern: &ErrorPattern,
    rng: &mut R,
) -> Result<Transcript> {
    if input.is_multiset() {
        return Err(Error::UnsupportedMode("channel on a multiset input"));
    }
    let params = input.params();
    let len = params.len();
    let q = params.q();
    let members = input.members();

    let n_d = usize::try_from(pattern.n_d).unwrap_or(usize::MAX);
    if n_d > members.len() {
        return Err(Error::Infeasible(format!(
            "cannot delete {} of {} sequences",
            pattern.n_d,
            members.len()
        )));
    }
    let mut deleted_idx = index::sample(rng, members.len(), n_d).into_vec();
    deleted_idx.sort_unstable();
    let survivors: Vec<&Sequence> = members
        .iter()
        .enumerate()
        .filter(|(i, _)| deleted_idx.binary_search(i).is_err())
        .map(|(_, m)| m)
        .collect();

    let capacity = survivors.len() as u64 * len as u64;
    if pattern.n_s > capacity {
        return Err(Error::Infeasible(format!(
            "{} substitutions exceed the {} symbols left after deletion",
            pattern.n_s, capacity
        )));
    }
    let mut counts = vec![0usize; survivors.len()];
    let mut open: Vec<usize> = (0..survivors.len()).collect();
    for _ in 0..pattern.n_s {
        let k = rng.random_range(0..open.len());
        let s = open[k];
        counts[s] += 1;
        if counts[s] == len {
            open.swap_remove(k);
        }
    }

    let mut output: BTreeSet<Sequence> = survivors.iter().map(|&s| s.clone()).collect();
    let mut substitutions = Vec::new();
    for (s, &orig) in survivors.iter().enumerate() {
        let k = counts[s];
        if k == 0 {
            continue;
        }
        output.remove(orig);
        let mut accepted = None;
        for _ in 0..SUBSTITUTION_RETRIES {
            let mut symbols = orig.symbols().to_vec();
            for pos in index::sample(rng, len, k) {
                let old = symbols[pos] as u32;
                let mut new = rng.random_range(0..q - 1);
                if new >= old {
                    new += 1;
                }
                symbols[pos] = new as u16;
            }
            let cand = Sequence::from_raw(symbols);
            if !input.contains(&cand) && !output.contains(&cand) {
                accepted = Some(cand);
                break;
            }
        }
        let cand = accepted.ok_or_else(|| {
            Error::Infeasible(format!(
                "no collision-free corruption of {orig} with {k} substitutions after {SUBSTITUTION_RETRIES} draws"
            ))
        })?;
        output.insert(cand.clone());
        substitutions.push((orig.clone(), cand));
    }

    let inserted = insert_fresh(input, &mut output, pattern.n_i, rng)?;

    let deleted = Pool::from_sorted_unchecked(
        params,
        deleted_idx.iter().map(|&i| members[i].clone()).collect(),
        false,
    );
    let mut inserted_sorted = inserted;
    inserted_sorted.sort();
    Ok(Transcript {
        input: input.clone(),
        output: Pool::from_sorted_unchecked(params, output.into_iter().collect(), false),
        realized: *pattern,
        deleted,
        inserted: Pool::from_sorted_unchecked(params, inserted_sorted, false),
        substitutions,
    })
}

fn insert_fresh<R: Rng + ?Sized>(
    input: &Pool,
    output: &mut BTreeSet<Sequence>,
    n_i: u64,
    rng: &mut R,
) -> Result<Vec<Sequence>> {
    let params = input.params();
    let taken = |s: &Sequence, output: &BTreeSet<Sequence>| input.contains(s) || output.contains(s);
    if let Some(space) = params.space_size() {
        let used =
            input.len() as u128 + output.iter().filter(|s| !input.contains(s)).count() as u128;
        if (n_i as u128) > space - used {
            return Err(Error::Infeasible(format!(
                "only {} fresh sequences are available for {} insertions",
                space - used,
                n_i
            )));
        }
    }
    let mut inserted = Vec::with_capacity(n_i as usize);
    while (inserted.len() as u64) < n_i {
        let mut found = None;
        for _ in 0..SUBSTITUTION_RETRIES {
            let cand = Sequence::from_raw(
                (0..params.len())
                    .map(|_| rng.random_range(0..params.q()) as u16)
                    .collect(),
            );
            if !taken(&cand, output) {
                found = Some(cand);
                break;
            }
        }
        let cand = match found {
            Some(c) => c,
            None => {
                // dense space: pick uniformly among what is left
                let all = params.enumerate(INSERTION_ENUMERATION_LIMIT).map_err(|_| {
                    Error::Infeasible("could not draw a fresh sequence to insert".into())
                })?;
                let free: Vec<Sequence> = all.into_iter().filter(|s| !taken(s, output)).collect();
                if free.is_empty() {
                    return Err(Error::Infeasible("no fresh sequence left to insert".into()));
                }
                let k = rng.random_range(0..free.len());
                free[k].clone()
            }
        };
        output.insert(cand.clone());
        inserted.push(cand);
    }
    Ok(inserted)
}
