//! Fixtures shared by the integration tests: the worked examples and an
//! oracle that evaluates the distance formula directly on symbol vectors.

#![allow(dead_code)]

use seqsubset::conventional::{linear_code_from_generator, ConventionalCode};
use seqsubset::format::GeneratorMatrix;
use seqsubset::{AlphabetParams, Code, Pool};

pub fn params(q: u32, len: usize) -> AlphabetParams {
    AlphabetParams::new(q, len).unwrap()
}

pub fn pool(q: u32, words: &[&str]) -> Pool {
    Pool::from_digits(params(q, words[0].len()), words).unwrap()
}

pub fn multiset(q: u32, words: &[&str]) -> Pool {
    Pool::multiset_from_digits(params(q, words[0].len()), words).unwrap()
}

pub fn code(q: u32, len: usize, codewords: &[&[&str]]) -> Code {
    let p = params(q, len);
    Code::new(
        p,
        codewords
            .iter()
            .map(|w| Pool::from_digits(p, w).unwrap())
            .collect(),
    )
    .unwrap()
}

/// The three-codeword binary code with `L = 5`.
pub fn three_codeword_code() -> Code {
    code(
        2,
        5,
        &[
            &["00101", "10001"],
            &["01011", "10110"],
            &["01000", "11100"],
        ],
    )
}

fn generator(rows: &[&str]) -> GeneratorMatrix {
    GeneratorMatrix::new(
        2,
        rows.iter()
            .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

/// The binary [5,3] code with `d = 2`.
pub fn g1_code() -> ConventionalCode {
    linear_code_from_generator(&generator(&["10010", "01001", "00111"])).unwrap()
}

/// The binary [8,3] code with `d = 4`.
pub fn g2_code() -> ConventionalCode {
    linear_code_from_generator(&generator(&["10011100", "01000111", "00110101"])).unwrap()
}

pub fn conv(q: u32, words: &[&str]) -> ConventionalCode {
    ConventionalCode::from_digits(params(q, words[0].len()), words).unwrap()
}

/// Hamming distance on raw symbol slices.
pub fn oracle_hamming(a: &[u16], b: &[u16]) -> u64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

/// Minimum over every injection of the smaller list into the larger, by
/// recursive enumeration; `L` per unmatched element of the larger list.
pub fn oracle_distance(x: &[Vec<u16>], y: &[Vec<u16>], len: usize) -> u64 {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    fn go(small: &[Vec<u16>], large: &[Vec<u16>], i: usize, used: &mut [bool]) -> u64 {
        if i == small.len() {
            return 0;
        }
        let mut best = u64::MAX;
        for j in 0..large.len() {
            if !used[j] {
                used[j] = true;
                let c = oracle_hamming(&small[i], &large[j]) + go(small, large, i + 1, used);
                used[j] = false;
                best = best.min(c);
            }
        }
        best
    }
    let mut used = vec![false; large.len()];
    go(small, large, 0, &mut used) + len as u64 * (large.len() - small.len()) as u64
}

pub fn raw(p: &Pool) -> Vec<Vec<u16>> {
    p.members().iter().map(|s| s.symbols().to_vec()).collect()
}

/// Oracle minimum distance of a code.
pub fn oracle_min_distance(c: &Code) -> u64 {
    let cws: Vec<Vec<Vec<u16>>> = c.codewords().iter().map(raw).collect();
    let len = c.params().len();
    let mut best = u64::MAX;
    for i in 0..cws.len() {
        for j in i + 1..cws.len() {
            best = best.min(oracle_distance(&cws[i], &cws[j], len));
        }
    }
    best
}

/// Exact `C(n, k)` as `f64` via `u128` products (small `n` only).
pub fn binomial(n: u64, k: u64) -> f64 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as f64
}
