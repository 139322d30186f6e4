//! Sequence-subset codes for DNA storage channels.
//!
//! A message is stored as an unordered pool of length-`L` sequences over a
//! `q`-ary alphabet. The channel may lose sequences, add spurious ones and
//! substitute symbols; the sequence-subset distance [`distance::seqsubset_distance`]
//! measures all three at once.
//!
//! ```
//! use seqsubset::{AlphabetParams, Pool, distance};
//!
//! let params = AlphabetParams::new(2, 4).unwrap();
//! let x1 = Pool::from_digits(params, &["1010", "0010", "1101"]).unwrap();
//! let x2 = Pool::from_digits(params, &["1101", "0011", "1011", "1100"]).unwrap();
//! assert_eq!(distance::distance(&x1, &x2).unwrap(), 6);
//! ```

pub mod assignment;
pub mod bounds;
pub mod channel;
pub mod codebook;
pub mod constructions;
pub mod conventional;
pub mod distance;
pub mod error;
pub mod format;
pub mod scalar;
pub mod seq;

pub use codebook::{Code, DecodeOptions, DecodeOutcome};
pub use error::{Error, Result};
pub use scalar::{CostScalar, LogReal};
pub use seq::{hamming, AlphabetParams, Pool, Sequence};

/// Floating type used for rates and redundancies.
pub type Real = f64;

/// Exact rational type used by the bound calculators.
pub type Exact = num_rational::BigRational;

/// Integer weights used for distance computations.
pub type Assignment64 = assignment::Assignment<i64>;
