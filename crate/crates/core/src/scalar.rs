//! Scalar abstractions shared by the numeric parts of the crate.
//!
//! Two families of scalars appear:
//!
//! * [`CostScalar`] is the weight type of the assignment solver. Any signed,
//!   bounded, partially ordered number works (`i32`, `i64`, `i128`, `f32`,
//!   `f64`). Distances themselves are always evaluated with exact integers.
//! * [`LogReal`] is the floating type used for log-domain quantities such as
//!   rates and redundancies (`f32`, `f64`).
//!
//! Exact rational work in the bounds module uses [`num_rational::BigRational`]
//! directly.

use std::fmt::Debug;

use num_traits::{Bounded, Float, FromPrimitive, Signed};

pub trait CostScalar: Copy + PartialOrd + Signed + Bounded + Debug + Send + Sync {}

impl<T> CostScalar for T where T: Copy + PartialOrd + Signed + Bounded + Debug + Send + Sync {}

pub trait LogReal: Float + FromPrimitive + Debug + Send + Sync {
    fn from_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 is representable as a float")
    }
}

impl LogReal for f32 {}
impl LogReal for f64 {}

/// `ln C(n, k)`.
///
/// Summed as `Σ ln((n-i)/(k'-i))` with `k' = min(k, n-k)`, which keeps every
/// term of order one and avoids the cancellation of a log-gamma difference.
/// Returns `-inf` when `k > n`.
pub fn ln_binomial<T: LogReal>(n: u64, k: u64) -> T {
    if k > n {
        return T::neg_infinity();
    }
    let k = k.min(n - k);
    let mut acc = T::zero();
    for i in 0..k {
        let num = <T as LogReal>::from_u64(n - i);
        let den = <T as LogReal>::from_u64(k - i);
        acc = acc + (num / den).ln();
    }
    acc
}

/// `ln Σ_{m=0}^{max_m} C(n, m)`, evaluated with a running log-sum-exp.
pub fn ln_binomial_prefix_sum<T: LogReal>(n: u64, max_m: u64) -> T {
    let top = max_m.min(n);
    // terms ln C(n, m) for m = 0..=top, built incrementally
    let mut terms = Vec::with_capacity(top as usize + 1);
    let mut cur = T::zero();
    terms.push(cur);
    for m in 1..=top {
        let ratio = <T as LogReal>::from_u64(n - m + 1) / <T as LogReal>::from_u64(m);
        cur = cur + ratio.ln();
        terms.push(cur);
    }
    let peak = terms.iter().copied().fold(T::neg_infinity(), T::max);
    let sum = terms
        .iter()
        .fold(T::zero(), |acc, &t| acc + (t - peak).exp());
    peak + sum.ln()
}

/// `ln C(n, k)` with `n` given as a float, for spaces too large for `u64`.
/// Accurate when `k` is small relative to `n`.
pub fn ln_binomial_real<T: LogReal>(n: T, k: u64) -> T {
    if <T as LogReal>::from_u64(k) > n {
        return T::neg_infinity();
    }
    (0..k).fold(T::zero(), |acc, i| {
        let i_t = <T as LogReal>::from_u64(i);
        acc + ((n - i_t) / (<T as LogReal>::from_u64(k) - i_t)).ln()
    })
}

/// `ln Σ_{m=0}^{max_m} C(n, m)` with `n` given as a float.
pub fn ln_binomial_prefix_sum_real<T: LogReal>(n: T, max_m: u64) -> T {
    let terms: Vec<T> = (0..=max_m).map(|m| ln_binomial_real(n, m)).collect();
    let peak = terms.iter().copied().fold(T::neg_infinity(), T::max);
    let sum = terms
        .iter()
        .fold(T::zero(), |acc, &t| acc + (t - peak).exp());
    peak + sum.ln()
}
