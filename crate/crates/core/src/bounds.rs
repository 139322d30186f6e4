//! Upper bounds on the size of sequence-subset codes.
//!
//! Integer bounds are exact: `q^L` and the nested products are `BigUint`, the
//! Plotkin-type ratio is a `BigRational`, and every floor is taken on an exact
//! value. Rate and redundancy bounds are log-domain `f64`.
//!
//! Notation: `M0 = ⌈d/L⌉`, `r = 1 - 1/q`; `rLM < d` is tested as
//! `q·d > (q-1)·L·M` to stay in integers.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::codebook::Code;
use crate::error::{Error, Result};
use crate::scalar::ln_binomial;

/// Slack allowed when comparing log-domain quantities.
pub const LOG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `d = LM`: `⌊q·M^(-1/L)⌋`.
    Special,
    /// `rLM < d`: `⌊d/(d - rLM)⌋`.
    Plotkin,
    /// One step `⌊(K/M)·inner⌋` of the support-size recursion.
    RecursiveStep,
    /// Nested-floor chain down to `M0`.
    Singleton,
    /// The same chain started from a support size `K` instead of `q^L`.
    RecursiveChain,
    /// Upper bound on `|C| / C(q^L, M)`.
    RateUpper,
    RedundancySpecial,
    RedundancyPlotkin,
    RedundancySingleton,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Special => "special",
            BoundKind::Plotkin => "plotkin",
            BoundKind::RecursiveStep => "recursive_step",
            BoundKind::Singleton => "singleton",
            BoundKind::RecursiveChain => "recursive",
            BoundKind::RateUpper => "rate_upper",
            BoundKind::RedundancySpecial => "redundancy_special",
            BoundKind::RedundancyPlotkin => "redundancy_plotkin",
            BoundKind::RedundancySingleton => "redundancy_singleton",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters a bound was evaluated at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub q: u32,
    pub len: usize,
    pub m: u64,
    pub d: Option<u64>,
    pub k: Option<BigUint>,
    pub inner: Option<BigUint>,
}

impl BoundParams {
    /// `⌈d/L⌉`, recomputed on demand.
    pub fn m0(&self) -> Option<u64> {
        self.d.map(|d| d.div_ceil(self.len as u64))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Integer(BigUint),
    Real(f64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v:.12}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value(BoundValue),
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub params: BoundParams,
    pub outcome: Outcome,
}

impl BoundReport {
    pub fn value(&self) -> Option<&BoundValue> {
        match &self.outcome {
            Outcome::Value(v) => Some(v),
            Outcome::NotApplicable(_) => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self.outcome, Outcome::Value(_))
    }
}

fn space(q: u32, len: usize) -> BigUint {
    BigUint::from(q).pow(len as u32)
}

fn check_basic(q: u32, len: usize, m: u64) -> Result<()> {
    if q < 2 || len == 0 || m == 0 {
        return Err(Error::InvalidParams(format!(
            "bounds need q >= 2, L >= 1, M >= 1 (got q={q}, L={len}, M={m})"
        )));
    }
    Ok(())
}

fn not_applicable(msg: String) -> Error {
    Error::NotApplicable(msg)
}

/// `⌊q·M^(-1/L)⌋`, as the largest `N` with `N^L · M <= q^L`.
pub fn special_case_bound(q: u32, len: usize, m: u64) -> Result<BigUint> {
    check_basic(q, len, m)?;
    let target = space(q, len);
    let fits = |n: u64| BigUint::from(n).pow(len as u32) * m <= target;
    let (mut lo, mut hi) = (0u64, q as u64);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(BigUint::from(lo))
}

/// `d/(d - rLM) = q·d / (q·d - (q-1)·L·M)` when `rLM < d`.
fn plotkin_ratio(q: u32, len: usize, m: u64, d: u64) -> Result<BigRational> {
    let qd = BigUint::from(q) * d;
    let rlm = BigUint::from(q - 1) * len as u64 * m;
    if qd <= rlm {
        return Err(not_applicable(format!(
            "needs rLM < d, but (q-1)·L·M = {rlm} >= q·d = {qd}"
        )));
    }
    let den = &qd - &rlm;
    Ok(BigRational::new(qd.into(), den.into()))
}

/// `⌊d/(d - rLM)⌋`; requires `rLM < d`.
pub fn plotkin_like_bound(q: u32, len: usize, m: u64, d: u64) -> Result<BigUint> {
    check_basic(q, len, m)?;
    let ratio = plotkin_ratio(q, len, m, d)?;
    Ok(ratio
        .floor()
        .to_integer()
        .to_biguint()
        .expect("ratio is positive"))
}

/// `⌊(K/M)·inner⌋`; requires `d <= LM` and `K <= q^L`.
pub fn recursive_bound_step(
    q: u32,
    len: usize,
    m: u64,
    k: &BigUint,
    d: u64,
    inner: &BigUint,
) -> Result<BigUint> {
    check_basic(q, len, m)?;
    if d > len as u64 * m {
        return Err(not_applicable(format!(
            "needs d <= L·M = {}, got d = {d}",
            len as u64 * m
        )));
    }
    let qs = space(q, len);
    if *k > qs {
        return Err(not_applicable(format!(
            "needs K <= q^L = {qs}, got K = {k}"
        )));
    }
    Ok((k * inner) / m)
}

/// `f(L, M0, d)`: the special-case value when `d = L·M0`, else the Plotkin
/// ratio at `M0` kept exact.
fn seed(q: u32, len: usize, d: u64) -> Result<(u64, BigRational)> {
    if d == 0 {
        return Err(not_applicable("needs d >= 1".into()));
    }
    let m0 = d.div_ceil(len as u64);
    // rLM0 < d  <=>  q·d > (q-1)·L·M0
    let ratio = plotkin_ratio(q, len, m0, d).map_err(|_| {
        not_applicable(format!(
            "needs rLM0 < d with M0 = {m0}, but (q-1)·L·M0 = {} >= q·d = {}",
            (q as u64 - 1) * len as u64 * m0,
            q as u64 * d
        ))
    })?;
    let f = if d == len as u64 * m0 {
        BigRational::from_integer(special_case_bound(q, len, m0)?.into())
    } else {
        ratio
    };
    Ok((m0, f))
}

fn nested_chain(top: &BigUint, m: u64, m0: u64, f: &BigRational) -> BigUint {
    let mut value = f.floor();
    if m > m0 {
        // innermost factor first: (top - M + M0 + 1)/(M0 + 1) · f
        let mut acc = f.clone();
        for k in m0 + 1..=m {
            let num = top + k - m;
            let step = BigRational::new(num.into(), BigUint::from(k).into()) * acc;
            acc = step.floor();
        }
        value = acc;
    }
    value
        .to_integer()
        .to_biguint()
        .unwrap_or_else(BigUint::zero)
}

/// Nested-floor chain from `M0` up to `M` with `f(L, M0, d)` at the core;
/// requires `rLM0 < d <= LM0` (always `d <= LM0`) and `M >= M0`.
pub fn singleton_like_bound(q: u32, len: usize, m: u64, d: u64) -> Result<BigUint> {
    check_basic(q, len, m)?;
    let (m0, f) = seed(q, len, d)?;
    if m < m0 {
        return Err(not_applicable(format!("needs M >= M0 = {m0}, got M = {m}")));
    }
    let qs = space(q, len);
    if BigUint::from(m) > qs {
        return Err(not_applicable(format!("needs M <= q^L = {qs}")));
    }
    Ok(nested_chain(&qs, m, m0, &f))
}

/// The Singleton-type chain started from a support size `K <= q^L`, bounding
/// codes whose codewords all lie in a set of `K` sequences.
pub fn recursive_chain_bound(q: u32, len: usize, m: u64, d: u64, k: &BigUint) -> Result<BigUint> {
    check_basic(q, len, m)?;
    let qs = space(q, len);
    if *k > qs {
        return Err(not_applicable(format!(
            "needs K <= q^L = {qs}, got K = {k}"
        )));
    }
    if *k < BigUint::from(m) {
        return Err(not_applicable(format!("needs K >= M = {m}, got K = {k}")));
    }
    let (m0, f) = seed(q, len, d)?;
    if m < m0 {
        return Err(not_applicable(format!("needs M >= M0 = {m0}, got M = {m}")));
    }
    Ok(nested_chain(k, m, m0, &f))
}

fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln C(n, k)` for a possibly huge `n`.
fn ln_binomial_big(n: &BigUint, k: u64) -> f64 {
    if let Some(small) = n.to_u64() {
        return ln_binomial(small, k);
    }
    (0..k)
        .map(|i| ln_big(&(n - i)) - ((k - i) as f64).ln())
        .sum()
}

fn ln_rational(r: &BigRational) -> f64 {
    ln_big(&r.numer().to_biguint().expect("positive"))
        - ln_big(&r.denom().to_biguint().expect("positive"))
}

/// `ln( f(L, M0, d) / C(q^L - M + M0, M0) )`.
pub fn rate_upper_bound_ln(q: u32, len: usize, m: u64, d: u64) -> Result<f64> {
    check_basic(q, len, m)?;
    let (m0, f) = seed(q, len, d)?;
    if m < m0 {
        return Err(not_applicable(format!("needs M >= M0 = {m0}, got M = {m}")));
    }
    let qs = space(q, len);
    if BigUint::from(m) > qs {
        return Err(not_applicable(format!("needs M <= q^L = {qs}")));
    }
    let n = qs - m + m0;
    Ok(ln_rational(&f) - ln_binomial_big(&n, m0))
}

/// Upper bound on `|C| / C(q^L, M)`.
pub fn rate_upper_bound(q: u32, len: usize, m: u64, d: u64) -> Result<f64> {
    Ok(rate_upper_bound_ln(q, len, m, d)?.exp())
}

fn redundancy_guard(q: u32, len: usize, m: u64) -> Result<BigUint> {
    check_basic(q, len, m)?;
    let qs = space(q, len);
    if BigUint::from(m) >= qs {
        return Err(not_applicable(format!("degenerate: M >= q^L = {qs}")));
    }
    Ok(qs)
}

/// `log_q C(q^L, M) - log_q(q·M^(-1/L))`, valid for `d = LM`.
pub fn redundancy_bound_special(q: u32, len: usize, m: u64) -> Result<f64> {
    let qs = redundancy_guard(q, len, m)?;
    let ln_q = (q as f64).ln();
    let ln_cap = ln_q - (m as f64).ln() / len as f64;
    Ok((ln_binomial_big(&qs, m) - ln_cap) / ln_q)
}

/// `log_q C(q^L, M) - log_q(d/(d - rLM))`, valid for `rLM < d`.
pub fn redundancy_bound_plotkin(q: u32, len: usize, m: u64, d: u64) -> Result<f64> {
    let qs = redundancy_guard(q, len, m)?;
    let ratio = plotkin_ratio(q, len, m, d)?;
    let ln_q = (q as f64).ln();
    Ok((ln_binomial_big(&qs, m) - ln_rational(&ratio)) / ln_q)
}

/// `log_q C(q^L - M + M0, M0) - log_q f(L, M0, d)`, valid for `rLM0 < d <= LM0`.
pub fn redundancy_bound_singleton(q: u32, len: usize, m: u64, d: u64) -> Result<f64> {
    let qs = redundancy_guard(q, len, m)?;
    let (m0, f) = seed(q, len, d)?;
    if m < m0 {
        return Err(not_applicable(format!("needs M >= M0 = {m0}, got M = {m}")));
    }
    let n = qs - m + m0;
    let ln_q = (q as f64).ln();
    Ok((ln_binomial_big(&n, m0) - ln_rational(&f)) / ln_q)
}

fn report(kind: BoundKind, params: &BoundParams, r: Result<BoundValue>) -> Result<BoundReport> {
    let outcome = match r {
        Ok(v) => Outcome::Value(v),
        Err(Error::NotApplicable(reason)) => Outcome::NotApplicable(reason),
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        kind,
        params: params.clone(),
        outcome,
    })
}

/// The three redundancy lower bounds, applicable or not.
pub fn redundancy_lower_bounds(q: u32, len: usize, m: u64, d: u64) -> Result<Vec<BoundReport>> {
    let params = BoundParams {
        q,
        len,
        m,
        d: Some(d),
        k: None,
        inner: None,
    };
    let special = if d == len as u64 * m {
        redundancy_bound_special(q, len, m)
    } else {
        Err(not_applicable(format!(
            "needs d = L·M = {}",
            len as u64 * m
        )))
    };
    Ok(vec![
        report(
            BoundKind::RedundancySpecial,
            &params,
            special.map(BoundValue::Real),
        )?,
        report(
            BoundKind::RedundancyPlotkin,
            &params,
            redundancy_bound_plotkin(q, len, m, d).map(BoundValue::Real),
        )?,
        report(
            BoundKind::RedundancySingleton,
            &params,
            redundancy_bound_singleton(q, len, m, d).map(BoundValue::Real),
        )?,
    ])
}

/// Which bounds [`evaluate`] should compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Special,
    Plotkin,
    Singleton,
    Recursive,
    All,
}

/// Evaluates the selected size bounds at one parameter point.
///
/// `Recursive` is a single step when `inner` is given, otherwise the chain
/// at support size `k` (default `q^L`). `All` adds the rate and redundancy
/// bounds.
pub fn evaluate(
    selection: Selection,
    q: u32,
    len: usize,
    m: u64,
    d: Option<u64>,
    k: Option<BigUint>,
    inner: Option<BigUint>,
) -> Result<Vec<BoundReport>> {
    check_basic(q, len, m)?;
    let params = BoundParams {
        q,
        len,
        m,
        d,
        k: k.clone(),
        inner: inner.clone(),
    };
    let need_d = || d.ok_or_else(|| Error::InvalidParams("this bound needs d".into()));
    let mut out = Vec::new();
    let want = |s: Selection| selection == s || selection == Selection::All;

    if want(Selection::Special) {
        let r = match d {
            Some(d) if d != len as u64 * m => Err(not_applicable(format!(
                "needs d = L·M = {}, got d = {d}",
                len as u64 * m
            ))),
            _ => special_case_bound(q, len, m),
        };
        out.push(report(
            BoundKind::Special,
            &params,
            r.map(BoundValue::Integer),
        )?);
    }
    if want(Selection::Plotkin) {
        let r = plotkin_like_bound(q, len, m, need_d()?);
        out.push(report(
            BoundKind::Plotkin,
            &params,
            r.map(BoundValue::Integer),
        )?);
    }
    if want(Selection::Singleton) {
        let r = singleton_like_bound(q, len, m, need_d()?);
        out.push(report(
            BoundKind::Singleton,
            &params,
            r.map(BoundValue::Integer),
        )?);
    }
    if want(Selection::Recursive) {
        let d = need_d()?;
        let k_val = k.clone().unwrap_or_else(|| space(q, len));
        let mut p = params.clone();
        p.k = Some(k_val.clone());
        if let Some(inner) = &inner {
            let r = recursive_bound_step(q, len, m, &k_val, d, inner);
            out.push(report(
                BoundKind::RecursiveStep,
                &p,
                r.map(BoundValue::Integer),
            )?);
        } else {
            let r = recursive_chain_bound(q, len, m, d, &k_val);
            out.push(report(
                BoundKind::RecursiveChain,
                &p,
                r.map(BoundValue::Integer),
            )?);
        }
    }
    if selection == Selection::All {
        let d = need_d()?;
        let r = rate_upper_bound(q, len, m, d);
        out.push(report(
            BoundKind::RateUpper,
            &params,
            r.map(BoundValue::Real),
        )?);
        out.extend(redundancy_lower_bounds(q, len, m, d)?);
    }
    Ok(out)
}

/// Result of [`check_code_against_bounds`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub min_distance: u64,
    pub reports: Vec<BoundReport>,
    /// Human-readable description of every violated bound; empty when the
    /// code respects them all.
    pub contradictions: Vec<String>,
}

/// Evaluates every applicable bound at the code's own parameters and checks
/// that the code respects it. Requires a constant-size code with at least
/// two codewords.
pub fn check_code_against_bounds(code: &Code) -> Result<BoundCheck> {
    if !code.is_constant_size() {
        return Err(not_applicable(
            "bounds are stated for constant-size codes".into(),
        ));
    }
    let d = code.min_distance()?;
    let params = code.params();
    let (q, len, m) = (params.q(), params.len(), code.max_size() as u64);
    let support = BigUint::from(code.support_union().len());
    let mut reports = evaluate(Selection::All, q, len, m, Some(d), None, None)?;
    reports.extend(evaluate(
        Selection::Recursive,
        q,
        len,
        m,
        Some(d),
        Some(support),
        None,
    )?);

    let size = BigUint::from(code.len());
    let ln_size = (code.len() as f64).ln();
    let redundancy: f64 = code.redundancy();
    let mut contradictions = Vec::new();
    for r in &reports {
        let Some(v) = r.value() else { continue };
        let violated = match (r.kind, v) {
            (_, BoundValue::Integer(cap)) => size > *cap,
            (BoundKind::RateUpper, BoundValue::Real(_)) => {
                let ln_bound = rate_upper_bound_ln(q, len, m, d)?;
                let ln_actual = ln_size - ln_binomial_big(&space(q, len), m);
                ln_actual > ln_bound + LOG_TOLERANCE
            }
            (_, BoundValue::Real(bound)) => redundancy < bound - LOG_TOLERANCE,
        };
        if violated {
            contradictions.push(format!(
                "{} bound {} violated by a code with {} codewords, redundancy {redundancy:.12}",
                r.kind,
                v,
                code.len()
            ));
        }
    }
    Ok(BoundCheck {
        min_distance: d,
        reports,
        contradictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn special_case_values() {
        assert_eq!(special_case_bound(16, 4, 16).unwrap(), big(8));
        assert_eq!(special_case_bound(10, 2, 5).unwrap(), big(4));
        assert_eq!(special_case_bound(7, 3, 1).unwrap(), big(7));
        assert!(special_case_bound(7, 3, 0).is_err());
    }

    #[test]
    fn plotkin_values() {
        assert_eq!(plotkin_like_bound(2, 4, 2, 7).unwrap(), big(2));
        assert_eq!(plotkin_like_bound(5, 3, 4, 12).unwrap(), big(5));
        assert!(matches!(
            plotkin_like_bound(2, 5, 2, 4),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn recursive_step_values() {
        assert_eq!(
            recursive_bound_step(2, 4, 3, &big(16), 7, &big(7)).unwrap(),
            big(37)
        );
        assert_eq!(
            recursive_bound_step(2, 4, 3, &big(16), 7, &big(0)).unwrap(),
            big(0)
        );
        assert_eq!(
            recursive_bound_step(2, 4, 3, &big(3), 7, &big(11)).unwrap(),
            big(11)
        );
        assert!(recursive_bound_step(2, 4, 3, &big(17), 7, &big(1)).is_err());
        assert!(recursive_bound_step(2, 4, 1, &big(16), 7, &big(1)).is_err());
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_like_bound(2, 4, 3, 7).unwrap(), big(12));
        // M = M0, d < L·M0: floor of the Plotkin ratio at M0
        assert_eq!(singleton_like_bound(2, 4, 2, 7).unwrap(), big(2));
        assert_eq!(singleton_like_bound(2, 5, 2, 4).unwrap(), big(42));
        assert_eq!(
            singleton_like_bound(16, 4, 16, 64).unwrap(),
            special_case_bound(16, 4, 16).unwrap()
        );
        // d = 4, L = 4: M0 = 1 and rLM0 = 2 < 4 = LM0
        assert!(singleton_like_bound(2, 4, 1, 4).is_ok());
        // d = 3, q = 2, L = 4: M0 = 1, rLM0 = 2 < 3 holds; d = 2 fails
        assert!(matches!(
            singleton_like_bound(2, 4, 2, 2),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            singleton_like_bound(2, 4, 1, 7),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn chain_at_full_space_matches_singleton() {
        for (q, len, m, d) in [(2u32, 4usize, 3u64, 7u64), (3, 3, 4, 9), (4, 2, 5, 7)] {
            let k = space(q, len);
            assert_eq!(
                recursive_chain_bound(q, len, m, d, &k).unwrap(),
                singleton_like_bound(q, len, m, d).unwrap()
            );
        }
    }

    #[test]
    fn rate_bound_value() {
        let v = rate_upper_bound(2, 4, 3, 7).unwrap();
        assert!((v - 7.0 / 315.0).abs() < 1e-12);
    }

    #[test]
    fn redundancy_degenerate() {
        assert!(matches!(
            redundancy_bound_special(2, 2, 4),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn huge_spaces_stay_finite() {
        let v = rate_upper_bound_ln(65536, 100, 3, 300).unwrap();
        assert!(v.is_finite() && v < 0.0);
        let s = special_case_bound(65536, 100, 1 << 20).unwrap();
        assert!(s <= big(65536));
    }
}
