//! The sequence-subset distance.
//!
//! For pools `X1`, `X2` with `|X1| <= |X2|`,
//!
//! ```text
//! d_S(X1, X2) = min_χ Σ_{x ∈ X1} d_H(x, χ(x)) + L (|X2| - |X1|)
//! ```
//!
//! over injections `χ: X1 -> X2`. The minimum is found with the assignment
//! solver; the reported witness is the lexicographically smallest optimal
//! injection, which is also what [`bruteforce_distance`] returns.

use crate::assignment::{self, CostMatrix};
use crate::error::{Error, Result};
use crate::seq::{hamming_unchecked, Pool};

/// Largest pool size accepted by [`bruteforce_distance`].
pub const BRUTEFORCE_LIMIT: usize = 8;

/// Which argument plays the role of the (smaller) domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

/// Injection between member index ranges: `images[i]` is the codomain index
/// of domain member `i`. Indices refer to the canonical member order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Injection {
    images: Vec<usize>,
}

impl Injection {
    pub fn new(images: Vec<usize>, codomain_len: usize) -> Result<Self> {
        let mut seen = vec![false; codomain_len];
        for &j in &images {
            if j >= codomain_len {
                return Err(Error::InvalidInjection(format!(
                    "image {j} is outside a codomain of size {codomain_len}"
                )));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidInjection(format!("image {j} is used twice")));
            }
        }
        Ok(Injection { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: u64,
    pub witness: Injection,
    /// Side whose members form the domain of `witness`; `First` on equal sizes.
    pub domain: Side,
}

impl DistanceResult {
    /// Witness as `(first index, second index)` pairs regardless of direction.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.witness
            .images
            .iter()
            .enumerate()
            .map(|(i, &j)| match self.domain {
                Side::First => (i, j),
                Side::Second => (j, i),
            })
            .collect()
    }
}

fn check_compatible(a: &Pool, b: &Pool) -> Result<()> {
    a.params().check_same(&b.params())?;
    if a.is_multiset() != b.is_multiset() {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

fn orient<'a>(a: &'a Pool, b: &'a Pool) -> (&'a Pool, &'a Pool, Side) {
    if a.len() <= b.len() {
        (a, b, Side::First)
    } else {
        (b, a, Side::Second)
    }
}

/// Cost of a given injection from `domain` into `codomain`, including the
/// `L` penalty for every codomain member left unmatched.
pub fn injection_cost(domain: &Pool, codomain: &Pool, injection: &Injection) -> Result<u64> {
    check_compatible(domain, codomain)?;
    if domain.len() > codomain.len() {
        return Err(Error::InvalidInjection(
            "domain is larger than codomain".into(),
        ));
    }
    if injection.len() != domain.len() {
        return Err(Error::InvalidInjection(format!(
            "injection covers {} members, domain has {}",
            injection.len(),
            domain.len()
        )));
    }
    let checked = Injection::new(injection.images.clone(), codomain.len())?;
    let l = domain.params().len() as u64;
    let matched: u64 = checked
        .images
        .iter()
        .enumerate()
        .map(|(i, &j)| hamming_unchecked(&domain.members()[i], &codomain.members()[j]))
        .sum();
    Ok(matched + l * (codomain.len() - domain.len()) as u64)
}

/// `d_S(a, b)` with a lexicographically smallest optimal witness.
pub fn seqsubset_distance(a: &Pool, b: &Pool) -> Result<DistanceResult> {
    check_compatible(a, b)?;
    let (dom, cod, side) = orient(a, b);
    // Square matrix: rows past the domain are virtual vertices at distance L
    // from everything, so their cost is exactly the unmatched penalty.
    let l = dom.params().len() as i64;
    let n = cod.len();
    let matrix = CostMatrix::from_fn(n, n, |i, j| match dom.members().get(i) {
        Some(x) => hamming_unchecked(x, &cod.members()[j]) as i64,
        None => l,
    });
    let mut solved = assignment::solve(&matrix)?;
    solved.row_to_col.truncate(dom.len());
    Ok(DistanceResult {
        distance: solved.cost as u64,
        witness: Injection {
            images: solved.row_to_col,
        },
        domain: side,
    })
}

/// Value of `d_S(a, b)` only.
pub fn distance(a: &Pool, b: &Pool) -> Result<u64> {
    Ok(seqsubset_distance(a, b)?.distance)
}

/// Exhaustive minimum over all injections, enumerated in lexicographic order;
/// the first strict minimum is kept. Both pools must have at most
/// [`BRUTEFORCE_LIMIT`] members.
pub fn bruteforce_distance(a: &Pool, b: &Pool) -> Result<DistanceResult> {
    check_compatible(a, b)?;
    let largest = a.len().max(b.len());
    if largest > BRUTEFORCE_LIMIT {
        return Err(Error::too_large(
            "pool size for exhaustive search",
            BRUTEFORCE_LIMIT as u64,
        ));
    }
    let (dom, cod, side) = orient(a, b);
    let l = dom.params().len() as u64;

    struct Search<'a> {
        dom: &'a Pool,
        cod: &'a Pool,
        used: Vec<bool>,
        cur: Vec<usize>,
        best: Option<(u64, Vec<usize>)>,
    }

    fn rec(s: &mut Search<'_>, i: usize, acc: u64) {
        if i == s.dom.len() {
            if s.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                s.best = Some((acc, s.cur.clone()));
            }
            return;
        }
        for j in 0..s.cod.len() {
            if s.used[j] {
                continue;
            }
            let step = hamming_unchecked(&s.dom.members()[i], &s.cod.members()[j]);
            s.used[j] = true;
            s.cur.push(j);
            rec(s, i + 1, acc + step);
            s.cur.pop();
            s.used[j] = false;
        }
    }

    let mut search = Search {
        dom,
        cod,
        used: vec![false; cod.len()],
        cur: Vec::with_capacity(dom.len()),
        best: None,
    };
    rec(&mut search, 0, 0);
    let (cost, images) = search.best.expect("at least the empty injection exists");
    Ok(DistanceResult {
        distance: cost + l * (cod.len() - dom.len()) as u64,
        witness: Injection { images },
        domain: side,
    })
}

/// An optimal injection that fixes every common member (set mode only).
///
/// Computed by solving on the differences and extending by the identity on
/// the intersection; its cost equals `d_S(a, b)`.
pub fn fixed_point_witness(a: &Pool, b: &Pool) -> Result<DistanceResult> {
    check_compatible(a, b)?;
    if a.is_multiset() {
        return Err(Error::UnsupportedMode("fixed-point witnesses of multisets"));
    }
    let (dom, cod, side) = orient(a, b);
    let dom_only = dom.difference(cod)?;
    let cod_only = cod.difference(dom)?;
    let inner = seqsubset_distance(&dom_only, &cod_only)?;
    // inner is oriented dom_only -> cod_only because |dom_only| <= |cod_only|
    let cod_index = |s| {
        cod.members()
            .binary_search(s)
            .expect("member of the codomain")
    };
    let mut images = Vec::with_capacity(dom.len());
    let mut k = 0;
    for m in dom.members() {
        if cod.contains(m) {
            images.push(cod_index(m));
        } else {
            let target = &cod_only.members()[inner.witness.images[k]];
            images.push(cod_index(target));
            k += 1;
        }
    }
    let witness = Injection::new(images, cod.len())?;
    let distance = injection_cost(dom, cod, &witness)?;
    Ok(DistanceResult {
        distance,
        witness,
        domain: side,
    })
}
