//! Minimum-cost assignment (Hungarian method with potentials).
//!
//! [`solve`] returns an optimal assignment of rows to distinct columns for an
//! `n x m` matrix with `n <= m`. Among all optimal assignments it returns the
//! one whose column vector is lexicographically smallest. That refinement is
//! exact for integer weights; for floating weights it is best effort (the
//! result is always optimal, ties may resolve differently).

use crate::error::{Error, Result};
use crate::scalar::CostScalar;

/// Dense row-major cost matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: CostScalar> CostMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CostMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let n = rows.len();
        Ok(CostMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T> {
    /// `row_to_col[i]` is the column assigned to row `i`.
    pub row_to_col: Vec<usize>,
    pub cost: T,
}

/// Optimal, lexicographically smallest assignment; requires `rows <= cols`.
pub fn solve<T: CostScalar>(matrix: &CostMatrix<T>) -> Result<Assignment<T>> {
    let n = matrix.rows;
    let m = matrix.cols;
    if n > m {
        return Err(Error::InvalidParams(format!(
            "assignment needs rows <= cols, got {n} x {m}"
        )));
    }
    if n == 0 {
        return Ok(Assignment {
            row_to_col: Vec::new(),
            cost: T::zero(),
        });
    }
    // Square up with zero rows; they shift every assignment by the same amount.
    let cost = |i: usize, j: usize| if i < n { matrix.get(i, j) } else { T::zero() };
    let (mut row_to_col, u, v) = hungarian(m, cost);
    refine_lexicographic(m, &mut row_to_col, |i, j| {
        let reduced = cost(i, j) - u[i] - v[j];
        reduced.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater)
    });
    row_to_col.truncate(n);
    let total = row_to_col
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &j)| acc + matrix.get(i, j));
    Ok(Assignment {
        row_to_col,
        cost: total,
    })
}

/// Square Hungarian method. Returns the row assignment and the final row and
/// column potentials (0-based).
fn hungarian<T: CostScalar>(
    size: usize,
    cost: impl Fn(usize, usize) -> T,
) -> (Vec<usize>, Vec<T>, Vec<T>) {
    let inf = T::max_value();
    // 1-based with a sentinel column 0
    let mut u = vec![T::zero(); size + 1];
    let mut v = vec![T::zero(); size + 1];
    let mut owner = vec![0usize; size + 1];
    let mut way = vec![0usize; size + 1];
    let mut minv = vec![inf; size + 1];
    let mut used = vec![false; size + 1];

    for i in 1..=size {
        owner[0] = i;
        let mut j0 = 0usize;
        minv.iter_mut().for_each(|x| *x = inf);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=size {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=size {
                if used[j] {
                    u[owner[j]] = u[owner[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; size];
    for j in 1..=size {
        row_to_col[owner[j] - 1] = j - 1;
    }
    (row_to_col, u[1..].to_vec(), v[1..].to_vec())
}

/// Walks rows in order and moves each to the smallest tight column that still
/// admits a perfect matching of the remaining rows inside the tight subgraph.
fn refine_lexicographic(
    size: usize,
    row_to_col: &mut [usize],
    tight: impl Fn(usize, usize) -> bool,
) {
    let mut col_owner = vec![0usize; size];
    for (i, &j) in row_to_col.iter().enumerate() {
        col_owner[j] = i;
    }
    let mut visited = vec![false; size];

    for i in 0..size {
        let target = row_to_col[i];
        visited.iter_mut().for_each(|x| *x = false);
        for j in 0..target {
            if visited[j] || col_owner[j] < i || !tight(i, j) {
                continue;
            }
            // Row `r` must move; search for an alternating path from it to `target`.
            let r = col_owner[j];
            visited[j] = true;
            let mut path = Vec::new();
            if find_path(
                r,
                i,
                target,
                &tight,
                row_to_col,
                &col_owner,
                &mut visited,
                &mut path,
            ) {
                // path holds (row, new column) pairs
                for &(row, col) in &path {
                    row_to_col[row] = col;
                    col_owner[col] = row;
                }
                row_to_col[i] = j;
                col_owner[j] = i;
                break;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn find_path(
    row: usize,
    fixed_upto: usize,
    target: usize,
    tight: &impl Fn(usize, usize) -> bool,
    row_to_col: &[usize],
    col_owner: &[usize],
    visited: &mut [bool],
    path: &mut Vec<(usize, usize)>,
) -> bool {
    // Iterative DFS to stay clear of deep recursion on large instances.
    let size = col_owner.len();
    let mut stack: Vec<(usize, usize)> = vec![(row, 0)];
    let mut chosen: Vec<usize> = Vec::new();
    while let Some(top) = stack.last_mut() {
        let r = top.0;
        let mut advanced = false;
        while top.1 < size {
            let c = top.1;
            top.1 += 1;
            if c == row_to_col[r] || !tight(r, c) {
                continue;
            }
            if c == target {
                chosen.push(c);
                for (k, &(rr, _)) in stack.iter().enumerate() {
                    path.push((rr, chosen[k]));
                }
                return true;
            }
            if visited[c] || col_owner[c] <= fixed_upto {
                continue;
            }
            visited[c] = true;
            chosen.push(c);
            advanced = true;
            break;
        }
        if advanced {
            let c = *chosen.last().expect("just pushed");
            stack.push((col_owner[c], 0));
            continue;
        }
        if !advanced {
            stack.pop();
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute<T: CostScalar>(m: &CostMatrix<T>) -> (T, Vec<usize>) {
        // lexicographic enumeration of injections; first strict minimum wins
        fn rec<T: CostScalar>(
            m: &CostMatrix<T>,
            i: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            acc: T,
            best: &mut Option<(T, Vec<usize>)>,
        ) {
            if i == m.rows() {
                if best.as_ref().is_none_or(|(b, _)| acc < *b) {
                    *best = Some((acc, cur.clone()));
                }
                return;
            }
            for j in 0..m.cols() {
                if !used[j] {
                    used[j] = true;
                    cur.push(j);
                    rec(m, i + 1, used, cur, acc + m.get(i, j), best);
                    cur.pop();
                    used[j] = false;
                }
            }
        }
        let mut best = None;
        rec(
            m,
            0,
            &mut vec![false; m.cols()],
            &mut Vec::new(),
            T::zero(),
            &mut best,
        );
        best.unwrap()
    }

    #[test]
    fn small_known_instance() {
        let m =
            CostMatrix::from_rows(vec![vec![4i64, 1, 3], vec![2, 0, 5], vec![3, 2, 2]]).unwrap();
        let a = solve(&m).unwrap();
        assert_eq!(a.cost, 5);
        assert_eq!(a.row_to_col, vec![1, 0, 2]);
    }

    #[test]
    fn ties_resolve_lexicographically() {
        let m = CostMatrix::from_fn(4, 4, |_, _| 1i64);
        assert_eq!(solve(&m).unwrap().row_to_col, vec![0, 1, 2, 3]);
        let m = CostMatrix::from_fn(2, 5, |_, j| if j >= 3 { 0i32 } else { 1 });
        assert_eq!(solve(&m).unwrap().row_to_col, vec![3, 4]);
    }

    #[test]
    fn rejects_tall_matrices() {
        let m = CostMatrix::from_fn(3, 2, |_, _| 0i64);
        assert!(solve(&m).is_err());
    }

    #[test]
    fn float_weights() {
        let m = CostMatrix::from_rows(vec![vec![0.5f64, 2.0], vec![1.0, 0.25]]).unwrap();
        let a = solve(&m).unwrap();
        assert!((a.cost - 0.75).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = CostMatrix<i64>> {
            (0usize..=5, 0usize..=3).prop_flat_map(|(n, extra)| {
                let m = n + extra;
                prop::collection::vec(0i64..4, n * m).prop_map(move |data| CostMatrix {
                    rows: n,
                    cols: m,
                    data,
                })
            })
        }

        proptest! {
            #[test]
            fn matches_bruteforce_including_witness(m in matrix()) {
                let a = solve(&m).unwrap();
                if m.rows() == 0 {
                    prop_assert!(a.row_to_col.is_empty());
                } else {
                    let (cost, witness) = brute(&m);
                    prop_assert_eq!(a.cost, cost);
                    prop_assert_eq!(a.row_to_col, witness);
                }
            }

            #[test]
            fn i32_and_i128_agree(m in matrix()) {
                let m32 = CostMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) as i32);
                let m128 = CostMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) as i128);
                let a = solve(&m32).unwrap();
                let b = solve(&m128).unwrap();
                prop_assert_eq!(a.cost as i128, b.cost);
                prop_assert_eq!(a.row_to_col, b.row_to_col);
            }
        }
    }
}
