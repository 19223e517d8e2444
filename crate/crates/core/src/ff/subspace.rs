//! Subspaces of `F_p^n` in reduced row echelon form.

use crate::error::{Error, Result};

use super::field::PrimeField;

/// Row-reduces `rows` (each of length `n`) in place and drops zero rows.
/// Returns the pivot columns.
pub(crate) fn rref(f: &PrimeField, n: usize, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for row in rows.iter_mut() {
            let factor = row.get(col).copied().unwrap_or(0);
            if factor != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A `k`-dimensional subspace of `F_p^n`, stored as its unique RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl SubspaceBasis {
    /// Span of the given vectors.
    pub fn span(f: &PrimeField, n: usize, mut rows: Vec<Vec<u32>>) -> Self {
        for r in &mut rows {
            assert_eq!(r.len(), n, "vector length differs from ambient dimension");
            for v in r.iter_mut() {
                *v %= f.order();
            }
        }
        rref(f, n, &mut rows);
        SubspaceBasis { n, rows }
    }

    pub fn zero(n: usize) -> Self {
        SubspaceBasis {
            n,
            rows: Vec::new(),
        }
    }

    /// `span(e_1, …, e_k)`.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let rows = (0..k)
            .map(|i| (0..n).map(|j| (i == j) as u32).collect())
            .collect();
        SubspaceBasis { n, rows }
    }

    pub fn full(n: usize) -> Self {
        Self::coordinate(n, n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn sum(&self, f: &PrimeField, other: &Self) -> Self {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::span(f, self.n, rows)
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, f: &PrimeField, other: &Self) -> bool {
        self.dim() <= other.dim() && other.sum(f, self).dim() == other.dim()
    }

    /// Zassenhaus: reduce `[[A, A], [B, 0]]`; rows whose left half vanishes
    /// span `A ∩ B` in their right half.
    pub fn intersection(&self, f: &PrimeField, other: &Self) -> Self {
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).copied().collect())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, n)).collect()),
            )
            .collect();
        rref(f, 2 * n, &mut rows);
        let inter = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&v| v == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Self::span(f, n, inter)
    }

    /// Image of `self ⊆ F_p^m` under the coordinates given by the basis of
    /// `frame` (a subspace of dimension `m`).
    pub fn embed_in(&self, f: &PrimeField, frame: &Self) -> Self {
        assert_eq!(self.n, frame.dim(), "frame dimension mismatch");
        let n = frame.n;
        let rows = self
            .rows
            .iter()
            .map(|coef| {
                let mut v = vec![0u32; n];
                for (c, b) in coef.iter().zip(&frame.rows) {
                    if *c != 0 {
                        for j in 0..n {
                            v[j] = f.add(v[j], f.mul(*c, b[j]));
                        }
                    }
                }
                v
            })
            .collect();
        Self::span(f, n, rows)
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Entries of an RREF matrix with the given pivots that are free to vary.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    pivots
        .iter()
        .enumerate()
        .flat_map(|(row, &pc)| {
            (pc + 1..n)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (row, c))
        })
        .collect()
}

/// Number of `k`-subspaces of `F_p^n`, summed over RREF pivot patterns as
/// `Σ p^{#free entries}`.
pub fn count_subspaces(n: usize, k: usize, p: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    k_subsets(n, k).iter().try_fold(0u128, |acc, piv| {
        let free = free_positions(n, piv).len() as u32;
        (p as u128)
            .checked_pow(free)
            .and_then(|c| acc.checked_add(c))
            .ok_or(Error::Overflow)
    })
}

/// Default cap on the length of a list produced by [`enumerate_subspaces`].
pub const DEFAULT_SUBSPACE_LIMIT: u128 = 1_000_000;

/// Every `k`-dimensional subspace of `F_p^n`, each exactly once, by walking
/// the RREF pivot patterns and all fillings of their free entries.
pub fn enumerate_subspaces(
    f: &PrimeField,
    n: usize,
    k: usize,
    limit: u128,
) -> Result<Vec<SubspaceBasis>> {
    let p = f.order();
    let total = count_subspaces(n, k, p as u64)?;
    if total > limit {
        return Err(Error::BudgetExceeded {
            needed: total,
            limit,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    if k > n {
        return Ok(out);
    }
    for piv in k_subsets(n, k) {
        let free = free_positions(n, &piv);
        let mut base = vec![vec![0u32; n]; k];
        for (row, &pc) in piv.iter().enumerate() {
            base[row][pc] = 1;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows = base.clone();
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = d;
            }
            out.push(SubspaceBasis { n, rows });
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(out)
}
