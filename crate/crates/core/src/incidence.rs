//! Incidence matrices of posets, their Frobenius factorization and the
//! Möbius function.
//!
//! All matrices index rows and columns by [`Poset::level_order`], in which
//! the incidence matrix is lower unitriangular.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poset::Poset;

/// `C_P` with entry `(s, t)` equal to 1 iff `s ⪯ t`.
pub fn incidence_matrix(p: &Poset) -> IntMatrix {
    let order = p.level_order();
    IntMatrix::from_fn(p.len(), p.len(), |i, j| p.le(order[i], order[j]) as i64)
}

/// Restriction `C_{X,Y}`. Rows and columns follow the level order of `p`
/// regardless of the order in which `x` and `y` list their elements.
pub fn incidence_restriction(p: &Poset, x: &[usize], y: &[usize]) -> Result<IntMatrix> {
    let n = p.len();
    if let Some(&bad) = x.iter().chain(y).find(|&&s| s >= n) {
        return Err(Error::UnknownLabel(format!("#{bad}")));
    }
    let rows = sort_by_level(p, x);
    let cols = sort_by_level(p, y);
    Ok(IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        p.le(rows[i], cols[j]) as i64
    }))
}

/// Subset of `p` listed in level order.
pub fn sort_by_level(p: &Poset, set: &[usize]) -> Vec<usize> {
    let mut member = vec![false; p.len()];
    for &s in set {
        member[s] = true;
    }
    p.level_order()
        .iter()
        .copied()
        .filter(|&s| member[s])
        .collect()
}

/// One Frobenius factor `F_i` together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusFactor {
    /// Level index `i` in `[1, h − 1]`.
    pub level: usize,
    pub factor: IntMatrix,
    pub inverse: IntMatrix,
}

/// Factors `F_1, …, F_{h−1}` (in that order). `F_i` is the identity except
/// in the row block of `T_i`, which carries the strip
/// `C_{i,h} … C_{i,i+1}` left of the diagonal; `F_i⁻¹` carries the negated
/// strip. `F_{h−1} ⋯ F_1 = C_P`.
pub fn frobenius_factors(p: &Poset) -> Vec<FrobeniusFactor> {
    let n = p.len();
    let order = p.level_order();
    let h = p.height();
    (1..h)
        .map(|i| {
            let mut factor = IntMatrix::identity(n);
            let mut inverse = IntMatrix::identity(n);
            for (r, &s) in order.iter().enumerate() {
                if p.level_of(s) != i {
                    continue;
                }
                for (c, &t) in order.iter().enumerate() {
                    if p.level_of(t) > i && p.lt(s, t) {
                        factor.set(r, c, 1);
                        inverse.set(r, c, -1);
                    }
                }
            }
            FrobeniusFactor {
                level: i,
                factor,
                inverse,
            }
        })
        .collect()
}

/// `C_P⁻¹ = F_1⁻¹ ⋯ F_{h−1}⁻¹`, checked against `C_P` before returning.
pub fn incidence_inverse(p: &Poset) -> Result<IntMatrix> {
    let mut inv = IntMatrix::identity(p.len());
    for f in frobenius_factors(p) {
        inv = inv.mul(&f.inverse)?;
    }
    let c = incidence_matrix(p);
    if !c.mul(&inv)?.is_identity() {
        return Err(Error::InternalInconsistency(
            "product of inverse Frobenius factors does not invert C_P".into(),
        ));
    }
    Ok(inv)
}

/// `[μ(s, t)]` in level order, from the recursion
/// `μ(s, s) = 1`, `μ(s, t) = −Σ_{s ⪯ r ≺ t} μ(s, r)`.
pub fn mobius_matrix(p: &Poset) -> Result<IntMatrix> {
    let n = p.len();
    // bottom-up linear extension
    let mut up: Vec<usize> = (0..n).collect();
    up.sort_by_key(|&t| p.down_set(t).len());
    let mut mu = vec![0i64; n * n];
    for s in 0..n {
        mu[s * n + s] = 1;
        for &t in &up {
            if !p.lt(s, t) {
                continue;
            }
            let mut acc = 0i64;
            for r in 0..n {
                if p.le(s, r) && p.lt(r, t) {
                    acc = acc.checked_add(mu[s * n + r]).ok_or(Error::Overflow)?;
                }
            }
            mu[s * n + t] = acc.checked_neg().ok_or(Error::Overflow)?;
        }
    }
    let order = p.level_order();
    Ok(IntMatrix::from_fn(n, n, |i, j| mu[order[i] * n + order[j]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Poset {
        Poset::new(
            ["1", "2", "3", "4"],
            [("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")],
        )
        .unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn enlarged_singleton() {
        let p = Poset::antichain(["x"]).unwrap().enlarge().unwrap();
        assert_eq!(incidence_matrix(&p), m(&[&[1, 0], &[1, 1]]));
        assert_eq!(incidence_inverse(&p).unwrap(), m(&[&[1, 0], &[-1, 1]]));
        assert_eq!(mobius_matrix(&p).unwrap(), m(&[&[1, 0], &[-1, 1]]));
    }

    #[test]
    fn bowtie_matrices() {
        let p = bowtie();
        let labels: Vec<&str> = p.level_order().iter().map(|&s| p.label(s)).collect();
        assert_eq!(labels, ["3", "4", "1", "2"]);
        assert_eq!(
            incidence_matrix(&p),
            m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 0, 1]])
        );
        let inv = m(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[-1, -1, 1, 0],
            &[-1, -1, 0, 1],
        ]);
        assert_eq!(incidence_inverse(&p).unwrap(), inv);
        assert_eq!(mobius_matrix(&p).unwrap(), inv);
    }

    #[test]
    fn antichain_is_identity() {
        let p = Poset::antichain(["a", "b", "c"]).unwrap();
        assert!(incidence_matrix(&p).is_identity());
        assert!(incidence_inverse(&p).unwrap().is_identity());
        assert!(mobius_matrix(&p).unwrap().is_identity());
        assert!(frobenius_factors(&p).is_empty());
    }

    #[test]
    fn chain_factors() {
        let p = Poset::chain(["a", "b", "c"]).unwrap();
        let f = frobenius_factors(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[1].factor, m(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(f[0].factor, m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]));
        let prod = f[1].factor.mul(&f[0].factor).unwrap();
        assert_eq!(prod, m(&[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]));
        assert_eq!(prod, incidence_matrix(&p));
        for fi in &f {
            assert!(fi.factor.mul(&fi.inverse).unwrap().is_identity());
        }
    }

    #[test]
    fn restrictions() {
        let p = Poset::new(
            ["1", "2", "3", "4", "5", "6", "7"],
            [
                ("1", "3"),
                ("1", "4"),
                ("1", "5"),
                ("2", "4"),
                ("2", "5"),
                ("3", "6"),
                ("3", "7"),
                ("4", "6"),
                ("4", "7"),
                ("5", "7"),
            ],
        )
        .unwrap();
        let t1 = p.level(1);
        let t2 = p.level(2);
        assert_eq!(
            incidence_restriction(&p, &t1, &t2).unwrap(),
            m(&[&[1, 1, 1], &[0, 1, 1]])
        );
        assert!(incidence_restriction(&p, &t2, &t2).unwrap().is_identity());
        let empty = incidence_restriction(&p, &[], &t2).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 3));

        let f = frobenius_factors(&p);
        let prod = f
            .iter()
            .rev()
            .try_fold(IntMatrix::identity(7), |acc, fi| acc.mul(&fi.factor))
            .unwrap();
        assert_eq!(prod, incidence_matrix(&p));
    }
}
