//! Point counts of `R_α(P)` over `F_p` by exhaustive enumeration.
//!
//! Elements are visited top-down along a linear extension. Each element only
//! ranges over subspaces of the intersection of its already chosen upper
//! bounds. A trailing run of minimal elements is not enumerated: those are
//! pairwise incomparable, so their completions multiply, and each factor is
//! the number of `α_s`-subspaces of an `m`-dimensional space.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::DimVector;
use crate::poset::Poset;

use super::field::PrimeField;
use super::subspace::{
    count_subspaces, enumerate_subspaces, SubspaceBasis, DEFAULT_SUBSPACE_LIMIT,
};

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    /// Largest Grassmannian list materialized at once.
    pub subspace_limit: u128,
    /// Largest number of explicitly enumerated partial tuples.
    pub node_limit: u64,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            subspace_limit: DEFAULT_SUBSPACE_LIMIT,
            node_limit: 200_000_000,
        }
    }
}

/// A point of `R_α(P)(F_p)`: one subspace per element, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTuple {
    pub subspaces: Vec<SubspaceBasis>,
}

impl RepTuple {
    /// Dimensions match `α` and `V_s ⊆ V_t` whenever `s ≺ t`.
    pub fn is_valid(&self, f: &PrimeField, p: &Poset, alpha: &DimVector) -> bool {
        self.subspaces.len() == p.len()
            && self
                .subspaces
                .iter()
                .zip(&alpha.alpha)
                .all(|(v, &a)| v.dim() as i64 == a && v.ambient_dim() as i64 == alpha.alpha0)
            && p.relations()
                .into_iter()
                .all(|(s, t)| self.subspaces[s].is_subspace_of(f, &self.subspaces[t]))
    }
}

/// Reasons the variety is empty for dimension reasons alone.
pub fn dimension_conflicts(p: &Poset, alpha: &DimVector) -> Vec<String> {
    let mut out = Vec::new();
    for s in 0..p.len() {
        if alpha.alpha[s] > alpha.alpha0 {
            out.push(format!(
                "alpha[{}] = {} exceeds alpha0 = {}",
                p.label(s),
                alpha.alpha[s],
                alpha.alpha0
            ));
        }
    }
    for (s, t) in p.relations() {
        if alpha.alpha[s] > alpha.alpha[t] {
            out.push(format!(
                "{} < {} but alpha[{}] = {} > alpha[{}] = {}",
                p.label(s),
                p.label(t),
                p.label(s),
                alpha.alpha[s],
                p.label(t),
                alpha.alpha[t]
            ));
        }
    }
    out
}

fn check_inputs(p: &Poset, alpha: &DimVector) -> Result<()> {
    alpha.check_shape(p)?;
    if alpha.alpha0 < 0 {
        return Err(Error::NegativeDimension {
            label: "0".into(),
            value: alpha.alpha0,
        });
    }
    if let Some(s) = (0..p.len()).find(|&s| alpha.alpha[s] < 0) {
        return Err(Error::NegativeDimension {
            label: p.label(s).to_string(),
            value: alpha.alpha[s],
        });
    }
    Ok(())
}

/// `order` must list every element once with upper bounds before lower ones.
fn check_extension(p: &Poset, order: &[usize]) -> Result<()> {
    let mut pos = vec![usize::MAX; p.len()];
    for (i, &s) in order.iter().enumerate() {
        if s >= p.len() || pos[s] != usize::MAX {
            return Err(Error::HypothesisViolated(
                "order is not a permutation of the elements".into(),
            ));
        }
        pos[s] = i;
    }
    if order.len() != p.len() {
        return Err(Error::HypothesisViolated(
            "order is not a permutation of the elements".into(),
        ));
    }
    if p.relations().into_iter().any(|(s, t)| pos[t] > pos[s]) {
        return Err(Error::HypothesisViolated(
            "order must list every element after all elements above it".into(),
        ));
    }
    Ok(())
}

type ListCache = Mutex<HashMap<(usize, usize), Arc<Vec<SubspaceBasis>>>>;

struct Search<'a> {
    f: PrimeField,
    p: &'a Poset,
    alpha: &'a DimVector,
    /// Explicitly enumerated elements, top-down.
    prefix: Vec<usize>,
    /// Trailing minimal elements handled by counting.
    suffix: Vec<usize>,
    uppers: Vec<Vec<usize>>,
    cfg: CountConfig,
    nodes: AtomicU64,
    lists: ListCache,
    counts: Mutex<HashMap<(usize, usize), u128>>,
}

impl<'a> Search<'a> {
    fn new(
        f: PrimeField,
        p: &'a Poset,
        alpha: &'a DimVector,
        order: &[usize],
        split_minimal: bool,
        cfg: CountConfig,
    ) -> Self {
        let mut cut = order.len();
        if split_minimal {
            while cut > 0 && p.is_minimal(order[cut - 1]) {
                cut -= 1;
            }
        }
        Search {
            f,
            p,
            alpha,
            prefix: order[..cut].to_vec(),
            suffix: order[cut..].to_vec(),
            uppers: (0..p.len()).map(|s| p.up_set(s)).collect(),
            cfg,
            nodes: AtomicU64::new(0),
            lists: Mutex::new(HashMap::new()),
            counts: Mutex::new(HashMap::new()),
        }
    }

    fn n(&self) -> usize {
        self.alpha.alpha0 as usize
    }

    fn list(&self, m: usize, k: usize) -> Result<Arc<Vec<SubspaceBasis>>> {
        if let Some(l) = self.lists.lock().expect("cache lock").get(&(m, k)) {
            return Ok(l.clone());
        }
        let l = Arc::new(enumerate_subspaces(&self.f, m, k, self.cfg.subspace_limit)?);
        self.lists
            .lock()
            .expect("cache lock")
            .insert((m, k), l.clone());
        Ok(l)
    }

    fn subspace_count(&self, m: usize, k: usize) -> Result<u128> {
        if let Some(&c) = self.counts.lock().expect("cache lock").get(&(m, k)) {
            return Ok(c);
        }
        let c = count_subspaces(m, k, self.f.order() as u64)?;
        self.counts.lock().expect("cache lock").insert((m, k), c);
        Ok(c)
    }

    /// Intersection of the chosen subspaces above `s` (the whole space if none).
    fn bound(&self, s: usize, chosen: &[Option<SubspaceBasis>]) -> SubspaceBasis {
        let mut u = SubspaceBasis::full(self.n());
        for &t in &self.uppers[s] {
            let v = chosen[t].as_ref().expect("upper bounds are chosen first");
            u = u.intersection(&self.f, v);
        }
        u
    }

    /// All admissible choices for `s` given the current partial tuple.
    fn choices(&self, s: usize, chosen: &[Option<SubspaceBasis>]) -> Result<Vec<SubspaceBasis>> {
        let u = self.bound(s, chosen);
        let k = self.alpha.alpha[s] as usize;
        if k > u.dim() {
            return Ok(Vec::new());
        }
        let local = self.list(u.dim(), k)?;
        Ok(local.iter().map(|w| w.embed_in(&self.f, &u)).collect())
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.cfg.node_limit {
            return Err(Error::BudgetExceeded {
                needed: n as u128,
                limit: self.cfg.node_limit as u128,
            });
        }
        Ok(())
    }

    fn suffix_count(&self, chosen: &[Option<SubspaceBasis>]) -> Result<u128> {
        self.suffix.iter().try_fold(1u128, |acc, &s| {
            let m = self.bound(s, chosen).dim();
            let c = self.subspace_count(m, self.alpha.alpha[s] as usize)?;
            acc.checked_mul(c).ok_or(Error::Overflow)
        })
    }

    fn count_from(&self, depth: usize, chosen: &mut Vec<Option<SubspaceBasis>>) -> Result<u128> {
        if depth == self.prefix.len() {
            return self.suffix_count(chosen);
        }
        let s = self.prefix[depth];
        let mut total = 0u128;
        for v in self.choices(s, chosen)? {
            self.tick()?;
            chosen[s] = Some(v);
            let sub = self.count_from(depth + 1, chosen)?;
            total = total.checked_add(sub).ok_or(Error::Overflow)?;
        }
        chosen[s] = None;
        Ok(total)
    }

    fn count_parallel(&self) -> Result<u128> {
        let mut empty = vec![None; self.p.len()];
        if self.prefix.is_empty() {
            return self.suffix_count(&empty);
        }
        let s = self.prefix[0];
        let first = self.choices(s, &empty)?;
        empty.clear();
        let parts = first
            .into_par_iter()
            .map(|v| {
                self.tick()?;
                let mut chosen = vec![None; self.p.len()];
                chosen[s] = Some(v);
                self.count_from(1, &mut chosen)
            })
            .collect::<Result<Vec<u128>>>()?;
        parts
            .into_iter()
            .try_fold(0u128, |a, b| a.checked_add(b).ok_or(Error::Overflow))
    }

    fn exists_from(&self, depth: usize, chosen: &mut Vec<Option<SubspaceBasis>>) -> Result<bool> {
        if depth == self.prefix.len() {
            return Ok(self.suffix_count(chosen)? > 0);
        }
        let s = self.prefix[depth];
        for v in self.choices(s, chosen)? {
            self.tick()?;
            chosen[s] = Some(v);
            if self.exists_from(depth + 1, chosen)? {
                chosen[s] = None;
                return Ok(true);
            }
        }
        chosen[s] = None;
        Ok(false)
    }

    fn visit_from<F: FnMut(&RepTuple) -> Result<()>>(
        &self,
        depth: usize,
        chosen: &mut Vec<Option<SubspaceBasis>>,
        visit: &mut F,
    ) -> Result<u128> {
        if depth == self.prefix.len() {
            let tuple = RepTuple {
                subspaces: chosen
                    .iter()
                    .map(|v| v.clone().expect("all chosen"))
                    .collect(),
            };
            if !tuple.is_valid(&self.f, self.p, self.alpha) {
                return Err(Error::InternalInconsistency(
                    "enumerated an invalid tuple".into(),
                ));
            }
            visit(&tuple)?;
            return Ok(1);
        }
        let s = self.prefix[depth];
        let mut total = 0u128;
        for v in self.choices(s, chosen)? {
            self.tick()?;
            chosen[s] = Some(v);
            total += self.visit_from(depth + 1, chosen, visit)?;
        }
        chosen[s] = None;
        Ok(total)
    }
}

/// `|R_α(P)(F_p)|` along the level order with default limits.
pub fn count_points(p: &Poset, alpha: &DimVector, prime: u64) -> Result<u128> {
    count_points_with(p, alpha, prime, p.level_order(), CountConfig::default())
}

/// `|R_α(P)(F_p)|` along a caller-chosen top-down linear extension. A
/// vector with `α_s > α_t` for some `s ≺ t`, or `α_s > α₀`, counts 0.
pub fn count_points_with(
    p: &Poset,
    alpha: &DimVector,
    prime: u64,
    order: &[usize],
    cfg: CountConfig,
) -> Result<u128> {
    let f = PrimeField::new(prime)?;
    check_inputs(p, alpha)?;
    check_extension(p, order)?;
    if !dimension_conflicts(p, alpha).is_empty() {
        return Ok(0);
    }
    Search::new(f, p, alpha, order, true, cfg).count_parallel()
}

/// Calls `visit` on every point, enumerating every element explicitly.
/// Returns the number of points visited.
pub fn for_each_point<F>(
    p: &Poset,
    alpha: &DimVector,
    prime: u64,
    cfg: CountConfig,
    mut visit: F,
) -> Result<u128>
where
    F: FnMut(&RepTuple) -> Result<()>,
{
    let f = PrimeField::new(prime)?;
    check_inputs(p, alpha)?;
    if !dimension_conflicts(p, alpha).is_empty() {
        return Ok(0);
    }
    let search = Search::new(f, p, alpha, p.level_order(), false, cfg);
    let mut chosen = vec![None; p.len()];
    search.visit_from(0, &mut chosen, &mut visit)
}

/// Maximum over all points of `dim Σ_{y ∈ T_h} V_y`.
///
/// The first maximal element (the one with the largest Grassmannian) is
/// pinned to a coordinate subspace: `GL(α₀)` acts transitively on its
/// choices and preserves the sum dimension, so the maximum is unchanged.
/// Lower elements are only checked for the existence of a completion.
pub fn max_sum_dim_empirical(
    p: &Poset,
    alpha: &DimVector,
    prime: u64,
    cfg: CountConfig,
) -> Result<i64> {
    let f = PrimeField::new(prime)?;
    check_inputs(p, alpha)?;
    if !dimension_conflicts(p, alpha).is_empty() {
        return Err(Error::EmptyVariety);
    }
    if p.is_empty() {
        return Ok(0);
    }
    let n = alpha.alpha0 as usize;
    let mut top = p.maximal_elements();
    let sizes = top
        .iter()
        .map(|&s| count_subspaces(n, alpha.alpha[s] as usize, prime))
        .collect::<Result<Vec<_>>>()?;
    let pinned_at = (0..top.len())
        .max_by_key(|&i| (sizes[i], std::cmp::Reverse(i)))
        .expect("non-empty");
    let pinned = top.remove(pinned_at);
    let lower: Vec<usize> = p
        .level_order()
        .iter()
        .copied()
        .filter(|&s| !p.is_maximal(s))
        .collect();

    let bound = (alpha.alpha0 as i128).min(
        p.maximal_elements()
            .iter()
            .map(|&s| alpha.alpha[s] as i128)
            .sum(),
    );
    let completion = Search::new(f.clone(), p, alpha, &lower, true, cfg);
    let top_search = Search::new(f.clone(), p, alpha, &top, false, cfg);

    let mut chosen = vec![None; p.len()];
    chosen[pinned] = Some(SubspaceBasis::coordinate(n, alpha.alpha[pinned] as usize));
    let mut best: Option<i64> = None;
    top_search.best_top(0, &mut chosen, &completion, &mut best, bound as i64)?;
    best.ok_or(Error::EmptyVariety)
}

impl Search<'_> {
    fn best_top(
        &self,
        depth: usize,
        chosen: &mut Vec<Option<SubspaceBasis>>,
        completion: &Search<'_>,
        best: &mut Option<i64>,
        bound: i64,
    ) -> Result<bool> {
        if depth == self.prefix.len() {
            let sum = chosen
                .iter()
                .enumerate()
                .filter(|(s, _)| self.p.is_maximal(*s))
                .filter_map(|(_, v)| v.as_ref())
                .fold(SubspaceBasis::zero(self.n()), |acc, v| acc.sum(&self.f, v));
            let d = sum.dim() as i64;
            if best.is_none_or(|b| d > b) && completion.exists_from(0, chosen)? {
                *best = Some(d);
            }
            return Ok(*best == Some(bound));
        }
        let s = self.prefix[depth];
        for v in self.choices(s, chosen)? {
            self.tick()?;
            chosen[s] = Some(v);
            if self.best_top(depth + 1, chosen, completion, best, bound)? {
                chosen[s] = None;
                return Ok(true);
            }
        }
        chosen[s] = None;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_grassmannian() {
        let p = Poset::antichain(["x"]).unwrap();
        assert_eq!(count_points(&p, &DimVector::new(2, vec![1]), 2).unwrap(), 3);
        assert_eq!(
            count_points(&p, &DimVector::new(4, vec![2]), 2).unwrap(),
            35
        );
    }

    #[test]
    fn wedge_over_f2() {
        let p = Poset::new(["1", "2", "3"], [("1", "3"), ("2", "3")]).unwrap();
        let a = DimVector::new(4, vec![2, 2, 3]);
        assert_eq!(count_points(&p, &a, 2).unwrap(), 735);
        let visited = for_each_point(&p, &a, 2, CountConfig::default(), |_| Ok(())).unwrap();
        assert_eq!(visited, 735);
    }

    #[test]
    fn chain_forced_top() {
        let p = Poset::chain(["1", "2"]).unwrap();
        assert_eq!(
            count_points(&p, &DimVector::new(2, vec![1, 2]), 3).unwrap(),
            4
        );
    }

    #[test]
    fn dimension_conflicts_count_zero() {
        let p = Poset::chain(["1", "2"]).unwrap();
        let a = DimVector::new(3, vec![2, 1]);
        assert_eq!(dimension_conflicts(&p, &a).len(), 1);
        assert_eq!(count_points(&p, &a, 2).unwrap(), 0);
        assert_eq!(
            max_sum_dim_empirical(&p, &a, 2, CountConfig::default()).unwrap_err(),
            Error::EmptyVariety
        );
        assert!(matches!(
            count_points(&p, &DimVector::new(3, vec![-1, 1]), 2),
            Err(Error::NegativeDimension { .. })
        ));
    }

    #[test]
    fn extension_validation() {
        let p = Poset::chain(["1", "2"]).unwrap();
        let a = DimVector::new(2, vec![1, 2]);
        assert!(count_points_with(&p, &a, 2, &[1, 0], CountConfig::default()).is_ok());
        assert!(matches!(
            count_points_with(&p, &a, 2, &[0, 1], CountConfig::default()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn budget() {
        let p = Poset::antichain(["x", "y"]).unwrap();
        let cfg = CountConfig {
            subspace_limit: DEFAULT_SUBSPACE_LIMIT,
            node_limit: 10,
        };
        let a = DimVector::new(4, vec![2, 2]);
        let order: Vec<usize> = vec![0, 1];
        // both elements minimal: nothing is enumerated, so no budget is used
        assert_eq!(count_points_with(&p, &a, 2, &order, cfg).unwrap(), 35 * 35);
        let c = Poset::chain(["x", "y"]).unwrap();
        let err =
            count_points_with(&c, &DimVector::new(4, vec![1, 2]), 2, &[1, 0], cfg).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn max_sum_examples() {
        let cfg = CountConfig::default();
        let anti = Poset::antichain(["1", "2"]).unwrap();
        assert_eq!(
            max_sum_dim_empirical(&anti, &DimVector::new(4, vec![2, 2]), 2, cfg).unwrap(),
            4
        );
        let single = Poset::antichain(["x"]).unwrap();
        assert_eq!(
            max_sum_dim_empirical(&single, &DimVector::new(3, vec![2]), 3, cfg).unwrap(),
            2
        );
    }
}
