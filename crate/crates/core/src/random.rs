//! Seeded generators for random posets and dimension vectors, shared by the
//! property tests, the acceptance suite and the benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::forms::DimVector;
use crate::poset::Poset;

/// Random poset on labels `1..=n`. A random permutation fixes a linear
/// extension and each forward pair becomes a relation with probability
/// `density`; labels are not in extension order.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                rel.push((perm[i].to_string(), perm[j].to_string()));
            }
        }
    }
    Poset::new((1..=n).map(|i| i.to_string()), rel).expect("forward relations are acyclic")
}

/// Admissible vector built from its coordinates: `c_s` uniform in
/// `[0, max_c]`, `α_s = Σ_{t ⪯ s} c_t`, `α₀ = max(Σ c, max α_s) + [0, 2]`.
/// When `cap` is given, draws are repeated until every entry is `≤ cap`,
/// shrinking `max_c` if that takes too long.
pub fn random_admissible<R: Rng + ?Sized>(
    rng: &mut R,
    p: &Poset,
    max_c: i64,
    cap: Option<i64>,
) -> DimVector {
    let mut max_c = max_c;
    let mut attempts = 0;
    loop {
        let c: Vec<i64> = (0..p.len()).map(|_| rng.random_range(0..=max_c)).collect();
        let alpha: Vec<i64> = (0..p.len())
            .map(|s| (0..p.len()).filter(|&t| p.le(t, s)).map(|t| c[t]).sum())
            .collect();
        let base = c
            .iter()
            .sum::<i64>()
            .max(alpha.iter().copied().max().unwrap_or(0));
        let v = DimVector::new(base + rng.random_range(0..=2), alpha);
        match cap {
            Some(cap) if v.alpha0 > cap => {
                attempts += 1;
                if attempts % 64 == 0 && max_c > 0 {
                    max_c -= 1;
                }
            }
            _ => return v,
        }
    }
}

/// Arbitrary integer vector with entries in `[lo, hi]`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> DimVector {
    DimVector::new(
        rng.random_range(lo..=hi),
        (0..n).map(|_| rng.random_range(lo..=hi)).collect(),
    )
}
