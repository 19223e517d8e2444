//! Deterministic inputs shared by the benchmarks.

use posetdim::random::{random_admissible, random_poset};
use posetdim::{DimVector, Poset};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// A random poset on `n` elements with a fixed seed.
pub fn poset(n: usize, density: f64, seed: u64) -> Poset {
    random_poset(&mut StdRng::seed_from_u64(seed), n, density)
}

/// A random poset with an admissible vector whose entries stay below `cap`.
pub fn admissible_case(n: usize, density: f64, cap: i64, seed: u64) -> (Poset, DimVector) {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = random_poset(&mut rng, n, density);
    let a = random_admissible(&mut rng, &p, 2, Some(cap));
    (p, a)
}

/// Two elements below a third, with `(4; 2, 2, 3)`.
pub fn wedge() -> (Poset, DimVector) {
    let p = Poset::new(["1", "2", "3"], [("1", "3"), ("2", "3")]).expect("valid poset");
    (p, DimVector::new(4, vec![2, 2, 3]))
}
