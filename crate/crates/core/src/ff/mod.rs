//! Finite-field oracle: brute-force point counts of `R_α(P)` over small
//! prime fields, used to check dimension claims independently of the forms.

mod count;
mod field;
mod fit;
mod subspace;

pub use count::{
    count_points, count_points_with, dimension_conflicts, for_each_point, max_sum_dim_empirical,
    CountConfig, RepTuple,
};
pub use field::{is_prime, PrimeField, PrimeFieldElement};
pub use fit::{
    evaluate, fit_counts, fit_dimension, format_rational, gaussian_binomial, interpolate,
    FitReport, FitVerdict,
};
pub use subspace::{count_subspaces, enumerate_subspaces, SubspaceBasis, DEFAULT_SUBSPACE_LIMIT};

/// Largest prime accepted by [`PrimeField::new`].
pub const MAX_PRIME: u64 = 31;
