//! Exact computations for subspace representations of finite posets.
//!
//! For a finite poset `P` and a dimension vector `α = (α₀; α_s)`, the
//! variety `R_α(P)` collects the tuples of subspaces `V_s ⊆ k^{α₀}` with
//! `dim V_s = α_s` and `V_s ⊆ V_t` whenever `s ≺ t`. For admissible `α`
//! its dimension is `α₀² − Q_P(α)`, where `Q_P` is the Euler form of the
//! enlarged poset `P⁰`.
//!
//! - [`poset`]: construction, level partition, down-sets, covers.
//! - [`incidence`]: incidence matrices, Frobenius factors, Möbius oracle.
//! - [`forms`]: Euler and Tits forms, coordinate vectors, the admissible cone.
//! - [`dimension`]: closed form and peeling recursion for `dim R_α(P)`.
//! - [`ff`]: point counts over prime fields as an independent check.
//! - [`format`]: the text file format and Graphviz output.

pub mod dimension;
pub mod error;
pub mod ff;
pub mod format;
pub mod forms;
pub mod incidence;
pub mod matrix;
pub mod poset;
pub mod random;

pub use dimension::{
    generic_sum_dim, grassmann_dim, peel_defect, peel_identity, variety_dim, variety_dim_recursive,
    variety_dim_recursive_with, DimReport, Method, PeelIdentity, PeelOrder, PeelStep,
};
pub use error::{Error, Result};
pub use forms::{
    admissibility, coordinate_vector, euler_form, is_admissible, is_p0_nonnegative,
    iteration_sequence, summand_scan, summands, tits_form, tits_matrix, Admissibility, CoordVector,
    DimVector, IterationTrace, ScanVerdict, Violation, DEFAULT_SUMMAND_BUDGET,
};
pub use incidence::{
    frobenius_factors, incidence_inverse, incidence_matrix, incidence_restriction, mobius_matrix,
};
pub use matrix::IntMatrix;
pub use poset::{ElementId, Poset};
