//! Dimension vectors, the Euler and Tits quadratic forms, the admissible
//! cone and summand enumeration.
//!
//! A [`DimVector`] stores `α₀` and one entry per element in the poset's
//! input order. Matrices from [`crate::incidence`] use level order, so every
//! evaluation converts through [`DimVector::level_vector`].

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{frobenius_factors, incidence_inverse, incidence_matrix};
use crate::matrix::{self, IntMatrix};
use crate::poset::{Poset, ENLARGEMENT_LABEL};

/// `α = (α₀; α_s)`. Entries are plain integers: the forms are defined on
/// all of `Z^{P⁰}`, and only the dimension formula needs admissibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub alpha0: i64,
    /// One entry per element, in the poset's input order.
    pub alpha: Vec<i64>,
}

impl DimVector {
    pub fn new(alpha0: i64, alpha: Vec<i64>) -> Self {
        DimVector { alpha0, alpha }
    }

    pub fn zero(n: usize) -> Self {
        DimVector::new(0, vec![0; n])
    }

    /// Builds a vector from `(label, value)` pairs; every element of `p`
    /// must be given exactly once.
    pub fn from_labels<S: AsRef<str>>(p: &Poset, alpha0: i64, values: &[(S, i64)]) -> Result<Self> {
        let mut alpha = vec![None; p.len()];
        for (label, v) in values {
            let i = p.index_of(label.as_ref())?;
            if alpha[i].replace(*v).is_some() {
                return Err(Error::DuplicateLabel(label.as_ref().to_string()));
            }
        }
        let alpha = alpha
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownLabel(p.label(i).to_string())))
            .collect::<Result<_>>()?;
        Ok(DimVector::new(alpha0, alpha))
    }

    pub fn check_shape(&self, p: &Poset) -> Result<()> {
        if self.alpha.len() != p.len() {
            return Err(Error::ShapeMismatch {
                expected: p.len(),
                found: self.alpha.len(),
            });
        }
        Ok(())
    }

    pub fn get(&self, p: &Poset, label: &str) -> Result<i64> {
        Ok(self.alpha[p.index_of(label)?])
    }

    /// `α_P` laid out in level order.
    pub fn level_vector(&self, p: &Poset) -> Vec<i64> {
        p.level_order().iter().map(|&s| self.alpha[s]).collect()
    }

    /// `(α₀, α_P)` laid out as `0` followed by level order.
    pub fn enlarged_vector(&self, p: &Poset) -> Vec<i64> {
        std::iter::once(self.alpha0)
            .chain(self.level_vector(p))
            .collect()
    }

    /// Restriction to an induced subposet `sub` of `p` (matched by label).
    pub fn restrict(&self, p: &Poset, sub: &Poset) -> Result<DimVector> {
        let emb = p.embedding_of(sub)?;
        Ok(DimVector::new(
            self.alpha0,
            emb.iter().map(|&s| self.alpha[s]).collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha0 == 0 && self.alpha.iter().all(|&a| a == 0)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Result<DimVector> {
        let sub = |a: i64, b: i64| a.checked_sub(b).ok_or(Error::Overflow);
        Ok(DimVector::new(
            sub(self.alpha0, other.alpha0)?,
            self.alpha
                .iter()
                .zip(&other.alpha)
                .map(|(&a, &b)| sub(a, b))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn checked_add(&self, other: &DimVector) -> Result<DimVector> {
        let add = |a: i64, b: i64| a.checked_add(b).ok_or(Error::Overflow);
        Ok(DimVector::new(
            add(self.alpha0, other.alpha0)?,
            self.alpha
                .iter()
                .zip(&other.alpha)
                .map(|(&a, &b)| add(a, b))
                .collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rest: Vec<String> = self.alpha.iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.alpha0, rest.join(","))
    }
}

/// `c = α_P · C_P⁻¹`, one entry per element in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordVector {
    pub c: Vec<i64>,
}

impl CoordVector {
    pub fn get(&self, p: &Poset, label: &str) -> Result<i64> {
        Ok(self.c[p.index_of(label)?])
    }

    pub fn sum(&self) -> Result<i64> {
        matrix::sum(&self.c)
    }

    pub fn level_vector(&self, p: &Poset) -> Vec<i64> {
        p.level_order().iter().map(|&s| self.c[s]).collect()
    }
}

/// Solves `α_s = Σ_{t ⪯ s} c_t` through the Frobenius-factored inverse and
/// verifies the solution.
pub fn coordinate_vector(p: &Poset, alpha: &DimVector) -> Result<CoordVector> {
    alpha.check_shape(p)?;
    let inv = incidence_inverse(p)?;
    coordinate_vector_with(p, &inv, alpha)
}

fn coordinate_vector_with(p: &Poset, inv: &IntMatrix, alpha: &DimVector) -> Result<CoordVector> {
    let level_c = inv.vec_mul(&alpha.level_vector(p))?;
    let mut c = vec![0; p.len()];
    for (&s, v) in p.level_order().iter().zip(level_c) {
        c[s] = v;
    }
    for s in 0..p.len() {
        let below: Vec<i64> = (0..p.len()).filter(|&t| p.le(t, s)).map(|t| c[t]).collect();
        if matrix::sum(&below)? != alpha.alpha[s] {
            return Err(Error::InternalInconsistency(format!(
                "coordinate vector does not reproduce α at `{}`",
                p.label(s)
            )));
        }
    }
    Ok(CoordVector { c })
}

/// The iterates `α^(1) = α_P, α^(k) = α^(k−1) · F_{k−1}⁻¹`, in level order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    pub vectors: Vec<Vec<i64>>,
}

impl IterationTrace {
    /// `α^(h)`, which equals the coordinate vector in level order.
    pub fn last(&self) -> &[i64] {
        self.vectors.last().map_or(&[], Vec::as_slice)
    }
}

pub fn iteration_sequence(p: &Poset, alpha: &DimVector) -> Result<IterationTrace> {
    alpha.check_shape(p)?;
    let mut vectors = vec![alpha.level_vector(p)];
    for f in frobenius_factors(p) {
        let next = f.inverse.vec_mul(vectors.last().expect("non-empty"))?;
        vectors.push(next);
    }
    Ok(IterationTrace { vectors })
}

/// The first reason a vector lies outside the admissible cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NegativeCoordinate {
        label: String,
        value: i64,
    },
    ExceedsAmbient {
        label: String,
        value: i64,
        alpha0: i64,
    },
    NegativeAmbient {
        alpha0: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeCoordinate { label, value } => {
                write!(f, "c[{label}] = {value} < 0")
            }
            Violation::ExceedsAmbient {
                label,
                value,
                alpha0,
            } => write!(f, "alpha[{label}] = {value} > alpha0 = {alpha0}"),
            Violation::NegativeAmbient { alpha0 } => write!(f, "alpha0 = {alpha0} < 0"),
        }
    }
}

/// Cone membership with the coordinate vector and every violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub coords: CoordVector,
    /// Negative coordinates first (input order), then `α_s > α₀`.
    pub violations: Vec<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn certificate(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

fn violations_of(p: &Poset, alpha: &DimVector, c: &CoordVector) -> Vec<Violation> {
    let mut out: Vec<Violation> = (0..p.len())
        .filter(|&s| c.c[s] < 0)
        .map(|s| Violation::NegativeCoordinate {
            label: p.label(s).to_string(),
            value: c.c[s],
        })
        .collect();
    out.extend(
        (0..p.len())
            .filter(|&s| alpha.alpha[s] > alpha.alpha0)
            .map(|s| Violation::ExceedsAmbient {
                label: p.label(s).to_string(),
                value: alpha.alpha[s],
                alpha0: alpha.alpha0,
            }),
    );
    if alpha.alpha0 < 0 {
        out.push(Violation::NegativeAmbient {
            alpha0: alpha.alpha0,
        });
    }
    out
}

pub fn admissibility(p: &Poset, alpha: &DimVector) -> Result<Admissibility> {
    let coords = coordinate_vector(p, alpha)?;
    let violations = violations_of(p, alpha, &coords);
    Ok(Admissibility { coords, violations })
}

/// `α ∈ A_P`: `α_P · C_P⁻¹ ≥ 0` and `α₀ ≥ α_s` for all `s`.
pub fn is_admissible(p: &Poset, alpha: &DimVector) -> Result<bool> {
    Ok(admissibility(p, alpha)?.is_admissible())
}

/// Errors with [`Error::NotAdmissible`] carrying the certificate.
pub fn require_admissible(p: &Poset, alpha: &DimVector) -> Result<CoordVector> {
    let adm = admissibility(p, alpha)?;
    match adm.violations.into_iter().next() {
        Some(v) => Err(Error::NotAdmissible(v)),
        None => Ok(adm.coords),
    }
}

/// `α · C_{P⁰}⁻¹ ≥ 0`: all `c_s ≥ 0` and `α₀ − Σ c_s ≥ 0`.
pub fn is_p0_nonnegative(p: &Poset, alpha: &DimVector) -> Result<bool> {
    let c = coordinate_vector(p, alpha)?;
    Ok(c.c.iter().all(|&x| x >= 0) && alpha.alpha0 >= c.sum()?)
}

/// `P⁰` with a fresh label for the top, so user labels never collide.
fn enlarge_fresh(p: &Poset) -> Result<Poset> {
    let mut top = ENLARGEMENT_LABEL.to_string();
    while p.index_of(&top).is_ok() {
        top.push('\'');
    }
    let labels = std::iter::once(top.clone()).chain(p.labels().iter().map(|l| l.to_string()));
    let mut rel: Vec<(String, String)> = p
        .relations()
        .into_iter()
        .map(|(s, t)| (p.label(s).to_string(), p.label(t).to_string()))
        .collect();
    rel.extend(p.labels().iter().map(|l| (l.to_string(), top.clone())));
    Poset::new(labels, rel)
}

/// `C_{P⁰}⁻¹` with rows and columns ordered `0` then the level order of `p`.
pub fn enlarged_inverse(p: &Poset) -> Result<IntMatrix> {
    let e = enlarge_fresh(p)?;
    // P⁰'s level order is the top followed by the level order of P.
    debug_assert_eq!(e.level_order()[0], 0);
    incidence_inverse(&e)
}

/// Euler form `Q_P(α) = α · C_{P⁰}⁻¹ · αᵀ`, cross-checked against the
/// expansion `α₀² − (Σ c_s) α₀ + Σ c_s α_s`.
pub fn euler_form(p: &Poset, alpha: &DimVector) -> Result<i64> {
    alpha.check_shape(p)?;
    let inv0 = enlarged_inverse(p)?;
    let q = inv0.quadratic_form(&alpha.enlarged_vector(p))?;
    let expanded = euler_expansion(p, alpha)?;
    if q != expanded {
        return Err(Error::InternalInconsistency(format!(
            "Euler form {q} disagrees with its expansion {expanded}"
        )));
    }
    Ok(q)
}

/// `α₀² − (Σ c_s) α₀ + Σ c_s α_s`.
pub fn euler_expansion(p: &Poset, alpha: &DimVector) -> Result<i64> {
    let c = coordinate_vector(p, alpha)?;
    euler_expansion_with(alpha, &c)
}

fn euler_expansion_with(alpha: &DimVector, c: &CoordVector) -> Result<i64> {
    let a0 = alpha.alpha0;
    let sq = a0.checked_mul(a0).ok_or(Error::Overflow)?;
    let lin = c.sum()?.checked_mul(a0).ok_or(Error::Overflow)?;
    let quad = matrix::dot(&c.c, &alpha.alpha)?;
    sq.checked_sub(lin)
        .and_then(|v| v.checked_add(quad))
        .ok_or(Error::Overflow)
}

/// Tits matrix `[[1, 0], [−E_P, C_Pᵀ]]`, ordered `0` then level order.
pub fn tits_matrix(p: &Poset) -> IntMatrix {
    let ct = incidence_matrix(p).transpose();
    let n = p.len();
    IntMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => 1,
        (0, _) => 0,
        (_, 0) => -1,
        _ => ct.get(i - 1, j - 1),
    })
}

/// Tits form `β · T̂_P · βᵀ` for `β = (β₀; β_P)`, entries of any sign.
pub fn tits_form(p: &Poset, beta: &DimVector) -> Result<i64> {
    beta.check_shape(p)?;
    tits_matrix(p).quadratic_form(&beta.enlarged_vector(p))
}

/// `(α₀; α_P · C_P⁻¹)`, the argument at which the Tits form reproduces the
/// Euler form.
pub fn tits_argument(p: &Poset, alpha: &DimVector) -> Result<DimVector> {
    let c = coordinate_vector(p, alpha)?;
    Ok(DimVector::new(alpha.alpha0, c.c))
}

/// Default bound on the number of candidates examined by [`summands`].
pub const DEFAULT_SUMMAND_BUDGET: u128 = 10_000_000;

/// Membership test for `A_P` with the inverse precomputed.
struct Cone<'a> {
    p: &'a Poset,
    inv: IntMatrix,
}

impl<'a> Cone<'a> {
    fn new(p: &'a Poset) -> Result<Self> {
        Ok(Cone {
            p,
            inv: incidence_inverse(p)?,
        })
    }

    fn contains(&self, alpha: &DimVector) -> Result<bool> {
        if alpha.alpha0 < 0 || alpha.alpha.iter().any(|&a| a > alpha.alpha0) {
            return Ok(false);
        }
        let c = self.inv.vec_mul(&alpha.level_vector(self.p))?;
        Ok(c.iter().all(|&x| x >= 0))
    }
}

/// Every non-zero `α′ ∈ A_P` with `α − α′ ∈ A_P`, found by scanning the box
/// `0 ≤ α′ ≤ α`. Sorted lexicographically by `(α₀, α in input order)`;
/// includes `α` itself.
pub fn summands(p: &Poset, alpha: &DimVector, budget: u128) -> Result<Vec<DimVector>> {
    require_admissible(p, alpha)?;
    let size = std::iter::once(alpha.alpha0)
        .chain(alpha.alpha.iter().copied())
        .try_fold(1u128, |acc, a| acc.checked_mul(a as u128 + 1))
        .unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::SearchSpaceTooLarge { size, budget });
    }
    let cone = Cone::new(p)?;
    let n = p.len();
    let mut found: Vec<DimVector> = (0..=alpha.alpha0)
        .into_par_iter()
        .map(|a0| -> Result<Vec<DimVector>> {
            let mut hits = Vec::new();
            let mut cur = vec![0i64; n];
            loop {
                let cand = DimVector::new(a0, cur.clone());
                if !cand.is_zero()
                    && cone.contains(&cand)?
                    && cone.contains(&alpha.checked_sub(&cand)?)?
                {
                    hits.push(cand);
                }
                // odometer over 0 ≤ cur ≤ α_P
                let mut i = n;
                loop {
                    if i == 0 {
                        return Ok(hits);
                    }
                    i -= 1;
                    if cur[i] < alpha.alpha[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = 0;
                }
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort();
    Ok(found)
}

/// Result of checking `Q_P(α′) ≥ 1` over `α` and all its summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanVerdict {
    /// Every vector checked has `Q ≥ 1`.
    Pass { checked: usize },
    /// `witness` has `Q ≤ 0`, so `α` is not of finite type.
    Fail { witness: DimVector, q: i64 },
}

/// Scans `α` first, then its summands in sorted order.
pub fn summand_scan(p: &Poset, alpha: &DimVector, budget: u128) -> Result<ScanVerdict> {
    let all = summands(p, alpha, budget)?;
    let candidates = std::iter::once(alpha).chain(all.iter().filter(|s| *s != alpha));
    let mut checked = 0;
    for cand in candidates {
        let q = euler_form(p, cand)?;
        checked += 1;
        if q <= 0 {
            return Ok(ScanVerdict::Fail {
                witness: cand.clone(),
                q,
            });
        }
    }
    Ok(ScanVerdict::Pass { checked })
}
