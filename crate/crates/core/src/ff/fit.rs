//! Gaussian binomials and the polynomial-degree check on point counts.
//!
//! A `CONSISTENT` verdict is evidence, not proof: polynomiality of the count
//! in `q` is only known on the curated families (products of Grassmannians,
//! flags, fibered products of those).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::DimVector;
use crate::poset::Poset;

use super::count::{count_points_with, CountConfig};

/// `[n choose k]_q = Π_{i<k} (q^{n−i} − 1) / (q^{k−i} − 1)`, accumulated so
/// that every intermediate value is itself a Gaussian binomial.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let q = q as u128;
    let pow_minus_one = |e: u32| q.checked_pow(e).map(|v| v - 1).ok_or(Error::Overflow);
    let mut g = 1u128;
    for j in 1..=k {
        let num = pow_minus_one(n - j + 1)?;
        let den = pow_minus_one(j)?;
        g = g.checked_mul(num).ok_or(Error::Overflow)? / den;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitVerdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitReport {
    /// `(q, |R_α(P)(F_q)|)` in the order given.
    pub counts: Vec<(u64, u128)>,
    /// Interpolating polynomial through the first `d + 1` counts, low to high.
    pub poly: Vec<BigRational>,
    /// `None` for the zero polynomial.
    pub degree: Option<usize>,
    /// `(q, count − poly(q))` at the remaining primes.
    pub residuals: Vec<(u64, BigRational)>,
    pub verdict: FitVerdict,
    pub claimed_dim: usize,
}

/// Coefficients (low to high) of the unique polynomial of degree `< xs.len()`
/// through the points, by Newton divided differences.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![BigRational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n.max(1)];
        for j in 0..n {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &coeffs[j] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

pub fn evaluate(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn degree(poly: &[BigRational]) -> Option<usize> {
    poly.iter().rposition(|c| !c.is_zero())
}

fn rational(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Fits already computed counts. Uses the first `d + 1` points for the
/// interpolation and checks the rest. With exactly `d + 1` points only a
/// degree mismatch can be certified.
pub fn fit_counts(counts: &[(u64, u128)], claimed_dim: usize) -> Result<FitReport> {
    let needed = claimed_dim + 1;
    if counts.len() < needed {
        return Err(Error::InsufficientPrimes {
            needed: claimed_dim + 2,
            given: counts.len(),
        });
    }
    let (fit, check) = counts.split_at(needed);
    let xs: Vec<BigRational> = fit.iter().map(|&(q, _)| rational(q as u128)).collect();
    let ys: Vec<BigRational> = fit.iter().map(|&(_, c)| rational(c)).collect();
    let mut poly = interpolate(&xs, &ys);
    let deg = degree(&poly);
    poly.truncate(deg.map_or(1, |d| d + 1));
    let residuals: Vec<(u64, BigRational)> = check
        .iter()
        .map(|&(q, c)| (q, rational(c) - evaluate(&poly, &rational(q as u128))))
        .collect();
    let fits = residuals.iter().all(|(_, r)| r.is_zero());
    let verdict = if fits && deg == Some(claimed_dim) {
        if check.is_empty() {
            return Err(Error::InsufficientPrimes {
                needed: claimed_dim + 2,
                given: counts.len(),
            });
        }
        FitVerdict::Consistent
    } else {
        FitVerdict::Inconsistent
    };
    Ok(FitReport {
        counts: counts.to_vec(),
        poly,
        degree: deg,
        residuals,
        verdict,
        claimed_dim,
    })
}

/// Counts points at each prime and checks that the counts follow a
/// polynomial of degree exactly `claimed_dim`.
pub fn fit_dimension(
    p: &Poset,
    alpha: &DimVector,
    primes: &[u64],
    claimed_dim: usize,
    cfg: CountConfig,
) -> Result<FitReport> {
    let mut seen = std::collections::HashSet::new();
    if let Some(&dup) = primes.iter().find(|q| !seen.insert(**q)) {
        return Err(Error::HypothesisViolated(format!(
            "prime {dup} listed twice"
        )));
    }
    if primes.len() < claimed_dim + 1 {
        return Err(Error::InsufficientPrimes {
            needed: claimed_dim + 2,
            given: primes.len(),
        });
    }
    let counts = primes
        .iter()
        .map(|&q| Ok((q, count_points_with(p, alpha, q, p.level_order(), cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    fit_counts(&counts, claimed_dim)
}

/// Renders a coefficient as an integer when it is one, else `a/b`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
