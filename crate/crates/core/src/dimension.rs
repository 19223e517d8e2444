//! Dimension of the variety `R_α(P)` of subspace representations.
//!
//! [`variety_dim`] evaluates the closed form `α₀² − Q_P(α)`.
//! [`variety_dim_recursive`] peels maximal elements one at a time, adding the
//! dimension of the generic fiber `Gr(α_x − X, α₀ − X)` where `X` is the
//! generic dimension of `Σ_{t ≺ x} V_t`. The two are computed independently.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{
    coordinate_vector, euler_form, is_p0_nonnegative, require_admissible, DimVector,
};
use crate::poset::Poset;

/// `dim Gr(k, n) = k (n − k)`.
pub fn grassmann_dim(k: i64, n: i64) -> Result<i64> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::InvalidDimensions { k, n });
    }
    k.checked_mul(n - k).ok_or(Error::Overflow)
}

/// Generic (maximal) value of `dim Σ_{y ∈ T_h} V_y`, namely
/// `α_P · C_P⁻¹ · E_P = Σ_s c_s`. Requires `α · C_{P⁰}⁻¹ ≥ 0`.
pub fn generic_sum_dim(p: &Poset, alpha: &DimVector) -> Result<i64> {
    if !is_p0_nonnegative(p, alpha)? {
        return Err(Error::HypothesisViolated(format!(
            "{alpha} · C_(P0)^-1 has a negative entry"
        )));
    }
    coordinate_vector(p, alpha)?.sum()
}

/// `α_{D_x} · C_{D_x}⁻¹ · E_{D_x}` without any sign hypothesis.
fn down_set_sum(p: &Poset, x: usize, alpha: &DimVector) -> Result<i64> {
    let dx = p.induced_subposet(&p.down_set(x));
    if dx.is_empty() {
        return Ok(0);
    }
    coordinate_vector(&dx, &alpha.restrict(p, &dx)?)?.sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Recursive,
}

/// One peeling step: removing maximal `x` contributes `dim Gr(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub x: String,
    #[serde(rename = "X")]
    pub sum_dim: i64,
    /// `[α_x − X, α₀ − X]`.
    pub fiber: [i64; 2],
    pub fiber_dim: i64,
    /// Dimension of the variety left after removing `x`.
    pub rest_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimReport {
    pub dim_variety: i64,
    pub q_value: i64,
    pub gl_dim: i64,
    pub method: Method,
    pub trace: Option<Vec<PeelStep>>,
}

/// `dim R_α(P) = α₀² − Q_P(α)` for admissible `α`.
pub fn variety_dim(p: &Poset, alpha: &DimVector) -> Result<DimReport> {
    require_admissible(p, alpha)?;
    let q_value = euler_form(p, alpha)?;
    let gl_dim = alpha
        .alpha0
        .checked_mul(alpha.alpha0)
        .ok_or(Error::Overflow)?;
    Ok(DimReport {
        dim_variety: gl_dim.checked_sub(q_value).ok_or(Error::Overflow)?,
        q_value,
        gl_dim,
        method: Method::Closed,
        trace: None,
    })
}

/// Which maximal element to remove at each step. The result does not
/// depend on it; the trace does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeelOrder {
    /// First maximal element in level order.
    #[default]
    First,
    /// Last maximal element in level order.
    Last,
    /// The `(step mod m)`-th of the `m` maximal elements.
    Rotating,
}

impl PeelOrder {
    fn pick(self, maximal: &[usize], step: usize) -> usize {
        match self {
            PeelOrder::First => maximal[0],
            PeelOrder::Last => maximal[maximal.len() - 1],
            PeelOrder::Rotating => maximal[step % maximal.len()],
        }
    }
}

pub fn variety_dim_recursive(p: &Poset, alpha: &DimVector) -> Result<DimReport> {
    variety_dim_recursive_with(p, alpha, PeelOrder::First)
}

/// Dimension by repeatedly removing a maximal element. The step dims are
/// summed from the empty poset (dimension 0) back up; `Q` in the report is
/// `α₀² − dim`.
pub fn variety_dim_recursive_with(
    p: &Poset,
    alpha: &DimVector,
    order: PeelOrder,
) -> Result<DimReport> {
    let coords = require_admissible(p, alpha)?;
    let a0 = alpha.alpha0;
    let mut cur = p.clone();
    let mut cur_alpha = alpha.clone();
    let mut steps = Vec::with_capacity(p.len());
    let mut step = 0;
    while !cur.is_empty() {
        let x = order.pick(&cur.maximal_elements(), step);
        let dx = cur.induced_subposet(&cur.down_set(x));
        let sum_dim = if dx.is_empty() {
            0
        } else {
            generic_sum_dim(&dx, &cur_alpha.restrict(&cur, &dx)?)?
        };
        let ax = cur_alpha.alpha[x];
        let (k, n) = (ax - sum_dim, a0 - sum_dim);
        let label = cur.label(x).to_string();
        if k < 0 || n < 0 || k > n || k != coords.get(p, &label)? {
            return Err(Error::InternalInconsistency(format!(
                "fiber Gr({k}, {n}) at `{label}` is inconsistent with an admissible vector"
            )));
        }
        steps.push(PeelStep {
            x: label,
            sum_dim,
            fiber: [k, n],
            fiber_dim: grassmann_dim(k, n)?,
            rest_dim: 0,
        });
        let rest = cur.remove_element(x);
        cur_alpha = cur_alpha.restrict(&cur, &rest)?;
        cur = rest;
        step += 1;
    }
    let mut total = 0i64;
    for s in steps.iter_mut().rev() {
        s.rest_dim = total;
        total = total.checked_add(s.fiber_dim).ok_or(Error::Overflow)?;
    }
    let gl_dim = a0.checked_mul(a0).ok_or(Error::Overflow)?;
    Ok(DimReport {
        dim_variety: total,
        q_value: gl_dim.checked_sub(total).ok_or(Error::Overflow)?,
        gl_dim,
        method: Method::Recursive,
        trace: Some(steps),
    })
}

/// Both sides of `Q_P(α) − Q_{P∖x}(α_{P∖x}) = −(α_x − α_{D_x} C_{D_x}⁻¹ E)(α₀ − α_x)`
/// for a maximal `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeelIdentity {
    pub lhs: i64,
    pub rhs: i64,
}

impl PeelIdentity {
    pub fn defect(&self) -> Result<i64> {
        self.lhs.checked_sub(self.rhs).ok_or(Error::Overflow)
    }
}

pub fn peel_identity(p: &Poset, x: usize, alpha: &DimVector) -> Result<PeelIdentity> {
    alpha.check_shape(p)?;
    if !p.is_maximal(x) {
        return Err(Error::NotMaximal(p.label(x).to_string()));
    }
    let rest = p.remove_element(x);
    let q = euler_form(p, alpha)?;
    let q_rest = euler_form(&rest, &alpha.restrict(p, &rest)?)?;
    let lhs = q.checked_sub(q_rest).ok_or(Error::Overflow)?;
    let ax = alpha.alpha[x];
    let k = ax
        .checked_sub(down_set_sum(p, x, alpha)?)
        .ok_or(Error::Overflow)?;
    let rhs = k
        .checked_mul(alpha.alpha0.checked_sub(ax).ok_or(Error::Overflow)?)
        .and_then(i64::checked_neg)
        .ok_or(Error::Overflow)?;
    Ok(PeelIdentity { lhs, rhs })
}

/// LHS − RHS of [`peel_identity`]; zero for every integer `α`.
pub fn peel_defect(p: &Poset, x: usize, alpha: &DimVector) -> Result<i64> {
    peel_identity(p, x, alpha)?.defect()
}
