//! Divided differences by the difference-quotient recursion and by the
//! distinct-node sum, plus the finite telescoping identity behind the
//! reciprocal expansion 1/x = Σ (λ₁−x)…(λₙ−x)/(λ₁…λₙ λₙ₊₁).
//!
//! The contour-integral route lives in [`crate::quadrature`].

use thiserror::Error;

use crate::dd::DdComplex;
use crate::expr::{eval_fn, is_finite, ExprError, HolomorphicFn};
use crate::quadrature::{divided_difference_integral, expect_winding, Contour, QuadConfig, QuadError, MAX_NODES};
use crate::ComplexValue;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DivDiffError {
    #[error("at least one node is required")]
    NoNodes,
    #[error("nodes {i} and {j} coincide within {tol:e}; use the recursive or integral route")]
    CoincidentNodes { i: usize, j: usize, tol: f64 },
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error("x must be nonzero")]
    ZeroX,
    #[error("non-finite input")]
    NonFinite,
    #[error("theta must lie in (0, 1), got {0}")]
    BadTheta(f64),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Eval(#[from] ExprError),
}

/// Nodes closer than this are treated as coincident.
pub fn node_tolerance(nodes: &[ComplexValue]) -> f64 {
    let scale = nodes.iter().map(|z| z.norm()).fold(0.0, f64::max);
    1e-8 * (1.0 + scale)
}

fn check_inputs(values: &[ComplexValue]) -> Result<(), DivDiffError> {
    if values.is_empty() {
        return Err(DivDiffError::NoNodes);
    }
    if values.len() > MAX_NODES {
        return Err(QuadError::TooManyNodes(values.len()).into());
    }
    if !values.iter().all(|z| is_finite(*z)) {
        return Err(DivDiffError::NonFinite);
    }
    Ok(())
}

fn check_distinct(values: &[ComplexValue], tol: f64) -> Result<(), DivDiffError> {
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if (values[i] - values[j]).norm() <= tol {
                return Err(DivDiffError::CoincidentNodes { i, j, tol });
            }
        }
    }
    Ok(())
}

/// Δⁿf(c₁,…,cₙ₊₁) by repeatedly reducing the last two nodes:
/// a difference quotient when they differ, otherwise the derivative
/// [Δⁿ⁻¹f(c₁,…,cₙ₋₁,•)]′(cₙ), taken from the contour integral with cₙ
/// doubled.
///
/// Shared prefixes are evaluated once, so the cost is quadratic in the
/// node count rather than exponential.
pub fn divided_difference_recursive(
    f: &HolomorphicFn,
    nodes: &[ComplexValue],
    contour: &Contour,
    cfg: &QuadConfig,
) -> Result<ComplexValue, DivDiffError> {
    check_inputs(nodes)?;
    for &z in nodes {
        expect_winding(contour, z, 1, "node")?;
    }
    for &s in f.singularities() {
        expect_winding(contour, s, 0, "singularity")?;
    }
    let tol = node_tolerance(nodes);
    // level[j] = Δᵐf(c₁,…,cₘ, c_{j+1}) for j ≥ m
    let mut level = nodes.iter().map(|&c| eval_fn(f, c)).collect::<Result<Vec<_>, _>>()?;
    for m in 1..nodes.len() {
        let pivot = nodes[m - 1];
        let base = level[m - 1];
        for j in m..nodes.len() {
            let step = nodes[j] - pivot;
            level[j] = if step.norm() > tol {
                (level[j] - base) / step
            } else {
                let mut doubled = nodes[..m].to_vec();
                doubled.push(pivot);
                divided_difference_integral(f, contour, &doubled, cfg)?.value
            };
        }
    }
    Ok(level[nodes.len() - 1])
}

/// Σₖ f(cₖ)/Πⱼ≠ₖ(cₖ − cⱼ) for pairwise distinct nodes.
pub fn divided_difference_distinct(f: &HolomorphicFn, nodes: &[ComplexValue]) -> Result<ComplexValue, DivDiffError> {
    check_inputs(nodes)?;
    check_distinct(nodes, node_tolerance(nodes))?;
    // carried in double-double: the terms cancel heavily for clustered nodes
    let mut sum = DdComplex::default();
    for (k, &ck) in nodes.iter().enumerate() {
        let ck_dd = DdComplex::new(ck);
        let den = nodes
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(DdComplex::new(ComplexValue::new(1.0, 0.0)), |acc, (_, &cj)| {
                acc * (ck_dd - DdComplex::new(cj))
            });
        sum = sum + DdComplex::new(eval_fn(f, ck)?) / den;
    }
    Ok(sum.to_complex())
}

/// Both sides of the finite telescoping identity
/// `partial_sum + remainder = 1/x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TelescopingSplit {
    /// Σ_{0≤n≤k} (λ₁−x)…(λₙ−x) / (λ₁…λₙ λₙ₊₁)
    pub partial_sum: ComplexValue,
    /// (1/x) Π_{1≤n≤k+1} (λₙ−x)/λₙ
    pub remainder: ComplexValue,
}

/// Splits 1/x into the first k+1 terms of the reciprocal series over
/// `lambdas = (λ₁,…,λ_{k+1})` and the product-form remainder.
///
/// Accumulation is carried in double-double precision so that the two
/// rounded outputs satisfy the identity to within a few ulps of the larger
/// of them.
pub fn lemma1_partial(lambdas: &[ComplexValue], x: ComplexValue) -> Result<TelescopingSplit, DivDiffError> {
    check_lambdas(lambdas, x)?;
    let x_dd = DdComplex::new(x);
    let one = DdComplex::new(ComplexValue::new(1.0, 0.0));
    let mut running = one;
    let mut sum = DdComplex::default();
    for &lambda in lambdas {
        let l = DdComplex::new(lambda);
        sum = sum + running / l;
        running = running * (l - x_dd) / l;
    }
    Ok(TelescopingSplit {
        partial_sum: sum.to_complex(),
        remainder: (running / x_dd).to_complex(),
    })
}

fn check_lambdas(lambdas: &[ComplexValue], x: ComplexValue) -> Result<(), DivDiffError> {
    if lambdas.is_empty() {
        return Err(DivDiffError::NoNodes);
    }
    if !is_finite(x) || !lambdas.iter().all(|l| is_finite(*l)) {
        return Err(DivDiffError::NonFinite);
    }
    if x == ComplexValue::new(0.0, 0.0) {
        return Err(DivDiffError::ZeroX);
    }
    if let Some(k) = lambdas.iter().position(|l| *l == ComplexValue::new(0.0, 0.0)) {
        return Err(DivDiffError::ZeroEntry(k));
    }
    Ok(())
}

/// Whether |(λₙ − x)/λₙ| < θ for every entry from index `tail_from`
/// (zero-based) on, the sufficient condition for absolute convergence of
/// the reciprocal series.
pub fn reciprocal_expansion_converges(
    lambdas: &[ComplexValue],
    x: ComplexValue,
    theta: f64,
    tail_from: usize,
) -> Result<bool, DivDiffError> {
    check_lambdas(lambdas, x)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(DivDiffError::BadTheta(theta));
    }
    Ok(lambdas.iter().skip(tail_from).all(|&l| ((l - x) / l).norm() < theta))
}

/// Σₖ (1/aₖ)/Πⱼ≠ₖ(aⱼ − aₖ), which equals 1/(a₁…aₛ) for distinct nonzero
/// entries.
pub fn partial_fraction_lhs(a: &[ComplexValue]) -> Result<ComplexValue, DivDiffError> {
    check_inputs(a)?;
    if let Some(k) = a.iter().position(|v| *v == ComplexValue::new(0.0, 0.0)) {
        return Err(DivDiffError::ZeroEntry(k));
    }
    check_distinct(a, node_tolerance(a))?;
    let mut sum = ComplexValue::new(0.0, 0.0);
    for (k, &ak) in a.iter().enumerate() {
        let den = a
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(ComplexValue::new(1.0, 0.0), |acc, (_, &aj)| acc * (aj - ak));
        sum += 1.0 / (ak * den);
    }
    Ok(sum)
}
