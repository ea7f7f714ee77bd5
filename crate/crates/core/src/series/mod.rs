//! Interpolation-series expansions on discs and annuli.
//!
//! On an annulus between an inner circle Γ₁ and an outer circle Γ₂ a
//! function holomorphic on the closed annulus is written as
//!
//! ```text
//! f(z) = Σ_{n≥1} a₋ₙ / ((z−d₁)…(z−dₙ)) + Σ_{n≥0} aₙ (z−c₁)…(z−cₙ)
//! aₙ  = (1/2πi) ∮_Γ₂ f(ξ) / ((ξ−c₁)…(ξ−cₙ₊₁)) dξ
//! a₋ₙ = (1/2πi) ∮_Γ₁ f(ξ) (ξ−d₁)…(ξ−dₙ₋₁) dξ
//! ```
//!
//! On a disc only the regular part remains and aₙ = Δⁿf(c₁,…,cₙ₊₁).
//! Constant node sequences reduce both to the Taylor and Laurent series.

mod diag;
mod json;
mod nodes;

use rayon::prelude::*;
use thiserror::Error;

pub use diag::{convergence_report, default_probes, ConvergenceDiag, TailStatus};
pub use json::{expansion_from_json, expansion_to_json};
pub use nodes::{NodeSequence, TailRule};

use crate::expr::{is_finite, HolomorphicFn};
use crate::quadrature::{
    cauchy_coefficient_principal, cauchy_coefficient_regular, divided_difference_integral, Contour, Orientation,
    QuadConfig, QuadError, QuadResult, MAX_NODES,
};
use crate::ComplexValue;

/// Minimum distance of a node from a contour, relative to its radius.
pub const NODE_STANDOFF: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SeriesError {
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("invalid node sequence: {0}")]
    BadNodeSequence(String),
    #[error("node {name}_{index} = {node} must lie strictly inside the {circle} (|z - {center}| < {radius}, standoff {NODE_STANDOFF:e}·radius)")]
    NodePlacement {
        name: &'static str,
        index: usize,
        node: ComplexValue,
        circle: &'static str,
        center: ComplexValue,
        radius: f64,
    },
    #[error("node sequence converges to {limit}, not to the disc center {center}")]
    LimitNotCenter { limit: ComplexValue, center: ComplexValue },
    #[error("declared singularity {0} lies in the closed region where f must be holomorphic")]
    SingularityInRegion(ComplexValue),
    #[error("{0} terms requested; node products are capped at {MAX_NODES} factors")]
    TooManyTerms(usize),
    #[error("point {0} lies outside the region of the expansion")]
    PointOutsideRegion(ComplexValue),
    #[error("point {z} coincides with principal node d_{index}")]
    PrincipalNodeCollision { z: ComplexValue, index: usize },
    #[error("truncation N_use = {n_use}, M_use = {m_use} exceeds stored N = {n}, M = {m}")]
    TruncationOutOfRange {
        n_use: usize,
        m_use: usize,
        n: usize,
        m: usize,
    },
    #[error("inconsistent expansion: {0}")]
    Inconsistent(String),
    #[error("malformed expansion JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Two circles with the closure of the inner disc inside the outer disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusSpec {
    inner: Contour,
    outer: Contour,
}

impl AnnulusSpec {
    pub fn new(inner: Contour, outer: Contour) -> Result<Self, SeriesError> {
        if inner.orientation() != Orientation::Positive || outer.orientation() != Orientation::Positive {
            return Err(SeriesError::Geometry("both circles must be positively oriented".into()));
        }
        let gap = outer.radius() - ((inner.center() - outer.center()).norm() + inner.radius());
        if gap.is_nan() || gap <= 0.0 {
            return Err(SeriesError::Geometry(format!(
                "closure of the inner disc (center {}, radius {}) must lie inside the outer disc (center {}, radius {})",
                inner.center(),
                inner.radius(),
                outer.center(),
                outer.radius()
            )));
        }
        Ok(AnnulusSpec { inner, outer })
    }

    pub fn concentric(center: ComplexValue, inner_radius: f64, outer_radius: f64) -> Result<Self, SeriesError> {
        AnnulusSpec::new(
            Contour::circle(center, inner_radius)?,
            Contour::circle(center, outer_radius)?,
        )
    }

    pub fn inner(&self) -> &Contour {
        &self.inner
    }

    pub fn outer(&self) -> &Contour {
        &self.outer
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    Disc(Contour),
    Annulus(AnnulusSpec),
}

impl Geometry {
    /// Whether `z` lies in the open region where the expansion represents f.
    pub fn contains(&self, z: ComplexValue) -> bool {
        match self {
            Geometry::Disc(d) => (z - d.center()).norm() < d.radius(),
            Geometry::Annulus(a) => {
                (z - a.outer.center()).norm() < a.outer.radius() && (z - a.inner.center()).norm() > a.inner.radius()
            }
        }
    }
}

/// Quadrature settings an expansion was computed with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadProvenance {
    pub config: QuadConfig,
    /// Largest node count any coefficient needed.
    pub n_final: usize,
}

/// Coefficients of a two-sided interpolation series with their nodes.
///
/// `regular_coeffs` holds a₀..a_N and pairs with `regular_nodes` c₁..c_N;
/// `principal_coeffs` holds a₋₁..a₋M and pairs with `principal_nodes`
/// d₁..d_M. Error bars are the quadrature error estimates of each
/// coefficient (zero when unknown, e.g. after loading from JSON).
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    regular_nodes: Vec<ComplexValue>,
    regular_coeffs: Vec<ComplexValue>,
    regular_errors: Vec<f64>,
    principal_nodes: Vec<ComplexValue>,
    principal_coeffs: Vec<ComplexValue>,
    principal_errors: Vec<f64>,
    geometry: Geometry,
    quad: QuadProvenance,
}

impl Expansion {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        regular_nodes: Vec<ComplexValue>,
        regular_coeffs: Vec<ComplexValue>,
        regular_errors: Vec<f64>,
        principal_nodes: Vec<ComplexValue>,
        principal_coeffs: Vec<ComplexValue>,
        principal_errors: Vec<f64>,
        geometry: Geometry,
        quad: QuadProvenance,
    ) -> Result<Self, SeriesError> {
        if regular_coeffs.len() != regular_nodes.len() + 1 || regular_errors.len() != regular_coeffs.len() {
            return Err(SeriesError::Inconsistent(format!(
                "{} regular coefficients for {} nodes",
                regular_coeffs.len(),
                regular_nodes.len()
            )));
        }
        if principal_coeffs.len() != principal_nodes.len() || principal_errors.len() != principal_coeffs.len() {
            return Err(SeriesError::Inconsistent(format!(
                "{} principal coefficients for {} nodes",
                principal_coeffs.len(),
                principal_nodes.len()
            )));
        }
        if matches!(geometry, Geometry::Disc(_)) && !principal_coeffs.is_empty() {
            return Err(SeriesError::Inconsistent(
                "a disc expansion has no principal part".into(),
            ));
        }
        let all = regular_nodes
            .iter()
            .chain(&regular_coeffs)
            .chain(&principal_nodes)
            .chain(&principal_coeffs);
        if !all.copied().all(is_finite) {
            return Err(SeriesError::Inconsistent("non-finite entry".into()));
        }
        Ok(Expansion {
            regular_nodes,
            regular_coeffs,
            regular_errors,
            principal_nodes,
            principal_coeffs,
            principal_errors,
            geometry,
            quad,
        })
    }

    pub fn regular_nodes(&self) -> &[ComplexValue] {
        &self.regular_nodes
    }

    pub fn regular_coeffs(&self) -> &[ComplexValue] {
        &self.regular_coeffs
    }

    pub fn regular_errors(&self) -> &[f64] {
        &self.regular_errors
    }

    pub fn principal_nodes(&self) -> &[ComplexValue] {
        &self.principal_nodes
    }

    pub fn principal_coeffs(&self) -> &[ComplexValue] {
        &self.principal_coeffs
    }

    pub fn principal_errors(&self) -> &[f64] {
        &self.principal_errors
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn quad(&self) -> &QuadProvenance {
        &self.quad
    }

    /// Highest regular index N.
    pub fn n(&self) -> usize {
        self.regular_coeffs.len() - 1
    }

    /// Number of principal terms M.
    pub fn m(&self) -> usize {
        self.principal_coeffs.len()
    }

    /// Keeps a₀..a_n and a₋₁..a₋m.
    pub fn truncated(&self, n: usize, m: usize) -> Result<Expansion, SeriesError> {
        self.check_truncation(n, m)?;
        Ok(Expansion {
            regular_nodes: self.regular_nodes[..n].to_vec(),
            regular_coeffs: self.regular_coeffs[..=n].to_vec(),
            regular_errors: self.regular_errors[..=n].to_vec(),
            principal_nodes: self.principal_nodes[..m].to_vec(),
            principal_coeffs: self.principal_coeffs[..m].to_vec(),
            principal_errors: self.principal_errors[..m].to_vec(),
            geometry: self.geometry,
            quad: self.quad,
        })
    }

    fn check_truncation(&self, n_use: usize, m_use: usize) -> Result<(), SeriesError> {
        if n_use > self.n() || m_use > self.m() {
            return Err(SeriesError::TruncationOutOfRange {
                n_use,
                m_use,
                n: self.n(),
                m: self.m(),
            });
        }
        Ok(())
    }
}

fn check_inside(
    nodes: &[ComplexValue],
    circle: &Contour,
    name: &'static str,
    circle_name: &'static str,
) -> Result<(), SeriesError> {
    for (k, &node) in nodes.iter().enumerate() {
        let d = (node - circle.center()).norm();
        if d.is_nan() || d >= circle.radius() * (1.0 - NODE_STANDOFF) {
            return Err(SeriesError::NodePlacement {
                name,
                index: k + 1,
                node,
                circle: circle_name,
                center: circle.center(),
                radius: circle.radius(),
            });
        }
    }
    Ok(())
}

fn check_term_count(count: usize) -> Result<(), SeriesError> {
    if count > MAX_NODES {
        Err(SeriesError::TooManyTerms(count))
    } else {
        Ok(())
    }
}

fn split_results(results: Vec<QuadResult>) -> (Vec<ComplexValue>, Vec<f64>, usize) {
    let n_final = results.iter().map(|q| q.n_used).max().unwrap_or(0);
    let values = results.iter().map(|q| q.value).collect();
    let errors = results.iter().map(|q| q.error_estimate).collect();
    (values, errors, n_final)
}

/// Disc expansion with aₙ = Δⁿf(c₁,…,cₙ₊₁), n = 0..=N, each computed as a
/// contour integral over the disc boundary.
pub fn expand_disc(
    f: &HolomorphicFn,
    disc: &Contour,
    nodes: &NodeSequence,
    n: usize,
    cfg: &QuadConfig,
) -> Result<Expansion, SeriesError> {
    cfg.validate()?;
    if disc.orientation() != Orientation::Positive {
        return Err(SeriesError::Geometry(
            "the disc boundary must be positively oriented".into(),
        ));
    }
    check_term_count(n + 1)?;
    if (nodes.limit() - disc.center()).norm() > NODE_STANDOFF * disc.radius() {
        return Err(SeriesError::LimitNotCenter {
            limit: nodes.limit(),
            center: disc.center(),
        });
    }
    let c = nodes.take(n + 1);
    check_inside(&c, disc, "c", "disc")?;
    for &s in f.singularities() {
        if (s - disc.center()).norm() <= disc.radius() * (1.0 + NODE_STANDOFF) {
            return Err(SeriesError::SingularityInRegion(s));
        }
    }
    let results = (0..=n)
        .into_par_iter()
        .map(|k| divided_difference_integral(f, disc, &c[..=k], cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let (coeffs, errors, n_final) = split_results(results);
    let mut c = c;
    c.truncate(n);
    Expansion::new(
        c,
        coeffs,
        errors,
        Vec::new(),
        Vec::new(),
        Vec::new(),
        Geometry::Disc(*disc),
        QuadProvenance { config: *cfg, n_final },
    )
}

/// Two-sided expansion on the annulus between `spec.inner()` and
/// `spec.outer()`: a₀..a_N from the outer circle with nodes `c_nodes`,
/// a₋₁..a₋M from the inner circle with nodes `d_nodes`.
pub fn expand_annulus(
    f: &HolomorphicFn,
    spec: &AnnulusSpec,
    c_nodes: &NodeSequence,
    d_nodes: &NodeSequence,
    n: usize,
    m: usize,
    cfg: &QuadConfig,
) -> Result<Expansion, SeriesError> {
    cfg.validate()?;
    check_term_count(n + 1)?;
    check_term_count(m)?;
    let (inner, outer) = (spec.inner(), spec.outer());
    for &s in f.singularities() {
        let in_outer = (s - outer.center()).norm() <= outer.radius() * (1.0 + NODE_STANDOFF);
        let out_inner = (s - inner.center()).norm() >= inner.radius() * (1.0 - NODE_STANDOFF);
        if in_outer && out_inner {
            return Err(SeriesError::SingularityInRegion(s));
        }
    }
    let c = c_nodes.take(n + 1);
    check_inside(&c, outer, "c", "outer circle")?;
    let d = d_nodes.take(m);
    check_inside(&d, inner, "d", "inner circle")?;

    let regular = (0..=n)
        .into_par_iter()
        .map(|k| cauchy_coefficient_regular(f, outer, &c[..=k], cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let principal = (1..=m)
        .into_par_iter()
        .map(|k| cauchy_coefficient_principal(f, inner, &d[..k - 1], cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let (reg_coeffs, reg_errors, n_reg) = split_results(regular);
    let (pr_coeffs, pr_errors, n_pr) = split_results(principal);
    let mut c = c;
    c.truncate(n);
    Expansion::new(
        c,
        reg_coeffs,
        reg_errors,
        d,
        pr_coeffs,
        pr_errors,
        Geometry::Annulus(*spec),
        QuadProvenance {
            config: *cfg,
            n_final: n_reg.max(n_pr),
        },
    )
}

/// Evaluates the series truncated to a₀..a_{N_use} and a₋₁..a₋_{M_use}
/// in nested (Horner) form.
pub fn eval_expansion(e: &Expansion, z: ComplexValue, n_use: usize, m_use: usize) -> Result<ComplexValue, SeriesError> {
    e.check_truncation(n_use, m_use)?;
    if !is_finite(z) || !e.geometry.contains(z) {
        return Err(SeriesError::PointOutsideRegion(z));
    }
    let guard = NODE_STANDOFF * z.norm().max(1.0);
    if let Some(k) = e.principal_nodes[..m_use].iter().position(|d| (z - d).norm() <= guard) {
        return Err(SeriesError::PrincipalNodeCollision { z, index: k + 1 });
    }
    Ok(regular_part(e, z, n_use) + principal_part(e, z, m_use))
}

/// a₀ + (z−c₁)(a₁ + (z−c₂)(a₂ + …))
fn regular_part(e: &Expansion, z: ComplexValue, n_use: usize) -> ComplexValue {
    let mut acc = e.regular_coeffs[n_use];
    for k in (0..n_use).rev() {
        acc = e.regular_coeffs[k] + (z - e.regular_nodes[k]) * acc;
    }
    acc
}

/// (a₋₁ + (a₋₂ + …)/(z−d₂))/(z−d₁)
fn principal_part(e: &Expansion, z: ComplexValue, m_use: usize) -> ComplexValue {
    if m_use == 0 {
        return ComplexValue::new(0.0, 0.0);
    }
    let mut acc = e.principal_coeffs[m_use - 1];
    for k in (1..m_use).rev() {
        acc = e.principal_coeffs[k - 1] + acc / (z - e.principal_nodes[k]);
    }
    acc / (z - e.principal_nodes[0])
}
