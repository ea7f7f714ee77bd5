//! Contour integrals over circles by the composite trapezoidal rule.
//!
//! For integrands analytic in a neighbourhood of the circle the rule
//! converges geometrically, so doubling the node count until two
//! successive values agree gives both the value and an error estimate.

use std::f64::consts::PI;

use thiserror::Error;

use crate::expr::{eval_fn, ExprError, HolomorphicFn};
use crate::ComplexValue;

/// Largest number of nodes a product Π(ξ − cₖ) may carry.
pub const MAX_NODES: usize = 64;

/// Relative tolerance for deciding that a point lies on a circle.
pub const ON_CONTOUR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

/// A circle `center + radius·e^{iθ}` traversed once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    center: ComplexValue,
    radius: f64,
    orientation: Orientation,
}

impl Contour {
    pub fn new(center: ComplexValue, radius: f64, orientation: Orientation) -> Result<Self, QuadError> {
        if !(radius > 0.0 && radius.is_finite()) || !crate::expr::is_finite(center) {
            return Err(QuadError::BadContour { center, radius });
        }
        Ok(Contour {
            center,
            radius,
            orientation,
        })
    }

    /// Positively oriented circle.
    pub fn circle(center: ComplexValue, radius: f64) -> Result<Self, QuadError> {
        Contour::new(center, radius, Orientation::Positive)
    }

    pub fn center(&self) -> ComplexValue {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn reversed(&self) -> Contour {
        let orientation = match self.orientation {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        };
        Contour { orientation, ..*self }
    }

    pub fn with_radius(&self, radius: f64) -> Result<Contour, QuadError> {
        Contour::new(self.center, radius, self.orientation)
    }

    pub fn point(&self, theta: f64) -> ComplexValue {
        self.center + ComplexValue::from_polar(self.radius, theta)
    }

    pub fn length(&self) -> f64 {
        2.0 * PI * self.radius
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub n_start: usize,
    pub n_max: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            n_start: 32,
            n_max: 65536,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        let ok = self.n_start >= 8
            && self.n_start.is_power_of_two()
            && self.n_max.is_power_of_two()
            && self.n_start <= self.n_max
            && self.rel_tol > 0.0
            && self.rel_tol.is_finite()
            && self.abs_tol > 0.0
            && self.abs_tol.is_finite();
        if ok {
            Ok(())
        } else {
            Err(QuadError::BadConfig(*self))
        }
    }
}

/// Value of a contour integral with diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: ComplexValue,
    /// Node count of the accepted iterate.
    pub n_used: usize,
    /// Difference of the last two iterates plus the rounding floor.
    pub error_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid contour: center {center}, radius {radius}")]
    BadContour { center: ComplexValue, radius: f64 },
    #[error("invalid quadrature configuration {0:?}")]
    BadConfig(QuadConfig),
    #[error("no convergence at n_max = {n_max}: last iterates {previous} and {last}")]
    NoConvergence {
        n_max: usize,
        previous: ComplexValue,
        last: ComplexValue,
    },
    #[error("point {z} lies on the contour |ξ - {center}| = {radius}")]
    OnContour {
        z: ComplexValue,
        center: ComplexValue,
        radius: f64,
    },
    #[error("{role} {z} has winding number {winding}; expected {expected}")]
    Winding {
        role: &'static str,
        z: ComplexValue,
        winding: i32,
        expected: i32,
    },
    #[error("{0} nodes exceed the cap of {MAX_NODES}")]
    TooManyNodes(usize),
    #[error("no nodes given")]
    NoNodes,
    #[error(transparent)]
    Eval(#[from] ExprError),
}

/// Raw ∮ g(ξ) dξ over the circle. Returns value, node count and an error
/// estimate, or the last two iterates when `cfg.n_max` is reached.
pub fn contour_integral<G, E>(g: G, contour: &Contour, cfg: &QuadConfig) -> Result<QuadResult, QuadError>
where
    G: Fn(ComplexValue) -> Result<ComplexValue, E>,
    QuadError: From<E>,
{
    cfg.validate()?;
    let c = contour.center;
    let r = contour.radius;
    // Σ g(ξ_j)·(ξ_j − c) over the nodes added at each level; dξ = i(ξ − c)dθ
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut g_max: f64 = 0.0;
    let add_nodes = |n: usize, start: usize, step: usize| -> Result<(ComplexValue, f64), QuadError> {
        let mut part = ComplexValue::new(0.0, 0.0);
        let mut peak: f64 = 0.0;
        for j in (start..n).step_by(step) {
            let theta = 2.0 * PI * (j as f64) / (n as f64);
            let offset = ComplexValue::from_polar(r, theta);
            let gv = g(c + offset)?;
            peak = peak.max(gv.norm());
            part += gv * offset;
        }
        Ok((part, peak))
    };

    let scale = |s: ComplexValue, n: usize| ComplexValue::new(0.0, 2.0 * PI / n as f64) * s;
    let mut n = cfg.n_start;
    let (part, peak) = add_nodes(n, 0, 1)?;
    sum += part;
    g_max = g_max.max(peak);
    let mut value = scale(sum, n);
    loop {
        if n >= cfg.n_max {
            // n_start == n_max: nothing to compare against
            return Err(QuadError::NoConvergence {
                n_max: cfg.n_max,
                previous: value,
                last: value,
            });
        }
        let n2 = 2 * n;
        let (part, peak) = add_nodes(n2, 1, 2)?;
        sum += part;
        g_max = g_max.max(peak);
        let next = scale(sum, n2);
        let diff = (next - value).norm();
        let noise = 8.0 * f64::EPSILON * contour.length() * g_max;
        if diff <= cfg.rel_tol * next.norm() + cfg.abs_tol + noise {
            let value = match contour.orientation {
                Orientation::Positive => next,
                Orientation::Negative => -next,
            };
            return Ok(QuadResult {
                value,
                n_used: n2,
                error_estimate: diff + noise,
            });
        }
        if n2 >= cfg.n_max {
            return Err(QuadError::NoConvergence {
                n_max: cfg.n_max,
                previous: value,
                last: next,
            });
        }
        value = next;
        n = n2;
    }
}

/// Index of `z` with respect to the circle: ±1 inside depending on
/// orientation, 0 outside.
pub fn winding_number(contour: &Contour, z: ComplexValue) -> Result<i32, QuadError> {
    let d = (z - contour.center).norm();
    if (d - contour.radius).abs() <= ON_CONTOUR_TOL * contour.radius {
        return Err(QuadError::OnContour {
            z,
            center: contour.center,
            radius: contour.radius,
        });
    }
    Ok(match (d < contour.radius, contour.orientation) {
        (false, _) => 0,
        (true, Orientation::Positive) => 1,
        (true, Orientation::Negative) => -1,
    })
}

fn check_node_count(n: usize) -> Result<(), QuadError> {
    if n > MAX_NODES {
        Err(QuadError::TooManyNodes(n))
    } else {
        Ok(())
    }
}

fn two_pi_i() -> ComplexValue {
    ComplexValue::new(0.0, 2.0 * PI)
}

fn normalized(mut q: QuadResult) -> QuadResult {
    q.value /= two_pi_i();
    q.error_estimate /= 2.0 * PI;
    q
}

/// (1/2πi)∮_Γ f(ξ)/Π(ξ − cₖ) dξ over the given contour, with the quadrature
/// diagnostics. Nodes must lie strictly inside the (positively oriented)
/// contour.
pub fn cauchy_coefficient_regular(
    f: &HolomorphicFn,
    outer: &Contour,
    nodes: &[ComplexValue],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    check_node_count(nodes.len())?;
    for &c in nodes {
        expect_winding(outer, c, 1, "node")?;
    }
    for &s in f.singularities() {
        winding_number(outer, s)?;
    }
    let q = contour_integral(
        |xi| {
            let num = eval_fn(f, xi)?;
            Ok::<_, QuadError>(num / node_product(xi, nodes))
        },
        outer,
        cfg,
    )?;
    Ok(normalized(q))
}

/// (1/2πi)∮_Γ f(ξ)·Π(ξ − dₖ) dξ; the empty product is 1.
pub fn cauchy_coefficient_principal(
    f: &HolomorphicFn,
    inner: &Contour,
    nodes: &[ComplexValue],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    check_node_count(nodes.len())?;
    for &s in f.singularities() {
        winding_number(inner, s)?;
    }
    let q = contour_integral(
        |xi| Ok::<_, QuadError>(eval_fn(f, xi)? * node_product(xi, nodes)),
        inner,
        cfg,
    )?;
    Ok(normalized(q))
}

/// Δⁿ⁻¹f(z₁,…,zₙ) = (1/2πi)∮_Γ f(ξ)/Π(ξ − zₖ) dξ. Every node must have
/// winding number 1 and every declared singularity winding number 0.
pub fn divided_difference_integral(
    f: &HolomorphicFn,
    contour: &Contour,
    nodes: &[ComplexValue],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    if nodes.is_empty() {
        return Err(QuadError::NoNodes);
    }
    check_node_count(nodes.len())?;
    for &z in nodes {
        expect_winding(contour, z, 1, "node")?;
    }
    for &s in f.singularities() {
        expect_winding(contour, s, 0, "singularity")?;
    }
    let q = contour_integral(
        |xi| Ok::<_, QuadError>(eval_fn(f, xi)? / node_product(xi, nodes)),
        contour,
        cfg,
    )?;
    Ok(normalized(q))
}

pub(crate) fn expect_winding(
    contour: &Contour,
    z: ComplexValue,
    expected: i32,
    role: &'static str,
) -> Result<(), QuadError> {
    let winding = winding_number(contour, z)?;
    if winding != expected {
        return Err(QuadError::Winding {
            role,
            z,
            winding,
            expected,
        });
    }
    Ok(())
}

/// Π(ξ − cₖ) multiplied in node order.
pub fn node_product(xi: ComplexValue, nodes: &[ComplexValue]) -> ComplexValue {
    nodes.iter().fold(ComplexValue::new(1.0, 0.0), |acc, c| acc * (xi - c))
}
