use std::f64::consts::PI;

use crate::ComplexValue;

use super::{Expansion, Geometry, SeriesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TailStatus {
    /// The last term is below its error bar.
    Exhausted,
    /// Tail terms decay geometrically with ratio below one.
    Converging,
    /// No pair of resolved tail terms, or a ratio of at least one.
    Unreliable,
}

/// Term magnitudes at probe points and a tail estimate derived from them.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceDiag {
    pub probes: Vec<ComplexValue>,
    /// `regular_terms[p][n]` = |aₙ (z−c₁)…(z−cₙ)| at probe p.
    pub regular_terms: Vec<Vec<f64>>,
    /// `principal_terms[p][n−1]` = |a₋ₙ / ((z−d₁)…(z−dₙ))| at probe p.
    pub principal_terms: Vec<Vec<f64>>,
    /// Largest ratio of consecutive resolved terms over the last quarter.
    pub estimated_ratio: f64,
    /// Bound on the omitted tail assuming geometric decay; infinite when unreliable.
    pub truncation_estimate: f64,
    pub status: TailStatus,
}

/// 16 equally spaced points on a circle well inside the region: radius r/2
/// for a disc, the geometric mean radius around the inner center for an annulus.
pub fn default_probes(geometry: &Geometry) -> Vec<ComplexValue> {
    let (center, radius) = match geometry {
        Geometry::Disc(d) => (d.center(), d.radius() / 2.0),
        Geometry::Annulus(a) => (a.inner().center(), (a.inner().radius() * a.outer().radius()).sqrt()),
    };
    (0..16)
        .map(|j| center + ComplexValue::from_polar(radius, 2.0 * PI * j as f64 / 16.0))
        .collect()
}

struct Tail {
    status: TailStatus,
    ratio: f64,
    truncation: f64,
}

fn analyse(terms: &[f64], errors: &[f64]) -> Tail {
    let exhausted = Tail {
        status: TailStatus::Exhausted,
        ratio: 0.0,
        truncation: 0.0,
    };
    if terms.is_empty() {
        return exhausted;
    }
    let resolved = |n: usize| terms[n] > 2.0 * errors[n];
    let len = terms.len();
    let window = len.div_ceil(4).max(2).min(len);
    let start = len - window;
    // a final term below its error bar means the series has reached quadrature noise
    if !resolved(len - 1) {
        return exhausted;
    }
    let last = len - 1;
    let ratio = (start..len - 1)
        .filter(|&n| resolved(n) && resolved(n + 1))
        .map(|n| terms[n + 1] / terms[n])
        .fold(f64::NAN, f64::max);
    if ratio.is_nan() || ratio >= 1.0 {
        return Tail {
            status: TailStatus::Unreliable,
            ratio: if ratio.is_nan() { f64::INFINITY } else { ratio },
            truncation: f64::INFINITY,
        };
    }
    Tail {
        status: TailStatus::Converging,
        ratio,
        truncation: terms[last] * ratio / (1.0 - ratio),
    }
}

/// Term magnitudes of `e` at `probes` (the default probes when empty) and
/// the resulting tail estimate. Errors if a probe lies outside the region.
pub fn convergence_report(e: &Expansion, probes: &[ComplexValue]) -> Result<ConvergenceDiag, SeriesError> {
    let probes = if probes.is_empty() {
        default_probes(e.geometry())
    } else {
        probes.to_vec()
    };
    if let Some(&z) = probes.iter().find(|&&z| !e.geometry().contains(z)) {
        return Err(SeriesError::PointOutsideRegion(z));
    }

    let mut regular_terms = Vec::with_capacity(probes.len());
    let mut principal_terms = Vec::with_capacity(probes.len());
    let mut tails = Vec::new();
    for &z in &probes {
        let mut scale = 1.0;
        let mut terms = Vec::with_capacity(e.n() + 1);
        let mut errs = Vec::with_capacity(e.n() + 1);
        for (n, a) in e.regular_coeffs().iter().enumerate() {
            if n > 0 {
                scale *= (z - e.regular_nodes()[n - 1]).norm();
            }
            terms.push(a.norm() * scale);
            errs.push(e.regular_errors()[n] * scale);
        }
        tails.push(analyse(&terms, &errs));
        regular_terms.push(terms);

        let mut scale = 1.0;
        let mut terms = Vec::with_capacity(e.m());
        let mut errs = Vec::with_capacity(e.m());
        for (k, a) in e.principal_coeffs().iter().enumerate() {
            scale /= (z - e.principal_nodes()[k]).norm();
            terms.push(a.norm() * scale);
            errs.push(e.principal_errors()[k] * scale);
        }
        tails.push(analyse(&terms, &errs));
        principal_terms.push(terms);
    }

    let status = tails.iter().map(|t| t.status).max().unwrap_or(TailStatus::Exhausted);
    let estimated_ratio = tails.iter().map(|t| t.ratio).fold(0.0, f64::max);
    // worst probe of each part, summed over the two parts
    let worst = |offset: usize| {
        tails
            .iter()
            .skip(offset)
            .step_by(2)
            .map(|t| t.truncation)
            .fold(0.0, f64::max)
    };
    let truncation_estimate = if status == TailStatus::Unreliable {
        f64::INFINITY
    } else {
        worst(0) + worst(1)
    };
    Ok(ConvergenceDiag {
        probes,
        regular_terms,
        principal_terms,
        estimated_ratio,
        truncation_estimate,
        status,
    })
}
