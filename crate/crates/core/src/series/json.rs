//! JSON form of an [`Expansion`]:
//!
//! ```text
//! { "geometry":  { "type": "disc" | "annulus", "centers": [[re,im],…], "radii": […] },
//!   "regular":   { "nodes": [[re,im],…], "coeffs": [[re,im],…] },
//!   "principal": { "nodes": […], "coeffs": […] },
//!   "quad":      { "n_final": n, "rel_tol": x } }
//! ```
//!
//! Reals are written with 17 significant digits so a round trip is exact.
//! Quadrature error bars are not stored and read back as zero.

use serde::Deserialize;

use crate::quadrature::{Contour, QuadConfig};
use crate::ComplexValue;

use super::{AnnulusSpec, Expansion, Geometry, QuadProvenance, SeriesError};

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair(z: ComplexValue) -> String {
    format!("[{}, {}]", real(z.re), real(z.im))
}

fn list(zs: &[ComplexValue]) -> String {
    let items: Vec<String> = zs.iter().map(|&z| pair(z)).collect();
    format!("[{}]", items.join(", "))
}

pub fn expansion_to_json(e: &Expansion) -> String {
    let (kind, centers, radii) = match e.geometry() {
        Geometry::Disc(d) => ("disc", vec![d.center()], vec![d.radius()]),
        Geometry::Annulus(a) => (
            "annulus",
            vec![a.inner().center(), a.outer().center()],
            vec![a.inner().radius(), a.outer().radius()],
        ),
    };
    let radii: Vec<String> = radii.into_iter().map(real).collect();
    let mut out = String::from("{\n");
    out += &format!(
        "  \"geometry\": {{\"type\": \"{kind}\", \"centers\": {}, \"radii\": [{}]}},\n",
        list(&centers),
        radii.join(", ")
    );
    out += &format!(
        "  \"regular\": {{\"nodes\": {}, \"coeffs\": {}}},\n",
        list(e.regular_nodes()),
        list(e.regular_coeffs())
    );
    out += &format!(
        "  \"principal\": {{\"nodes\": {}, \"coeffs\": {}}},\n",
        list(e.principal_nodes()),
        list(e.principal_coeffs())
    );
    out += &format!(
        "  \"quad\": {{\"n_final\": {}, \"rel_tol\": {}}}\n",
        e.quad().n_final,
        real(e.quad().config.rel_tol)
    );
    out += "}\n";
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    #[serde(rename = "type")]
    kind: String,
    centers: Vec<[f64; 2]>,
    radii: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    nodes: Vec<[f64; 2]>,
    coeffs: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuad {
    n_final: usize,
    rel_tol: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpansion {
    geometry: RawGeometry,
    regular: RawSeries,
    principal: RawSeries,
    quad: RawQuad,
}

fn complexes(raw: &[[f64; 2]]) -> Vec<ComplexValue> {
    raw.iter().map(|[re, im]| ComplexValue::new(*re, *im)).collect()
}

fn json_error(e: impl std::fmt::Display) -> SeriesError {
    SeriesError::Json(e.to_string())
}

pub fn expansion_from_json(text: &str) -> Result<Expansion, SeriesError> {
    let raw: RawExpansion = serde_json::from_str(text).map_err(json_error)?;
    let centers = complexes(&raw.geometry.centers);
    let radii = &raw.geometry.radii;
    let geometry = match (raw.geometry.kind.as_str(), centers.len(), radii.len()) {
        ("disc", 1, 1) => Geometry::Disc(Contour::circle(centers[0], radii[0]).map_err(json_error)?),
        ("annulus", 2, 2) => Geometry::Annulus(AnnulusSpec::new(
            Contour::circle(centers[0], radii[0]).map_err(json_error)?,
            Contour::circle(centers[1], radii[1]).map_err(json_error)?,
        )?),
        (kind, nc, nr) => {
            return Err(SeriesError::Json(format!(
                "geometry type {kind:?} with {nc} centers and {nr} radii"
            )))
        }
    };
    if raw.quad.rel_tol.is_nan() || raw.quad.rel_tol <= 0.0 {
        return Err(SeriesError::Json(format!(
            "rel_tol {} must be positive",
            raw.quad.rel_tol
        )));
    }
    let config = QuadConfig {
        rel_tol: raw.quad.rel_tol,
        ..QuadConfig::default()
    };
    let regular_coeffs = complexes(&raw.regular.coeffs);
    let principal_coeffs = complexes(&raw.principal.coeffs);
    let regular_errors = vec![0.0; regular_coeffs.len()];
    let principal_errors = vec![0.0; principal_coeffs.len()];
    Expansion::new(
        complexes(&raw.regular.nodes),
        regular_coeffs,
        regular_errors,
        complexes(&raw.principal.nodes),
        principal_coeffs,
        principal_errors,
        geometry,
        QuadProvenance {
            config,
            n_final: raw.quad.n_final,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::builtin;
    use crate::series::{expand_annulus, NodeSequence};

    #[test]
    fn round_trip_is_exact() {
        let f = crate::expr::parse_function("exp(z)/(z*(z-3))").unwrap();
        let spec = AnnulusSpec::concentric(ComplexValue::new(0.0, 0.0), 0.5, 2.0).unwrap();
        let c = NodeSequence::geometric(
            ComplexValue::new(1.0, 0.0),
            ComplexValue::new(0.3, 0.1),
            ComplexValue::new(0.5, 0.0),
        )
        .unwrap();
        let d = NodeSequence::list(vec![ComplexValue::new(0.1, -0.2)], ComplexValue::new(0.0, 0.0)).unwrap();
        let e = expand_annulus(&f, &spec, &c, &d, 8, 5, &QuadConfig::default()).unwrap();
        let text = expansion_to_json(&e);
        let back = expansion_from_json(&text).unwrap();
        assert_eq!(back.regular_coeffs(), e.regular_coeffs());
        assert_eq!(back.principal_coeffs(), e.principal_coeffs());
        assert_eq!(back.regular_nodes(), e.regular_nodes());
        assert_eq!(back.principal_nodes(), e.principal_nodes());
        assert_eq!(back.geometry(), e.geometry());
        assert_eq!(back.quad().n_final, e.quad().n_final);
        assert_eq!(expansion_to_json(&back), text);
    }

    #[test]
    fn disc_layout() {
        let p = builtin("poly([1,2])").unwrap();
        let disc = Contour::circle(ComplexValue::new(0.0, 0.0), 1.0).unwrap();
        let e = crate::series::expand_disc(
            &p,
            &disc,
            &NodeSequence::constant(ComplexValue::new(0.0, 0.0)).unwrap(),
            1,
            &QuadConfig::default(),
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&expansion_to_json(&e)).unwrap();
        assert_eq!(v["geometry"]["type"], "disc");
        assert_eq!(v["principal"]["coeffs"].as_array().unwrap().len(), 0);
        assert_eq!(v["regular"]["coeffs"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(expansion_from_json("{}").is_err());
        let bad = r#"{"geometry":{"type":"disc","centers":[[0,0]],"radii":[1]},
            "regular":{"nodes":[[0,0]],"coeffs":[[1,0]]},
            "principal":{"nodes":[],"coeffs":[]},"quad":{"n_final":32,"rel_tol":1e-12}}"#;
        assert!(matches!(expansion_from_json(bad), Err(SeriesError::Inconsistent(_))));
        let bad = bad.replace("\"disc\"", "\"ring\"");
        assert!(matches!(expansion_from_json(&bad), Err(SeriesError::Json(_))));
    }
}
