//! Polynomial recognition and closed-form roots up to degree four.

use super::ast::Expr;
use crate::ComplexValue;

const MAX_TRACKED_DEGREE: usize = 32;

/// Coefficients in ascending order if `expr` is a polynomial in `z`.
pub fn as_polynomial(expr: &Expr) -> Option<Vec<ComplexValue>> {
    let p = match expr {
        Expr::Num(c) => vec![*c],
        Expr::Var => vec![ComplexValue::new(0.0, 0.0), ComplexValue::new(1.0, 0.0)],
        Expr::Neg(a) => as_polynomial(a)?.into_iter().map(|c| -c).collect(),
        Expr::Add(a, b) => add(&as_polynomial(a)?, &as_polynomial(b)?, 1.0),
        Expr::Sub(a, b) => add(&as_polynomial(a)?, &as_polynomial(b)?, -1.0),
        Expr::Mul(a, b) => mul(&as_polynomial(a)?, &as_polynomial(b)?)?,
        Expr::Pow(a, k) => {
            let base = as_polynomial(a)?;
            let mut acc = vec![ComplexValue::new(1.0, 0.0)];
            for _ in 0..*k {
                acc = mul(&acc, &base)?;
            }
            acc
        }
        // division by a constant keeps polynomial shape
        Expr::Div(a, b) => {
            let den = trim(as_polynomial(b)?);
            if den.len() != 1 || den[0] == ComplexValue::new(0.0, 0.0) {
                return None;
            }
            as_polynomial(a)?.into_iter().map(|c| c / den[0]).collect()
        }
        Expr::Call(..) => return None,
    };
    Some(trim(p))
}

fn trim(mut p: Vec<ComplexValue>) -> Vec<ComplexValue> {
    while p.len() > 1 && *p.last().unwrap() == ComplexValue::new(0.0, 0.0) {
        p.pop();
    }
    p
}

fn add(a: &[ComplexValue], b: &[ComplexValue], sign: f64) -> Vec<ComplexValue> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_default();
            let y = b.get(k).copied().unwrap_or_default();
            x + y * sign
        })
        .collect()
}

fn mul(a: &[ComplexValue], b: &[ComplexValue]) -> Option<Vec<ComplexValue>> {
    if a.len() + b.len() - 2 > MAX_TRACKED_DEGREE {
        return None;
    }
    let mut out = vec![ComplexValue::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Some(out)
}

pub fn horner(coeffs: &[ComplexValue], z: ComplexValue) -> ComplexValue {
    coeffs
        .iter()
        .rev()
        .fold(ComplexValue::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[ComplexValue]) -> Vec<ComplexValue> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Roots of a polynomial of degree 1 to 4 (ascending coefficients), by
/// closed-form formulas followed by a few Newton polishing steps. Returns
/// `None` for other degrees.
pub fn closed_form_roots(coeffs: &[ComplexValue]) -> Option<Vec<ComplexValue>> {
    let coeffs = trim(coeffs.to_vec());
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let monic: Vec<ComplexValue> = coeffs.iter().map(|c| c / lead).collect();
    let raw = match degree {
        1 => vec![-monic[0]],
        2 => quadratic(monic[1], monic[0]).to_vec(),
        3 => cubic(monic[2], monic[1], monic[0]).to_vec(),
        4 => quartic(monic[3], monic[2], monic[1], monic[0]).to_vec(),
        _ => return None,
    };
    let dp = derivative(&coeffs);
    Some(raw.into_iter().map(|r| polish(&coeffs, &dp, r)).collect())
}

fn polish(p: &[ComplexValue], dp: &[ComplexValue], mut r: ComplexValue) -> ComplexValue {
    let mut residual = horner(p, r).norm();
    for _ in 0..8 {
        let d = horner(dp, r);
        if d == ComplexValue::new(0.0, 0.0) || residual == 0.0 {
            break;
        }
        let candidate = r - horner(p, r) / d;
        let cand_residual = horner(p, candidate).norm();
        if cand_residual.is_nan() || cand_residual >= residual {
            break;
        }
        r = candidate;
        residual = cand_residual;
    }
    r
}

/// z² + b z + c
fn quadratic(b: ComplexValue, c: ComplexValue) -> [ComplexValue; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q == ComplexValue::new(0.0, 0.0) {
        [q, q]
    } else {
        [q, c / q]
    }
}

/// z³ + a z² + b z + c
fn cubic(a: ComplexValue, b: ComplexValue, c: ComplexValue) -> [ComplexValue; 3] {
    let shift = a / 3.0;
    // depressed t³ + p t + q with z = t - a/3
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let root_disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u1 = -q / 2.0 + root_disc;
    let u2 = -q / 2.0 - root_disc;
    let u = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let zero = ComplexValue::new(0.0, 0.0);
    if u == zero {
        return [-shift; 3];
    }
    let cbrt = u.cbrt();
    let omega = ComplexValue::new(-0.5, 3f64.sqrt() / 2.0);
    let mut out = [zero; 3];
    let mut w = ComplexValue::new(1.0, 0.0);
    for slot in &mut out {
        let s = cbrt * w;
        *slot = s - p / (s * 3.0) - shift;
        w *= omega;
    }
    out
}

/// z⁴ + a z³ + b z² + c z + d, by Ferrari's resolvent cubic
fn quartic(a: ComplexValue, b: ComplexValue, c: ComplexValue, d: ComplexValue) -> [ComplexValue; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    // depressed y⁴ + p y² + q y + r with z = y - a/4
    let p = b - a2 * (3.0 / 8.0);
    let q = a2 * a / 8.0 - a * b / 2.0 + c;
    let r = -a2 * a2 * (3.0 / 256.0) + a2 * b / 16.0 - a * c / 4.0 + d;
    let zero = ComplexValue::new(0.0, 0.0);
    if q.norm() <= 1e-14 * (1.0 + p.norm() + r.norm()) {
        // biquadratic
        let [u1, u2] = quadratic(p, r);
        let (s1, s2) = (u1.sqrt(), u2.sqrt());
        return [s1 - shift, -s1 - shift, s2 - shift, -s2 - shift];
    }
    // resolvent: 8m³ + 8p m² + (2p² − 8r) m − q² = 0
    let ms = cubic(p, p * p / 4.0 - r, -q * q / 8.0);
    let m = ms
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(zero);
    let s = (m * 2.0).sqrt();
    let half = p / 2.0 + m;
    let corr = q / (s * 2.0);
    let [y1, y2] = quadratic(s, half - corr);
    let [y3, y4] = quadratic(-s, half + corr);
    [y1 - shift, y2 - shift, y3 - shift, y4 - shift]
}
