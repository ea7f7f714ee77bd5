use newton_holo::ComplexValue;

/// 17 significant digits, enough to recover the exact double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn row(fields: &[String]) -> String {
    fields.join(",")
}

pub fn complex_fields(z: ComplexValue) -> [String; 2] {
    [num(z.re), num(z.im)]
}
