//! Double-double complex arithmetic built on error-free transformations.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::ComplexValue;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        // two Newton-style correction steps on the quotient
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    pub(crate) fn new(z: ComplexValue) -> Self {
        DdComplex {
            re: Dd::new(z.re),
            im: Dd::new(z.im),
        }
    }

    pub(crate) fn to_complex(self) -> ComplexValue {
        ComplexValue::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for DdComplex {
    type Output = DdComplex;
    fn div(self, o: DdComplex) -> DdComplex {
        let den = o.re * o.re + o.im * o.im;
        let num = DdComplex {
            re: self.re * o.re + self.im * o.im,
            im: self.im * o.re - self.re * o.im,
        };
        DdComplex {
            re: num.re / den,
            im: num.im / den,
        }
    }
}
