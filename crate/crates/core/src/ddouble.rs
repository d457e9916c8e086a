//! Minimal double-double arithmetic (~32 significant digits), real and
//! complex, for sums with heavy cancellation.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
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
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let p = self.hi * y.hi;
        let e = self.hi.mul_add(y.hi, -p) + (self.hi * y.lo + self.lo * y.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, y: Dd) -> Dd {
        let q1 = self.hi / y.hi;
        let r = self - y * Dd::new(q1);
        let q2 = r.hi / y.hi;
        let r = r - y * Dd::new(q2);
        let q3 = r.hi / y.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn real(x: Dd) -> Self {
        CDd {
            re: x,
            im: Dd::default(),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: Dd) -> Self {
        CDd::new(self.re * k, self.im * k)
    }

    /// Principal square root: double-precision guess plus one Newton step.
    pub fn sqrt(self) -> Self {
        let guess = CDd::from(self.to_complex().sqrt());
        if guess == CDd::default() {
            return guess;
        }
        (guess + self / guess).scale(Dd::new(0.5))
    }
}

impl From<Complex64> for CDd {
    fn from(z: Complex64) -> Self {
        CDd::new(Dd::new(z.re), Dd::new(z.im))
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, y: CDd) -> CDd {
        CDd::new(self.re + y.re, self.im + y.im)
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, y: CDd) -> CDd {
        CDd::new(self.re - y.re, self.im - y.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, y: CDd) -> CDd {
        CDd::new(
            self.re * y.re - self.im * y.im,
            self.re * y.im + self.im * y.re,
        )
    }
}

impl Div for CDd {
    type Output = CDd;
    fn div(self, y: CDd) -> CDd {
        let den = y.re * y.re + y.im * y.im;
        let num = self * CDd::new(y.re, -y.im);
        CDd::new(num.re / den, num.im / den)
    }
}
