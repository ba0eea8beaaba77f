//! Double-double ("software extended precision") scalars.
//!
//! A [`Dd`] carries an unevaluated sum `hi + lo` of two f64 values with
//! |lo| <= ulp(hi)/2, giving roughly 31 significant digits. The test suites
//! use these (and the complex [`Cdd`]) as independent oracles for the f64
//! series kernels: terminating series are re-summed term by term in
//! double-double and compared against the production path.
//!
//! Only the operations the oracles need are implemented.

/// Double-double real scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, other: Dd) -> Dd {
        self + (-other)
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self - other * Dd::from_f64(q1);
        let q2 = r.hi / other.hi;
        let r2 = r - other * Dd::from_f64(q2);
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Complex double-double scalar for oracle sums with conjugate-pair
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    pub fn new(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    pub fn from_dd(re: Dd) -> Cdd {
        Cdd { re, im: Dd::ZERO }
    }

    /// Euclidean norm of the f64 view; used for stopping rules and guards.
    pub fn norm_f64(self) -> f64 {
        self.to_complex().norm()
    }

    pub fn scale(self, s: f64) -> Cdd {
        Cdd { re: self.re * Dd::from_f64(s), im: self.im * Dd::from_f64(s) }
    }

    pub fn from_complex(z: num_complex::Complex64) -> Cdd {
        Cdd::new(z.re, z.im)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

}

impl std::ops::Add for Cdd {
    type Output = Cdd;
    fn add(self, other: Cdd) -> Cdd {
        Cdd { re: self.re + other.re, im: self.im + other.im }
    }
}

impl std::ops::Sub for Cdd {
    type Output = Cdd;
    fn sub(self, other: Cdd) -> Cdd {
        Cdd { re: self.re - other.re, im: self.im - other.im }
    }
}

impl std::ops::Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd { re: -self.re, im: -self.im }
    }
}

impl std::ops::Mul for Cdd {
    type Output = Cdd;
    fn mul(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }
}

impl std::ops::Div for Cdd {
    type Output = Cdd;
    fn div(self, other: Cdd) -> Cdd {
        let denom = other.re * other.re + other.im * other.im;
        let num = self * Cdd { re: other.re, im: -other.im };
        Cdd { re: num.re / denom, im: num.im / denom }
    }
}
