#[allow(unused_imports)]
use num_traits::Float;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use num_complex::Complex;

pub type C = Complex<f64>;

pub const I: C = C { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Unit complex number `e^{i t}`.
pub fn cis(t: f64) -> C {
    C::new(t.cos(), t.sin())
}

/// A vector of ℂ², also read as ℝ⁴ via `(Re z, Im z, Re w, Im w)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct C2 {
    pub z: C,
    pub w: C,
}

impl C2 {
    pub const ZERO: C2 = C2 { z: C { re: 0.0, im: 0.0 }, w: C { re: 0.0, im: 0.0 } };

    pub fn new(z: C, w: C) -> Self {
        C2 { z, w }
    }

    pub fn from_real(x: [f64; 4]) -> Self {
        C2::new(c(x[0], x[1]), c(x[2], x[3]))
    }

    pub fn to_real(self) -> [f64; 4] {
        [self.z.re, self.z.im, self.w.re, self.w.im]
    }

    /// Hermitian product, conjugate-linear in `self`.
    pub fn herm(self, other: C2) -> C {
        self.z.conj() * other.z + self.w.conj() * other.w
    }

    pub fn dot(self, other: C2) -> f64 {
        self.herm(other).re
    }

    pub fn norm_sqr(self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> C2 {
        C2::new(self.z * s, self.w * s)
    }

    pub fn cmul(self, s: C) -> C2 {
        C2::new(self.z * s, self.w * s)
    }

    pub fn normalized(self) -> C2 {
        self.scale(1.0 / self.norm())
    }

    pub fn conj(self) -> C2 {
        C2::new(self.z.conj(), self.w.conj())
    }

    pub fn dist(self, other: C2) -> f64 {
        (self - other).norm()
    }
}

impl Add for C2 {
    type Output = C2;
    fn add(self, o: C2) -> C2 {
        C2::new(self.z + o.z, self.w + o.w)
    }
}

impl AddAssign for C2 {
    fn add_assign(&mut self, o: C2) {
        self.z += o.z;
        self.w += o.w;
    }
}

impl Sub for C2 {
    type Output = C2;
    fn sub(self, o: C2) -> C2 {
        C2::new(self.z - o.z, self.w - o.w)
    }
}

impl Neg for C2 {
    type Output = C2;
    fn neg(self) -> C2 {
        C2::new(-self.z, -self.w)
    }
}

impl Mul<C2> for C {
    type Output = C2;
    fn mul(self, v: C2) -> C2 {
        v.cmul(self)
    }
}

impl Mul<C2> for f64 {
    type Output = C2;
    fn mul(self, v: C2) -> C2 {
        v.scale(self)
    }
}
