//! Structures on S⁴ ⊂ ℝ⁵ and on its fold S³ ⊂ ℂ².
//!
//! Tangent vectors at the fold carry a coefficient along the unit normal
//! frame vector `∂r` plus a component in T S³. In ambient coordinates
//! `∂r = -2π ∂x0`, so that `J̃∂r = R` matches the chart complex structures.

#[allow(unused_imports)]
use num_traits::Float;
use crate::c2::{c, C, C2, I};
use crate::error::{Error, Result};
use crate::grid::PolarSamples;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point4Sphere {
    pub x: [f64; 5],
}

impl Point4Sphere {
    pub fn new(x: [f64; 5]) -> Result<Self> {
        let n: f64 = x.iter().map(|v| v * v).sum();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("point not on the unit 4-sphere"));
        }
        Ok(Point4Sphere { x })
    }

    pub fn tail(&self) -> C2 {
        C2::from_real([self.x[1], self.x[2], self.x[3], self.x[4]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldPoint {
    pub z: C,
    pub w: C,
}

impl FoldPoint {
    pub fn new(z: C, w: C) -> Result<Self> {
        if (z.norm_sqr() + w.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("point not on the unit 3-sphere"));
        }
        Ok(FoldPoint { z, w })
    }

    /// Radial projection of a nonzero vector onto S³.
    pub fn project(v: C2) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Domain("cannot project zero vector to S³"));
        }
        let u = v.scale(1.0 / n);
        Ok(FoldPoint { z: u.z, w: u.w })
    }

    pub fn c2(self) -> C2 {
        C2::new(self.z, self.w)
    }
}

/// Closed characteristic `θ ↦ (m e^{2πiθ}, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicParam {
    pub m: C,
}

impl CharacteristicParam {
    pub fn new(m: C) -> Result<Self> {
        if (m.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("characteristic parameter must be a unit scalar"));
        }
        Ok(CharacteristicParam { m })
    }

    pub fn at(&self, theta: f64) -> FoldPoint {
        FoldPoint { z: self.m * crate::c2::cis(2.0 * PI * theta), w: c(0.0, 0.0) }
    }

    /// Parameter of `p` on the circle, in `[0, 1)`, or the distance off it.
    pub fn locate(&self, p: FoldPoint) -> core::result::Result<f64, f64> {
        let off = p.w.norm();
        if off > 1e-8 {
            return Err(off);
        }
        let t = (p.z / self.m).arg() / (2.0 * PI);
        Ok(t - t.floor())
    }
}

/// Sum on the characteristic through its circle group structure.
pub fn characteristic_add(s: f64, t: f64) -> f64 {
    let u = s + t;
    u - u.floor()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentAtFold {
    pub base: FoldPoint,
    /// Coefficient along the normal frame vector `∂r`.
    pub dr: f64,
    /// Component tangent to S³.
    pub vec: C2,
}

impl TangentAtFold {
    pub fn new(base: FoldPoint, dr: f64, vec: C2) -> Result<Self> {
        let radial = base.c2().dot(vec);
        if radial.abs() > 1e-10 * (1.0 + vec.norm()) {
            return Err(Error::Domain("vector not tangent to S³"));
        }
        Ok(TangentAtFold { base, dr, vec })
    }

    pub fn ambient(&self) -> [f64; 5] {
        let v = self.vec.to_real();
        [-2.0 * PI * self.dr, v[0], v[1], v[2], v[3]]
    }

    pub fn scale(self, s: f64) -> Self {
        TangentAtFold { dr: self.dr * s, vec: self.vec.scale(s), ..self }
    }

    pub fn add(self, o: TangentAtFold) -> Self {
        TangentAtFold { dr: self.dr + o.dr, vec: self.vec + o.vec, ..self }
    }
}

pub fn embed_hemisphere(side: Side, y: C2) -> Result<Point4Sphere> {
    let n2 = y.norm_sqr();
    if n2.sqrt() > 1.0 + 1e-9 {
        return Err(Error::Domain("chart point outside the closed unit ball"));
    }
    let d = 1.0 + n2;
    let t = y.scale(2.0 / d).to_real();
    Ok(Point4Sphere { x: [side.sign() * (1.0 - n2) / d, t[0], t[1], t[2], t[3]] })
}

/// Inverse of `embed_hemisphere` on the closed hemisphere of `side`.
pub fn chart_of(p: &Point4Sphere) -> (Side, C2) {
    let side = if p.x[0] >= 0.0 { Side::Plus } else { Side::Minus };
    let t = p.tail();
    (side, t.scale(1.0 / (1.0 + p.x[0].abs())))
}

pub fn project_equator(p: &Point4Sphere) -> C2 {
    p.tail()
}

pub fn tau(p: &Point4Sphere) -> Point4Sphere {
    let mut x = p.x;
    x[0] = -x[0];
    Point4Sphere { x }
}

/// Contact form on a raw base/vector pair.
pub fn alpha_raw(base: C2, vec: C2) -> f64 {
    base.herm(vec).im / (2.0 * PI)
}

pub fn alpha_eval(v: &TangentAtFold) -> f64 {
    alpha_raw(v.base.c2(), v.vec)
}

pub fn reeb_raw(p: C2) -> C2 {
    p.cmul(c(0.0, 2.0 * PI))
}

pub fn reeb_vector(p: FoldPoint) -> TangentAtFold {
    TangentAtFold { base: p, dr: 0.0, vec: reeb_raw(p.c2()) }
}

pub fn reeb_flow(p: FoldPoint, t: f64) -> FoldPoint {
    let e = crate::c2::cis(2.0 * PI * t);
    FoldPoint { z: p.z * e, w: p.w * e }
}

/// Unit generator of the contact plane at `p`; the plane is `ℂ·f1`.
pub fn contact_generator(p: C2) -> C2 {
    C2::new(-p.w.conj(), p.z.conj())
}

/// Projection of a T S³ vector onto the contact plane.
pub fn pi_f_raw(p: C2, v: C2) -> C2 {
    v - p.cmul(p.herm(v))
}

/// Complex coordinate of the contact component in the basis `f1`.
pub fn f_coord(p: C2, v: C2) -> C {
    contact_generator(p).herm(v)
}

pub fn pi_f(v: &TangentAtFold) -> C2 {
    let p = v.base.c2();
    let f = contact_generator(p);
    f.cmul(f.herm(v.vec))
}

#[derive(Debug, Clone, Copy)]
pub struct FoldFrame {
    pub dr: TangentAtFold,
    pub k: TangentAtFold,
    pub l: TangentAtFold,
    pub f: [TangentAtFold; 2],
}

pub fn fold_frame(p: FoldPoint) -> FoldFrame {
    let f1 = contact_generator(p.c2());
    let dr = TangentAtFold { base: p, dr: 1.0, vec: C2::ZERO };
    FoldFrame {
        dr,
        k: dr.scale(-1.0),
        l: reeb_vector(p),
        f: [
            TangentAtFold { base: p, dr: 0.0, vec: f1 },
            TangentAtFold { base: p, dr: 0.0, vec: f1.cmul(I) },
        ],
    }
}

/// Coordinates in the g'-orthonormal frame `(∂r, R, f1, i f1)`.
pub fn frame_coords(v: &TangentAtFold) -> [f64; 4] {
    let fc = f_coord(v.base.c2(), v.vec);
    [v.dr, alpha_eval(v), fc.re, fc.im]
}

pub fn from_frame_coords(p: FoldPoint, x: [f64; 4]) -> TangentAtFold {
    let f1 = contact_generator(p.c2());
    let vec = reeb_raw(p.c2()).scale(x[1]) + f1.cmul(c(x[2], x[3]));
    TangentAtFold { base: p, dr: x[0], vec }
}

/// The metric `dr² + α² + g_F` at the fold.
pub fn g_prime(u: &TangentAtFold, v: &TangentAtFold) -> f64 {
    let a = frame_coords(u);
    let b = frame_coords(v);
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

pub fn j_onesided(side: Side, v: &TangentAtFold) -> TangentAtFold {
    let x = frame_coords(v);
    let s = side.sign();
    from_frame_coords(v.base, [-s * x[1], s * x[0], -x[3], x[2]])
}

/// Point of S² ⊂ ℝ³ under the Hopf map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S2Point {
    pub n: [f64; 3],
}

impl S2Point {
    /// A unit representative `(z, w)` of the line `[z : w]`.
    pub fn homogeneous(&self) -> (C, C) {
        let h = self.n[2];
        let zr = ((1.0 + h) / 2.0).max(0.0).sqrt();
        if zr > 1e-8 {
            (c(zr, 0.0), c(self.n[0], self.n[1]) / (2.0 * zr))
        } else {
            (c(0.0, 0.0), c(1.0, 0.0))
        }
    }

    pub fn dist(&self, o: &S2Point) -> f64 {
        let d: f64 = (0..3).map(|i| (self.n[i] - o.n[i]).powi(2)).sum();
        d.sqrt()
    }
}

pub fn hopf_raw(p: C2) -> [f64; 3] {
    let q = p.w * p.z.conj();
    [2.0 * q.re, 2.0 * q.im, p.z.norm_sqr() - p.w.norm_sqr()]
}

pub fn hopf_project(p: FoldPoint) -> S2Point {
    S2Point { n: hopf_raw(p.c2()) }
}

/// Complex structure of S² at `n`: `v ↦ n × v`.
pub fn j_sphere(n: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [n[1] * v[2] - n[2] * v[1], n[2] * v[0] - n[0] * v[2], n[0] * v[1] - n[1] * v[0]]
}

fn hopf_derivative(p: C2, v: C2, h: f64) -> [f64; 3] {
    let a = hopf_raw((p + v.scale(h)).normalized());
    let b = hopf_raw((p - v.scale(h)).normalized());
    [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h), (a[2] - b[2]) / (2.0 * h)]
}

/// `|dπ(i f) - J_V dπ(f)|` over the contact basis, by central differences.
pub fn hopf_linearity_residual(p: FoldPoint) -> f64 {
    let h = 1e-5;
    let pc = p.c2();
    let n = hopf_raw(pc);
    let f1 = contact_generator(pc);
    let mut worst: f64 = 0.0;
    for f in [f1, f1.cmul(I)] {
        let lhs = hopf_derivative(pc, f.cmul(I), h);
        let rhs = j_sphere(n, hopf_derivative(pc, f, h));
        let r: f64 = (0..3).map(|i| (lhs[i] - rhs[i]).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(r);
    }
    worst
}

/// Pfaffian of ω over the round volume form; equals `x0/π²`.
pub fn det_omega(p: &Point4Sphere) -> f64 {
    p.x[0] / (PI * PI)
}

/// `ω(u, v)` for tangent vectors given through their ℝ⁴ projections.
pub fn omega_form(u: C2, v: C2) -> f64 {
    u.herm(v).im / PI
}

/// Quadrature of the pulled-back form over a tensor grid of projected values.
pub fn omega_energy(samples: &PolarSamples) -> Result<f64> {
    if samples.m < 4 || samples.radial.len() < 3 || !crate::fft::is_pow2(samples.m) {
        return Err(Error::DegenerateGrid);
    }
    let ds = samples.d_radial();
    let dt = samples.d_angular();
    let m = samples.m;
    let dth = 2.0 * PI / m as f64;
    let mut total = 0.0;
    for (i, w) in samples.radial.weights.iter().enumerate() {
        let mut ring = 0.0;
        for j in 0..m {
            ring += omega_form(ds[i * m + j], dt[i * m + j]);
        }
        total += w * ring * dth;
    }
    Ok(total)
}
