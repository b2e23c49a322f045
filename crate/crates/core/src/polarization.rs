//! Skew endomorphism of a 2-form relative to a metric, its splitting into
//! two invariant planes, and polarization into a compatible triple.
//!
//! Matrices act on column vectors; a 2-form is stored as `Ω` with
//! `ω(u, v) = uᵀ Ω v`. The skew endomorphism is defined by
//! `ω(u, v) = g(A u, v)`, so `A = -G⁻¹ Ω`.

use crate::c2::C2;
use crate::error::{Error, Result};
use crate::geometry::{contact_generator, FoldPoint, Side};
use alloc::vec::Vec;
use nalgebra::{Matrix4, Matrix4x2, Matrix5, SymmetricEigen, Vector4, Vector5};
#[allow(unused_imports)]
use num_traits::Float;

pub type M4 = Matrix4<f64>;

#[derive(Debug, Clone)]
pub struct SkewDecomposition {
    pub a: M4,
    /// `(|λ|, plane)` sorted by `|λ|` ascending.
    pub eigen_pairs: [(f64, Matrix4x2<f64>); 2],
    pub e_plane: Matrix4x2<f64>,
    pub f_plane: Matrix4x2<f64>,
    g: M4,
    omega: M4,
    /// `-L⁻¹ Ω L⁻ᵀ` for the Cholesky factor `G = L Lᵀ`.
    a_tilde: M4,
    l: M4,
    /// Orthonormal bases of the two planes in the `Lᵀ`-transformed frame.
    planes_tilde: [Matrix4x2<f64>; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldedTripleEval {
    pub omega: M4,
    pub g: M4,
    pub j: M4,
    pub det_omega: f64,
}

impl FoldedTripleEval {
    /// `(|J² + I|, |g - g(J·, J·)|, |g - ω(·, J·)|)` in max-norm.
    pub fn residuals(&self) -> (f64, f64, f64) {
        let j2 = (self.j * self.j + M4::identity()).amax();
        let inv = (self.j.transpose() * self.g * self.j - self.g).amax();
        let compat = (self.omega * self.j - self.g).amax();
        (j2, inv, compat)
    }
}

pub fn pfaffian(o: &M4) -> f64 {
    o[(0, 1)] * o[(2, 3)] - o[(0, 2)] * o[(1, 3)] + o[(0, 3)] * o[(1, 2)]
}

pub fn skew_endomorphism(g: &M4, omega: &M4) -> Result<SkewDecomposition> {
    if (g - g.transpose()).amax() > 1e-12 * (1.0 + g.amax()) {
        return Err(Error::Domain("metric matrix not symmetric"));
    }
    if (omega + omega.transpose()).amax() > 1e-12 * (1.0 + omega.amax()) {
        return Err(Error::Domain("2-form matrix not antisymmetric"));
    }
    let chol = g.cholesky().ok_or(Error::Domain("metric matrix not positive definite"))?;
    let l = chol.l();
    let l_inv = l.try_inverse().ok_or(Error::Singular("metric factor"))?;
    let a_tilde = -(l_inv * omega * l_inv.transpose());
    let g_inv = chol.inverse();
    let a = -(g_inv * omega);

    let sym = a_tilde.transpose() * a_tilde;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mag = |k: usize| eig.eigenvalues[order[k]].max(0.0).sqrt();
    let gap = mag(2) - mag(1);
    if gap.abs() < 1e-12 {
        return Err(Error::DegenerateSplitting { gap });
    }
    let back = l_inv.transpose();
    let tilde = |k0: usize| {
        let mut p = Matrix4x2::zeros();
        for c in 0..2 {
            let y: Vector4<f64> = eig.eigenvectors.column(order[k0 + c]).into();
            p.set_column(c, &y);
        }
        p
    };
    let planes_tilde = [tilde(0), tilde(2)];
    let e_plane = back * planes_tilde[0];
    let f_plane = back * planes_tilde[1];
    Ok(SkewDecomposition {
        a,
        eigen_pairs: [(0.5 * (mag(0) + mag(1)), e_plane), (0.5 * (mag(2) + mag(3)), f_plane)],
        e_plane,
        f_plane,
        g: *g,
        omega: *omega,
        a_tilde,
        l,
        planes_tilde,
    })
}

/// `J = A (A*A)^{-1/2}` with the adjoint taken for g, which is the unique
/// g-orthogonal complex structure with `ω(·, J·)` positive. Evaluated per
/// invariant plane, where it reduces to dividing a 2×2 block by its norm.
pub fn polarize(dec: &SkewDecomposition) -> Result<FoldedTripleEval> {
    let mut jt = M4::zeros();
    let mut mags = [0.0; 2];
    for (k, p) in dec.planes_tilde.iter().enumerate() {
        let b = p.transpose() * dec.a_tilde * p;
        let lam = 0.5 * (b[(1, 0)] - b[(0, 1)]);
        mags[k] = lam.abs();
        if lam == 0.0 {
            return Err(Error::Singular("skew endomorphism degenerate on a block"));
        }
        let mut unit = nalgebra::Matrix2::zeros();
        unit[(1, 0)] = lam.signum();
        unit[(0, 1)] = -lam.signum();
        jt += p * unit * p.transpose();
    }
    if mags[0] < 1e-12 * mags[1] {
        return Err(Error::Singular("skew endomorphism degenerate on a block"));
    }
    let l_inv_t = dec.l.transpose().try_inverse().ok_or(Error::Singular("metric factor"))?;
    let j = l_inv_t * jt * dec.l.transpose();
    let g_j = dec.omega * j;
    Ok(FoldedTripleEval {
        omega: dec.omega,
        g: 0.5 * (g_j + g_j.transpose()),
        j,
        det_omega: pfaffian(&dec.omega) / dec.g.determinant().sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldLimitReport {
    pub eps: Vec<f64>,
    /// Ambient distance of the polarized J at `±ε` from the one-sided limits.
    pub deviation_plus: Vec<f64>,
    pub deviation_minus: Vec<f64>,
    /// Log-log slope of deviation against ε (both sides pooled).
    pub rate: f64,
    /// `|J₊ - J₋|` on F after extrapolation to the fold.
    pub f_mismatch: f64,
    /// `|J₊ + J₋|` on E after extrapolation to the fold.
    pub e_sum: f64,
}

/// Orthonormal tangent basis of S⁴ at `(ε, √(1-ε²) q)` as ambient columns:
/// meridian, Reeb, contact pair.
fn meridian_basis(q: C2, eps: f64) -> [Vector5<f64>; 4] {
    let s = (1.0 - eps * eps).sqrt();
    let t0 = {
        let v = q.scale(-eps).to_real();
        Vector5::new(s, v[0], v[1], v[2], v[3])
    };
    let lift = |v: C2| {
        let r = v.to_real();
        Vector5::new(0.0, r[0], r[1], r[2], r[3])
    };
    let f1 = contact_generator(q);
    [t0, lift(q.cmul(crate::c2::I)), lift(f1), lift(f1.cmul(crate::c2::I))]
}

fn ambient(basis: &[Vector5<f64>; 4], j: &M4) -> Matrix5<f64> {
    let mut out = Matrix5::zeros();
    for a in 0..4 {
        for b in 0..4 {
            out += basis[a] * basis[b].transpose() * j[(a, b)];
        }
    }
    out
}

/// Triple at the meridian point of height `eps` above the fold point `q`.
pub fn meridian_triple(q: FoldPoint, eps: f64) -> Result<FoldedTripleEval> {
    let basis = meridian_basis(q.c2(), eps);
    let proj = |v: &Vector5<f64>| C2::from_real([v[1], v[2], v[3], v[4]]);
    let omega = M4::from_fn(|a, b| crate::geometry::omega_form(proj(&basis[a]), proj(&basis[b])));
    let g = M4::from_fn(|a, b| basis[a].dot(&basis[b]));
    let dec = skew_endomorphism(&g, &omega)?;
    let mut t = polarize(&dec)?;
    // the meridian frame is negatively oriented against the outward normal
    let p = basis_point(q.c2(), eps);
    let frame = Matrix5::from_columns(&[p, basis[0], basis[1], basis[2], basis[3]]);
    t.det_omega *= frame.determinant().signum();
    Ok(t)
}

fn basis_point(q: C2, eps: f64) -> Vector5<f64> {
    let v = q.scale((1.0 - eps * eps).sqrt()).to_real();
    Vector5::new(eps, v[0], v[1], v[2], v[3])
}

/// One-sided limit of J at the fold point, as an ambient operator.
pub fn one_sided_ambient(q: FoldPoint, side: Side) -> Matrix5<f64> {
    let basis = meridian_basis(q.c2(), 0.0);
    // unit ∂r is -∂x0 = -t0; J₊∂r = R
    let s = side.sign();
    let mut j = M4::zeros();
    j[(1, 0)] = -s;
    j[(0, 1)] = s;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    ambient(&basis, &j)
}

pub fn fold_limit_check(q: FoldPoint, eps: &[f64]) -> Result<FoldLimitReport> {
    if eps.len() < 2 || eps.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Domain("need at least two heights in (0, 1)"));
    }
    let qc = q.c2();
    let lim_p = one_sided_ambient(q, Side::Plus);
    let lim_m = one_sided_ambient(q, Side::Minus);
    let amb = |e: f64| -> Result<Matrix5<f64>> {
        let t = meridian_triple(q, e)?;
        Ok(ambient(&meridian_basis(qc, e), &t.j))
    };
    let mut dp = Vec::new();
    let mut dm = Vec::new();
    let (mut sx, mut sy, mut sxx, mut sxy, mut n) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &e in eps {
        let a = (amb(e)? - lim_p).norm();
        let b = (amb(-e)? - lim_m).norm();
        dp.push(a);
        dm.push(b);
        for d in [a, b] {
            let (x, y) = (e.ln(), d.ln());
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            n += 1.0;
        }
    }
    let rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let e0 = eps.iter().cloned().fold(f64::INFINITY, f64::min);
    let extrap = |e: f64| -> Result<Matrix5<f64>> { Ok(amb(e)? * 2.0 - amb(2.0 * e)?) };
    let jp = extrap(e0)?;
    let jm = extrap(-e0)?;
    let basis = meridian_basis(qc, 0.0);
    let restrict = |m: &Matrix5<f64>, cols: [usize; 2]| {
        let mut worst: f64 = 0.0;
        for &c in &cols {
            worst = worst.max((m * basis[c]).norm());
        }
        worst
    };
    Ok(FoldLimitReport {
        eps: eps.to_vec(),
        deviation_plus: dp,
        deviation_minus: dm,
        rate,
        f_mismatch: restrict(&(jp - jm), [2, 3]),
        e_sum: restrict(&(jp + jm), [0, 1]),
    })
}
