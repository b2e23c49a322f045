//! Maslov and Fredholm indices, the boundary operator `B` acting on
//! sections of `F ⊕ E` along σ, its principal symbol and the ellipticity
//! certificate.
//!
//! Sections are written in the frame `(∂r, R, e, ie)` at each σ-sample with
//! `e = (-w̄, z̄)` at the base point `(z, w)`; `J₊` and `J₋` agree on `F` and
//! are opposite on `E`.

use crate::c2::{c, C, C2};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{alpha_raw, contact_generator, pi_f_raw};
use crate::harmonic::{solve_neumann_vanishing, solve_qtilde, BoundaryLoopSamples, DomainKind};
use crate::moduli::{FoldedMapBundle, SigmaData};
use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::{Matrix2, Matrix4, SMatrix};
#[allow(unused_imports)]
use num_traits::Float;

/// A loop of real 2-planes in ℂ², each spanned by the real span of a frame.
#[derive(Debug, Clone)]
pub struct TotallyRealLoop {
    frames: Vec<[C2; 2]>,
}

/// `|det_ℂ|` of the real-orthonormalized frame; 0 for complex lines, 1 for
/// Lagrangian planes.
fn real_angle(f: [C2; 2]) -> f64 {
    let n0 = f[0].norm();
    if n0 == 0.0 {
        return 0.0;
    }
    let a = f[0].scale(1.0 / n0);
    let b = f[1] - a.scale(a.dot(f[1]));
    let nb = b.norm();
    if nb == 0.0 {
        return 0.0;
    }
    let b = b.scale(1.0 / nb);
    (a.z * b.w - a.w * b.z).norm()
}

impl TotallyRealLoop {
    pub fn new(frames: Vec<[C2; 2]>) -> Result<Self> {
        if frames.len() < 3 {
            return Err(Error::InsufficientRings(frames.len()));
        }
        for (k, f) in frames.iter().enumerate() {
            if !(real_angle(*f) > 1e-6) {
                return Err(Error::NotTotallyReal { index: k });
            }
        }
        Ok(TotallyRealLoop { frames })
    }

    pub fn frames(&self) -> &[[C2; 2]] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut frames = self.frames.clone();
        frames[1..].reverse();
        TotallyRealLoop { frames }
    }

    /// Concatenation of two loops with a common base frame.
    pub fn concat(&self, other: &Self) -> Self {
        let mut frames = self.frames.clone();
        frames.extend_from_slice(&other.frames);
        TotallyRealLoop { frames }
    }

    /// `ℝe^{idθ} × ℝ` over `m` samples.
    pub fn model(d: i32, m: usize) -> Self {
        let frames = fft::angles(m)
            .into_iter()
            .map(|t| [C2::new(crate::c2::cis(d as f64 * t), c(0.0, 0.0)), C2::new(c(0.0, 0.0), c(1.0, 0.0))])
            .collect();
        TotallyRealLoop { frames }
    }
}

/// Winding of `det² / |det|²` around the loop.
pub fn maslov_index(l: &TotallyRealLoop) -> Result<i32> {
    let sq: Vec<C> = l
        .frames
        .iter()
        .map(|f| {
            let d = f[0].z * f[1].w - f[0].w * f[1].z;
            let d2 = d * d;
            d2 / d2.norm()
        })
        .collect();
    let n = sq.len();
    let mut total = 0.0;
    for k in 0..n {
        let step = (sq[(k + 1) % n] / sq[k]).arg();
        if step.abs() > PI / 2.0 {
            return Err(Error::Resolution { nyquist_fraction: step.abs() / PI });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i32)
}

pub fn fredholm_index(mu_plus: i32, mu_minus: i32, chi: i32) -> i32 {
    mu_plus + mu_minus + 2 * chi
}

/// Index after removing the reparametrizations: `μ₊ + μ₋ - χ + 1`.
pub fn reduced_index(mu_plus: i32, mu_minus: i32, chi: i32) -> i32 {
    mu_plus + mu_minus + (2 - 3) * chi + 1
}

/// `F± = K ⊕ π_F du±(Tσ)`, in the ball chart for the upper side and in the
/// ℂ² of the curve for the lower side, i.e. with the lower chart values
/// divided by the multiplier `⟨y₊, y₋⟩` of `u₋` on σ. Both are traversed in
/// the direction of σ.
pub fn boundary_condition_loops(b: &FoldedMapBundle) -> Result<(TotallyRealLoop, TotallyRealLoop)> {
    let s = SigmaData::from_bundle(b);
    let plus = (0..s.len()).map(|j| [s.y_plus[j], pi_f_raw(s.y_plus[j], s.dth_plus[j])]).collect();
    let minus = (0..s.len())
        .map(|j| {
            let f = s.y_plus[j].herm(s.y_minus[j]);
            let inv = f.conj() / f.norm_sqr();
            [s.y_minus[j].cmul(inv), pi_f_raw(s.y_minus[j], s.dth_minus[j]).cmul(inv)]
        })
        .collect();
    Ok((TotallyRealLoop::new(plus)?, TotallyRealLoop::new(minus)?))
}

/// As [`boundary_condition_loops`] but with the lower loop in the lower ball
/// chart, traversed as the boundary of `Σ₋`.
pub fn boundary_condition_loops_chart(b: &FoldedMapBundle) -> Result<(TotallyRealLoop, TotallyRealLoop)> {
    let (plus, _) = boundary_condition_loops(b)?;
    let s = SigmaData::from_bundle(b);
    let m = s.len();
    let minus = (0..m)
        .map(|k| {
            let j = (m - k) % m;
            [s.y_minus[j], pi_f_raw(s.y_minus[j], s.dth_minus[j])]
        })
        .collect();
    Ok((plus, TotallyRealLoop::new(minus)?))
}

/// A section of `F ⊕ E` along σ: `ξ^F` in the frame `e`, and the
/// coefficients of `∂r` and `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySectionEF {
    pub xi_f: Vec<C>,
    pub zeta_k: Vec<f64>,
    pub zeta_l: Vec<f64>,
}

impl BoundarySectionEF {
    pub fn zeros(m: usize) -> Self {
        BoundarySectionEF { xi_f: alloc::vec![c(0.0, 0.0); m], zeta_k: alloc::vec![0.0; m], zeta_l: alloc::vec![0.0; m] }
    }

    pub fn len(&self) -> usize {
        self.xi_f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi_f.is_empty()
    }

    fn check(&self) -> Result<()> {
        let m = self.len();
        if self.zeta_k.len() != m || self.zeta_l.len() != m {
            return Err(Error::BoundaryMismatch("section components differ in length"));
        }
        Ok(())
    }

    pub fn axpy(&self, s: f64, o: &Self) -> Self {
        BoundarySectionEF {
            xi_f: self.xi_f.iter().zip(&o.xi_f).map(|(a, b)| a + b * s).collect(),
            zeta_k: self.zeta_k.iter().zip(&o.zeta_k).map(|(a, b)| a + b * s).collect(),
            zeta_l: self.zeta_l.iter().zip(&o.zeta_l).map(|(a, b)| a + b * s).collect(),
        }
    }

    pub fn sup_dist(&self, o: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for j in 0..self.len() {
            d = d
                .max((self.xi_f[j] - o.xi_f[j]).norm())
                .max((self.zeta_k[j] - o.zeta_k[j]).abs())
                .max((self.zeta_l[j] - o.zeta_l[j]).abs());
        }
        d
    }

    /// Frame coordinates of chart tangent vectors `vecs` at the equator
    /// points `base` of the upper (`upper = true`) or lower ball.
    pub fn from_chart(base: &[C2], vecs: &[C2], upper: bool) -> Self {
        let sign = if upper { 1.0 } else { -1.0 };
        let mut out = BoundarySectionEF::zeros(base.len());
        for j in 0..base.len() {
            let (p, v) = (base[j], vecs[j]);
            out.zeta_k[j] = sign * p.herm(v).re / (2.0 * PI);
            out.zeta_l[j] = alpha_raw(p, v);
            out.xi_f[j] = contact_generator(p).herm(v);
        }
        out
    }
}

/// Frame data of `B` along σ.
#[derive(Debug, Clone)]
pub struct BOperatorData {
    pub af: Vec<C>,
    pub a: Vec<f64>,
    /// `f(e)` and `f(ie)` at each sample.
    pub f_e: Vec<f64>,
    pub f_ie: Vec<f64>,
    pub radius: f64,
}

/// `|π_F du₊(∂θ)|` below which `f` is taken as the limit 0 when `λ` vanishes.
const F_DEGENERATE: f64 = 1e-12;

impl BOperatorData {
    pub fn from_bundle(b: &FoldedMapBundle) -> Result<Self> {
        let s = SigmaData::from_bundle(b);
        let m = s.len();
        let (lt, ljt) = s.lambda();
        let (up, um) = s.alpha_dtheta();
        let mut af = Vec::with_capacity(m);
        let mut a = Vec::with_capacity(m);
        let mut f_e = Vec::with_capacity(m);
        let mut f_ie = Vec::with_capacity(m);
        for j in 0..m {
            let phase = s.y_plus[j].herm(s.y_minus[j]);
            let phase = phase / phase.norm();
            af.push(phase * phase);
            if up[j].abs() < 1e-10 {
                return Err(Error::NonTransverse { index: j, value: up[j] });
            }
            a.push(-um[j] / up[j]);
            let p = contact_generator(s.y_plus[j]).herm(s.dth_plus[j]);
            if p.norm() < F_DEGENERATE {
                if lt[j].abs().max(ljt[j].abs()) > 1e-9 {
                    return Err(Error::NonImmersed { min: p.norm() });
                }
                f_e.push(0.0);
                f_ie.push(0.0);
                continue;
            }
            let fq = |q: C| q.re * lt[j] + q.im * ljt[j];
            f_e.push(fq(c(1.0, 0.0) / p));
            f_ie.push(fq(c(0.0, 1.0) / p));
        }
        Ok(BOperatorData { af, a, f_e, f_ie, radius: b.v_pair.v_plus.rho })
    }

    /// Constant data at `m` samples.
    pub fn uniform(m: usize, af: C, a: f64, f_e: f64, f_ie: f64) -> Self {
        BOperatorData {
            af: alloc::vec![af; m],
            a: alloc::vec![a; m],
            f_e: alloc::vec![f_e; m],
            f_ie: alloc::vec![f_ie; m],
            radius: 1.0,
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `(f(χ), f(Jχ))` for `χ = x·e` at sample `j`.
    pub fn f_pair(&self, j: usize, x: C) -> (f64, f64) {
        let (fe, fie) = (self.f_e[j], self.f_ie[j]);
        (x.re * fe + x.im * fie, x.re * fie - x.im * fe)
    }
}

#[derive(Debug, Clone)]
pub struct BOperator {
    data: BOperatorData,
}

pub fn build_b(data: BOperatorData) -> Result<BOperator> {
    let m = data.len();
    if !fft::is_pow2(m) || data.af.len() != m || data.f_e.len() != m || data.f_ie.len() != m {
        return Err(Error::BoundaryMismatch("operator data must share a power-of-two sample count"));
    }
    for (k, a) in data.a.iter().enumerate() {
        if !(*a > 0.0) {
            return Err(Error::SignViolation { index: k, value: *a });
        }
    }
    for (k, z) in data.af.iter().enumerate() {
        if !(z.norm() > 0.0) {
            return Err(Error::NonTransverse { index: k, value: z.norm() });
        }
    }
    Ok(BOperator { data })
}

impl BOperator {
    pub fn data(&self) -> &BOperatorData {
        &self.data
    }

    pub fn apply(&self, xi: &BoundarySectionEF) -> Result<BoundarySectionEF> {
        xi.check()?;
        let d = &self.data;
        let m = d.len();
        if xi.len() != m {
            return Err(Error::BoundaryMismatch("section and operator sample counts differ"));
        }
        let mut eta = Vec::with_capacity(m);
        let mut out = BoundarySectionEF::zeros(m);
        for j in 0..m {
            let (fx, fjx) = d.f_pair(j, xi.xi_f[j]);
            eta.push((1.0 - d.a[j]) * xi.zeta_k[j] - fx);
            out.xi_f[j] = d.af[j] * xi.xi_f[j];
            out.zeta_k[j] = d.a[j] * xi.zeta_k[j];
            out.zeta_l[j] = -xi.zeta_l[j] - fjx;
        }
        let (_, t) = solve_qtilde(&BoundaryLoopSamples::new(eta, d.radius)?)?;
        for j in 0..m {
            out.zeta_l[j] += t.values[j];
        }
        Ok(out)
    }
}

/// Boundary trace of the deformation of `v₋` built from `ξ̂` through the
/// Neumann function `g` and `ξ₋ = A^F χ - (f(Jχ) + α(ξ̂) + g) R`, compared
/// with `B(ξ̂)`.
pub fn graph_check_ddelta_z(op: &BOperator, xi_hat: &BoundarySectionEF) -> Result<f64> {
    xi_hat.check()?;
    let d = op.data();
    let m = d.len();
    if xi_hat.len() != m {
        return Err(Error::BoundaryMismatch("section and operator sample counts differ"));
    }
    if xi_hat.zeta_k.iter().any(|k| k.abs() > 1e-12) {
        return Err(Error::Domain("section is not tangent to the fold"));
    }
    let fx: Vec<f64> = (0..m).map(|j| d.f_pair(j, xi_hat.xi_f[j]).0).collect();
    BoundaryLoopSamples::new(fx.clone(), d.radius)?.check_resolution()?;
    let data = fft::derivative_real(&fft::band_limit_real(&fx));
    let g = solve_neumann_vanishing(
        &BoundaryLoopSamples::new(data, d.radius)?,
        DomainKind::ExteriorPunctured { rho: d.radius },
    )?;
    let g = g.trace(d.radius, m);
    let mut recipe = BoundarySectionEF::zeros(m);
    for j in 0..m {
        let (_, fjx) = d.f_pair(j, xi_hat.xi_f[j]);
        recipe.xi_f[j] = d.af[j] * xi_hat.xi_f[j];
        recipe.zeta_l[j] = -(fjx + xi_hat.zeta_l[j] + g[j]);
    }
    Ok(op.apply(xi_hat)?.sup_dist(&recipe))
}

pub type SymbolMatrix = Matrix4<C>;

fn rot(s: f64) -> Matrix2<f64> {
    Matrix2::new(0.0, -s, s, 0.0)
}

fn complexify(m: &Matrix4<f64>) -> SymbolMatrix {
    m.map(|x| c(x, 0.0))
}

/// `J₊` (`side = 1`) or `J₋` (`side = -1`) in the frame `(∂r, R, e, ie)`.
pub fn j_frame(side: f64) -> Matrix4<f64> {
    let mut j = Matrix4::zeros();
    j.fixed_view_mut::<2, 2>(0, 0).copy_from(&rot(side));
    j.fixed_view_mut::<2, 2>(2, 2).copy_from(&rot(1.0));
    j
}

/// Principal symbol of `B` at one sample for the covector sign `sign`.
pub fn principal_symbol_b(af: C, a: f64, f_e: f64, f_ie: f64, sign: f64) -> SymbolMatrix {
    let mut pf = Matrix4::<f64>::zeros();
    pf[(2, 2)] = 1.0;
    pf[(3, 3)] = 1.0;
    let pe = Matrix4::<f64>::identity() - pf;
    let mut pk = Matrix4::<f64>::zeros();
    pk[(0, 0)] = 1.0;
    let mut a_f = Matrix4::<f64>::zeros();
    a_f.fixed_view_mut::<2, 2>(2, 2).copy_from(&Matrix2::new(af.re, -af.im, af.im, af.re));
    let mut a_e = Matrix4::<f64>::zeros();
    a_e[(0, 0)] = 1.0;
    a_e[(1, 1)] = -1.0;
    // f_ℂ(χ) = f(χ)∂r - f(Jχ)R
    let mut f_c = Matrix4::<f64>::zeros();
    f_c[(0, 2)] = f_e;
    f_c[(0, 3)] = f_ie;
    f_c[(1, 2)] = -f_ie;
    f_c[(1, 3)] = f_e;
    let i = c(0.0, sign);
    let jm = complexify(&j_frame(-1.0));
    let id = SymbolMatrix::identity();
    let cc = -(id - jm * i) * complexify(&(pk * a_e));
    complexify(&(a_f * pf + a_e * (pe - f_c * pf))) + cc * complexify(&(pe * (1.0 - a) - f_c * pf))
}

/// Orthonormal basis of the range of `(I + i·t·J)/2`.
fn range_basis(j: &Matrix4<f64>, t: f64) -> SMatrix<C, 4, 2> {
    let p = (SymbolMatrix::identity() + complexify(j) * c(0.0, t)) * c(0.5, 0.0);
    let mut cols: Vec<nalgebra::Vector4<C>> = Vec::new();
    for k in 0..4 {
        let mut v = p.column(k).into_owned();
        for b in &cols {
            let proj = b.dotc(&v);
            v -= b * proj;
        }
        let n = v.norm();
        if n > 1e-8 && cols.len() < 2 {
            cols.push(v / c(n, 0.0));
        }
    }
    SMatrix::<C, 4, 2>::from_columns(&cols)
}

/// `r = [-b·V₊ | W₋]` on the range of the Calderón symbol.
pub fn restricted_symbol(b: &SymbolMatrix, sign: f64) -> SymbolMatrix {
    let v = range_basis(&j_frame(1.0), -sign);
    let w = range_basis(&j_frame(-1.0), sign);
    let bv = -(b * v);
    let mut r = SymbolMatrix::zeros();
    r.fixed_view_mut::<4, 2>(0, 0).copy_from(&bv);
    r.fixed_view_mut::<4, 2>(0, 2).copy_from(&w);
    r
}

fn sigma_min(r: &SymbolMatrix) -> f64 {
    r.singular_values().min()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticityReport {
    pub sigma_min: f64,
    /// Sample index of the minimum.
    pub location: usize,
    pub pass: bool,
}

pub fn check_ellipticity(data: &BOperatorData) -> EllipticityReport {
    let mut best = (f64::INFINITY, 0);
    for j in 0..data.len() {
        for sign in [1.0, -1.0] {
            let b = principal_symbol_b(data.af[j], data.a[j], data.f_e[j], data.f_ie[j], sign);
            let s = sigma_min(&restricted_symbol(&b, sign));
            if s < best.0 {
                best = (s, j);
            }
        }
    }
    EllipticityReport { sigma_min: best.0, location: best.1, pass: best.0 > 1e-8 }
}

/// `min (1 + a t - t)` over samples and homotopy parameters.
pub fn symbol_homotopy_bt(a: &[f64], ts: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for &x in a {
        for &t in ts {
            best = best.min(1.0 + x * t - t);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexCertificate {
    pub sigma_min: f64,
    pub a_min: f64,
    pub homotopy_min: f64,
    pub maslov_plus: i32,
    pub maslov_minus: i32,
    pub index: i32,
    pub reduced_index: i32,
    /// False when `π_F du±` vanishes somewhere on σ and the loops are replaced
    /// by their model `ℝz^d × ℝ`.
    pub loops_from_frames: bool,
    pub ellipticity_pass: bool,
}

/// Euler characteristic of the sphere domain.
pub const CHI_SPHERE: i32 = 2;

pub fn certificate(b: &FoldedMapBundle) -> Result<IndexCertificate> {
    let data = BOperatorData::from_bundle(b)?;
    let ell = check_ellipticity(&data);
    let a_min = data.a.iter().copied().fold(f64::INFINITY, f64::min);
    let ts: Vec<f64> = (0..=64).map(|k| k as f64 / 64.0).collect();
    let homotopy_min = symbol_homotopy_bt(&data.a, &ts);
    let (mp, mm, from_frames) = match boundary_condition_loops(b) {
        Ok((p, q)) => (maslov_index(&p)?, maslov_index(&q)?, true),
        Err(Error::NotTotallyReal { .. }) => {
            let model = maslov_index(&TotallyRealLoop::model(b.degree as i32, b.m()))?;
            (model, model, false)
        }
        Err(e) => return Err(e),
    };
    Ok(IndexCertificate {
        sigma_min: ell.sigma_min,
        a_min,
        homotopy_min,
        maslov_plus: mp,
        maslov_minus: mm,
        index: fredholm_index(mp, mm, CHI_SPHERE),
        reduced_index: reduced_index(mp, mm, CHI_SPHERE),
        loops_from_frames: from_frames,
        ellipticity_pass: ell.pass,
    })
}

/// Frame coordinates of `du₊(η)` and `du₋(η)` for `η = ∂θ` (`normal = false`)
/// or `η = j∂θ = -r∂r` on σ.
pub fn gauge_sections(b: &FoldedMapBundle, normal: bool) -> (BoundarySectionEF, BoundarySectionEF) {
    let s = SigmaData::from_bundle(b);
    let pick = |t: &[C2], r: &[C2]| -> Vec<C2> { if normal { r.iter().map(|v| -*v).collect() } else { t.to_vec() } };
    (
        BoundarySectionEF::from_chart(&s.y_plus, &pick(&s.dth_plus, &s.dr_plus), true),
        BoundarySectionEF::from_chart(&s.y_minus, &pick(&s.dth_minus, &s.dr_minus), false),
    )
}
