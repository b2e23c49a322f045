//! Explicit folded holomorphic maps into the folded 4-sphere: the degree-1
//! family, its compactification, and the degree-d construction from a
//! rational curve.
//!
//! Chart grids store the ball-chart value `y` of `u±`. `u₊` is sampled in
//! `ξ = z/ρ` on the closed unit disk and `u₋` in `ζ = ρ/z`, so σ is the outer
//! ring of both and the `ζ`-angle `φ` sits over the `z`-angle `-φ`.

use crate::c2::{c, cis, C, C2};
use crate::cheb::Cheb;
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{
    alpha_raw, hopf_project, hopf_raw, omega_energy, CharacteristicParam, FoldPoint, S2Point, Side,
};
use crate::grid::PolarSamples;
use crate::harmonic::{solve_f_degree_d, BoundaryLoopSamples, LaurentField};
use crate::tunneling::{
    check_conjugate, immersion_min, marker_point, ConjugatePair, ConjugateReport, CylinderGrid, TunnelMapSample,
};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest `|c|` accepted by [`degree1_family`].
pub const C_GUARD: f64 = 0.99;

/// Radial nodes of the interior chart grids.
pub const DISK_NODES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliParam {
    pub c: C,
    pub m: C,
}

impl ModuliParam {
    pub fn new(c: C, m: C) -> Result<Self> {
        if !(c.norm() < 1.0) {
            return Err(Error::Domain("|c| must be < 1"));
        }
        if ((m.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::Domain("m must be a unit complex number"));
        }
        Ok(ModuliParam { c, m })
    }

    pub fn a(&self) -> f64 {
        (1.0 - self.c.norm_sqr()).sqrt()
    }
}

/// `w(z) = (p(z), q(z))`, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveInput {
    pub p: Vec<C>,
    pub q: Vec<C>,
}

fn trimmed_degree(v: &[C]) -> Option<usize> {
    v.iter().rposition(|a| a.norm() > 0.0)
}

fn horner(v: &[C], z: C) -> C {
    v.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * z + a)
}

impl CurveInput {
    pub fn new(p: Vec<C>, q: Vec<C>) -> Result<Self> {
        let curve = CurveInput { p, q };
        curve.degree()?;
        Ok(curve)
    }

    pub fn degree(&self) -> Result<u32> {
        let dp = trimmed_degree(&self.p);
        let dq = trimmed_degree(&self.q);
        match (dp, dq) {
            (Some(d), dq) if d >= 1 && dq.map_or(true, |e| e <= d) => Ok(d as u32),
            _ => Err(Error::Domain("curve needs max(deg p, deg q) = deg p >= 1")),
        }
    }

    pub fn eval(&self, z: C) -> C2 {
        C2::new(horner(&self.p, z), horner(&self.q, z))
    }

    /// `z^{-d} w(z)` written in `ζ = ρ/z`: `Σ p_k ρ^{k-d} ζ^{d-k}`.
    fn reduced(&self, d: usize, rho: f64, zeta: C) -> C2 {
        let part = |v: &[C]| {
            let mut s = c(0.0, 0.0);
            let mut pow = c(1.0, 0.0);
            for k in (0..=d).rev() {
                if let Some(a) = v.get(k) {
                    s += a * pow * rho.powi(k as i32 - d as i32);
                }
                pow *= zeta;
            }
            s
        };
        C2::new(part(&self.p), part(&self.q))
    }

    /// `∮ |w|²` over the circle of radius `ρ`, divided by `2π`.
    fn mean_sq(&self, rho: f64) -> f64 {
        let s = |v: &[C]| v.iter().enumerate().map(|(k, a)| a.norm_sqr() * rho.powi(2 * k as i32)).sum::<f64>();
        s(&self.p) + s(&self.q)
    }
}

/// Homology label of one side: limit characteristic and degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomologyLabel {
    pub x: CharacteristicParam,
    pub degree: i32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub u_plus: f64,
    pub u_minus: f64,
    pub v_plus: f64,
    pub v_minus: f64,
}

#[derive(Debug, Clone)]
pub struct FoldedMapBundle {
    /// Chart values of `u₊` over `ξ = z/ρ`, `|ξ| ≤ 1`.
    pub u_plus: PolarSamples,
    /// Chart values of `u₋` over `ζ = ρ/z`, `|ζ| ≤ 1`.
    pub u_minus: PolarSamples,
    pub v_pair: ConjugatePair,
    /// Radius of σ in the `z` coordinate of `Σ±`.
    pub rho_sigma: f64,
    /// `ψ(z) = psi_scale·z` carries `Σ₋`'s exterior to the domain of `v±`.
    pub psi_scale: f64,
    /// `u₊*det ω` on the chart grid, then `u₋*det ω`.
    pub tau_plus: Vec<f64>,
    pub tau_minus: Vec<f64>,
    pub labels: [HomologyLabel; 2],
    pub energies: EnergyRecord,
    pub tracking_point: C2,
    pub degree: u32,
}

impl FoldedMapBundle {
    pub fn m(&self) -> usize {
        self.u_plus.m
    }
}

fn disk_grid(m: usize, f: impl Fn(C) -> C2) -> PolarSamples {
    PolarSamples::from_fn(Cheb::new(DISK_NODES - 1, 0.0, 1.0), m, |r, t| f(cis(t) * r))
}

/// Signed `det ω` of the chart point `y` of the given hemisphere.
fn tau_of(side: Side, y: C2) -> f64 {
    let n = y.norm_sqr();
    side.sign() * (1.0 - n) / (1.0 + n) / (PI * PI)
}

/// ω-energy of `σ±∘y` over a chart grid; uses only the ℂ² projection.
fn chart_energy(y: &PolarSamples) -> Result<f64> {
    let proj = y.map(|v| v.scale(2.0 / (1.0 + v.norm_sqr())));
    omega_energy(&proj)
}

fn check_m(m: usize) -> Result<()> {
    if !fft::is_pow2(m) || m < 16 {
        return Err(Error::Domain("angular resolution must be a power of two >= 16"));
    }
    Ok(())
}

/// The degree-1 family with parameters `(c, m)` at angular resolution `m_res`.
pub fn degree1_family(param: ModuliParam, m_res: usize) -> Result<FoldedMapBundle> {
    if param.c.norm() > C_GUARD {
        return Err(Error::Guard("|c| too close to 1; use compactification_sample"));
    }
    check_m(m_res)?;
    let (cc, m) = (param.c, param.m);
    let a = param.a();
    let x = CharacteristicParam::new(m)?;
    let u_plus = disk_grid(m_res, |z| C2::new(m * z * a, m * cc));
    let u_minus = disk_grid(m_res, |zeta| C2::new(m * zeta * a, m * cc * zeta * zeta));
    let grid = CylinderGrid::new(m_res);
    let v_plus = TunnelMapSample::from_fn(a, grid, x, 1, |z| C2::new(m * z, m * cc))?;
    // written in a/z to stay bounded on the outer rings
    let v_minus = TunnelMapSample::from_fn(a, grid, x, -1, |z| {
        let zeta = c(a, 0.0) / z;
        C2::new(m * zeta * a, m * cc * zeta * zeta)
    })?;
    let g = fft::angles(m_res).into_iter().map(|t| -t / PI).collect();
    let pair = ConjugatePair {
        v_plus,
        v_minus,
        x,
        g_function: BoundaryLoopSamples { values: g, radius: a, positive: true },
        f_scale: BoundaryLoopSamples { values: alloc::vec![1.0; m_res], radius: a, positive: true },
    };
    assemble(u_plus, u_minus, pair, 1.0, a, C2::new(m * a, m * cc), 1)
}

fn assemble(
    u_plus: PolarSamples,
    u_minus: PolarSamples,
    pair: ConjugatePair,
    rho_sigma: f64,
    psi_scale: f64,
    tracking_point: C2,
    degree: u32,
) -> Result<FoldedMapBundle> {
    let tau_plus = u_plus.values.iter().map(|y| tau_of(Side::Plus, *y)).collect();
    let tau_minus = u_minus.values.iter().map(|y| tau_of(Side::Minus, *y)).collect();
    let energies = EnergyRecord {
        u_plus: chart_energy(&u_plus)?,
        u_minus: chart_energy(&u_minus)?,
        v_plus: omega_energy(&pair.v_plus.samples)?,
        v_minus: omega_energy(&pair.v_minus.samples)?,
    };
    let label = HomologyLabel { x: pair.x, degree: degree as i32 };
    Ok(FoldedMapBundle {
        u_plus,
        u_minus,
        v_pair: pair,
        rho_sigma,
        psi_scale,
        tau_plus,
        tau_minus,
        labels: [label, label],
        energies,
        tracking_point,
        degree,
    })
}

/// Values and derivatives of `u±` along σ, all indexed by the `z`-angle
/// `θ_j = 2πj/M` and differentiated in `z`-polar coordinates.
#[derive(Debug, Clone)]
pub struct SigmaData {
    pub y_plus: Vec<C2>,
    pub dth_plus: Vec<C2>,
    pub dr_plus: Vec<C2>,
    pub y_minus: Vec<C2>,
    pub dth_minus: Vec<C2>,
    pub dr_minus: Vec<C2>,
}

impl SigmaData {
    pub fn from_bundle(b: &FoldedMapBundle) -> Self {
        let m = b.m();
        let outer = |s: &PolarSamples, d: &[C2]| {
            let i = s.rings() - 1;
            d[i * m..(i + 1) * m].to_vec()
        };
        let up = &b.u_plus;
        let um = &b.u_minus;
        let (drp, dtp) = (up.d_radial(), up.d_angular());
        let (drm, dtm) = (um.d_radial(), um.d_angular());
        let y_plus = outer(up, &up.values);
        let dth_plus = outer(up, &dtp);
        let dr_plus = outer(up, &drp);
        let ym = outer(um, &um.values);
        let tm = outer(um, &dtm);
        let rm = outer(um, &drm);
        let flip = |j: usize| (m - j) % m;
        SigmaData {
            y_plus,
            dth_plus,
            dr_plus,
            y_minus: (0..m).map(|j| ym[flip(j)]).collect(),
            dth_minus: (0..m).map(|j| -tm[flip(j)]).collect(),
            dr_minus: (0..m).map(|j| -rm[flip(j)]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.y_plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y_plus.is_empty()
    }

    /// `u₊*α(∂θ)` and `u₋*α(∂θ)`.
    pub fn alpha_dtheta(&self) -> (Vec<f64>, Vec<f64>) {
        let p = self.y_plus.iter().zip(&self.dth_plus).map(|(y, v)| alpha_raw(*y, *v)).collect();
        let q = self.y_minus.iter().zip(&self.dth_minus).map(|(y, v)| alpha_raw(*y, *v)).collect();
        (p, q)
    }

    /// `λ(∂θ)` and `λ(j∂θ)` for `λ = u₊*α∘j + u₋*α∘j`, with `j∂θ = -r∂r` on σ.
    pub fn lambda(&self) -> (Vec<f64>, Vec<f64>) {
        let (p, q) = self.alpha_dtheta();
        let lt = (0..self.len())
            .map(|j| -alpha_raw(self.y_plus[j], self.dr_plus[j]) - alpha_raw(self.y_minus[j], self.dr_minus[j]))
            .collect();
        let ljt = p.iter().zip(&q).map(|(a, b)| -(a + b)).collect();
        (lt, ljt)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub holomorphy_plus: f64,
    pub holomorphy_minus: f64,
    /// Largest wrong-signed `det ω` over both chart grids.
    pub tau_sign: f64,
    /// Largest `|det ω|` on σ.
    pub tau_boundary: f64,
    /// Largest `|y| - 1` on `u₋`'s grid; positive means it leaves the lower ball.
    pub lower_ball_excess: f64,
    pub boundary_plus: f64,
    pub boundary_minus: f64,
    pub conjugate: ConjugateReport,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.holomorphy_plus,
            self.holomorphy_minus,
            self.tau_sign,
            self.tau_boundary,
            self.lower_ball_excess.max(0.0),
            self.boundary_plus,
            self.boundary_minus,
            self.conjugate.max_residual(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `sup |∂_r y + (i/r) ∂_θ y|` off the center.
fn holomorphy_residual(y: &PolarSamples) -> f64 {
    let m = y.m;
    let (dr, dt) = (y.d_radial(), y.d_angular());
    let mut worst: f64 = 0.0;
    for (i, &r) in y.radial.nodes.iter().enumerate() {
        if r < 1e-12 {
            continue;
        }
        for j in 0..m {
            let k = i * m + j;
            let res = dr[k] + dt[k].cmul(c(0.0, 1.0 / r));
            worst = worst.max(res.norm());
        }
    }
    worst
}

pub fn verify_folded_holomorphic(b: &FoldedMapBundle, tol: f64) -> VerificationReport {
    let m = b.m();
    let tau_sign = b
        .tau_plus
        .iter()
        .map(|t| -t)
        .chain(b.tau_minus.iter().copied())
        .fold(0.0f64, f64::max);
    let last = |s: &PolarSamples| s.rings() - 1;
    let ip = last(&b.u_plus);
    let im = last(&b.u_minus);
    let tau_boundary = b.tau_plus[ip * m..]
        .iter()
        .chain(&b.tau_minus[im * m..])
        .fold(0.0f64, |a, t| a.max(t.abs()));
    let lower_ball_excess = b.u_minus.values.iter().fold(f64::NEG_INFINITY, |a, y| a.max(y.norm() - 1.0));
    let vp = b.v_pair.v_plus.boundary();
    let vm = b.v_pair.v_minus.boundary();
    let sp = b.u_plus.ring(ip);
    let sm = b.u_minus.ring(im);
    let mut boundary_plus: f64 = 0.0;
    let mut boundary_minus: f64 = 0.0;
    for j in 0..m {
        boundary_plus = boundary_plus.max(sp[j].dist(vp[j]));
        boundary_minus = boundary_minus.max(sm[(m - j) % m].dist(vm[j]));
    }
    let conjugate = check_conjugate(&b.v_pair);
    let mut rep = VerificationReport {
        holomorphy_plus: holomorphy_residual(&b.u_plus),
        holomorphy_minus: holomorphy_residual(&b.u_minus),
        tau_sign,
        tau_boundary,
        lower_ball_excess,
        boundary_plus,
        boundary_minus,
        conjugate,
        tolerance: tol,
        pass: false,
    };
    rep.pass = rep.conjugate.multiplicity_defect == 0 && rep.max_residual() < tol;
    rep
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactificationRow {
    pub c: C,
    pub e_uplus: f64,
    pub e_uminus: f64,
    pub e_total: f64,
    /// Bubbling limit `(0, m c/|c|)` on the characteristic through `(0, 1)`,
    /// or `None` at `c = 0`.
    pub limit: Option<C2>,
}

/// Chart energies of the family along a path of parameters.
pub fn compactification_sample(path: &[C], m: C, m_res: usize) -> Result<Vec<CompactificationRow>> {
    check_m(m_res)?;
    path.iter()
        .map(|&cc| {
            let p = ModuliParam::new(cc, m)?;
            let a = p.a();
            let e_uplus = chart_energy(&disk_grid(m_res, |z| C2::new(m * z * a, m * cc)))?;
            let e_uminus = chart_energy(&disk_grid(m_res, |zeta| C2::new(m * zeta * a, m * cc * zeta * zeta)))?;
            let limit = if cc.norm() > 0.0 { Some(C2::new(c(0.0, 0.0), m * cc / cc.norm())) } else { None };
            Ok(CompactificationRow { c: cc, e_uplus, e_uminus, e_total: e_uplus + e_uminus, limit })
        })
        .collect()
}

/// Image of the tracking point `(m a, m c)` under the Hopf map.
pub fn hopf_reduce(param: ModuliParam) -> S2Point {
    let a = param.a();
    let p = C2::new(param.m * a, param.m * param.c).normalized();
    match FoldPoint::new(p.z, p.w) {
        Ok(fp) => hopf_project(fp),
        Err(_) => S2Point { n: hopf_raw(p) },
    }
}

/// Radius of the circle `{|w| = 1}` and the certified circularity defect.
pub fn fold_radius(curve: &CurveInput) -> Result<(f64, f64)> {
    if curve.mean_sq(0.0) >= 1.0 {
        return Err(Error::TierViolation("|w| >= 1 at the origin; the fold is not a centered circle"));
    }
    let mut hi = 1.0;
    while curve.mean_sq(hi) < 1.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(Error::TierViolation("no fold circle found"));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if curve.mean_sq(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * hi {
            break;
        }
    }
    let rho = 0.5 * (lo + hi);
    let n = 1024;
    let defect = (0..n)
        .map(|j| (curve.eval(cis(2.0 * PI * j as f64 / n as f64) * rho).norm() - 1.0).abs())
        .fold(0.0f64, f64::max);
    if defect > 1e-8 {
        return Err(Error::TierViolation("the fold {|w| = 1} is not a centered circle"));
    }
    Ok((rho, defect))
}

/// Folded holomorphic map built from a rational curve whose fold `{|w| = 1}`
/// is a centered circle, with `m` fixing the limit characteristic.
pub fn construct_degree_d(curve: &CurveInput, m: C, m_res: usize) -> Result<FoldedMapBundle> {
    check_m(m_res)?;
    let d = curve.degree()?;
    if trimmed_degree(&curve.q).map_or(false, |e| e as u32 >= d) {
        return Err(Error::Domain("construction needs deg q < deg p"));
    }
    let x = CharacteristicParam::new(m)?;
    let (rho, _) = fold_radius(curve)?;
    let du = d as usize;
    let grid = CylinderGrid::new(m_res);
    // exact in z^d times a polynomial in ζ = ρ/z, so the outer rings stay accurate
    let v_plus = TunnelMapSample::from_cylinder(rho, grid, x, d as i32, |s, t| {
        let zeta = cis(-t) * (-s).exp();
        curve.reduced(du, rho, zeta).cmul(cis(d as f64 * t))
    })?;
    let imm = immersion_min(&v_plus, 1.0);
    if !(imm > 1e-6) {
        return Err(Error::NonImmersed { min: imm });
    }
    let ds = v_plus.samples.d_radial();
    let beta = BoundaryLoopSamples::new(v_plus.alpha_j_dtheta(&ds, 0), rho)?;
    let marker = marker_point(&v_plus)?;
    let l = solve_f_degree_d(&beta, marker, x, d)?;
    let u_plus = disk_grid(m_res, |xi| curve.eval(xi * rho));
    if u_plus.values.iter().any(|y| y.norm() > 1.0 + 1e-9) {
        return Err(Error::TierViolation("|w| exceeds 1 inside the fold circle"));
    }
    let lower = |zeta: C| lower_chart(curve, du, rho, &l, zeta);
    let u_minus = disk_grid(m_res, lower);
    let v_minus = TunnelMapSample::from_cylinder(rho, grid, x, -(d as i32), |s, t| lower(cis(-t) * (-s).exp()))?;
    let g: Vec<f64> = v_plus
        .boundary()
        .iter()
        .zip(v_minus.boundary())
        .map(|(p, q)| p.herm(*q).arg() / (2.0 * PI))
        .collect();
    let pair = ConjugatePair {
        v_plus,
        v_minus,
        x,
        g_function: BoundaryLoopSamples { values: g, radius: rho, positive: true },
        f_scale: BoundaryLoopSamples { values: alloc::vec![1.0; m_res], radius: rho, positive: true },
    };
    let track = u_plus.ring(u_plus.rings() - 1)[0];
    assemble(u_plus, u_minus, pair, rho, 1.0, track, d)
}

/// `y₋(ζ) = ζ^d (P̃(ζ), Q̃(ζ)) e^{H(ζ)}`, the lower chart value of `f·w` at
/// `z = ρ/ζ`.
fn lower_chart(curve: &CurveInput, d: usize, rho: f64, l: &LaurentField, zeta: C) -> C2 {
    let red = curve.reduced(d, rho, zeta);
    let h = l.eval_inverse_variable(zeta).exp();
    red.cmul(zeta.powu(d as u32) * h * rho.powi(d as i32))
}
