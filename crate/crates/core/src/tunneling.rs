//! Tunneling maps on the exterior of a circle, sampled in the cylinder
//! coordinate `s = ln(r/ρ) ∈ [0, S]`, and the conjugacy between two of them.

use crate::c2::{cis, C, C2, I};
use crate::cheb::Cheb;
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{alpha_raw, hopf_raw, omega_form, pi_f_raw, CharacteristicParam, FoldPoint};
use crate::grid::PolarSamples;
use crate::harmonic::{boundary_period, solve_neumann_vanishing, BoundaryLoopSamples, DomainKind};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Radial resolution and extent of the cylinder grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderGrid {
    pub nodes: usize,
    pub s_max: f64,
    pub m: usize,
}

impl CylinderGrid {
    pub fn new(m: usize) -> Self {
        CylinderGrid { nodes: 160, s_max: 12.0, m }
    }
}

#[derive(Debug, Clone)]
pub struct TunnelMapSample {
    pub rho: f64,
    /// Ring `i` lies at radius `ρ e^{s_i}`; ring 0 is the boundary circle.
    pub samples: PolarSamples,
    pub limit: CharacteristicParam,
    pub multiplicity: i32,
}

impl TunnelMapSample {
    /// Samples `π_{S³} ∘ w` for a map `w` into ℂ² \ 0.
    pub fn from_fn(
        rho: f64,
        grid: CylinderGrid,
        limit: CharacteristicParam,
        multiplicity: i32,
        w: impl Fn(C) -> C2,
    ) -> Result<Self> {
        Self::from_cylinder(rho, grid, limit, multiplicity, |s, t| w(cis(t) * (rho * s.exp())))
    }

    /// As [`from_fn`](Self::from_fn) with the map given in `(s, θ)`.
    pub fn from_cylinder(
        rho: f64,
        grid: CylinderGrid,
        limit: CharacteristicParam,
        multiplicity: i32,
        w: impl Fn(f64, f64) -> C2,
    ) -> Result<Self> {
        if !(rho > 0.0) || !fft::is_pow2(grid.m) {
            return Err(Error::Domain("bad cylinder grid"));
        }
        let radial = Cheb::new(grid.nodes, 0.0, grid.s_max);
        let mut bad = false;
        let samples = PolarSamples::from_fn(radial, grid.m, |s, t| {
            let v = w(s, t);
            let n = v.norm();
            if !(n > 0.0) || !n.is_finite() {
                bad = true;
                return C2::ZERO;
            }
            v.scale(1.0 / n)
        });
        if bad {
            return Err(Error::Domain("map vanishes or is not finite on the grid"));
        }
        Ok(TunnelMapSample { rho, samples, limit, multiplicity })
    }

    pub fn m(&self) -> usize {
        self.samples.m
    }

    pub fn rings(&self) -> usize {
        self.samples.rings()
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.rho * self.samples.radial.nodes[i].exp()
    }

    pub fn boundary(&self) -> &[C2] {
        self.samples.ring(0)
    }

    pub fn derivs(&self) -> (Vec<C2>, Vec<C2>) {
        (self.samples.d_radial(), self.samples.d_angular())
    }

    /// `v*α∘j(∂θ) = -α(∂s v)` on ring `i`.
    pub fn alpha_j_dtheta(&self, ds: &[C2], i: usize) -> Vec<f64> {
        let m = self.m();
        (0..m)
            .map(|j| -alpha_raw(self.samples.values[i * m + j], ds[i * m + j]))
            .collect()
    }
}

/// `(sup |π_F ∂̄v|, sup |d(v*α∘j)|)` over the grid.
pub fn residual_h(v: &TunnelMapSample) -> Result<(f64, f64)> {
    if v.rings() < 3 {
        return Err(Error::InsufficientRings(v.rings()));
    }
    let (ds, dt) = v.derivs();
    let m = v.m();
    let vals = &v.samples.values;
    let mut f_res: f64 = 0.0;
    let mut a_s = vec![0.0; vals.len()];
    let mut a_t = vec![0.0; vals.len()];
    for k in 0..vals.len() {
        let p = vals[k];
        let dbar = pi_f_raw(p, ds[k]) + pi_f_raw(p, dt[k]).cmul(I);
        f_res = f_res.max(dbar.norm() * 0.5);
        a_s[k] = alpha_raw(p, ds[k]);
        a_t[k] = alpha_raw(p, dt[k]);
    }
    let n = v.rings();
    let mut l_res: f64 = 0.0;
    for j in 0..m {
        let col: Vec<f64> = (0..n).map(|i| a_s[i * m + j]).collect();
        let d = v.samples.radial.apply(&col);
        for i in 0..n {
            a_s[i * m + j] = d[i];
        }
    }
    for i in 0..n {
        let dth = fft::derivative_real(&a_t[i * m..(i + 1) * m]);
        for j in 0..m {
            l_res = l_res.max((a_s[i * m + j] + dth[j]).abs());
        }
    }
    Ok((f_res, l_res))
}

/// Smallest `|π_F ∂θ v|` over rings with `s ≤ s_cut`.
pub fn immersion_min(v: &TunnelMapSample, s_cut: f64) -> f64 {
    let dt = v.samples.d_angular();
    let m = v.m();
    let mut worst = f64::INFINITY;
    for (i, &s) in v.samples.radial.nodes.iter().enumerate() {
        if s > s_cut {
            break;
        }
        for j in 0..m {
            let k = i * m + j;
            worst = worst.min(pi_f_raw(v.samples.values[k], dt[k]).norm());
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProfile {
    /// Cylinder heights `s = σ/2π` of the profile.
    pub radii: Vec<f64>,
    pub e_r: Vec<f64>,
    /// Slope of `ln E_r` against `s` over the tail.
    pub decay_exponent: f64,
    pub delta: f64,
    /// `E_r` at the requested height.
    pub value: f64,
    /// Weighted density does not decay towards the puncture.
    pub divergent: bool,
}

/// Weighted asymptotic energy in cylinder coordinates `s = σ/2π`, `t = θ/2π`.
pub fn asymptotic_energy(v: &TunnelMapSample, delta: f64, r: f64) -> Result<EnergyProfile> {
    if !(delta > 0.0) {
        return Err(Error::Domain("weight δ must be positive"));
    }
    if v.rings() < 3 {
        return Err(Error::InsufficientRings(v.rings()));
    }
    let (ds, dt) = v.derivs();
    let m = v.m();
    let n = v.rings();
    let vals = &v.samples.values;
    let tp = 2.0 * PI;
    // h = α(∂t v) and its derivatives
    let mut h = vec![0.0; vals.len()];
    for k in 0..vals.len() {
        h[k] = tp * alpha_raw(vals[k], dt[k]);
    }
    let mut hs = vec![0.0; vals.len()];
    for j in 0..m {
        let col: Vec<f64> = (0..n).map(|i| h[i * m + j]).collect();
        let d = v.samples.radial.apply(&col);
        for i in 0..n {
            hs[i * m + j] = tp * d[i];
        }
    }
    let mut density = vec![0.0; n];
    for i in 0..n {
        let ring_h = &h[i * m..(i + 1) * m];
        let ht = fft::derivative_real(ring_h);
        let mut acc = 0.0;
        for j in 0..m {
            let k = i * m + j;
            let p = vals[k];
            let a_s = tp * alpha_raw(p, ds[k]);
            let f2 = (pi_f_raw(p, ds[k]).norm_sqr() + pi_f_raw(p, dt[k]).norm_sqr()) * tp * tp;
            let dh2 = hs[k] * hs[k] + (tp * ht[j]) * (tp * ht[j]);
            acc += a_s * a_s + dh2 + f2;
        }
        let s = v.samples.radial.nodes[i] / tp;
        // ∫ dt over t ∈ [0, 1)
        density[i] = acc / m as f64 * (delta * s).exp();
    }
    // integrate in σ, then convert dσ = 2π ds
    let e_at = |x: f64| v.samples.radial.integrate_from(&density, x * tp) / tp;
    let radii: Vec<f64> = v.samples.radial.nodes.iter().map(|x| x / tp).collect();
    let e_r: Vec<f64> = radii.iter().map(|&x| e_at(x).max(0.0)).collect();
    let top = e_r[0];
    let (mut sx, mut sy, mut sxx, mut sxy, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let s_hi = radii[n - 1];
    for (x, e) in radii.iter().zip(&e_r) {
        if *x >= 0.25 * s_hi && *e > 1e-13 * top && *e > 0.0 {
            let y = e.ln();
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            cnt += 1.0;
        }
    }
    let decay_exponent = if cnt >= 2.0 { (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) } else { f64::NEG_INFINITY };
    let peak = density.iter().cloned().fold(0.0, f64::max);
    let divergent = peak > 0.0 && density[n - 1] > 1e-3 * peak;
    Ok(EnergyProfile { radii, e_r, decay_exponent, delta, value: e_at(r), divergent })
}

/// Periods of `v*α∘j` on every ring.
pub fn ring_periods(v: &TunnelMapSample) -> Vec<f64> {
    let ds = v.samples.d_radial();
    (0..v.rings())
        .map(|i| {
            let vals = v.alpha_j_dtheta(&ds, i);
            boundary_period(&BoundaryLoopSamples { values: vals, radius: v.radius(i), positive: true })
        })
        .collect()
}

pub fn check_periods(v: &TunnelMapSample) -> f64 {
    ring_periods(v).into_iter().fold(0.0, |a, p| a.max(p.abs()))
}

/// `a = -u₋*α / u₊*α` on a common tangent direction of σ.
pub fn gap_function(
    u_plus: &BoundaryLoopSamples<f64>,
    u_minus: &BoundaryLoopSamples<f64>,
) -> Result<BoundaryLoopSamples<f64>> {
    if u_plus.len() != u_minus.len() {
        return Err(Error::BoundaryMismatch("gap function sample counts differ"));
    }
    let mut out = Vec::with_capacity(u_plus.len());
    for (k, (p, q)) in u_plus.values.iter().zip(&u_minus.values).enumerate() {
        if p.abs() < 1e-10 {
            return Err(Error::NonTransverse { index: k, value: *p });
        }
        let a = -q / p;
        if !(a > 0.0) {
            return Err(Error::SignViolation { index: k, value: a });
        }
        out.push(a);
    }
    Ok(BoundaryLoopSamples { values: out, radius: u_plus.radius, positive: true })
}

#[derive(Debug, Clone)]
pub struct ConjugatePair {
    pub v_plus: TunnelMapSample,
    pub v_minus: TunnelMapSample,
    pub x: CharacteristicParam,
    /// Transition phase with `v₋ = e^{2πig} v₊`, on σ.
    pub g_function: BoundaryLoopSamples<f64>,
    /// Conformal factor on σ.
    pub f_scale: BoundaryLoopSamples<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateReport {
    /// `sup |v₊*ω - f v₋*ω|` over the grid.
    pub omega_defect: f64,
    pub f_scale_defect: f64,
    /// `sup_σ |λ(∂θ)|` with `λ = v₊*α∘j + v₋*α∘j`.
    pub lambda_sigma: f64,
    /// `sup_μ |x(θ₊(μ) + θ₋(μ)) - x(0)|` over sampled directions μ at the
    /// puncture, `θ±(μ)` the limit parameters of `v±` along μ.
    pub marker_defect: f64,
    pub multiplicity_defect: i32,
    /// Leading Fourier mode of `w/z` on the outermost ring, direction mismatch.
    /// A stand-in for matching eigenvectors of the asymptotic operator.
    pub mode_proxy_defect: f64,
    pub base_projection: f64,
}

impl ConjugateReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.omega_defect,
            self.f_scale_defect,
            self.lambda_sigma,
            self.marker_defect,
            self.mode_proxy_defect,
            self.base_projection,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.multiplicity_defect == 0 && self.max_residual() < tol
    }
}

/// Parameter on `x` of the limit of `v` along the positive real direction,
/// by extrapolation in `e^{-s}` over the outer rings.
pub fn marker_phase(v: &TunnelMapSample) -> Result<f64> {
    marker_phase_at(v, 0)
}

/// As [`marker_phase`] along the direction of angle index `j`.
pub fn marker_phase_at(v: &TunnelMapSample, j: usize) -> Result<f64> {
    let n = v.rings();
    let m = v.m();
    let nodes = &v.samples.radial.nodes;
    let s_max = nodes[n - 1];
    // well separated heights keep the extrapolation stable
    let mut picks: Vec<usize> = Vec::new();
    for frac in [0.5, 0.625, 0.75, 0.875, 1.0] {
        let target = frac * s_max;
        let i = (0..n)
            .min_by(|&a, &b| (nodes[a] - target).abs().partial_cmp(&(nodes[b] - target).abs()).unwrap())
            .unwrap();
        if !picks.contains(&i) {
            picks.push(i);
        }
    }
    let mut xs = Vec::with_capacity(picks.len());
    let mut ys: Vec<f64> = Vec::with_capacity(picks.len());
    for &i in &picks {
        let p = v.samples.values[i * m + j];
        let mut t = (p.z / v.limit.m).arg() / (2.0 * PI);
        if let Some(&prev) = ys.last() {
            t -= (t - prev).round();
        }
        xs.push((-nodes[i]).exp());
        ys.push(t);
    }
    let outer = v.samples.values[(n - 1) * m + j];
    if outer.w.norm() > 1e-3 {
        return Err(Error::OffCharacteristic { defect: outer.w.norm() });
    }
    // Neville at e^{-s} = 0
    let k = xs.len();
    let mut p = ys.clone();
    for lvl in 1..k {
        for i in 0..k - lvl {
            p[i] = (xs[i + lvl] * p[i] - xs[i] * p[i + 1]) / (xs[i + lvl] - xs[i]);
        }
    }
    let t = p[0];
    Ok(t - t.floor())
}

/// Winding number of the first component on the outermost ring.
pub fn puncture_winding(v: &TunnelMapSample) -> i32 {
    let ring = v.samples.ring(v.rings() - 1);
    let mut total = 0.0;
    for j in 0..ring.len() {
        let a = ring[j].z;
        let b = ring[(j + 1) % ring.len()].z;
        total += (b / a).arg();
    }
    (total / (2.0 * PI)).round() as i32
}

fn leading_mode(v: &TunnelMapSample) -> Option<(usize, C)> {
    let ring = v.samples.ring(v.rings() - 1);
    let ratio: Vec<C> = ring.iter().map(|p| p.w / p.z).collect();
    let co = fft::coeffs(&ratio);
    let scale = ratio.iter().fold(0.0f64, |a, r| a.max(r.norm()));
    let (idx, best) = co
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())?;
    if best.norm() <= 1e-12 * (1.0 + scale) || best.norm() < 1e-300 {
        None
    } else {
        Some((idx, best / best.norm()))
    }
}

pub fn check_conjugate(pair: &ConjugatePair) -> ConjugateReport {
    let (vp, vm) = (&pair.v_plus, &pair.v_minus);
    let (dsp, dtp) = vp.derivs();
    let (dsm, dtm) = vm.derivs();
    let mut omega_defect: f64 = 0.0;
    let mut base: f64 = 0.0;
    for k in 0..vp.samples.values.len() {
        let wp = omega_form(dsp[k], dtp[k]);
        let wm = omega_form(dsm[k], dtm[k]);
        omega_defect = omega_defect.max((wp - wm).abs());
        let a = hopf_raw(vp.samples.values[k]);
        let b = hopf_raw(vm.samples.values[k]);
        let d: f64 = (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt();
        base = base.max(d);
    }
    let f_scale_defect = pair.f_scale.values.iter().fold(0.0f64, |a, f| a.max((f - 1.0).abs()));
    let lp = vp.alpha_j_dtheta(&dsp, 0);
    let lm = vm.alpha_j_dtheta(&dsm, 0);
    let lambda_sigma = lp.iter().zip(&lm).fold(0.0f64, |a, (x, y)| a.max((x + y).abs()));
    let mut marker_defect: f64 = 0.0;
    let m = vp.m();
    for j in (0..m).step_by((m / 16).max(1)) {
        let d = match (marker_phase_at(vp, j), marker_phase_at(vm, j)) {
            (Ok(a), Ok(b)) => {
                let sum = crate::geometry::characteristic_add(a, b);
                (cis(2.0 * PI * sum) - C::new(1.0, 0.0)).norm()
            }
            _ => 2.0,
        };
        marker_defect = marker_defect.max(d);
    }
    let wp = puncture_winding(vp);
    let wm = puncture_winding(vm);
    let multiplicity_defect = (wp + wm).abs() + (wp - vp.multiplicity).abs() + (wm - vm.multiplicity).abs();
    let mode_proxy_defect = match (leading_mode(vp), leading_mode(vm)) {
        (None, None) => 0.0,
        (Some((i, a)), Some((j, b))) if i == j => (a - b).norm(),
        _ => 2.0,
    };
    ConjugateReport {
        omega_defect,
        f_scale_defect,
        lambda_sigma,
        marker_defect,
        multiplicity_defect,
        mode_proxy_defect,
        base_projection: base,
    }
}

/// Conjugate partner `v₋ = e^{2πig} v₊` with `g = -dθ/π + h + κ`, where `h`
/// solves the exterior Neumann problem with data `-2 v₊*α∘j(∂θ)` and `κ`
/// fixes the marker condition.
pub fn conjugate_partner(v_plus: &TunnelMapSample, x: CharacteristicParam) -> Result<ConjugatePair> {
    let mut v_plus = v_plus.clone();
    v_plus.limit = x;
    let v_plus = &v_plus;
    let ds = v_plus.samples.d_radial();
    let beta = v_plus.alpha_j_dtheta(&ds, 0);
    let rho = v_plus.rho;
    let period = boundary_period(&BoundaryLoopSamples { values: beta.clone(), radius: rho, positive: true });
    if period.abs() > 1e-9 {
        return Err(Error::PeriodObstruction { period });
    }
    let data: Vec<f64> = beta.iter().map(|b| -2.0 * b).collect();
    let mean = data.iter().sum::<f64>() / data.len() as f64;
    let data: Vec<f64> = data.iter().map(|d| d - mean).collect();
    let h = solve_neumann_vanishing(
        &BoundaryLoopSamples { values: data, radius: rho, positive: true },
        DomainKind::ExteriorPunctured { rho },
    )?;
    let theta_plus = marker_phase(v_plus)?;
    let kappa = -2.0 * theta_plus;
    let d = v_plus.multiplicity as f64;
    let m = v_plus.m();
    let angles = fft::angles(m);
    let mut values = Vec::with_capacity(v_plus.samples.values.len());
    let mut g_sigma = Vec::with_capacity(m);
    for i in 0..v_plus.rings() {
        let hr = h.trace(v_plus.radius(i), m);
        for j in 0..m {
            let g = -d * angles[j] / PI + hr[j] + kappa;
            if i == 0 {
                g_sigma.push(g);
            }
            values.push(v_plus.samples.values[i * m + j].cmul(cis(2.0 * PI * g)));
        }
    }
    let v_minus = TunnelMapSample {
        rho,
        samples: PolarSamples { radial: v_plus.samples.radial.clone(), m, values },
        limit: v_plus.limit,
        multiplicity: -v_plus.multiplicity,
    };
    Ok(ConjugatePair {
        v_plus: v_plus.clone(),
        v_minus,
        x,
        g_function: BoundaryLoopSamples { values: g_sigma, radius: rho, positive: true },
        f_scale: BoundaryLoopSamples { values: vec![1.0; m], radius: rho, positive: true },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatFoldReport {
    pub graph_residual: f64,
    pub half_period_residual: f64,
    pub torus_residual: f64,
}

/// Folded diagonal map of the flat fold `S¹ × T²`:
/// `Φ_{θ0}(u, z) = (e^{2πi·2θ0} ū, z)`.
pub fn flat_fold_phi(theta0: f64, u: C, z: [C; 2]) -> (C, [C; 2]) {
    let two = 2.0 * theta0;
    let turn = two - two.floor();
    (cis(2.0 * PI * turn) * u.conj(), z)
}

/// Samples are `(θ, z)`; the first factor is placed at `e^{2πi(θ0+θ)}`.
pub fn flat_fold_diagonal_check(theta0: f64, samples: &[(f64, [C; 2])]) -> FlatFoldReport {
    let mut rep = FlatFoldReport { graph_residual: 0.0, half_period_residual: 0.0, torus_residual: 0.0 };
    for &(theta, z) in samples {
        let u = cis(2.0 * PI * (theta0 + theta));
        let (a, zz) = flat_fold_phi(theta0, u, z);
        let expect = cis(2.0 * PI * (theta0 - theta));
        rep.graph_residual = rep.graph_residual.max((a - expect).norm());
        let (b, zb) = flat_fold_phi(theta0 + 0.5, u, z);
        rep.half_period_residual = rep.half_period_residual.max((a - b).norm()).max((zb[0] - zz[0]).norm());
        let dz = (zz[0] - z[0]).norm().max((zz[1] - z[1]).norm());
        rep.torus_residual = rep.torus_residual.max(dz);
    }
    rep
}

/// The point `v(μ)` of the limit characteristic reached along the positive real axis.
pub fn marker_point(v: &TunnelMapSample) -> Result<FoldPoint> {
    Ok(v.limit.at(marker_phase(v)?))
}
