//! Spectral solvers for harmonic boundary value problems on disks, annuli
//! and exteriors of circles.
//!
//! A [`LaurentField`] stores a holomorphic `F(z) = Σ a_k (z/ρ)^k + b log(z/ρ)`;
//! as a harmonic field its value is `Re F`.

use crate::c2::{c, C};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{CharacteristicParam, FoldPoint};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind {
    Disk { rho: f64 },
    Annulus { rho_in: f64, rho_out: f64 },
    ExteriorPunctured { rho: f64 },
}

impl DomainKind {
    /// Radius used to scale the Laurent variable.
    pub fn rho_ref(&self) -> f64 {
        match *self {
            DomainKind::Disk { rho } | DomainKind::ExteriorPunctured { rho } => rho,
            DomainKind::Annulus { rho_in, .. } => rho_in,
        }
    }

    fn allows(&self, k: i64) -> bool {
        match self {
            DomainKind::Disk { .. } => k >= 0,
            DomainKind::ExteriorPunctured { .. } => k <= 0,
            DomainKind::Annulus { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentField {
    pub kind: DomainKind,
    pub n: usize,
    /// `coeffs[n + k] = a_k` for `k ∈ [-n, n]`.
    pub coeffs: Vec<C>,
    /// Coefficient of `log(z/ρ)`; an integer value on an exterior domain
    /// is a prescribed puncture order for `exp F`.
    pub log_coeff: f64,
}

impl LaurentField {
    pub fn zero(kind: DomainKind, n: usize) -> Self {
        LaurentField { kind, n, coeffs: vec![c(0.0, 0.0); 2 * n + 1], log_coeff: 0.0 }
    }

    pub fn coeff(&self, k: i64) -> C {
        if k.unsigned_abs() as usize > self.n {
            c(0.0, 0.0)
        } else {
            self.coeffs[(self.n as i64 + k) as usize]
        }
    }

    pub fn set_coeff(&mut self, k: i64, v: C) {
        let idx = (self.n as i64 + k) as usize;
        self.coeffs[idx] = v;
    }

    /// True when no coefficient lies outside the range the domain allows.
    pub fn is_admissible(&self) -> bool {
        (-(self.n as i64)..=self.n as i64).all(|k| self.kind.allows(k) || self.coeff(k) == c(0.0, 0.0))
    }

    pub fn eval_holo(&self, z: C) -> C {
        let u = z / self.kind.rho_ref();
        let mut acc = self.coeff(0);
        if self.kind.allows(1) {
            let mut p = c(1.0, 0.0);
            for k in 1..=self.n as i64 {
                p *= u;
                acc += self.coeff(k) * p;
            }
        }
        if self.kind.allows(-1) {
            let inv = c(1.0, 0.0) / u;
            let mut p = c(1.0, 0.0);
            for k in 1..=self.n as i64 {
                p *= inv;
                acc += self.coeff(-k) * p;
            }
        }
        if self.log_coeff != 0.0 {
            acc += u.ln() * self.log_coeff;
        }
        acc
    }

    pub fn eval(&self, z: C) -> f64 {
        self.eval_holo(z).re
    }

    /// `exp F(z)`, single valued when the log coefficient is an integer.
    pub fn exp_eval(&self, z: C) -> C {
        let u = z / self.kind.rho_ref();
        let mut f = self.clone();
        f.log_coeff = 0.0;
        f.eval_holo(z).exp() * u.powi(self.log_coeff.round() as i32)
    }

    /// Non-log part of an exterior field in the variable `ζ = ρ/z`,
    /// `Σ a_{-k} ζ^k`, exact at `ζ = 0`.
    pub fn eval_inverse_variable(&self, zeta: C) -> C {
        let mut acc = c(0.0, 0.0);
        for k in (0..=self.n as i64).rev() {
            acc = acc * zeta + self.coeff(-k);
        }
        acc
    }

    /// Values of `F` (without the log term) at `m` uniform angles on radius `r`.
    pub fn trace_holo(&self, r: f64, m: usize) -> Vec<C> {
        let u = r / self.kind.rho_ref();
        let mut slots = vec![c(0.0, 0.0); m];
        for k in -(self.n as i64)..=self.n as i64 {
            let a = self.coeff(k);
            if a == c(0.0, 0.0) {
                continue;
            }
            let slot = k.rem_euclid(m as i64) as usize;
            slots[slot] += a * u.powi(k as i32);
        }
        let mut out = fft::synth(&slots);
        if self.log_coeff != 0.0 {
            let lr = u.ln() * self.log_coeff;
            for (j, v) in out.iter_mut().enumerate() {
                *v += c(lr, self.log_coeff * 2.0 * PI * j as f64 / m as f64);
            }
        }
        out
    }

    pub fn trace(&self, r: f64, m: usize) -> Vec<f64> {
        self.trace_holo(r, m).into_iter().map(|v| v.re).collect()
    }

    pub fn scale(&self, s: f64) -> LaurentField {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|a| *a *= s);
        out.log_coeff *= s;
        out
    }

    pub fn add(&self, o: &LaurentField) -> Result<LaurentField> {
        if self.kind != o.kind || self.n != o.n {
            return Err(Error::BoundaryMismatch("fields on different domains"));
        }
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
        out.log_coeff += o.log_coeff;
        Ok(out)
    }
}

/// Uniform samples on a circle, angle `2πj/M` at index `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLoopSamples<T> {
    pub values: Vec<T>,
    pub radius: f64,
    /// Counter-clockwise when true.
    pub positive: bool,
}

impl<T: Copy + Into<C>> BoundaryLoopSamples<T> {
    pub fn new(values: Vec<T>, radius: f64) -> Result<Self> {
        if !fft::is_pow2(values.len()) {
            return Err(Error::Domain("sample count must be a power of two"));
        }
        if !(radius > 0.0) {
            return Err(Error::Domain("radius must be positive"));
        }
        Ok(BoundaryLoopSamples { values, radius, positive: true })
    }

    pub fn from_fn(m: usize, radius: f64, f: impl Fn(f64) -> T) -> Result<Self> {
        Self::new(fft::angles(m).into_iter().map(f).collect(), radius)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn complex(&self) -> Vec<C> {
        self.values.iter().map(|&v| v.into()).collect()
    }

    pub fn nyquist_fraction(&self) -> f64 {
        fft::nyquist_fraction(&self.complex())
    }

    /// Fails when the top band carries more than `1e-10` of the energy and
    /// is above the rounding floor.
    pub fn check_resolution(&self) -> Result<()> {
        let (f, amp) = fft::nyquist_energy(&self.complex());
        if f > 1e-10 && amp > 1e-11 {
            return Err(Error::Resolution { nyquist_fraction: f });
        }
        Ok(())
    }
}

fn real_coeffs(data: &BoundaryLoopSamples<f64>) -> Result<Vec<C>> {
    data.check_resolution()?;
    Ok(fft::coeffs_real(&data.values))
}

fn truncation(m: usize) -> usize {
    m / 2 - 1
}

pub fn solve_dirichlet(data: &BoundaryLoopSamples<f64>, kind: DomainKind) -> Result<LaurentField> {
    let m = data.len();
    let d = real_coeffs(data)?;
    let n = truncation(m);
    let mut f = LaurentField::zero(kind, n);
    match kind {
        DomainKind::Annulus { .. } => {
            return Err(Error::BoundaryMismatch("annulus needs inner and outer data"));
        }
        DomainKind::Disk { rho } | DomainKind::ExteriorPunctured { rho } => {
            if (rho - data.radius).abs() > 1e-12 * rho {
                return Err(Error::BoundaryMismatch("data radius differs from domain radius"));
            }
            f.set_coeff(0, c(d[0].re, 0.0));
            let sign = if matches!(kind, DomainKind::Disk { .. }) { 1 } else { -1 };
            for k in 1..=n {
                let slot = if sign > 0 { k } else { m - k };
                f.set_coeff(sign * k as i64, d[slot] * 2.0);
            }
        }
    }
    Ok(f)
}

pub fn solve_dirichlet_annulus(
    inner: &BoundaryLoopSamples<f64>,
    outer: &BoundaryLoopSamples<f64>,
) -> Result<LaurentField> {
    if inner.len() != outer.len() {
        return Err(Error::BoundaryMismatch("inner and outer sample counts differ"));
    }
    let (r0, r1) = (inner.radius, outer.radius);
    if !(r1 > r0) {
        return Err(Error::Domain("annulus radii must increase"));
    }
    let m = inner.len();
    let di = real_coeffs(inner)?;
    let dout = real_coeffs(outer)?;
    let n = truncation(m);
    let kind = DomainKind::Annulus { rho_in: r0, rho_out: r1 };
    let mut f = LaurentField::zero(kind, n);
    let t = r1 / r0;
    let lt = t.ln();
    f.log_coeff = (dout[0].re - di[0].re) / lt;
    f.set_coeff(0, c(di[0].re, 0.0));
    for k in 1..=n {
        // a_k + conj(a_{-k}) = 2 d_in, a_k t^k + conj(a_{-k}) t^{-k} = 2 d_out
        let tk = t.powi(k as i32);
        let det = 1.0 / tk - tk;
        let (bi, bo) = (di[k] * 2.0, dout[k] * 2.0);
        let ak = (bi / tk - bo) / det;
        let xk = (bo - bi * tk) / det;
        f.set_coeff(k as i64, ak);
        f.set_coeff(-(k as i64), xk.conj());
    }
    Ok(f)
}

/// Harmonic `g` with `dg∘j(∂θ) = -ρ ∂ρ g` equal to `data` on the circle,
/// vanishing at the anchor (puncture or center).
pub fn solve_neumann_vanishing(data: &BoundaryLoopSamples<f64>, kind: DomainKind) -> Result<LaurentField> {
    let m = data.len();
    let d = real_coeffs(data)?;
    if d[0].re.abs() > 1e-10 {
        return Err(Error::PeriodObstruction { period: 2.0 * PI * d[0].re });
    }
    let n = truncation(m);
    let mut g = LaurentField::zero(kind, n);
    match kind {
        DomainKind::ExteriorPunctured { .. } => {
            for k in 1..=n {
                g.set_coeff(-(k as i64), d[m - k] * (2.0 / k as f64));
            }
        }
        DomainKind::Disk { .. } => {
            for k in 1..=n {
                g.set_coeff(k as i64, d[k] * (-2.0 / k as f64));
            }
        }
        DomainKind::Annulus { .. } => {
            return Err(Error::BoundaryMismatch("Neumann problem posed on disk or exterior only"));
        }
    }
    Ok(g)
}

/// `g` with `f + i g` holomorphic and `g` zero at the anchor.
pub fn harmonic_conjugate(field: &LaurentField) -> Result<LaurentField> {
    if field.log_coeff.abs() > 1e-12 {
        return Err(Error::PeriodObstruction { period: 2.0 * PI * field.log_coeff });
    }
    let mut g = field.clone();
    for a in g.coeffs.iter_mut() {
        *a *= c(0.0, -1.0);
    }
    let a0 = g.coeff(0);
    g.set_coeff(0, c(0.0, a0.im));
    Ok(g)
}

/// `∮ η` for samples of `η(∂θ)` on a loop.
pub fn boundary_period(one_form: &BoundaryLoopSamples<f64>) -> f64 {
    let m = one_form.len() as f64;
    let s: f64 = one_form.values.iter().sum();
    let p = s * 2.0 * PI / m;
    if one_form.positive { p } else { -p }
}

/// Traces on the circle of the exterior harmonic `f` with `f|σ = ζ^K` and of
/// its conjugate `g` vanishing at the puncture.
pub fn solve_qtilde(
    zeta_k: &BoundaryLoopSamples<f64>,
) -> Result<(BoundaryLoopSamples<f64>, BoundaryLoopSamples<f64>)> {
    let kind = DomainKind::ExteriorPunctured { rho: zeta_k.radius };
    let f = solve_dirichlet(zeta_k, kind)?;
    let g = harmonic_conjugate(&f)?;
    let m = zeta_k.len();
    let r = zeta_k.radius;
    Ok((
        BoundaryLoopSamples { values: f.trace(r, m), radius: r, positive: true },
        BoundaryLoopSamples { values: g.trace(r, m), radius: r, positive: true },
    ))
}

/// Logarithm `L` of the multiplier that carries `w|Σ₋` to the lower chart,
/// `u₋ = σ₋(exp(L)·w)`.
///
/// `alpha_tangent` holds `v₊*α∘j(∂θ)` on σ; `marker` is the limit of `v₊`
/// along the positive real direction at the puncture. `Re L` has
/// `∂θ Re L = -4π v₊*α∘j(∂θ)` on σ, `L` has a `-2d log` puncture term, and
/// `Im L(∞) = -2π·2θ₊` with `marker = x(θ₊)`.
pub fn solve_f_degree_d(
    alpha_tangent: &BoundaryLoopSamples<f64>,
    marker: FoldPoint,
    x: CharacteristicParam,
    d: u32,
) -> Result<LaurentField> {
    let period = boundary_period(alpha_tangent);
    if period.abs() > 1e-10 {
        return Err(Error::PeriodObstruction { period });
    }
    let theta_plus = x.locate(marker).map_err(|defect| Error::OffCharacteristic { defect })?;
    let m = alpha_tangent.len();
    let rho = alpha_tangent.radius;
    let b = real_coeffs(alpha_tangent)?;
    let mut u = vec![c(0.0, 0.0); m];
    for (j, slot) in u.iter_mut().enumerate() {
        let k = fft::wavenumber(j, m);
        if k != 0 && 2 * k.unsigned_abs() as usize != m {
            *slot = b[j] * (-4.0 * PI) / c(0.0, k as f64);
        }
    }
    let u_vals: Vec<f64> = fft::synth(&u).into_iter().map(|v| v.re).collect();
    let kind = DomainKind::ExteriorPunctured { rho };
    // the Dirichlet solution is already holomorphic with real part U and
    // imaginary part its conjugate vanishing at the puncture
    let mut l = solve_dirichlet(&BoundaryLoopSamples { values: u_vals, radius: rho, positive: true }, kind)?;
    let kappa = -2.0 * theta_plus;
    let kappa = kappa - kappa.round();
    let a0 = l.coeff(0);
    l.set_coeff(0, c(a0.re, 2.0 * PI * kappa));
    l.log_coeff = -2.0 * d as f64;
    Ok(l)
}
