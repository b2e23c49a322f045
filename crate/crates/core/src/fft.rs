//! Radix-2 FFT and the Fourier helpers used on uniformly sampled loops.

#[allow(unused_imports)]
use num_traits::Float;
use crate::c2::{c, cis, C};
use alloc::vec::Vec;
use core::f64::consts::PI;

pub fn is_pow2(m: usize) -> bool {
    m >= 2 && m & (m - 1) == 0
}

/// In-place transform, unnormalized. `inverse` flips the exponent sign.
pub fn fft_in_place(a: &mut [C], inverse: bool) {
    let n = a.len();
    assert!(is_pow2(n), "fft length must be a power of two");
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let tw: Vec<C> = (0..half).map(|k| cis(sign * 2.0 * PI * k as f64 / len as f64)).collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = a[start + k];
                let v = a[start + k + half] * tw[k];
                a[start + k] = u + v;
                a[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

/// Coefficients `c_k = (1/M) Σ f_j e^{-ikθ_j}` in FFT order.
pub fn coeffs(values: &[C]) -> Vec<C> {
    let mut a = values.to_vec();
    fft_in_place(&mut a, false);
    let s = 1.0 / a.len() as f64;
    a.iter_mut().for_each(|x| *x *= s);
    a
}

pub fn coeffs_real(values: &[f64]) -> Vec<C> {
    let v: Vec<C> = values.iter().map(|&x| c(x, 0.0)).collect();
    coeffs(&v)
}

/// Inverse of [`coeffs`].
pub fn synth(coeffs: &[C]) -> Vec<C> {
    let mut a = coeffs.to_vec();
    fft_in_place(&mut a, true);
    a
}

/// Signed wavenumber of FFT slot `j`; the Nyquist slot maps to `+M/2`.
pub fn wavenumber(j: usize, m: usize) -> i64 {
    if j <= m / 2 {
        j as i64
    } else {
        j as i64 - m as i64
    }
}

/// d/dθ of a sampled periodic function. The Nyquist mode is dropped.
pub fn derivative(values: &[C]) -> Vec<C> {
    let m = values.len();
    let mut a = coeffs(values);
    for (j, x) in a.iter_mut().enumerate() {
        let k = wavenumber(j, m);
        if 2 * k.unsigned_abs() as usize == m {
            *x = C::new(0.0, 0.0);
        } else {
            *x *= C::new(0.0, k as f64);
        }
    }
    synth(&a)
}

pub fn derivative_real(values: &[f64]) -> Vec<f64> {
    let v: Vec<C> = values.iter().map(|&x| c(x, 0.0)).collect();
    derivative(&v).into_iter().map(|z| z.re).collect()
}

/// Fraction of spectral energy in wavenumbers above `0.9·M/2`.
pub fn nyquist_fraction(values: &[C]) -> f64 {
    nyquist_energy(values).0
}

/// `(fraction, absolute amplitude)` of the band above `0.9·M/2`.
pub fn nyquist_energy(values: &[C]) -> (f64, f64) {
    let m = values.len();
    let a = coeffs(values);
    let cut = 0.9 * (m as f64) / 2.0;
    let mut total = 0.0;
    let mut high = 0.0;
    for (j, x) in a.iter().enumerate() {
        let e = x.norm_sqr();
        total += e;
        if (wavenumber(j, m).abs() as f64) > cut {
            high += e;
        }
    }
    let frac = if total == 0.0 { 0.0 } else { high / total };
    (frac, high.sqrt())
}

/// Uniform angles `2πj/M`.
pub fn angles(m: usize) -> Vec<f64> {
    (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
}

/// Drops the band above `0.9·M/2` that [`nyquist_energy`] measures.
pub fn band_limit_real(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut a = coeffs_real(values);
    let cut = 0.9 * (m as f64) / 2.0;
    for (j, x) in a.iter_mut().enumerate() {
        if (wavenumber(j, m).abs() as f64) > cut {
            *x = c(0.0, 0.0);
        }
    }
    synth(&a).into_iter().map(|v| v.re).collect()
}
