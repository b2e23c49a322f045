//! Tensor grids: Chebyshev in a radial coordinate, uniform in angle.

use crate::c2::{C, C2};
use crate::cheb::Cheb;
use crate::fft;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Samples `values[i * m + j]` at radial node `i` and angle `2πj/m`.
#[derive(Debug, Clone)]
pub struct PolarSamples {
    pub radial: Cheb,
    pub m: usize,
    pub values: Vec<C2>,
}

impl PolarSamples {
    pub fn from_fn(radial: Cheb, m: usize, mut f: impl FnMut(f64, f64) -> C2) -> Self {
        let mut values = Vec::with_capacity(radial.len() * m);
        for &s in &radial.nodes {
            for j in 0..m {
                values.push(f(s, 2.0 * PI * j as f64 / m as f64));
            }
        }
        PolarSamples { radial, m, values }
    }

    pub fn ring(&self, i: usize) -> &[C2] {
        &self.values[i * self.m..(i + 1) * self.m]
    }

    pub fn rings(&self) -> usize {
        self.radial.len()
    }

    pub fn d_radial(&self) -> Vec<C2> {
        let n = self.rings();
        let m = self.m;
        let mut out = alloc::vec![C2::ZERO; n * m];
        for i in 0..n {
            let row = &self.radial.diff[i * n..(i + 1) * n];
            for (k, &d) in row.iter().enumerate() {
                if d == 0.0 {
                    continue;
                }
                let src = &self.values[k * m..(k + 1) * m];
                let dst = &mut out[i * m..(i + 1) * m];
                for j in 0..m {
                    dst[j] += src[j].scale(d);
                }
            }
        }
        out
    }

    pub fn d_angular(&self) -> Vec<C2> {
        let mut out = Vec::with_capacity(self.values.len());
        for i in 0..self.rings() {
            out.extend(angular_derivative(self.ring(i)));
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(C2) -> C2) -> PolarSamples {
        PolarSamples {
            radial: self.radial.clone(),
            m: self.m,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Largest pointwise distance to another grid of the same shape.
    pub fn sup_dist(&self, other: &PolarSamples) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }
}

pub fn angular_derivative(ring: &[C2]) -> Vec<C2> {
    let zs: Vec<C> = ring.iter().map(|v| v.z).collect();
    let ws: Vec<C> = ring.iter().map(|v| v.w).collect();
    let dz = fft::derivative(&zs);
    let dw = fft::derivative(&ws);
    dz.into_iter().zip(dw).map(|(z, w)| C2::new(z, w)).collect()
}
