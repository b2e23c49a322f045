//! Chebyshev–Lobatto nodes, differentiation and Clenshaw–Curtis weights.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Nodes, differentiation matrix (row-major) and quadrature weights on an
/// interval, nodes ascending.
#[derive(Debug, Clone)]
pub struct Cheb {
    pub nodes: Vec<f64>,
    pub diff: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Cheb {
    /// `n + 1` Lobatto nodes on `[a, b]`.
    pub fn new(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 2 && b > a);
        let np = n + 1;
        let half = 0.5 * (b - a);
        let xs: Vec<f64> = (0..np).map(|j| -(PI * j as f64 / n as f64).cos()).collect();
        let bw: Vec<f64> = (0..np)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == n { 0.5 * s } else { s }
            })
            .collect();
        let mut diff = vec![0.0; np * np];
        for i in 0..np {
            let mut row = 0.0;
            for j in 0..np {
                if i != j {
                    let d = (bw[j] / bw[i]) / (xs[i] - xs[j]);
                    diff[i * np + j] = d / half;
                    row += d;
                }
            }
            diff[i * np + i] = -row / half;
        }
        let weights = clenshaw_curtis(n).into_iter().map(|w| w * half).collect();
        let nodes = xs.iter().map(|x| a + half * (x + 1.0)).collect();
        Cheb { nodes, diff, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the differentiation matrix to a column of values.
    pub fn apply<T>(&self, vals: &[T]) -> Vec<T>
    where
        T: Copy + core::ops::Mul<f64, Output = T> + core::ops::Add<Output = T>,
    {
        let np = self.len();
        (0..np)
            .map(|i| {
                let row = &self.diff[i * np..(i + 1) * np];
                let mut acc = vals[0] * row[0];
                for j in 1..np {
                    acc = acc + vals[j] * row[j];
                }
                acc
            })
            .collect()
    }

    /// Barycentric interpolation of nodal values at `x`.
    pub fn interpolate(&self, vals: &[f64], x: f64) -> f64 {
        let n = self.len() - 1;
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..=n {
            let dx = x - self.nodes[j];
            if dx == 0.0 {
                return vals[j];
            }
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            let wj = if j == 0 || j == n { 0.5 * s } else { s } / dx;
            num += wj * vals[j];
            den += wj;
        }
        num / den
    }

    /// `∫_x^b` of the interpolant, by Clenshaw–Curtis on `[x, b]`.
    pub fn integrate_from(&self, vals: &[f64], x: f64) -> f64 {
        let b = *self.nodes.last().unwrap();
        if x >= b {
            return 0.0;
        }
        let sub = Cheb::new(self.len() - 1, x, b);
        sub.nodes.iter().zip(&sub.weights).map(|(&t, w)| w * self.interpolate(vals, t)).sum()
    }

    pub fn integrate(&self, vals: &[f64]) -> f64 {
        vals.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }
}

/// Weights on [-1, 1] for the nodes `cos(jπ/n)`; symmetric so ordering is moot.
fn clenshaw_curtis(n: usize) -> Vec<f64> {
    let np = n + 1;
    let theta: Vec<f64> = (0..np).map(|j| PI * j as f64 / n as f64).collect();
    let mut w = vec![0.0; np];
    let nf = n as f64;
    let mut v = vec![1.0; n - 1];
    if n % 2 == 0 {
        w[0] = 1.0 / (nf * nf - 1.0);
        w[n] = w[0];
        for k in 1..n / 2 {
            let kf = k as f64;
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * kf * theta[i + 1]).cos() / (4.0 * kf * kf - 1.0);
            }
        }
        for (i, vi) in v.iter_mut().enumerate() {
            *vi -= (nf * theta[i + 1]).cos() / (nf * nf - 1.0);
        }
    } else {
        w[0] = 1.0 / (nf * nf);
        w[n] = w[0];
        for k in 1..=(n - 1) / 2 {
            let kf = k as f64;
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= 2.0 * (2.0 * kf * theta[i + 1]).cos() / (4.0 * kf * kf - 1.0);
            }
        }
    }
    for i in 1..n {
        w[i] = 2.0 * v[i - 1] / nf;
    }
    w
}
