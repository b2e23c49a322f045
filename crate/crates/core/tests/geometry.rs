use core::f64::consts::PI;
use folded_core::c2::{c, cis, C2};
use folded_core::cheb::Cheb;
use folded_core::fft;
use folded_core::geometry::*;
use folded_core::grid::PolarSamples;
use proptest::prelude::*;

fn unit(a: f64, b: f64, t: f64, s: f64) -> FoldPoint {
    FoldPoint::project(C2::new(c(a, b), c(t, s))).unwrap()
}

#[test]
fn embed_examples() {
    let p = embed_hemisphere(Side::Plus, C2::ZERO).unwrap();
    assert_eq!(p.x, [1.0, 0.0, 0.0, 0.0, 0.0]);
    let q = embed_hemisphere(Side::Plus, C2::new(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
    assert!((q.x[0]).abs() < 1e-15 && (q.x[1] - 1.0).abs() < 1e-15);
    let r = embed_hemisphere(Side::Minus, C2::new(c(0.6, 0.0), c(0.0, 0.0))).unwrap();
    assert!((r.x[0] + 0.64 / 1.36).abs() < 1e-15);
    assert!((r.x[1] - 1.2 / 1.36).abs() < 1e-15);
    assert!(embed_hemisphere(Side::Plus, C2::new(c(1.1, 0.0), c(0.0, 0.0))).is_err());
}

#[test]
fn alpha_and_reeb() {
    let p = FoldPoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let v = TangentAtFold::new(p, 0.0, C2::new(c(0.0, 2.0 * PI), c(0.0, 0.0))).unwrap();
    assert!((alpha_eval(&v) - 1.0).abs() < 1e-15);
    let r = reeb_vector(p);
    assert_eq!(r.vec, v.vec);
    let fr = fold_frame(p);
    assert!(fr.f[0].vec.z.norm() < 1e-15 && fr.f[1].vec.z.norm() < 1e-15);
}

#[test]
fn reeb_matches_flow_derivative() {
    let p = unit(0.3, -0.2, 0.5, 0.7);
    let h = 1e-6;
    let t = 0.25;
    let a = reeb_flow(p, t + h).c2();
    let b = reeb_flow(p, t - h).c2();
    let fd = (a - b).scale(1.0 / (2.0 * h));
    let exact = reeb_vector(reeb_flow(p, t)).vec;
    assert!(fd.dist(exact) < 1e-8);
}

#[test]
fn one_sided_structures() {
    let p = unit(0.1, 0.2, 0.3, 0.4);
    let fr = fold_frame(p);
    let jp = j_onesided(Side::Plus, &fr.dr);
    let jm = j_onesided(Side::Minus, &fr.dr);
    assert!(jp.vec.dist(fr.l.vec) < 1e-14 && jp.dr.abs() < 1e-14);
    assert!(jm.vec.dist(fr.l.vec.scale(-1.0)) < 1e-14);
    for f in fr.f {
        let a = j_onesided(Side::Plus, &f);
        let b = j_onesided(Side::Minus, &f);
        assert!(a.vec.dist(f.vec.cmul(c(0.0, 1.0))) < 1e-14);
        assert!(a.vec.dist(b.vec) < 1e-15);
    }
    // K = J̃ L lies along the ambient ∂x0 with positive sign
    assert!(fr.k.ambient()[0] > 0.0);
}

#[test]
fn hopf_examples() {
    let p = FoldPoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!(hopf_project(p).n, [0.0, 0.0, 1.0]);
    let q = unit(0.4, 0.1, -0.3, 0.8);
    let a = hopf_project(q);
    let b = hopf_project(reeb_flow(q, 0.37));
    assert!(a.dist(&b) < 1e-14);
    let (z, w) = a.homogeneous();
    let back = hopf_project(FoldPoint::new(z, w).unwrap());
    assert!(back.dist(&a) < 1e-12);
}

#[test]
fn det_omega_signs() {
    let e = embed_hemisphere(Side::Plus, C2::new(c(0.6, 0.0), c(0.0, 0.8))).unwrap();
    assert!(det_omega(&e).abs() < 1e-15);
    let n = Point4Sphere::new([1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(det_omega(&n) > 0.0 && det_omega(&tau(&n)) < 0.0);
    // transverse vanishing along a meridian
    let h: f64 = 1e-6;
    let up = Point4Sphere::new([h.sin(), h.cos(), 0.0, 0.0, 0.0]).unwrap();
    let dn = tau(&up);
    assert!((det_omega(&up) - det_omega(&dn)) / (2.0 * h) > 0.05);
}

#[test]
fn equator_disk_energy() {
    let run = |n: usize, m: usize| {
        let s = PolarSamples::from_fn(Cheb::new(n, 0.0, 1.0), m, |r, t| {
            project_equator(&embed_hemisphere(Side::Plus, C2::new(cis(t).scale(r), c(0.0, 0.0))).unwrap())
        });
        omega_energy(&s).unwrap()
    };
    let coarse = run(32, 64);
    let fine = run(64, 128);
    assert!((fine - 1.0).abs() < 1e-12, "{fine}");
    assert!((coarse - fine).abs() < 1e-10);
    let constant = PolarSamples::from_fn(Cheb::new(16, 0.0, 1.0), 32, |_, _| C2::new(c(0.3, 0.0), c(0.0, 0.0)));
    assert_eq!(omega_energy(&constant).unwrap(), 0.0);
}

#[test]
fn fft_derivative_is_spectral() {
    let m = 64;
    let vals: Vec<_> = fft::angles(m).iter().map(|&t| c((3.0 * t).cos(), (5.0 * t).sin())).collect();
    let d = fft::derivative(&vals);
    for (k, &t) in fft::angles(m).iter().enumerate() {
        let e = c(-3.0 * (3.0 * t).sin(), 5.0 * (5.0 * t).cos());
        assert!((d[k] - e).norm() < 1e-12);
    }
    assert!(fft::nyquist_fraction(&vals) < 1e-20);
}

#[test]
fn chebyshev_quadrature_and_derivative() {
    let ch = Cheb::new(24, 0.5, 2.0);
    let vals: Vec<f64> = ch.nodes.iter().map(|x| x.exp()).collect();
    let i = ch.integrate(&vals);
    assert!((i - (2.0f64.exp() - 0.5f64.exp())).abs() < 1e-13);
    let d = ch.apply(&vals);
    for (a, b) in d.iter().zip(&vals) {
        assert!((a - b).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn frame_invariants(a in -1.0..1.0f64, b in -1.0..1.0f64, t in -1.0..1.0f64, s in -1.0..1.0f64) {
        prop_assume!(a * a + b * b + t * t + s * s > 1e-3);
        let p = unit(a, b, t, s);
        let fr = fold_frame(p);
        let basis = [fr.dr, fr.l, fr.f[0], fr.f[1]];
        for i in 0..4 {
            for j in 0..4 {
                let g = g_prime(&basis[i], &basis[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((g - want).abs() < 1e-9);
            }
        }
        prop_assert!((alpha_eval(&fr.l) - 1.0).abs() < 1e-12);
        prop_assert!(alpha_eval(&fr.f[0]).abs() < 1e-12 && alpha_eval(&fr.f[1]).abs() < 1e-12);
        prop_assert!(pi_f(&fr.l).norm() < 1e-12);
        prop_assert!(hopf_linearity_residual(p) < 1e-8);
    }

    #[test]
    fn involution_and_projection(a in -0.7..0.7f64, b in -0.7..0.7f64, t in -0.7..0.7f64) {
        let y = C2::new(c(a, b), c(t, 0.1));
        prop_assume!(y.norm() <= 1.0);
        let up = embed_hemisphere(Side::Plus, y).unwrap();
        let dn = embed_hemisphere(Side::Minus, y).unwrap();
        prop_assert_eq!(tau(&up), dn);
        let expect = y.scale(2.0 / (1.0 + y.norm_sqr()));
        prop_assert!(project_equator(&up).dist(expect) < 1e-15);
        let nrm: f64 = up.x.iter().map(|v| v * v).sum();
        prop_assert!((nrm - 1.0).abs() < 1e-12);
        let (side, back) = chart_of(&up);
        prop_assert_eq!(side, Side::Plus);
        prop_assert!(back.dist(y) < 1e-14);
    }

    #[test]
    fn equator_is_fixed(t1 in 0.0..6.3f64, t2 in 0.0..6.3f64, r in 0.0..1.0f64) {
        let y = C2::new(cis(t1).scale(r), cis(t2).scale((1.0 - r * r).sqrt()));
        let p = embed_hemisphere(Side::Plus, y).unwrap();
        prop_assert!(p.x[0].abs() < 1e-15);
        prop_assert!(p.tail().dist(y) < 1e-15);
    }

    #[test]
    fn e_f_split_is_pythagorean(x in proptest::array::uniform4(-2.0..2.0f64), a in -1.0..1.0f64, b in 0.1..1.0f64) {
        let p = unit(a, b, 0.3, -0.4);
        let v = from_frame_coords(p, x);
        let e2 = x[0] * x[0] + x[1] * x[1];
        let f = pi_f(&v).norm_sqr();
        prop_assert!((e2 + f - g_prime(&v, &v)).abs() < 1e-9);
    }
}
