use core::f64::consts::PI;
use folded_core::c2::{c, cis};
use folded_core::error::Error;
use folded_core::geometry::{CharacteristicParam, FoldPoint};
use folded_core::harmonic::*;
use proptest::prelude::*;

const M: usize = 512;

fn loop_of(r: f64, f: impl Fn(f64) -> f64) -> BoundaryLoopSamples<f64> {
    BoundaryLoopSamples::from_fn(M, r, f).unwrap()
}

#[test]
fn dirichlet_examples() {
    let f = solve_dirichlet(&loop_of(1.0, |t| t.cos()), DomainKind::Disk { rho: 1.0 }).unwrap();
    assert!((f.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
    assert!((f.eval(c(0.3, 0.4)) - 0.3).abs() < 1e-14);

    let g = solve_dirichlet(&loop_of(1.0, |t| (3.0 * t).cos()), DomainKind::ExteriorPunctured { rho: 1.0 }).unwrap();
    let z = c(1.7, -0.9);
    assert!((g.eval(z) - (c(1.0, 0.0) / z.powi(3)).re).abs() < 1e-14);
    assert!(g.is_admissible());

    let one = solve_dirichlet(&loop_of(2.0, |_| 1.0), DomainKind::Disk { rho: 2.0 }).unwrap();
    assert!((one.eval(c(0.5, 1.0)) - 1.0).abs() < 1e-14);

    let err = solve_dirichlet(&loop_of(1.0, |_| 1.0), DomainKind::Annulus { rho_in: 1.0, rho_out: 2.0 });
    assert!(matches!(err, Err(Error::BoundaryMismatch(_))));
}

#[test]
fn neumann_examples() {
    let ext = DomainKind::ExteriorPunctured { rho: 1.0 };
    let z0 = solve_neumann_vanishing(&loop_of(1.0, |_| 0.0), ext).unwrap();
    assert!(z0.coeffs.iter().all(|a| a.norm() == 0.0));

    let g = solve_neumann_vanishing(&loop_of(1.0, |t| t.cos()), ext).unwrap();
    // g = Re(1/z): -r ∂r g = cos θ / r
    let z = c(2.0, 1.0);
    assert!((g.eval(z) - (c(1.0, 0.0) / z).re).abs() < 1e-14);

    let bad = solve_neumann_vanishing(&loop_of(1.0, |t| 0.3 + t.cos()), ext);
    assert!(matches!(bad, Err(Error::PeriodObstruction { .. })));
}

#[test]
fn conjugate_examples() {
    let f = solve_dirichlet(&loop_of(1.0, |t| t.cos()), DomainKind::Disk { rho: 1.0 }).unwrap();
    let g = harmonic_conjugate(&f).unwrap();
    assert!((g.eval(c(0.2, 0.7)) - 0.7).abs() < 1e-14);

    let e = solve_dirichlet(&loop_of(1.0, |t| (2.0 * t).cos()), DomainKind::ExteriorPunctured { rho: 1.0 }).unwrap();
    let h = harmonic_conjugate(&e).unwrap();
    let z = c(-1.3, 0.4);
    assert!((h.eval(z) - (c(1.0, 0.0) / (z * z)).im).abs() < 1e-14);

    let data = loop_of(1.0, |t| 0.7 + (2.0 * t).sin() - 0.2 * (5.0 * t).cos());
    let f = solve_dirichlet(&data, DomainKind::Disk { rho: 1.0 }).unwrap();
    let ff = harmonic_conjugate(&harmonic_conjugate(&f).unwrap()).unwrap();
    let z = c(0.1, -0.5);
    let w = c(0.6, 0.2);
    let shift = ff.eval(z) + f.eval(z);
    assert!((ff.eval(w) + f.eval(w) - shift).abs() < 1e-13);
}

#[test]
fn periods() {
    // exact differential d(sin 3θ)
    let exact = loop_of(1.0, |t| 3.0 * (3.0 * t).cos());
    assert!(boundary_period(&exact).abs() < 1e-12);
    let dtheta = loop_of(1.0, |_| 1.0);
    assert!((boundary_period(&dtheta) - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn qtilde_examples() {
    let (f, g) = solve_qtilde(&loop_of(1.0, |_| 0.0)).unwrap();
    assert!(f.values.iter().chain(&g.values).all(|v| v.abs() < 1e-15));
    let (f, g) = solve_qtilde(&loop_of(1.0, |t| t.cos())).unwrap();
    for (j, t) in folded_core::fft::angles(M).into_iter().enumerate() {
        assert!((f.values[j] - t.cos()).abs() < 1e-13);
        // conjugate of Re(1/z) is Im(1/z) = -sin θ on the circle
        assert!((g.values[j] + t.sin()).abs() < 1e-13);
    }
    let (f, g) = solve_qtilde(&loop_of(1.0, |_| 0.8)).unwrap();
    assert!(f.values.iter().all(|v| (v - 0.8).abs() < 1e-14));
    assert!(g.values.iter().all(|v| v.abs() < 1e-14));
}

#[test]
fn annulus_modes() {
    let (r0, r1) = (0.5, 2.0);
    // u = ln r + r^2 cos 2θ + r^{-1} sin θ
    let u = |r: f64, t: f64| r.ln() + r * r * (2.0 * t).cos() + (t.sin()) / r;
    let f = solve_dirichlet_annulus(&loop_of(r0, |t| u(r0, t)), &loop_of(r1, |t| u(r1, t))).unwrap();
    for &(r, t) in &[(0.7, 0.3), (1.2, 2.0), (1.9, 4.0)] {
        let z = cis(t) * r;
        assert!((f.eval(z) - u(r, t)).abs() < 1e-12, "{r} {t}");
    }
    assert!(matches!(harmonic_conjugate(&f), Err(Error::PeriodObstruction { .. })));
}

#[test]
fn under_resolved_data_rejected() {
    let noisy = loop_of(1.0, |t| ((M / 2 - 3) as f64 * t).cos());
    assert!(matches!(
        solve_dirichlet(&noisy, DomainKind::Disk { rho: 1.0 }),
        Err(Error::Resolution { .. })
    ));
}

#[test]
fn degree_d_multiplier() {
    let x = CharacteristicParam::new(c(1.0, 0.0)).unwrap();
    let zero = loop_of(1.0, |_| 0.0);
    let marker = x.at(0.0);
    let l = solve_f_degree_d(&zero, marker, x, 1).unwrap();
    for z in [c(1.5, 0.3), c(-2.0, 4.0)] {
        assert!((l.exp_eval(z) - c(1.0, 0.0) / (z * z)).norm() < 1e-14);
    }
    let l0 = solve_f_degree_d(&zero, marker, x, 0).unwrap();
    assert!(l0.coeffs.iter().all(|a| a.norm() < 1e-15) && l0.log_coeff == 0.0);

    // a unit phase at the marker: v₊(μ) = x(0.1) forces Im L(∞) = -0.4π
    let l = solve_f_degree_d(&zero, x.at(0.1), x, 1).unwrap();
    assert!((l.coeff(0).im + 0.4 * PI).abs() < 1e-14);

    // single mode data gives a single Laurent mode
    let eps = 1e-3;
    let single = loop_of(2.0, |t| eps * t.cos());
    let l = solve_f_degree_d(&single, marker, x, 2).unwrap();
    let nonzero: Vec<i64> = (-(l.n as i64)..=l.n as i64).filter(|&k| l.coeff(k).norm() > 1e-15).collect();
    assert_eq!(nonzero, vec![-1]);

    let off = FoldPoint::project(folded_core::c2::C2::new(c(0.8, 0.0), c(0.6, 0.0))).unwrap();
    assert!(matches!(solve_f_degree_d(&zero, off, x, 1), Err(Error::OffCharacteristic { .. })));
    let period = loop_of(1.0, |_| 0.1);
    assert!(matches!(solve_f_degree_d(&period, marker, x, 1), Err(Error::PeriodObstruction { .. })));
}

fn band_limited(coef: &[(f64, f64)]) -> impl Fn(f64) -> f64 + '_ {
    move |t| coef.iter().enumerate().map(|(k, (a, b))| a * (k as f64 * t).cos() + b * (k as f64 * t).sin()).sum()
}

proptest! {
    #[test]
    fn spectral_exactness(coef in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..64),
                          rho in 0.5..2.0f64) {
        let data = loop_of(rho, band_limited(&coef));
        for kind in [DomainKind::Disk { rho }, DomainKind::ExteriorPunctured { rho }] {
            let f = solve_dirichlet(&data, kind).unwrap();
            let tr = f.trace(rho, M);
            let scale = data.values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-3);
            for (a, b) in tr.iter().zip(&data.values) {
                prop_assert!((a - b).abs() < 1e-10 * scale);
            }
            // mode oracle at an interior point
            let r = if matches!(kind, DomainKind::Disk { .. }) { 0.6 * rho } else { 1.7 * rho };
            let t: f64 = 0.9;
            let q = r / rho;
            let expect: f64 = coef.iter().enumerate().map(|(k, (a, b))| {
                let p = if matches!(kind, DomainKind::Disk { .. }) { q.powi(k as i32) } else { q.powi(-(k as i32)) };
                p * (a * (k as f64 * t).cos() + b * (k as f64 * t).sin())
            }).sum();
            prop_assert!((f.eval(cis(t) * r) - expect).abs() < 1e-10 * (1.0 + expect.abs()));
            // maximum principle
            let max = data.values.iter().cloned().fold(f64::MIN, f64::max);
            prop_assert!(f.eval(cis(2.1) * r) <= max + 1e-9);
        }
    }

    #[test]
    fn conjugate_pair_is_holomorphic(coef in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..32)) {
        let data = loop_of(1.0, band_limited(&coef));
        let f = solve_dirichlet(&data, DomainKind::ExteriorPunctured { rho: 1.0 }).unwrap();
        let g = harmonic_conjugate(&f).unwrap();
        let h = 1e-5;
        for &z in &[c(1.5, 0.2), c(-0.4, 2.2), c(3.0, -3.0)] {
            let fx = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
            let fy = (f.eval(z + c(0.0, h)) - f.eval(z - c(0.0, h))) / (2.0 * h);
            let gx = (g.eval(z + h) - g.eval(z - h)) / (2.0 * h);
            let gy = (g.eval(z + c(0.0, h)) - g.eval(z - c(0.0, h))) / (2.0 * h);
            prop_assert!((fx - gy).abs() < 1e-8 && (fy + gx).abs() < 1e-8);
        }
        // vanishing at the puncture
        prop_assert!(g.coeff(0).re.abs() < 1e-15);
    }

    #[test]
    fn qtilde_is_linear(a in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..16),
                        b in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..16),
                        s in -2.0..2.0f64, t in -2.0..2.0f64) {
        let fa = band_limited(&a);
        let fb = band_limited(&b);
        let (f1, g1) = solve_qtilde(&loop_of(1.0, &fa)).unwrap();
        let (f2, g2) = solve_qtilde(&loop_of(1.0, &fb)).unwrap();
        let (f3, g3) = solve_qtilde(&loop_of(1.0, |x| s * fa(x) + t * fb(x))).unwrap();
        for j in 0..M {
            prop_assert!((f3.values[j] - s * f1.values[j] - t * f2.values[j]).abs() < 1e-10);
            prop_assert!((g3.values[j] - s * g1.values[j] - t * g2.values[j]).abs() < 1e-10);
        }
    }

    #[test]
    fn neumann_matches_conjugate_route(coef in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..32)) {
        // -ρ∂ρ G = ∂θ h for the conjugate G of the Dirichlet extension of h
        let mut c0 = coef.clone();
        c0[0] = (0.0, 0.0);
        let h = loop_of(1.0, band_limited(&c0));
        let dh = BoundaryLoopSamples::new(folded_core::fft::derivative_real(&h.values), 1.0).unwrap();
        let ext = DomainKind::ExteriorPunctured { rho: 1.0 };
        let g_neu = solve_neumann_vanishing(&dh, ext).unwrap();
        let (_, g_dir) = solve_qtilde(&h).unwrap();
        let tr = g_neu.trace(1.0, M);
        for j in 0..M {
            prop_assert!((tr[j] - g_dir.values[j]).abs() < 1e-10);
        }
    }
}
