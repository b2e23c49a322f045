use folded_core::c2::{c, cis, C, C2};
use folded_core::error::Error;
use folded_core::moduli::*;
use proptest::prelude::*;

const M: usize = 512;

fn family(c0: C, m: C) -> FoldedMapBundle {
    degree1_family(ModuliParam::new(c0, m).unwrap(), M).unwrap()
}

#[test]
fn family_verifies() {
    for (c0, m) in [(c(0.0, 0.0), c(1.0, 0.0)), (c(0.6, 0.0), c(0.0, 1.0)), (c(-0.3, 0.5), cis(2.0))] {
        let b = family(c0, m);
        let r = verify_folded_holomorphic(&b, 1e-8);
        assert!(r.pass, "{c0} {m}: {r:?}");
    }
}

#[test]
fn family_boundary_values() {
    let b = family(c(0.0, 0.0), c(1.0, 0.0));
    for (j, v) in b.v_pair.v_plus.boundary().iter().enumerate() {
        let z = cis(2.0 * std::f64::consts::PI * j as f64 / M as f64);
        assert!(v.dist(C2::new(z, c(0.0, 0.0))) < 1e-14);
    }
    let b = family(c(0.6, 0.0), c(0.0, 1.0));
    for v in b.v_pair.v_plus.boundary() {
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }
    let s = SigmaData::from_bundle(&b);
    for y in &s.y_plus {
        let expect = (0.64f64 + 0.36).sqrt();
        assert!((y.norm() - expect).abs() < 1e-12);
    }
}

#[test]
fn gap_and_lambda_closed_forms() {
    for c0 in [c(0.0, 0.0), c(0.5, 0.2)] {
        let b = family(c0, cis(0.3));
        let s = SigmaData::from_bundle(&b);
        let (p, q) = s.alpha_dtheta();
        let gap_expect = (1.0 + c0.norm_sqr()) / (1.0 - c0.norm_sqr());
        for (x, y) in p.iter().zip(&q) {
            assert!((-y / x - gap_expect).abs() < 1e-9, "{}", -y / x);
        }
        let (lt, ljt) = s.lambda();
        for (a, b) in lt.iter().zip(&ljt) {
            assert!(a.abs() < 1e-9);
            assert!((b - c0.norm_sqr() / std::f64::consts::PI).abs() < 1e-9);
        }
    }
}

#[test]
fn energies_and_identities() {
    let mut rows = Vec::new();
    for c0 in [c(0.0, 0.0), c(0.3, 0.1), c(0.0, 0.7)] {
        let e = family(c0, cis(1.1)).energies;
        let n = c0.norm_sqr();
        assert!((e.u_plus - (1.0 - n)).abs() < 1e-9, "{e:?}");
        assert!((e.u_minus - (1.0 + n)).abs() < 1e-9, "{e:?}");
        assert!((e.v_plus - e.v_minus).abs() < 1e-7, "{e:?}");
        rows.push((e.u_plus + e.v_plus, e.u_minus - e.v_minus, e.u_plus + e.u_minus));
    }
    for r in &rows {
        assert!((r.0 - rows[0].0).abs() < 1e-6);
        assert!((r.1 - rows[0].1).abs() < 1e-6);
        assert!((r.2 - rows[0].2).abs() < 1e-6);
    }
}

#[test]
fn guard_and_param_errors() {
    let p = ModuliParam::new(c(0.995, 0.0), c(1.0, 0.0)).unwrap();
    assert!(matches!(degree1_family(p, M), Err(Error::Guard(_))));
    assert!(ModuliParam::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    assert!(ModuliParam::new(c(0.1, 0.0), c(2.0, 0.0)).is_err());
}

#[test]
fn naive_reflection_fails_marker() {
    let mut b = family(c(0.4, 0.0), c(1.0, 0.0));
    b.v_pair.v_minus = b.v_pair.v_plus.clone();
    b.v_pair.v_minus.multiplicity = -1;
    let r = verify_folded_holomorphic(&b, 1e-8);
    assert!(!r.pass);
    assert!(r.conjugate.marker_defect > 0.1, "{:?}", r.conjugate);
}

#[test]
fn perturbed_boundary_is_reported() {
    let mut b = family(c(0.2, 0.1), c(1.0, 0.0));
    for (j, v) in b.v_pair.v_plus.samples.values[..M].iter_mut().enumerate() {
        let t = (j as f64 * 0.7).sin();
        *v = (*v + C2::new(c(1e-3 * t, 0.0), c(0.0, 0.0))).normalized();
    }
    let r = verify_folded_holomorphic(&b, 1e-8);
    assert!(!r.pass);
    assert!(r.boundary_plus > 3e-4 && r.boundary_plus < 3e-3, "{}", r.boundary_plus);
}

#[test]
fn compactification_table() {
    let path: Vec<C> = [0.0, 0.5, 0.9, 0.99].iter().map(|&r| c(r, 0.0)).collect();
    let rows = compactification_sample(&path, cis(0.4), M).unwrap();
    for r in &rows {
        assert!((r.e_total - rows[0].e_total).abs() < 1e-6);
    }
    for w in rows.windows(2) {
        assert!(w[1].e_uplus < w[0].e_uplus);
    }
    let lim = rows[3].limit.unwrap();
    assert!(lim.dist(C2::new(c(0.0, 0.0), cis(0.4))) < 1e-14);
    assert!(rows[0].limit.is_none());
    let phase = compactification_sample(&[cis(1.0) * 0.9], c(1.0, 0.0), 64).unwrap();
    assert!(phase[0].limit.unwrap().dist(C2::new(c(0.0, 0.0), cis(1.0))) < 1e-14);
}

#[test]
fn hopf_reduction() {
    let base = hopf_reduce(ModuliParam::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap());
    for t in [0.3, 1.0, 4.0] {
        let p = hopf_reduce(ModuliParam::new(c(0.0, 0.0), cis(t)).unwrap());
        assert!(p.dist(&base) < 1e-14);
    }
    let a = hopf_reduce(ModuliParam::new(c(0.5, 0.0), c(1.0, 0.0)).unwrap());
    let b = hopf_reduce(ModuliParam::new(c(0.5, 0.0), c(0.0, 1.0)).unwrap());
    assert!(a.dist(&b) < 1e-14);
    let d = hopf_reduce(ModuliParam::new(c(0.2, 0.0), c(1.0, 0.0)).unwrap());
    assert!(a.dist(&d) > 1e-3);
}

#[test]
fn degree_d_reproduces_family() {
    let (c0, m) = (c(0.3, -0.2), cis(0.9));
    let a = (1.0 - c0.norm_sqr()).sqrt();
    let curve = CurveInput::new(vec![c(0.0, 0.0), m * a], vec![m * c0]).unwrap();
    let b = construct_degree_d(&curve, m, M).unwrap();
    let f = family(c0, m);
    assert!((b.rho_sigma - 1.0).abs() < 1e-12);
    assert!(b.u_plus.sup_dist(&f.u_plus) < 1e-7);
    assert!(b.u_minus.sup_dist(&f.u_minus) < 1e-7, "{}", b.u_minus.sup_dist(&f.u_minus));
    assert!(b.v_pair.v_minus.samples.sup_dist(&f.v_pair.v_minus.samples) < 1e-7);
    assert!(verify_folded_holomorphic(&b, 1e-7).pass);
}

#[test]
fn degree_two_curve() {
    let curve = CurveInput::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.3, 0.0)]).unwrap();
    let (rho, defect) = fold_radius(&curve).unwrap();
    assert!((rho.powi(4) + 0.09 - 1.0).abs() < 1e-12 && defect < 1e-12);
    let b = construct_degree_d(&curve, c(1.0, 0.0), M).unwrap();
    let r = verify_folded_holomorphic(&b, 1e-7);
    assert!(r.pass, "{r:?}");
    assert_eq!(b.v_pair.v_minus.multiplicity, -2);
}

#[test]
fn off_center_fold_is_tier_violation() {
    let curve = CurveInput::new(vec![c(5.0, 0.0), c(1.0, 0.0)], vec![c(0.1, 0.0)]).unwrap();
    assert!(matches!(construct_degree_d(&curve, c(1.0, 0.0), 64), Err(Error::TierViolation(_))));
    let curve = CurveInput::new(vec![c(0.2, 0.0), c(1.0, 0.0)], vec![c(0.1, 0.0)]).unwrap();
    assert!(matches!(fold_radius(&curve), Err(Error::TierViolation(_))));
}

#[test]
fn curve_input_validation() {
    assert!(CurveInput::new(vec![c(1.0, 0.0)], vec![]).is_err());
    assert!(CurveInput::new(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).is_err());
    assert_eq!(CurveInput::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], vec![]).unwrap().degree().unwrap(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn energies_depend_only_on_abs_c(r in 0.0f64..0.9, phi in 0.0f64..6.28, t in 0.0f64..6.28) {
        let b = degree1_family(ModuliParam::new(cis(phi) * r, cis(t)).unwrap(), 128).unwrap();
        let e = b.energies;
        prop_assert!((e.u_plus - (1.0 - r * r)).abs() < 1e-8);
        prop_assert!((e.u_minus - (1.0 + r * r)).abs() < 1e-8);
        let rep = verify_folded_holomorphic(&b, 1e-8);
        prop_assert!(rep.pass, "{:?}", rep);
    }
}
