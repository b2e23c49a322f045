use folded_core::c2::{c, C2};
use folded_core::error::Error;
use folded_core::geometry::FoldPoint;
use folded_core::polarization::*;
use proptest::prelude::*;

fn j0() -> M4 {
    let mut j = M4::zeros();
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    j
}

fn omega0() -> M4 {
    -j0()
}

fn block(r: f64, f: f64) -> M4 {
    let mut o = M4::zeros();
    o[(0, 1)] = r;
    o[(1, 0)] = -r;
    o[(2, 3)] = f;
    o[(3, 2)] = -f;
    o
}

#[test]
fn standard_structures() {
    let dec = skew_endomorphism(&M4::identity(), &omega0()).unwrap_err();
    // both pairs have |λ| = 1, so the splitting is degenerate
    assert!(matches!(dec, Error::DegenerateSplitting { .. }));
    let dec = skew_endomorphism(&M4::identity(), &block(1.0, 1.0 + 1e-6)).unwrap();
    assert!((dec.a - j0()).amax() < 2e-6);
    let t = polarize(&dec).unwrap();
    assert!((t.j - j0()).amax() < 1e-12);
}

#[test]
fn small_block_is_e_plane() {
    let dec = skew_endomorphism(&M4::identity(), &block(0.1, 1.0)).unwrap();
    assert!((dec.eigen_pairs[0].0 - 0.1).abs() < 1e-14);
    assert!((dec.eigen_pairs[1].0 - 1.0).abs() < 1e-14);
    // E spans the first two coordinates
    for col in 0..2 {
        assert!(dec.e_plane[(2, col)].abs() < 1e-12 && dec.e_plane[(3, col)].abs() < 1e-12);
    }
}

#[test]
fn scaling_is_normalized_away() {
    for lam in [0.01, 3.0, 250.0] {
        let dec = skew_endomorphism(&M4::identity(), &(block(1.0, 2.0) * lam)).unwrap();
        let t = polarize(&dec).unwrap();
        assert!((t.j - j0()).amax() < 1e-12);
    }
}

#[test]
fn e_block_follows_sign_of_det() {
    // ω = -0.1 μ ⊕ ω_F gives A_E = -0.1 J̃, det ω < 0
    let dec = skew_endomorphism(&M4::identity(), &block(-0.1, 1.0)).unwrap();
    let t = polarize(&dec).unwrap();
    assert!(t.det_omega < 0.0);
    assert!((t.j[(1, 0)] + 1.0).abs() < 1e-12 && (t.j[(0, 1)] - 1.0).abs() < 1e-12);
    assert!((t.j[(3, 2)] - 1.0).abs() < 1e-12);
}

#[test]
fn singular_block_rejected() {
    let dec = skew_endomorphism(&M4::identity(), &block(0.0, 1.0)).unwrap();
    assert!(polarize(&dec).is_err());
}

#[test]
fn one_sided_limits_at_fold() {
    let q = FoldPoint::project(C2::new(c(0.3, 0.4), c(-0.5, 0.2))).unwrap();
    let rep = fold_limit_check(q, &[1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4]).unwrap();
    assert!(rep.f_mismatch < 1e-6, "{}", rep.f_mismatch);
    assert!(rep.e_sum < 1e-6, "{}", rep.e_sum);
    assert!(rep.rate >= 0.9, "{}", rep.rate);
    assert!(rep.deviation_plus.last().unwrap() < &1e-3);
}

#[test]
fn meridian_sign_of_det() {
    let q = FoldPoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert!(meridian_triple(q, 0.2).unwrap().det_omega > 0.0);
    assert!(meridian_triple(q, -0.2).unwrap().det_omega < 0.0);
}

fn spd(seed: [f64; 10]) -> M4 {
    let mut b = M4::zeros();
    let mut k = 0;
    for i in 0..4 {
        for j in 0..=i {
            b[(i, j)] = seed[k];
            k += 1;
        }
    }
    b * b.transpose() + M4::identity() * 0.5
}

fn skew(seed: [f64; 6]) -> M4 {
    let mut o = M4::zeros();
    let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (k, &(i, j)) in idx.iter().enumerate() {
        o[(i, j)] = seed[k];
        o[(j, i)] = -seed[k];
    }
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn polarize_invariants(gs in proptest::array::uniform10(-1.0..1.0f64),
                           os in proptest::array::uniform6(-2.0..2.0f64)) {
        let g = spd(gs);
        let o = skew(os);
        let dec = match skew_endomorphism(&g, &o) {
            Ok(d) => d,
            Err(_) => return Ok(()),
        };
        prop_assume!(dec.eigen_pairs[1].0 - dec.eigen_pairs[0].0 > 1e-3);
        prop_assume!(dec.eigen_pairs[0].0 > 1e-3);
        // g-skewness of A
        let ga = g * dec.a;
        prop_assert!((ga + ga.transpose()).amax() < 1e-10 * (1.0 + ga.amax()));
        // E and F are ω-orthogonal and g-orthogonal
        let cross = dec.e_plane.transpose() * o * dec.f_plane;
        prop_assert!(cross.amax() < 1e-10);
        let gcross = dec.e_plane.transpose() * g * dec.f_plane;
        prop_assert!(gcross.amax() < 1e-10);
        let t = polarize(&dec).unwrap();
        let (j2, inv, compat) = t.residuals();
        let scale = 1.0 + g.amax();
        prop_assert!(j2 < 1e-9 && inv < 1e-9 * scale && compat < 1e-9 * scale);
        prop_assert!(t.g.cholesky().is_some());
        let dec2 = skew_endomorphism(&g, &(o * 7.5)).unwrap();
        let t2 = polarize(&dec2).unwrap();
        let dj = (t2.j - t.j).amax();
        prop_assert!(dj < 1e-10, "dj {} |j| {} gap {:?}", dj, t.j.amax(), dec.eigen_pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    }
}
