use h7kit::numeric::{self as num, C64};
use h7kit::thetacurves::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn tau() -> impl Strategy<Value = C64> {
    (-0.5f64..0.5, 0.8f64..2.0).prop_map(|(a, b)| C64::new(a, b))
}

fn z() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn truncation_tail_is_negligible(t in tau()) {
        let m = EllipticModel::new(t).unwrap();
        // log-size of the m-th term on the strip |Im w| ≤ 2 Im τ
        let log_term = |k: f64| -PI * t.im * k * k / 7.0 + 2.0 * PI * k * 2.0 * t.im;
        let peak = (0..=m.max_terms).map(|k| log_term(k as f64)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(log_term(m.max_terms as f64 + 1.0) - peak < (1e-14f64).ln());
    }

    #[test]
    fn translation_by_torsion_is_heisenberg(t in tau(), w in z()) {
        let m = EllipticModel::new(t).unwrap();
        let g = h7kit::heisenberg::generators();
        let f = m.point(w);
        let a = h7kit::septimics::apply_c64(&g.tau, &f);
        let b = h7kit::septimics::apply_c64(&g.sigma.inverse(), &f);
        prop_assert!(num::proj_dist(&m.point(w + 1.0 / 7.0), &a) < 1e-9);
        prop_assert!(num::proj_dist(&m.point(w + t / 7.0), &b) < 1e-9);
    }

    #[test]
    fn lattice_periodicity(t in tau(), w in z(), p in -2i32..3, q in -2i32..3) {
        let m = EllipticModel::new(t).unwrap();
        let shifted = w + C64::new(p as f64, 0.0) + t * q as f64;
        prop_assert!(num::proj_dist(&m.point(w), &m.point(shifted)) < 1e-9);
    }

    #[test]
    fn negation_is_iota(t in tau(), w in z()) {
        let m = EllipticModel::new(t).unwrap();
        let g = h7kit::heisenberg::generators();
        let a = h7kit::septimics::apply_c64(&g.iota, &m.point(w));
        prop_assert!(num::proj_dist(&m.point(-w), &a) < 1e-9);
    }

    #[test]
    fn curve_lies_on_septimics(seed in 0u64..10_000) {
        let m = EllipticModel::random(seed);
        prop_assert!(septimic_on_curve(&m, 5, seed) < 1e-6);
    }

    #[test]
    fn scroll_sections_have_length_six(seed in 0u64..10_000, a in 0.08f64..0.42, b in 0.08f64..0.42) {
        let m = EllipticModel::random(seed);
        let s = scroll_plane_section(&m, m.tau * b + a).unwrap();
        prop_assert_eq!(s.length(), 6);
        prop_assert_eq!(s.label(), "(2,1,1,1,1)");
    }
}

#[test]
fn rejects_lower_half_plane() {
    assert!(matches!(EllipticModel::new(C64::new(0.1, -1.0)), Err(ThetaError::BadTau(_))));
}
