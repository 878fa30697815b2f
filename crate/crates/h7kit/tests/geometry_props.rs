use h7kit::apolarity::*;
use h7kit::degen::*;
use h7kit::exactcore::{monomials, CycNum, MPoly, Ring};
use h7kit::moore::*;
use h7kit::numeric::{self as num, C64};
use h7kit::septimics::{apply_c64, kappa, system};
use h7kit::vsp::scheme_type;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn c64() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b))
}

fn cvec(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(c64(), n).prop_filter("nonzero", |v| v.iter().map(|x| x.norm_sqr()).sum::<f64>() > 0.05)
}

fn quartic() -> impl Strategy<Value = PlaneQuartic> {
    prop::collection::vec(-3i64..=3, 15).prop_map(|cs| {
        PlaneQuartic::new(MPoly::from_terms(3, monomials(3, 4).into_iter().zip(cs).map(|(m, c)| (m, CycNum::from_int(c)))))
    })
}

fn line_through(a: &[C64], b: &[C64]) -> Vec<C64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scheme_partition_matches_multiplicities(
        pts in prop::collection::vec(cvec(3), 1..6),
        mults in prop::collection::vec(1usize..4, 6),
        jitter in cvec(3),
    ) {
        // well-separated points, each repeated with tiny perturbations
        let mut distinct: Vec<Vec<C64>> = Vec::new();
        for p in pts {
            if distinct.iter().all(|q| num::proj_dist(q, &p) > 0.2) {
                distinct.push(p);
            }
        }
        let mut weighted = Vec::new();
        let mut expected: Vec<usize> = Vec::new();
        for (p, &m) in distinct.iter().zip(&mults) {
            for k in 0..m {
                let q: Vec<C64> = p.iter().zip(&jitter).map(|(x, j)| x + j * (1e-12 * k as f64)).collect();
                weighted.push((q, 1));
            }
            expected.push(m);
        }
        expected.sort_by(|a, b| b.cmp(a));
        let s = scheme_type(&weighted).unwrap();
        prop_assert_eq!(&s.partition, &expected);
        prop_assert!(s.partition.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(s.partition.iter().sum::<usize>(), weighted.len());
    }

    #[test]
    fn catalecticant_is_symmetric_and_recovers_form(f in quartic()) {
        let c = catalecticant(&f);
        prop_assert_eq!(c.matrix.transpose(), c.matrix.clone());
        prop_assert!(c.rank <= 6);
        prop_assert_eq!(veronese_pairing(&c), f.form.scale(&CycNum::from_int(24)));
        prop_assert!(veronese_trace_pairings(&c).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn split_conics_recover_their_lines(a in cvec(3), b in cvec(3), p in cvec(3), q in cvec(3)) {
        let l1 = line_through(&a, &b);
        let l2 = line_through(&p, &q);
        prop_assume!(num::proj_dist(&l1, &l2) > 0.1);
        let g = DMatrix::from_fn(3, 3, |i, j| (l1[i] * l2[j] + l1[j] * l2[i]) * 0.5);
        let conic = ConicForm { gram: g };
        prop_assert_eq!(conic.rank(1e-8), 2);
        let (m1, m2) = conic.split_lines().unwrap();
        let d = (num::proj_dist(&m1, &l1) + num::proj_dist(&m2, &l2)).min(num::proj_dist(&m1, &l2) + num::proj_dist(&m2, &l1));
        prop_assert!(d < 1e-8, "{}", d);
    }

    #[test]
    fn kappa_is_translation_invariant(p in cvec(7), u in 0i64..7, v in 0i64..7) {
        let sys = system();
        let k0 = kappa(sys, &p).unwrap();
        let k1 = kappa(sys, &apply_c64(&h7kit::heisenberg::heis(u, v), &p)).unwrap();
        prop_assert!(num::proj_dist(&k0.coords, &k1.coords) < 1e-9);
    }

    #[test]
    fn apolar_points_annihilate_minors(y in cvec(4), seed in 0u64..1000) {
        let m = equivariant();
        let pts = apolar_points(&m, &y, seed).unwrap();
        prop_assert_eq!(pts.len(), 6);
        prop_assert!(pts.iter().all(|p| p.residual < APOLAR_TOL));
    }

    #[test]
    fn seven_quadrics_generic_type(a in c64(), b in c64()) {
        prop_assume!(a.norm() > 0.2 && b.norm() > 0.2);
        let s = seven_quadrics(a, b).unwrap();
        prop_assert_eq!(s.label, "(2,2,1,1)");
    }
}

#[test]
fn heptagons_are_symmetric_cycles() {
    for i in 0..3 {
        let h = heptagon(i);
        assert!(h.is_closed_cycle() && h.is_symmetric());
        assert!(span_config(i).distinct());
    }
}

#[test]
fn moore_entries_match_print() {
    let d = skew_construction().diff(&printed());
    assert_eq!(d, vec![(2, 2, vec![(-1, 1, 3)])]);
    assert_eq!(printed().to_text().lines().count(), 3);
}
