use h7kit::exactcore::{CycNum, Mat, Ring};
use h7kit::heisenberg::*;
use h7kit::apolarity::proportional;
use h7kit::septimics::{fourier_sl, iota_sl, system};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 1..6)
}

fn eval(w: &[usize]) -> GroupElement {
    let g = generators();
    let gens = g.all();
    w.iter().fold(GroupElement::identity(N), |acc, &i| acc.mul(gens[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translations_compose(u in 0i64..7, v in 0i64..7, u2 in 0i64..7, v2 in 0i64..7) {
        prop_assert!(heis(u, v).mul(&heis(u2, v2)).proj_eq(&heis(u + u2, v + v2)));
    }

    #[test]
    fn sl2_image_is_multiplicative(a in word(), b in word()) {
        let (x, y) = (eval(&a), eval(&b));
        let lhs = sl2_image(&x.mul(&y)).unwrap();
        let rhs = sl2_mul(&sl2_image(&x).unwrap(), &sl2_image(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalizer_words_are_invertible_and_normalize(w in word(), u in 0i64..7, v in 0i64..7) {
        let g = eval(&w);
        prop_assert_eq!(g.mul(&g.inverse()).matrix, Mat::identity(N));
        // the conjugate of a translation is again a translation
        let c = heis(u, v).conjugate_by(&g);
        prop_assert!((0..7).any(|a| (0..7).any(|b| c.proj_eq(&heis(a, b)))));
    }

    #[test]
    fn iota_inverts_translations(u in 0i64..7, v in 0i64..7) {
        let g = generators();
        prop_assert!(heis(u, v).conjugate_by(&g.iota).proj_eq(&heis(-u, -v)));
    }

    #[test]
    fn conjugate_involutions_split(u in 0i64..7, v in 0i64..7) {
        let t = heis(u, v);
        let inv = generators().iota.conjugate_by(&t);
        let sp = eigenspace_split(&inv).unwrap();
        prop_assert_eq!((sp.plane.len(), sp.space.len()), (3, 4));
        let all: Vec<Vec<CycNum>> = sp.plane.iter().chain(&sp.space).cloned().collect();
        prop_assert_eq!(h7kit::exactcore::matrix::span_rank(&all), 7);
        for p in &sp.plane {
            prop_assert_eq!(inv.matrix.mul_vec(p), p.iter().map(|x| x.negate()).collect::<Vec<_>>());
        }
        for p in &sp.space {
            prop_assert_eq!(&inv.matrix.mul_vec(p), p);
        }
    }
}

#[test]
fn septimic_basis_is_invariant() {
    let g = generators();
    let sys = system();
    // ι itself negates odd-degree forms; −ι is the lift that fixes them
    for e in [&g.sigma, &g.tau, &iota_sl()] {
        for b in &sys.basis {
            assert_eq!(&act_on_poly(e, b).unwrap(), b);
        }
    }
    for b in &sys.basis {
        assert_eq!(act_on_poly(&g.iota, b).unwrap(), b.negate());
    }
    assert!(proportional(&act_on_poly(&fourier_sl(), &sys.trivial_line).unwrap(), &sys.trivial_line));
}
