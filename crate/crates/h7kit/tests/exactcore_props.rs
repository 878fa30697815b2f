use h7kit::exactcore::text::{parse, to_text};
use h7kit::exactcore::*;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn cyc() -> impl Strategy<Value = CycNum> {
    prop::array::uniform6(small_rat()).prop_map(CycNum::new)
}

fn nonzero_cyc() -> impl Strategy<Value = CycNum> {
    cyc().prop_filter("nonzero", |c| !c.is_zero())
}

fn form(nvars: usize, deg: u32) -> impl Strategy<Value = MPoly<CycNum>> {
    let basis = monomials(nvars, deg);
    prop::collection::vec((-3i64..=3, 0i64..7), basis.len()).prop_map(move |cs| {
        MPoly::from_terms(
            nvars,
            basis.iter().cloned().zip(cs).map(|(m, (c, k))| (m, CycNum::zeta_pow(k).times(&CycNum::from_int(c)))),
        )
    })
}

fn small_mat(r: usize, c: usize) -> impl Strategy<Value = Mat<Rat>> {
    prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Mat::from_fn(r, c, |i, j| rat_int(v[i * c + j])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_stay_reduced(a in small_rat(), b in small_rat()) {
        for x in [a.clone() + b.clone(), a.clone() * b.clone(), a - b] {
            prop_assert!(x.denom().is_positive());
            prop_assert!(x.numer().gcd(x.denom()) == 1.into() || x.numer().is_zero());
        }
    }

    #[test]
    fn cyclotomic_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert!(a.minus(&a).is_zero());
    }

    #[test]
    fn cyclotomic_inverse(a in nonzero_cyc()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.times(&inv), CycNum::one());
        prop_assert!(a.norm() > rat_int(0));
    }

    #[test]
    fn zeta_powers_reduce(k in -20i64..20, j in -20i64..20) {
        prop_assert_eq!(CycNum::zeta_pow(k).times(&CycNum::zeta_pow(j)), CycNum::zeta_pow(k + j));
        prop_assert_eq!(CycNum::zeta_pow(7 * k), CycNum::one());
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(), b in cyc(), k in 1i64..7) {
        prop_assert_eq!(a.times(&b).galois(k), a.galois(k).times(&b.galois(k)));
        prop_assert_eq!(a.plus(&b).galois(k), a.galois(k).plus(&b.galois(k)));
        prop_assert_eq!(a.conj(), a.galois(6));
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(), b in cyc()) {
        let lhs = a.times(&b).embed();
        let rhs = a.embed() * b.embed();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn rank_nullity(m in small_mat(3, 5)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat_int(0)));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in small_mat(3, 3), b in small_mat(3, 3)) {
        let lhs = a.mul(&b).det().unwrap();
        prop_assert_eq!(lhs, a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn forms_have_no_zero_terms(f in form(3, 4), g in form(3, 4)) {
        for p in [f.plus(&g), f.minus(&f), f.times(&g)] {
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
            prop_assert!(p.is_homogeneous());
        }
    }

    #[test]
    fn euler_identity(f in form(3, 4)) {
        // Σ xᵢ ∂ᵢf = 4f
        let lhs = (0..3).fold(MPoly::zero(3), |acc, i| acc.plus(&MPoly::var(3, i).times(&f.partial(i))));
        prop_assert_eq!(lhs, f.scale(&CycNum::from_int(4)));
    }

    #[test]
    fn exact_division_inverts_multiplication(f in form(3, 2), g in form(3, 3)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(g.times(&f).div_exact(&f), Some(g));
    }

    #[test]
    fn text_round_trip(f in form(4, 3)) {
        let back: MPoly<CycNum> = parse(&to_text(&f), 4).unwrap();
        prop_assert_eq!(back, f);
    }
}
