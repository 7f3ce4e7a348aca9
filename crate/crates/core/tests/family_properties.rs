use std::sync::OnceLock;

use h3calc::family::{
    assemble_theorem, degeneracy_class, derive, excess_ledger, family_ring, pushforward,
    pushforward_chain, pushforward_degree_one, Derivation, DivisorClassOnS, Variant,
};
use h3calc::graded_algebra::ChowClass;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn base_class() -> impl Strategy<Value = DivisorClassOnS> {
    (rational(), rational(), rational()).prop_map(|(l, d0, d1)| DivisorClassOnS {
        lambda: l,
        delta0: d0,
        delta1: d1,
        kappa: BigRational::from_integer(0.into()),
    })
}

fn with_kappa() -> impl Strategy<Value = DivisorClassOnS> {
    (base_class(), rational()).prop_map(|(mut d, k)| {
        d.kappa = k;
        d
    })
}

const DEGREE_ONE: [&str; 6] = ["K", "X", "Y", "pl", "pd0", "pd1"];

fn degree_one_class(coeffs: &[BigRational]) -> ChowClass {
    let ring = family_ring();
    let mut c = ring.zero();
    for (name, q) in DEGREE_ONE.iter().zip(coeffs) {
        c = &c + &ring.generator(name).unwrap().scale(q);
    }
    c
}

#[test]
fn degeneracy_class_matches_hand_display() {
    let ring = family_ring();
    let g = |n: &str| ring.generator(n).unwrap();
    let (k, x, pl, pd1) = (g("K"), g("X"), g("pl"), g("pd1"));
    let three_k_2x = &k.scale(&BigRational::from_integer(3.into()))
        - &x.scale(&BigRational::from_integer(2.into()));
    let two_k_x = &k.scale(&BigRational::from_integer(2.into())) - &x;
    let display =
        &(&(&(&pd1 - &pl) * &three_k_2x) + &(&three_k_2x * &three_k_2x)) - &(&(&k - &x) * &two_k_x);
    assert_eq!(degeneracy_class(&ring, Variant::Stable).unwrap(), display);
    assert!(degeneracy_class(&ring, Variant::Stable)
        .unwrap()
        .graded_part(1)
        .unwrap()
        .is_zero());
}

#[test]
fn verified_ledger_gives_theorem() {
    let ring = family_ring();
    let p = pushforward_chain(&ring, Variant::Stable).unwrap();
    let t = assemble_theorem(&p.result, &excess_ledger().unwrap()).unwrap();
    assert_eq!(t, DivisorClassOnS::new(9, -1, -3, 0));
}

fn stable_derivation() -> &'static Derivation {
    static D: OnceLock<Derivation> = OnceLock::new();
    D.get_or_init(|| derive(Variant::Stable, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_formula(alpha in base_class(), coeffs in proptest::collection::vec(rational(), DEGREE_ONE.len())) {
        let ring = family_ring();
        let c = degree_one_class(&coeffs);
        let lhs = pushforward(&(&alpha.pullback(&ring).unwrap() * &c)).unwrap();
        let rhs = alpha.scale(&pushforward_degree_one(&c).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_substitution_commutes_with_linear_maps(a in with_kappa(), b in with_kappa(), s in rational(), t in rational()) {
        let combined = a.scale(&s).add(&b.scale(&t));
        prop_assert_eq!(
            combined.eliminate_kappa(),
            a.eliminate_kappa().scale(&s).add(&b.eliminate_kappa().scale(&t))
        );
    }

    #[test]
    fn theorem_degree_is_linear_in_fiber_counts(l in -20i64..20, n0 in 0i64..10, n1 in 0i64..10) {
        let d = stable_derivation();
        let ledger = d.ledger.as_ref().unwrap();
        let theorem = d.theorem.as_ref().unwrap();
        let lhs = theorem.degree(l, n0, n1) * BigRational::from_integer(8.into());
        let rhs = d.chain.result.degree(l, n0, n1)
            - BigRational::from_integer(ledger.point_count(n0, n1).into());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(theorem.degree(l, n0, n1), BigRational::from_integer((9 * l - n0 - 3 * n1).into()));
    }
}

#[test]
fn smooth_boundary_coefficients_vanish() {
    let ring = family_ring();
    let p = pushforward_chain(&ring, Variant::Smooth).unwrap();
    assert_eq!(p.before_kappa, DivisorClassOnS::new(-12, 0, 0, 7));
    assert_eq!(p.result, DivisorClassOnS::new(72, 0, 0, 0));
}
