use std::sync::Arc;

use nashlift_core::algebra::{int, Monomial, MonomialOrder, Polynomial, Ring};
use nashlift_core::groebner::Ideal;
use proptest::prelude::*;

fn ring() -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex)
}

fn poly_strategy(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    let exps = (0..=max_deg, 0..=max_deg, 0..=max_deg).prop_map(move |(a, b, c)| {
        let mut e = [a, b, c];
        while e.iter().sum::<u32>() > max_deg {
            let i = (0..3).max_by_key(|&i| e[i]).unwrap();
            e[i] -= 1;
        }
        e
    });
    let coeff = prop_oneof![-3i64..=-1, 1i64..=3];
    prop::collection::vec((exps, coeff), 1..=max_terms)
}

fn build(r: &Arc<Ring>, terms: &[([u32; 3], i64)]) -> Polynomial {
    Polynomial::from_terms(r, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), int(*c))))
}

fn nonzero(ps: Vec<Polynomial>) -> Vec<Polynomial> {
    ps.into_iter().filter(|p| !p.is_zero()).collect()
}

fn same(a: &Ideal, b: &Ideal) -> bool {
    a.contains_ideal(b) && b.contains_ideal(a)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn explicit_combinations_are_members(
        gens in prop::collection::vec(poly_strategy(3, 2), 1..=3),
        mults in prop::collection::vec(poly_strategy(2, 2), 3),
    ) {
        let r = ring();
        let gens = nonzero(gens.iter().map(|g| build(&r, g)).collect());
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let mut f = Polynomial::zero(&r);
        for (g, m) in gens.iter().zip(&mults) {
            f = &f + &(g * &build(&r, m));
        }
        prop_assert!(ideal.normal_form(&f).is_zero());
        prop_assert!(ideal.contains(&f));
        let gb = ideal.groebner_basis();
        prop_assert!(gb.is_reduced());
        prop_assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn normal_form_is_congruent(
        gens in prop::collection::vec(poly_strategy(3, 2), 1..=2),
        f in poly_strategy(4, 3),
    ) {
        let r = ring();
        let gens = nonzero(gens.iter().map(|g| build(&r, g)).collect());
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens).unwrap();
        let f = build(&r, &f);
        let nf = ideal.normal_form(&f);
        prop_assert!(ideal.contains(&(&f - &nf)));
        prop_assert_eq!(ideal.normal_form(&nf), nf);
    }

    #[test]
    fn elimination_is_idempotent(gens in prop::collection::vec(poly_strategy(3, 2), 1..=3)) {
        let r = ring();
        let gens = nonzero(gens.iter().map(|g| build(&r, g)).collect());
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens).unwrap();
        let once = ideal.eliminate(&[1, 2]);
        let twice = once.eliminate(&[1, 2]);
        prop_assert!(same(&once, &twice));
        prop_assert!(ideal.contains_ideal(&once));
        for g in once.generators() {
            prop_assert!(!g.support().contains(&0));
        }
    }

    #[test]
    fn saturation_is_idempotent(
        gens in prop::collection::vec(poly_strategy(3, 2), 1..=2),
        f in poly_strategy(2, 1),
    ) {
        let r = ring();
        let gens = nonzero(gens.iter().map(|g| build(&r, g)).collect());
        let f = build(&r, &f);
        prop_assume!(!gens.is_empty() && !f.is_zero());
        let ideal = Ideal::new(&r, gens).unwrap();
        let once = ideal.saturate(&f).unwrap();
        let twice = once.saturate(&f).unwrap();
        prop_assert!(same(&once, &twice));
        prop_assert!(once.contains_ideal(&ideal));
    }

    #[test]
    fn dimension_ignores_variable_order(gens in prop::collection::vec(poly_strategy(3, 2), 1..=3)) {
        let r = ring();
        let gens = nonzero(gens.iter().map(|g| build(&r, g)).collect());
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let permuted = Ring::new(&["z", "x", "y"], MonomialOrder::GrevLex);
        let moved: Vec<Polynomial> = gens.iter().map(|g| g.remap(&permuted, &[1, 2, 0])).collect();
        let other = Ideal::new(&permuted, moved).unwrap();
        prop_assert_eq!(ideal.dimension(), other.dimension());
        prop_assert_eq!(ideal.dimension(), ideal.dimension_in(MonomialOrder::Lex));
    }
}
