use std::sync::Arc as Shared;

use nashlift_core::algebra::{int, parse_polynomial, Monomial, Polynomial, Rational};
use nashlift_core::arcs::{
    geometric_criterion_test, lift_through_tower, parameter_ring, univariate_coefficients, Arc, CriterionReport,
    TruncatedSeries, Valuation, Verdict,
};
use nashlift_core::geometry::AffineChart;
use nashlift_core::nash::Ladder;
use proptest::prelude::*;

fn chart(text: &str) -> Shared<AffineChart> {
    Shared::new(AffineChart::from_text(text).unwrap())
}

fn finite(report: &CriterionReport) -> Vec<i64> {
    report.valuations.iter().map(|v| v.valuation.finite().unwrap()).collect()
}

/// Each arc lifts to a smooth chart and its ladder valuations are
/// eventually geometric with ratio n+2.
#[test]
fn criterion_matches_lifting_on_desk_set() {
    let cases = [
        ("vars x y; ideal y^2 - x^3;", "x = t^2; y = t^3;", 3, 1),
        ("vars x y; ideal y^2 - x^5;", "x = t^2; y = t^5;", 3, 2),
        ("vars x y z; ideal x*y - z^2;", "x = t; y = t; z = t;", 3, 1),
    ];
    for (var, arc_text, depth, level) in cases {
        let c = chart(var);
        let a = Arc::parse(&c, arc_text).unwrap();
        let lift = lift_through_tower(&a, 4, 0).unwrap();
        assert_eq!(lift.stabilized_at, Some(level), "{var}");
        assert!(lift.round_trip, "{var}");
        let ladder = Ladder::build(&c, depth, None, 0).unwrap();
        let report = geometric_criterion_test(&a, &ladder).unwrap();
        let ratio = ladder.n() as u64 + 2;
        assert!(
            matches!(report.verdict, Verdict::EventuallyGeometric { ratio: r, .. } if r == ratio),
            "{var}: {:?}",
            report.verdict
        );
    }
}

#[test]
fn cone_valuations() {
    // v_1, v_2 frozen from tools/oracles/cone_ladder.py (frame basis x, y)
    let cone = chart("vars x y z; ideal x*y - z^2;");
    let ladder = Ladder::build(&cone, 3, None, 0).unwrap();
    assert_eq!(ladder.frame().basis(), &[0, 1]);
    let diagonal = Arc::parse(&cone, "x = t; y = t; z = t;").unwrap();
    let report = geometric_criterion_test(&diagonal, &ladder).unwrap();
    assert_eq!(report.base_valuation, Valuation::Finite(1));
    assert_eq!(finite(&report), vec![2, 8, 32]);
    let skew = Arc::parse(&cone, "x = t^2; y = t^4; z = t^3;").unwrap();
    let report = geometric_criterion_test(&skew, &ladder).unwrap();
    assert_eq!(finite(&report), vec![3, 12, 48]);
    assert_eq!(report.verdict, Verdict::EventuallyGeometric { ratio: 4, onset: 1 });
}

/// Away from both frames' degeneracy loci the valuations agree.
#[test]
fn frame_choice_does_not_change_valuations() {
    let cusp = chart("vars x y; ideal y^2 - x^3;");
    let a = Arc::parse(&cusp, "x = 1 + 2t + t^2; y = 1 + 3t + 3t^2 + t^3;").unwrap();
    let fx = Ladder::build(&cusp, 2, Some(&[0]), 0).unwrap();
    let fy = Ladder::build(&cusp, 2, Some(&[1]), 0).unwrap();
    let rx = geometric_criterion_test(&a, &fx).unwrap();
    let ry = geometric_criterion_test(&a, &fy).unwrap();
    assert!(!rx.frame_dependent() && !ry.frame_dependent());
    assert_eq!(finite(&rx), finite(&ry));

    let cone = chart("vars x y z; ideal x*y - z^2;");
    let b = Arc::parse(&cone, "x = 1 + 2t + t^2; y = 1; z = 1 + t;").unwrap();
    let f01 = Ladder::build(&cone, 2, Some(&[0, 1]), 0).unwrap();
    let f02 = Ladder::build(&cone, 2, Some(&[0, 2]), 0).unwrap();
    assert_ne!(f01.frame().basis(), f02.frame().basis());
    let r01 = geometric_criterion_test(&b, &f01).unwrap();
    let r02 = geometric_criterion_test(&b, &f02).unwrap();
    assert!(!r01.frame_dependent() && !r02.frame_dependent());
    assert_eq!(finite(&r01), finite(&r02));
}

/// At the singular point both certificates vanish: the arc is flagged, the
/// numbers differ, the verdict does not.
#[test]
fn singular_arcs_are_flagged_as_frame_dependent() {
    let cusp = chart("vars x y; ideal y^2 - x^3;");
    let a = Arc::parse(&cusp, "x = t^2; y = t^3;").unwrap();
    let rx = geometric_criterion_test(&a, &Ladder::build(&cusp, 3, Some(&[0]), 0).unwrap()).unwrap();
    let ry = geometric_criterion_test(&a, &Ladder::build(&cusp, 3, Some(&[1]), 0).unwrap()).unwrap();
    assert!(rx.frame_dependent() && ry.frame_dependent());
    assert_eq!(finite(&rx), vec![5, 15, 45]);
    assert_eq!(finite(&ry), vec![4, 12, 36]);
    assert_eq!(rx.verdict, ry.verdict);
}

fn series_strategy() -> impl Strategy<Value = (Vec<i64>, usize)> {
    (prop::collection::vec(-4i64..=4, 1..8), 4usize..12)
}

fn make(coeffs: &[i64], prec: usize) -> TruncatedSeries {
    TruncatedSeries::new(coeffs.iter().map(|&c| int(c)).collect(), prec)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn division_undoes_multiplication((a, pa) in series_strategy(), (b, pb) in series_strategy()) {
        let a = make(&a, pa);
        let b = make(&b, pb);
        prop_assume!(b.valuation().finite().is_some());
        let prod = a.mul(&b);
        let back = prod.div(&b).unwrap();
        let p = back.precision().unwrap();
        prop_assert!(p <= pa || a.valuation().finite().is_none());
        prop_assert!(back.agrees_with(&a, p));
    }

    #[test]
    fn composition_with_t_is_identity((a, pa) in series_strategy()) {
        let a = make(&a, pa);
        let t = TruncatedSeries::monomial(1);
        prop_assert_eq!(a.compose(&t).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 1..5),
                                g in prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 1..5)) {
        let cusp = chart("vars x y; ideal y^2 - x^3;");
        let a = Arc::parse(&cusp, "trunc 20; x = t^2 + t^3; y = t^3 + 3/2*t^4 + 3/8*t^5 - 1/16*t^6 + 3/128*t^7 - 3/256*t^8 + 7/1024*t^9 - 9/2048*t^10 + 99/32768*t^11 - 143/65536*t^12 + 429/262144*t^13 - 663/524288*t^14 + 4199/4194304*t^15 - 6783/8388608*t^16 + 22287/33554432*t^17 - 37145/67108864*t^18 + 1002915/2147483648*t^19;").unwrap();
        let build = |terms: &[(u32, u32, i64)]| Polynomial::from_terms(
            cusp.ring(),
            terms.iter().map(|&(i, j, c)| (Monomial::from_exponents(&[i, j]), int(c))),
        );
        let (f, g) = (build(&f), build(&g));
        let lhs = a.evaluate(&(&f * &g)).unwrap();
        let rhs = a.evaluate(&f).unwrap().mul(&a.evaluate(&g).unwrap());
        prop_assert!(lhs.agrees_with(&rhs, 20));
        let sum = a.evaluate(&(&f + &g)).unwrap();
        prop_assert!(sum.agrees_with(&a.evaluate(&f).unwrap().add(&a.evaluate(&g).unwrap()), 20));
    }
}

#[test]
fn lifted_arcs_satisfy_their_charts() {
    let a4 = chart("vars x y; ideal y^2 - x^5;");
    let a = Arc::parse(&a4, "trunc 40; x = t^2; y = t^5;").unwrap();
    let lift = lift_through_tower(&a, 3, 0).unwrap();
    let mut previous = a.truncation();
    for level in &lift.levels {
        assert!(level.arc.truncation() <= previous);
        if let Some(loss) = level.loss {
            assert_eq!(previous - level.arc.truncation(), loss as usize);
        }
        previous = level.arc.truncation();
        assert!(level.arc.violated_equation().unwrap().is_none());
    }
}

#[test]
fn arc_text_round_trip() {
    let cusp = chart("vars x y; ideal y^2 - x^3;");
    let a = Arc::parse(&cusp, "trunc 30; x = t^2; y = t^3;").unwrap();
    let b = Arc::parse(&cusp, &a.to_text()).unwrap();
    assert_eq!(a.components(), b.components());
    assert_eq!(b.truncation(), 30);
    let p = parse_polynomial("1/2*t^3 - t", &parameter_ring()).unwrap();
    let c: Vec<Rational> = univariate_coefficients(&p).unwrap();
    assert_eq!(c, vec![int(0), int(-1), int(0), Rational::new(1.into(), 2.into())]);
}
