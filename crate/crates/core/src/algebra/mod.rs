//! Exact arithmetic substrate: big rationals, sparse multivariate polynomials
//! under explicit monomial orders, rational functions and polynomial matrices.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod rational_function;

pub use matrix::{determinant, subsets, CommutativeElement, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_at, Position};
pub use polynomial::{Polynomial, Ring};
pub(crate) use polynomial::same_ring;
pub use rational_function::RationalFunction;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex)
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn poly_arith_examples() {
        assert!((&p("x") + &p("-x")).is_zero());
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert_eq!(p("x + 1").pow(3), p("x^3 + 3x^2 + 3x + 1"));
        let other = Ring::new(&["a"], MonomialOrder::Lex);
        let q = Polynomial::var(&other, 0);
        assert!(matches!(p("x").checked_add(&q), Err(crate::Error::Context(_))));
        assert!(matches!(p("x").checked_mul(&q), Err(crate::Error::Context(_))));
    }

    #[test]
    fn partial_derivative_examples() {
        assert_eq!(p("y^2 - x^3").partial_derivative(0).unwrap(), p("-3x^2"));
        assert_eq!(p("y^2 - x^3").partial_derivative(1).unwrap(), p("2y"));
        assert_eq!(p("x*y - z^2").partial_derivative(2).unwrap(), p("-2z"));
        assert!(p("x").partial_derivative(3).is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(*r.denom() > 0.into());
        assert_eq!(rat(0, 5), int(0));
        assert_eq!(*rat(0, 5).denom(), 1.into());
    }

    #[test]
    fn exact_division_and_scalar_multiples() {
        assert_eq!(p("x^2 - y^2").div_exact(&p("x + y")), Some(p("x - y")));
        assert_eq!(p("x^2 + 1").div_exact(&p("x")), None);
        assert!(p("6x - 4y").is_scalar_multiple_of(&p("-3x + 2y")));
        assert!(!p("x + y").is_scalar_multiple_of(&p("x - y")));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|ts| {
            let r = ring();
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), int(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly(), v in 0usize..3) {
            let lhs = (&a * &b).partial_derivative(v).unwrap();
            let rhs = &(&a * &b.partial_derivative(v).unwrap()) + &(&b * &a.partial_derivative(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            let back = parse_polynomial(&a.to_string(), &ring()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
