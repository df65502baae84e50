//! Affine charts: Jacobians, the singular locus, smoothness and differential
//! frames on a transcendence basis of coordinates.

mod chart;
mod frame;

pub use chart::{parse_generators, parse_int, parse_vars, AffineChart, ParentMap};
pub use frame::DifferentialFrame;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, RationalFunction};

    fn chart(text: &str) -> AffineChart {
        AffineChart::from_text(text).unwrap()
    }

    fn strings(ps: &[crate::algebra::Polynomial]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn jacobian_examples() {
        let cusp = chart("vars x y; ideal y^2 - x^3;");
        let j = cusp.jacobian();
        assert_eq!(strings(j.row(0)), vec!["-3*x^2", "2*y"]);
        let cone = chart("vars x y z; ideal x*y - z^2;");
        assert_eq!(strings(cone.jacobian().row(0)), vec!["y", "x", "-2*z"]);
        let plane = chart("vars x y; ideal 0;");
        let j = plane.jacobian();
        assert_eq!((j.nrows(), j.ncols()), (0, 2));
    }

    #[test]
    fn singular_locus_examples() {
        let cusp = chart("vars x y; ideal y^2 - x^3; dim 1;");
        let sing = cusp.singular_locus();
        assert_eq!(strings(sing.groebner_basis().elements()), vec!["y", "x^2"]);
        assert!(!cusp.is_smooth());
        let cone = chart("vars x y z; ideal x*y - z^2;");
        let sing = cone.singular_locus();
        assert_eq!(strings(sing.groebner_basis().elements()), vec!["z", "y", "x"]);
        let conic = chart("vars x y; ideal x^2 + y^2 - 1;");
        assert!(conic.singular_locus().is_unit());
        assert!(conic.is_smooth());
    }

    #[test]
    fn smoothness_examples() {
        assert!(chart("vars x y; ideal y - x^2;").is_smooth());
        let empty = chart("vars x y; ideal 1;");
        assert!(empty.is_smooth() && empty.is_empty());
        assert_eq!(empty.dim(), -1);
        let cusp = chart("vars x y; ideal y^2 - x^3;");
        assert!(!cusp.is_smooth_at(&[int(0), int(0)]));
        assert!(cusp.is_smooth_at(&[int(1), int(1)]));
        assert!(!cusp.is_smooth_at(&[int(1), int(2)]));
    }

    #[test]
    fn singular_locus_is_unit_or_proper() {
        for text in [
            "vars x y; ideal y^2 - x^3;",
            "vars x y z; ideal x*y - z^2;",
            "vars x y; ideal x^2 + y^2 - 1;",
            "vars x y z; ideal x*y - z*w;".replace(" z;", " z w;").as_str(),
            "vars x y; ideal x*y;",
        ] {
            let c = chart(text);
            let sing = c.singular_locus();
            if c.is_smooth() {
                assert!(sing.is_unit());
            } else {
                assert!(sing.contains_ideal(c.ideal()));
                assert!(!c.ideal().contains_ideal(&sing), "{text}");
                assert!(!sing.is_unit());
            }
        }
    }

    #[test]
    fn declared_dimension_is_checked() {
        let err = AffineChart::from_text("vars x y; ideal y^2 - x^3; dim 2;").unwrap_err();
        assert!(matches!(err, crate::Error::DimensionMismatch { declared: 2, computed: 1 }));
    }

    #[test]
    fn chart_text_round_trips() {
        for text in [
            "vars x y;\nideal -x^3 + y^2;\ndim 1;\n",
            "vars x y z;\nideal x*y - z^2;\ndim 2;\n",
            "vars a b;\nideal 0;\ndim 2;\n",
            "vars x y z w;\nideal -3/2*y^2 + x, z*w + 1;\ndim 2;\n",
        ] {
            let c = chart(text);
            assert_eq!(c.to_text(), text);
            assert_eq!(chart(&c.to_text()).to_text(), text);
        }
    }

    #[test]
    fn frame_examples() {
        let cusp = chart("vars x y; ideal y^2 - x^3;");
        let f = DifferentialFrame::new(&cusp, None).unwrap();
        assert_eq!(f.basis(), &[0]);
        let dy = &f.expansion(1)[0];
        let expect = RationalFunction::new(cusp.parse_polynomial("3x^2").unwrap(), cusp.parse_polynomial("2y").unwrap()).unwrap();
        assert!(dy.equals(&expect));

        let cone = chart("vars x y z; ideal x*y - z^2;");
        let f = DifferentialFrame::new(&cone, None).unwrap();
        assert_eq!(f.basis(), &[0, 1]);
        let dz = f.expansion(2);
        let two_z = cone.parse_polynomial("2z").unwrap();
        assert!(dz[0].equals(&RationalFunction::new(cone.parse_polynomial("y").unwrap(), two_z.clone()).unwrap()));
        assert!(dz[1].equals(&RationalFunction::new(cone.parse_polynomial("x").unwrap(), two_z).unwrap()));

        let line = chart("vars x y; ideal y;");
        let f = DifferentialFrame::new(&line, None).unwrap();
        assert!(f.expansion(1)[0].is_zero());

        let preferred = DifferentialFrame::new(&cusp, Some(&[1])).unwrap();
        assert_eq!(preferred.basis(), &[1]);
        assert!(preferred.satisfies_relations());
    }

    #[test]
    fn frame_rejects_non_reduced_input() {
        let doubled = chart("vars x y; ideal y^2;");
        assert!(matches!(DifferentialFrame::new(&doubled, None), Err(crate::Error::DegenerateFrame(_))));
        assert!(!doubled.is_generically_reduced());
    }

    #[test]
    fn frame_on_a_complete_intersection_curve() {
        // twisted cubic: three quadrics, codimension 2
        let c = chart("vars x y z; ideal y - x^2, z - x^3, x*z - y^2;");
        assert_eq!(c.dim(), 1);
        let f = DifferentialFrame::new(&c, None).unwrap();
        assert_eq!(f.basis(), &[0]);
        assert!(f.satisfies_relations());
        let dy = &f.expansion(1)[0];
        assert!(dy.equals(&RationalFunction::from_polynomial(c.parse_polynomial("2x").unwrap())));
    }
}
