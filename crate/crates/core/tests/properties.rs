mod common;

use common::{laurent, nonconstant_poly, nonzero_poly, VARS};
use lpa_core::poly::{gcd, LaurentPolynomial, Monomial, RationalFunction};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPolynomial::one(), a.clone());
        prop_assert_eq!(&a + &LaurentPolynomial::zero(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent().prop_filter("nonzero", |p| !p.is_zero())) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn gcd_divides_and_is_symmetric(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.exact_div_poly(&g).is_ok());
        prop_assert!(bc.exact_div_poly(&g).is_ok());
        prop_assert!(g.exact_div_poly(&c).is_ok());
        prop_assert_eq!(gcd(&bc, &ac), g);
    }

    #[test]
    fn gcd_is_unique_up_to_sign(a in nonzero_poly(), b in nonzero_poly()) {
        let g1 = gcd(&a, &b);
        let g2 = gcd(&-&a, &b);
        prop_assert_eq!(g1, g2);
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(p in laurent(), i in 2usize..5) {
        let v = VARS[i];
        let r = p.substitute(v, &RationalFunction::from(v)).unwrap();
        prop_assert_eq!(r.to_laurent(), Some(p));
    }

    #[test]
    fn coefficients_reassemble(p in laurent(), i in 0usize..5) {
        let v = VARS[i];
        let back: LaurentPolynomial = p
            .coefficients_in(v)
            .into_iter()
            .map(|(e, c)| {
                prop_assert!(!c.involves(v));
                Ok(c.mul_monomial(&Monomial::var_pow(v, e)))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .sum();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn factor_multiplicity_counts_planted_powers(f in nonconstant_poly(), g in nonzero_poly(), m in 0u32..3) {
        prop_assume!(!f.is_unit());
        let p = &f.pow(m) * &g;
        let counted = p.factor_multiplicity(&f).unwrap();
        let in_g = g.factor_multiplicity(&f).unwrap();
        prop_assert_eq!(counted, m + in_g);
    }

    #[test]
    fn render_parse_round_trip(p in laurent()) {
        let text = p.to_string();
        let back: LaurentPolynomial = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, p);
    }
}
