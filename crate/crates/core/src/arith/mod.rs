//! Exact coefficient arithmetic and sparse multivariate polynomials over a
//! named, weighted variable space.

mod binary;
mod monomial;
mod poly;
mod space;
mod text;

use thiserror::Error;

pub use binary::BINARY_FORMAT_VERSION;
pub use monomial::Monomial;
pub use poly::{ExactInt, ExactRat, Polynomial};
pub use space::VariableSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different spaces ({left}) vs ({right})")]
    SpaceMismatch { left: String, right: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: remainder has leading monomial {leading}")]
    NotDivisible { leading: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("variable `{0}` has no binding and no counterpart in the target space")]
    UnboundVariable(String),
    #[error("no value given for variable `{0}`")]
    MissingBinding(String),
    #[error("terms have different degrees ({first} vs {other})")]
    NotHomogeneous { first: i64, other: i64 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("binary decode error: {0}")]
    Decode(String),
}

/// Integer as an exact rational.
pub fn rat(n: i64) -> ExactRat {
    ExactRat::from_integer(n.into())
}

#[cfg(test)]
mod ring_laws {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;

    fn space() -> Arc<VariableSpace> {
        VariableSpace::new([("a", 2), ("b", 3), ("c", 1)]).unwrap()
    }

    fn arb(max_terms: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u16..4, 3), -9i64..10, 1i64..4),
            0..max_terms,
        )
        .prop_map(|ts| {
            Polynomial::from_terms(
                &space(),
                ts.into_iter().map(|(e, n, d)| {
                    (Monomial::from_exponents(&e), ExactRat::new(n.into(), d.into()))
                }),
            )
        })
    }

    fn arb_homogeneous() -> impl Strategy<Value = Polynomial> {
        // weight-6 monomials over weights (2,3,1)
        let basis: Vec<[u16; 3]> = (0..=3u16)
            .flat_map(|a| (0..=2u16).flat_map(move |b| (0..=6u16).map(move |c| [a, b, c])))
            .filter(|[a, b, c]| 2 * a + 3 * b + c == 6)
            .collect();
        proptest::collection::vec(-5i64..6, basis.len()).prop_map(move |cs| {
            Polynomial::from_terms(
                &space(),
                basis
                    .iter()
                    .zip(cs)
                    .map(|(e, c)| (Monomial::from_exponents(e), rat(c))),
            )
        })
    }

    /// Schoolbook expansion by repeated addition of single-term products.
    fn naive_mul(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(f.space());
        for (fm, fc) in f.terms() {
            for (gm, gc) in g.terms() {
                acc = acc + Polynomial::monomial(f.space(), fm.mul(gm), fc * gc);
            }
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn ring_axioms(f in arb(8), g in arb(8), h in arb(8)) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!((&f * &g) * &h, &f * (&g * &h));
            prop_assert_eq!((&f + &g) + &h, &f + (&g + &h));
            prop_assert_eq!(&f * (&g + &h), &f * &g + &f * &h);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn mul_matches_schoolbook(f in arb(10), g in arb(10)) {
            let prod = &f * &g;
            prop_assert!(prod.len() <= f.len() * g.len());
            prop_assert_eq!(prod, naive_mul(&f, &g));
        }

        #[test]
        fn exact_div_inverts_mul(q in arb(8), g in arb(6)) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&q * &g).exact_div(&g).unwrap(), q);
        }

        #[test]
        fn weighted_degree_is_additive(f in arb_homogeneous(), g in arb_homogeneous()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = &f * &g;
            prop_assert!(fg.is_quasi_homogeneous());
            prop_assert_eq!(fg.weighted_degree(), Some(f.weighted_degree().unwrap() + g.weighted_degree().unwrap()));
        }

        #[test]
        fn identity_substitution(f in arb(10)) {
            let s = f.space().clone();
            prop_assert_eq!(f.substitute(&Default::default(), &s).unwrap(), f);
        }
    }

    #[test]
    fn cube_of_binary_quadratic_matches_schoolbook() {
        let s = VariableSpace::new([("x", 0), ("w", 0), ("a", 1), ("b", 1), ("c", 1)]).unwrap();
        let q = Polynomial::parse("a*x^2 + b*x*w + c*w^2", &s).unwrap();
        let cube = q.pow(3);
        assert_eq!(cube, naive_mul(&naive_mul(&q, &q), &q));
        // x^4 w^2 coefficient: 3 a^2 c + 3 a b^2
        let coeff: Polynomial = Polynomial::from_terms(
            &s,
            cube.terms()
                .iter()
                .filter(|(m, _)| m.exponent(0) == 4 && m.exponent(1) == 2)
                .map(|(m, c)| (m.with_exponent(0, 0).with_exponent(1, 0), c.clone())),
        );
        assert_eq!(coeff, Polynomial::parse("3*a^2*c + 3*a*b^2", &s).unwrap());
        let xw_support: std::collections::BTreeSet<(u16, u16)> = cube
            .terms()
            .iter()
            .map(|(m, _)| (m.exponent(0), m.exponent(1)))
            .collect();
        assert_eq!(xw_support.len(), 7);
        assert_eq!(cube.len(), 10);
    }
}
