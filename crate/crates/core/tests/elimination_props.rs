use std::collections::HashMap;
use std::sync::Arc;

use orthoforms_core::arith::{rat, ExactRat, Monomial, Polynomial, VariableSpace};
use orthoforms_core::elimination::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space() -> Arc<VariableSpace> {
    VariableSpace::unweighted(["x", "w", "a", "b", "c"]).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, s: &Arc<VariableSpace>, vars: &[usize], terms: usize) -> Polynomial {
    Polynomial::from_terms(
        s,
        (0..terms).map(|_| {
            let mut e = vec![0u16; s.len()];
            for &v in vars {
                e[v] = rng.gen_range(0..3);
            }
            (Monomial::from_exponents(&e), rat(rng.gen_range(-5..=5)))
        }),
    )
}

#[test]
fn bareiss_matches_cofactor_on_random_integer_4x4() {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = PolyMatrix::from_ints(&s, &rows).unwrap();
        assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m).unwrap());
    }
}

#[test]
fn bareiss_matches_cofactor_on_polynomial_matrices_up_to_6() {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=6 {
        for _ in 0..4 {
            let entries: Vec<Polynomial> = (0..n * n)
                .map(|_| {
                    // sparse-ish entries with occasional zeros to exercise pivoting
                    if rng.gen_bool(0.25) {
                        Polynomial::zero(&s)
                    } else {
                        random_poly(&mut rng, &s, &[2, 3, 4], 2)
                    }
                })
                .collect();
            let m = PolyMatrix::new(&s, n, n, entries).unwrap();
            assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m).unwrap(), "n = {n}");
        }
    }
}

#[test]
fn resultant_is_graded_antisymmetric() {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (m, n) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let f = univariate(&mut rng, &s, m);
        let g = univariate(&mut rng, &s, n);
        let fg = resultant(&f, &g, "x", m, n).unwrap();
        let gf = resultant(&g, &f, "x", n, m).unwrap();
        let sign = if (m * n) % 2 == 0 { rat(1) } else { rat(-1) };
        assert_eq!(fg, gf.scale(&sign));
    }
}

/// Random univariate in x of exact degree `deg` with coefficients in a, b.
fn univariate(rng: &mut ChaCha8Rng, s: &Arc<VariableSpace>, deg: usize) -> Polynomial {
    let x = Polynomial::var(s, "x").unwrap();
    let mut f = Polynomial::zero(s);
    for k in 0..=deg {
        let mut c = random_poly(rng, s, &[2, 3], 2);
        if k == deg {
            c = c + Polynomial::one(s);
        }
        f = f + c * x.pow(k as u32);
    }
    f
}

#[test]
fn resultant_commutes_with_specialization() {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 20 {
        let (m, n) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let f = univariate(&mut rng, &s, m);
        let g = univariate(&mut rng, &s, n);
        let point: HashMap<String, ExactRat> = [("a", rng.gen_range(-4..=4)), ("b", rng.gen_range(-4..=4))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), rat(v)))
            .collect();
        let lead = |p: &Polynomial, d: usize| p.coefficients_in(0)[d].evaluate(&point).unwrap();
        if lead(&f, m) == rat(0) || lead(&g, n) == rat(0) {
            continue;
        }
        let sym = resultant(&f, &g, "x", m, n).unwrap().evaluate(&point).unwrap();
        let spec = |p: &Polynomial| p.specialize(2, &point["a"]).specialize(3, &point["b"]);
        let num = resultant(&spec(&f), &spec(&g), "x", m, n).unwrap();
        assert_eq!(num.constant_value().unwrap(), sym);
        checked += 1;
    }
}

#[test]
fn forced_double_root_kills_discriminant() {
    for n in 2..=5 {
        let generic = generic_binary_form(n);
        let s = generic.space().clone();
        let sq = Polynomial::parse("(x - w)^2", &s).unwrap();
        let f = sq * generic_binary_form_of_degree_in(&s, n);
        let d = binary_discriminant(&f, "x", "w", n + 2);
        match d {
            Ok(d) => assert!(d.is_zero(), "degree {}", n + 2),
            Err(e) => panic!("{e}"),
        }
    }
}

/// A generic-ish binary form of degree `n` over the given space (uses a_i).
fn generic_binary_form_of_degree_in(s: &Arc<VariableSpace>, n: usize) -> Polynomial {
    let mut f = Polynomial::zero(s);
    for i in 0..=n {
        f = f + Polynomial::parse(&format!("a_{i}*x^{i}*w^{}", n - i), s).unwrap();
    }
    f
}

#[test]
fn discriminant_routes_agree_on_generic_forms() {
    for n in 2..=6 {
        let f = generic_binary_form(n);
        let disc = binary_discriminant(&f, "x", "w", n).unwrap();
        let partial = discriminant_via_partials(&f, "x", "w", n).unwrap();
        assert_eq!(partial, disc.scale(&partials_constant(n)), "degree {n}");
        assert_eq!(disc.weighted_degree(), Some(2 * (n as u64 - 1)));
        assert!(disc.is_quasi_homogeneous());
    }
}

#[test]
fn partial_route_named_cases() {
    let s = VariableSpace::unweighted(["x", "w", "a", "b", "c", "d"]).unwrap();
    let q = Polynomial::parse("a*x^2 + b*x*w + c*w^2", &s).unwrap();
    assert_eq!(
        discriminant_via_partials(&q, "x", "w", 2).unwrap(),
        Polynomial::parse("-(b^2 - 4*a*c)", &s).unwrap()
    );
    let cubic = Polynomial::parse("a*x^3 + b*x^2*w + c*x*w^2 + d*w^3", &s).unwrap();
    let classical = Polynomial::parse(
        "b^2*c^2 - 4*a*c^3 - 4*b^3*d - 27*a^2*d^2 + 18*a*b*c*d",
        &s,
    )
    .unwrap();
    assert_eq!(binary_discriminant(&cubic, "x", "w", 3).unwrap(), classical);
    assert_eq!(
        discriminant_via_partials(&cubic, "x", "w", 3).unwrap(),
        classical.scale(&partials_constant(3))
    );
}

#[test]
fn substitution_route_matches_direct_route() {
    let s = VariableSpace::unweighted(["x", "w", "p", "q", "r"]).unwrap();
    let forms = [
        ("(p*x + q*w)*(x^2 - r*x*w + w^2) + p*q*w^3", 3),
        ("p*x^4 + (q + r)*x^3*w - r^2*x*w^3 + (p - q)*w^4", 4),
        ("x^5 + p*x^3*w^2 + q*r*x*w^4 + w^5", 5),
    ];
    for (text, n) in forms {
        let f = Polynomial::parse(text, &s).unwrap();
        assert_eq!(
            binary_discriminant_by_substitution(&f, "x", "w", n).unwrap(),
            binary_discriminant(&f, "x", "w", n).unwrap(),
            "{text}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_of_matrix_with_equal_rows_is_zero(vals in proptest::collection::vec(-20i64..20, 9)) {
        let s = space();
        let mut rows: Vec<Vec<i64>> = vals.chunks(3).map(<[i64]>::to_vec).collect();
        rows[2] = rows[0].clone();
        let m = PolyMatrix::from_ints(&s, &rows).unwrap();
        prop_assert!(bareiss_det(&m).unwrap().is_zero());
    }
}
