use std::sync::OnceLock;

use orthoforms_core::arith::{rat, ExactRat, Polynomial};
use orthoforms_core::elimination::binary_form_coefficients;
use orthoforms_core::pipeline::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn artifacts() -> &'static PipelineArtifacts {
    static A: OnceLock<PipelineArtifacts> = OnceLock::new();
    A.get_or_init(|| PipelineArtifacts::compute().unwrap())
}

fn u(t: &str) -> Polynomial {
    Polynomial::parse(t, u_space()).unwrap()
}

/// Random point with integer entries in [-6, 6], valid and with u_5_3 != 0.
fn random_point(rng: &mut ChaCha8Rng) -> WeierstrassData {
    loop {
        let v: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-6..=6));
        if v[0] == 0 {
            continue;
        }
        if let Ok(p) = WeierstrassData::numeric(v) {
            return p;
        }
    }
}

#[test]
fn weierstrass_forms() {
    let g2 = build_g2(&WeierstrassData::Generic);
    assert_eq!(g2, u("u_5_3*x^5*w^3 + u_4_4*x^4*w^4 + u_3_5*x^3*w^5"));
    let g3 = build_g3(&WeierstrassData::Generic);
    assert_eq!(g3, u("u_7_5*x^7*w^5 + u_6_6*x^6*w^6 + u_5_7*x^5*w^7"));
    let pt = WeierstrassData::Numeric([1, 0, 0, 7, 8, 9].map(rat));
    assert_eq!(build_g2(&pt), u("x^5*w^3"));
    let zero3 = WeierstrassData::Numeric([1, 2, 3, 0, 0, 0].map(rat));
    assert!(build_g3(&zero3).is_zero());
    for (m, _) in cofactor_a(&WeierstrassData::Generic).unwrap().terms() {
        assert_eq!(m.weighted_degree(u_space().weights()), 4);
    }
    // naturality of the index swap
    let swapped = WeierstrassData::Numeric([1, 2, 3, 4, 5, 6].map(rat));
    let mirrored = WeierstrassData::Numeric([3, 2, 1, 6, 5, 4].map(rat));
    assert_eq!(sigma1_swap(&g3).unwrap(), swap_xw(&g3).unwrap());
    assert_eq!(swap_xw(&build_g3(&swapped)).unwrap(), build_g3(&mirrored));
}

#[test]
fn invariants_at_all_ones() {
    let inv = invariants_from_u(&WeierstrassData::Numeric([1; 6].map(rat)));
    let vals: Vec<ExactRat> = inv.all().iter().map(|p| p.constant_value().unwrap()).collect();
    assert_eq!(vals, [1, 1, 1, 2, 1, 0].map(rat));
}

#[test]
fn h_support_matches_expansion_oracle() {
    // expand 4A^3 + 27 x w B^2 with generic trinomial cofactors directly
    let a = u("u_5_3*x^2 + u_4_4*x*w + u_3_5*w^2");
    let b = u("u_7_5*x^2 + u_6_6*x*w + u_5_7*w^2");
    let oracle = a.pow(3).scale(&rat(4)) + (u("27*x*w") * b.pow(2));
    let h = compute_h(&WeierstrassData::Generic).unwrap();
    assert_eq!(h, oracle);
    assert_eq!(h.total_degree(), Some(9));
    let cs = binary_form_coefficients(&h, X, W, 6).unwrap();
    assert_eq!(cs[6], u("4*u_5_3^3"));
    for c in &cs {
        assert_eq!(action_weight(c, TorusAction::Lambda).unwrap(), Some(12));
    }
}

#[test]
fn r20_invariances() {
    let r = &artifacts().r20;
    assert_eq!(sigma1_swap(r).unwrap(), *r);
    assert_eq!(action_weight(r, TorusAction::Mu).unwrap(), Some(0));
    assert_eq!(action_weight(r, TorusAction::Lambda).unwrap(), Some(20));
    let ts = rewrite_u_to_ts(r).unwrap();
    assert_eq!(ts_to_t(&ts).unwrap().weighted_degree(), Some(20));
}

#[test]
fn k120_degree_and_symmetry() {
    let k = &artifacts().k120;
    assert_eq!(k.weighted_degree(), Some(120));
    assert!(k.is_quasi_homogeneous());
    assert_eq!(action_weight(k, TorusAction::Lambda).unwrap(), Some(120));
    assert_eq!(action_weight(k, TorusAction::Mu).unwrap(), Some(0));
    assert_eq!(sigma1_swap(k).unwrap(), *k);
    let ts = rewrite_u_to_ts(k).unwrap();
    assert!(ts_to_t(&ts).is_ok());
    assert_eq!(ts_to_u(&ts).unwrap(), *k);
}

#[test]
fn k120_specializes_like_numeric_discriminant() {
    let k = &artifacts().k120;
    let mut rng = ChaCha8Rng::seed_from_u64(120);
    let mut points = vec![WeierstrassData::Numeric([1; 6].map(rat))];
    while points.len() < 21 {
        points.push(random_point(&mut rng));
    }
    for p in points {
        let sym = k.evaluate(&p.point().unwrap()).unwrap();
        assert_eq!(sym, numeric_k120(&p).unwrap(), "{p:?}");
    }
}

#[test]
fn delta60_properties() {
    let a = artifacts();
    let d = &a.delta60;
    assert_eq!(d.normalized.weighted_degree(), Some(60));
    assert!(d.normalized.is_primitive());
    assert!(d.normalized.terms()[0].1 > rat(0));
    assert_eq!(d.quotient_t, d.normalized.scale(&d.unit));
    // re-multiplication in u-space
    assert_eq!(a.r20.pow(3) * &d.quotient_u, a.k120);
    // no single variable divides it
    for i in 0..5 {
        let v = Polynomial::var_at(t_space(), i);
        assert!(d.normalized.exact_div(&v).is_err());
    }
    // stable across recomputation
    let again = PipelineArtifacts::from_k120(a.k120.clone()).unwrap();
    assert_eq!(again.delta60.normalized.content_hash(), d.normalized.content_hash());
}

#[test]
fn delta60_is_not_a_square() {
    // a square would restrict to a square on every line: the restriction
    // would have only even root multiplicities, so gcd(g, g') has degree n/2
    let d = &artifacts().delta60.normalized;
    let line = orthoforms_core::irreducibility::Line {
        variables: ["t_4", "t_6", "t_8", "t_12"].map(String::from).to_vec(),
        direction: vec![3, -2, 5, 7],
        offset: vec![1, 4, -3, 2],
    };
    let affine = orthoforms_core::irreducibility::dehomogenize(d, "t_10").unwrap();
    let g = orthoforms_core::irreducibility::restrict_to_line(&affine, &line).unwrap();
    let red = orthoforms_core::irreducibility::modp_reduce(&g, 10007).unwrap().poly;
    let coeffs: Vec<u64> = red.coefficients().to_vec();
    let deriv = orthoforms_core::irreducibility::ModPPoly::new(
        10007,
        coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as u64 % 10007),
    );
    assert_eq!(red.gcd(&deriv).degree(), Some(0));
}
