//! Acceptance criteria for the whole toolchain, one test per criterion.
//! Each test prints a `criterion N: PASS` or `criterion N: FAIL` line
//! (visible with `--nocapture`) before asserting.

use std::collections::{BTreeMap, HashMap};
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use itertools::Itertools;
use orthoforms_core::arith::{rat, ExactRat, Monomial, Polynomial, VariableSpace};
use orthoforms_core::elimination::*;
use orthoforms_core::graded::*;
use orthoforms_core::group::*;
use orthoforms_core::irreducibility::*;
use orthoforms_core::pipeline::*;
use orthoforms_core::symfunc::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAST: Duration = Duration::from_secs(1);
const MEDIUM: Duration = Duration::from_secs(5);
const SYMBOLIC_TARGET: Duration = Duration::from_secs(10 * 60);
const SYMBOLIC_HARD: Duration = Duration::from_secs(60 * 60);

fn report(n: u32, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n}: PASS");
    } else {
        println!("criterion {n}: FAIL");
        for f in failures {
            println!("  {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
}

fn require(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn within(failures: &mut Vec<String>, start: Instant, budget: Duration) {
    let t = start.elapsed();
    require(failures, t <= budget, format!("took {t:?}, budget {budget:?}"));
}

struct Symbolic {
    k120: Polynomial,
    r20: Polynomial,
    delta60: Delta60,
    elapsed: Duration,
}

fn symbolic() -> &'static Symbolic {
    static CELL: OnceLock<Symbolic> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let u = WeierstrassData::Generic;
        let k120 = compute_k120(&u).unwrap();
        let r20 = compute_r20(&u).unwrap();
        let delta60 = compute_delta60(&k120, &r20).unwrap();
        Symbolic {
            k120,
            r20,
            delta60,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_01_delta20_identity() {
    let start = Instant::now();
    let mut f = Vec::new();
    let inv = invariants_from_u(&WeierstrassData::Generic);
    let lhs = inv.s10.pow(2);
    let rhs = inv.t10.pow(2) - (&inv.t8 * &inv.t12).scale(&rat(4));
    require(&mut f, lhs == rhs, "s10^2 != t10^2 - 4 t8 t12");
    require(
        &mut f,
        inv.all().iter().all(|p| p.is_integral()),
        "invariants are not integral in u",
    );
    within(&mut f, start, FAST);
    report(1, &f);
}

#[test]
fn criterion_02_h_division() {
    let start = Instant::now();
    let mut f = Vec::new();
    let u = WeierstrassData::Generic;
    let (g2, g3) = (build_g2(&u), build_g3(&u));
    let num = g2.pow(3).scale(&rat(4)) + g3.pow(2).scale(&rat(27));
    let s = u_space();
    let x9w9 = Polynomial::parse("x^9*w^9", s).unwrap();
    match num.exact_div(&x9w9) {
        Ok(h) => {
            require(&mut f, &h * &x9w9 == num, "quotient does not multiply back");
            require(&mut f, compute_h(&u).ok() == Some(h.clone()), "compute_h disagrees");
            match binary_form_coefficients(&h, X, W, 6) {
                Ok(cs) => {
                    for (i, c) in cs.iter().enumerate() {
                        let lam = action_weight(c, TorusAction::Lambda).unwrap();
                        require(&mut f, lam == Some(12), format!("coefficient {i} has weight {lam:?}"));
                    }
                    require(&mut f, !cs[6].is_zero() && !cs[0].is_zero(), "degree below 6");
                }
                Err(e) => f.push(format!("h is not a binary sextic: {e}")),
            }
        }
        Err(e) => f.push(format!("not divisible by x^9 w^9: {e}")),
    }
    within(&mut f, start, FAST);
    report(2, &f);
}

#[test]
fn criterion_03_sylvester_determinant() {
    let start = Instant::now();
    let mut f = Vec::new();
    let u = WeierstrassData::Generic;
    let w = u_space().require(W).unwrap();
    let a = cofactor_a(&u).unwrap().specialize(w, &rat(1));
    let b = cofactor_b(&u).unwrap().specialize(w, &rat(1));
    let m = sylvester_matrix(&a, &b, X, 2, 2).unwrap();
    require(&mut f, (m.rows(), m.cols()) == (4, 4), "matrix is not 4x4");
    let det = bareiss_det(&m).unwrap();
    require(&mut f, det == cofactor_det(&m).unwrap(), "Bareiss differs from cofactor expansion");
    require(&mut f, det.is_quasi_homogeneous(), "not quasi-homogeneous");
    require(&mut f, det.weighted_degree() == Some(20), format!("weighted degree {:?}", det.weighted_degree()));
    require(&mut f, compute_r20(&u).ok() == Some(det), "compute_r20 disagrees");
    within(&mut f, start, FAST);
    report(3, &f);
}

#[test]
fn criterion_04_k120() {
    let sym = symbolic();
    let mut f = Vec::new();
    let k = &sym.k120;
    require(&mut f, k.is_quasi_homogeneous(), "not quasi-homogeneous");
    require(&mut f, k.weighted_degree() == Some(120), format!("weighted degree {:?}", k.weighted_degree()));
    require(
        &mut f,
        action_weight(k, TorusAction::Mu).unwrap() == Some(0),
        "not mu-invariant",
    );
    require(&mut f, sigma1_swap(k).unwrap() == *k, "not swap-invariant");
    for p in sample_parameters(7, 20, 6) {
        let symbolic = k.evaluate(&p.point().unwrap()).unwrap();
        let numeric = numeric_k120(&p).unwrap();
        require(&mut f, symbolic == numeric, format!("specialization differs at {p:?}"));
    }
    require(
        &mut f,
        sym.elapsed <= SYMBOLIC_HARD,
        format!("symbolic computation took {:?}", sym.elapsed),
    );
    if sym.elapsed > SYMBOLIC_TARGET {
        println!("  note: symbolic computation over target ({:?})", sym.elapsed);
    }
    report(4, &f);
}

#[test]
fn criterion_05_delta60_factorization() {
    let sym = symbolic();
    let mut f = Vec::new();
    let d = &sym.delta60;
    require(&mut f, sym.r20.pow(3) * &d.quotient_u == sym.k120, "k120 != r20^3 * Delta60");
    require(
        &mut f,
        d.quotient_t.space().as_ref() == t_space().as_ref(),
        "quotient not in the t variables",
    );
    let n = &d.normalized;
    require(&mut f, n.weighted_degree() == Some(60), format!("weighted degree {:?}", n.weighted_degree()));
    require(&mut f, n.is_quasi_homogeneous(), "not quasi-homogeneous");
    require(&mut f, n.is_primitive(), "not primitive");
    require(
        &mut f,
        n.leading_term().is_some_and(|(_, c)| *c > rat(0)),
        "leading coefficient not positive",
    );
    require(&mut f, ts_to_u(&n.embed(ts_space()).unwrap()).unwrap().scale(&d.unit) == d.quotient_u, "t-form does not expand back to the u-form");
    // independent rerun
    let again = compute_delta60(&compute_k120(&WeierstrassData::Generic).unwrap(), &sym.r20).unwrap();
    require(
        &mut f,
        again.normalized.content_hash() == n.content_hash(),
        "normal form differs between runs",
    );
    report(5, &f);
}

#[test]
fn criterion_06_delta60_irreducible() {
    let sym = symbolic();
    let mut f = Vec::new();
    let n = &sym.delta60.normalized;
    let cert = certify_irreducible(n, DEFAULT_ATTEMPTS, 7).unwrap();
    require(&mut f, cert.verdict == Verdict::Irreducible, "all attempts inconclusive");
    if cert.verdict == Verdict::Irreducible {
        require(&mut f, cert.attempts <= DEFAULT_ATTEMPTS, "too many attempts");
        if let Err(e) = replay(n, &cert) {
            f.push(format!("replay failed: {e}"));
        }
        let text = serde_json::to_string(&cert).unwrap();
        let back: IrreducibilityCertificate = serde_json::from_str(&text).unwrap();
        require(&mut f, replay(n, &back).is_ok(), "deserialized certificate does not replay");
    }
    report(6, &f);
}

#[test]
fn criterion_07_hilbert_series() {
    let start = Instant::now();
    let mut f = Vec::new();
    let chars = WeightedPresentation::characters_ring();
    require(&mut f, chars.generator_weights() == [4, 4, 6, 8, 10, 10, 12, 30], "generator weights");
    require(&mut f, chars.relation_weights() == [8, 20, 60], "relation weights");
    for p in [
        chars,
        WeightedPresentation::trivial_character_ring(),
        WeightedPresentation::free_ring(),
    ] {
        let a = hilbert_from_rational(&p, 120).unwrap();
        let b = hilbert_from_counting(&p, 120).unwrap();
        require(&mut f, series_equal(&a, &b).unwrap(), format!("{} series disagree", p.name));
    }
    // oracle for the free ring: partitions into parts 4, 6, 8, 10, 12
    let free = hilbert_from_rational(&WeightedPresentation::free_ring(), 120).unwrap();
    let mut ways = vec![0i128; 121];
    ways[0] = 1;
    for part in [4, 6, 8, 10, 12] {
        for k in part..=120 {
            ways[k] += ways[k - part];
        }
    }
    require(&mut f, free.coeffs == ways, "free ring series is not the partition count");
    require(&mut f, character_factor_check(120).unwrap(), "factor identity fails");
    within(&mut f, start, MEDIUM);
    report(7, &f);
}

/// Element-order histogram of S6 by enumerating all permutations.
fn s6_histogram() -> BTreeMap<u32, usize> {
    let mut hist = BTreeMap::new();
    for perm in (0..6).permutations(6) {
        let mut order = 1u32;
        let mut q = perm.clone();
        while q.iter().enumerate().any(|(i, &v)| i != v) {
            q = q.iter().map(|&i| perm[i]).collect();
            order += 1;
        }
        *hist.entry(order).or_insert(0) += 1;
    }
    hist
}

#[test]
fn criterion_08_symplectic_generators() {
    let start = Instant::now();
    let mut f = Vec::new();
    let g = gram_uu();
    let gens = displayed_sp4_generators();
    for (i, y) in gens.iter().enumerate() {
        let lhs = y.transpose().mul(&g).unwrap().mul(y).unwrap();
        require(&mut f, lhs == g, format!("generator {} does not preserve U+U: {y}", i + 1));
    }
    let expected = s6_histogram();
    require(
        &mut f,
        expected == BTreeMap::from([(1, 1), (2, 75), (3, 80), (4, 180), (5, 144), (6, 240)]),
        "S6 oracle",
    );
    let closure = generate_group(&gens).unwrap();
    require(
        &mut f,
        closure.order == 720,
        format!("generated group has order {}", closure.order),
    );
    require(&mut f, closure.histogram == expected, "histogram differs from S6");
    let ext = generate_group(&extended_generators(&gens)).unwrap();
    require(&mut f, ext.order == 1440, format!("extension has order {}", ext.order));
    within(&mut f, start, MEDIUM);
    report(8, &f);
}

#[test]
fn criterion_09_vandermonde() {
    let start = Instant::now();
    let mut f = Vec::new();
    let stair = SixPoint::from_ints([0, 1, 2, 3, 4, 5]);
    let square = rat(34560 * 34560);
    require(&mut f, vandermonde_disc(&stair) == square, "staircase Vandermonde");
    require(&mut f, monic_from_roots_disc(&stair).unwrap() == square, "staircase discriminant");
    for p in SixPoint::sample(7, 20) {
        require(
            &mut f,
            vandermonde_disc(&p) == monic_from_roots_disc(&p).unwrap(),
            format!("disagree at {:?}", p.coords()),
        );
    }
    within(&mut f, start, FAST);
    report(9, &f);
}

fn random_poly(rng: &mut ChaCha8Rng, s: &Arc<VariableSpace>, terms: usize) -> Polynomial {
    Polynomial::from_terms(
        s,
        (0..terms).map(|_| {
            let e: Vec<u16> = (0..s.len()).map(|_| rng.gen_range(0..3)).collect();
            (Monomial::from_exponents(&e), rat(rng.gen_range(-5..=5)))
        }),
    )
}

/// Leibniz formula.
fn leibniz_det(m: &[Vec<Polynomial>], s: &Arc<VariableSpace>) -> Polynomial {
    let n = m.len();
    let mut acc = Polynomial::zero(s);
    for perm in (0..n).permutations(n) {
        let inversions = (0..n).tuple_combinations().filter(|&(i, j)| perm[i] > perm[j]).count();
        let term = (0..n).fold(Polynomial::one(s), |t, i| t * &m[i][perm[i]]);
        acc = if inversions % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn gram3(f: &Polynomial) -> [[ExactRat; 3]; 3] {
    let mut g: [[ExactRat; 3]; 3] = Default::default();
    for (m, c) in f.terms() {
        let idx: Vec<usize> = (0..3)
            .flat_map(|i| std::iter::repeat_n(i, m.exponent(i) as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            g[i][i] = c * rat(2);
        } else {
            g[i][j] = c.clone();
            g[j][i] = c.clone();
        }
    }
    g
}

fn det3(g: &[[ExactRat; 3]; 3]) -> ExactRat {
    (0..3)
        .permutations(3)
        .map(|p| {
            let inv = (0..3).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
            let t: ExactRat = (0..3).map(|i| g[i][p[i]].clone()).product();
            if inv % 2 == 0 { t } else { -t }
        })
        .sum()
}

/// A ternary quadratic form of rank 3, which is irreducible over Q.
fn rank3_quadratic(rng: &mut ChaCha8Rng, s: &Arc<VariableSpace>) -> Polynomial {
    let exps = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
    loop {
        let q = Polynomial::from_terms(
            s,
            exps.iter().map(|e| (Monomial::from_exponents(e), rat(rng.gen_range(-6..=6)))),
        );
        if !q.is_zero() && det3(&gram3(&q)) != rat(0) {
            return q.primitive_normalized().1;
        }
    }
}

#[test]
fn criterion_10_property_suites() {
    let mut f = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = VariableSpace::unweighted(["a", "b", "c"]).unwrap();

    for _ in 0..100 {
        let (p, q, r) = (
            random_poly(&mut rng, &s, 4),
            random_poly(&mut rng, &s, 4),
            random_poly(&mut rng, &s, 3),
        );
        let axioms = &p + &q == &q + &p
            && &p * &q == &q * &p
            && (&p * &q) * &r == &p * (&q * &r)
            && &p * (&q + &r) == &p * &q + &p * &r
            && (&p - &p).is_zero();
        require(&mut f, axioms, format!("ring axioms fail for {p}, {q}, {r}"));
        if !q.is_zero() {
            require(&mut f, (&p * &q).exact_div(&q).ok() == Some(p.clone()), format!("exact_div({p} * {q})"));
        }
    }

    for _ in 0..100 {
        let m: Vec<Vec<Polynomial>> = (0..4)
            .map(|_| (0..4).map(|_| random_poly(&mut rng, &s, 2)).collect())
            .collect();
        let pm = PolyMatrix::from_rows(&s, m.clone()).unwrap();
        let oracle = leibniz_det(&m, &s);
        require(&mut f, bareiss_det(&pm).unwrap() == oracle, "Bareiss differs from Leibniz");
        require(&mut f, cofactor_det(&pm).unwrap() == oracle, "cofactor differs from Leibniz");
    }

    for n in 2..=6 {
        let g = generic_binary_form(n);
        let direct = binary_discriminant(&g, "x", "w", n).unwrap();
        let partial = discriminant_via_partials(&g, "x", "w", n).unwrap();
        require(&mut f, partial == direct.scale(&partials_constant(n)), format!("routes differ at degree {n}"));
        // monic form with known roots: discriminant is the Vandermonde square
        let rs = VariableSpace::unweighted(["x", "w"]).unwrap();
        let roots = &[-2i64, 0, 1, 3, 4, 7][..n];
        let form = roots.iter().fold(Polynomial::one(&rs), |acc, r| {
            acc * Polynomial::parse(&format!("x - ({r})*w"), &rs).unwrap()
        });
        let vdm: ExactRat = roots
            .iter()
            .tuple_combinations()
            .map(|(a, b)| rat((a - b) * (a - b)))
            .product();
        let d = binary_discriminant(&form, "x", "w", n).unwrap();
        require(&mut f, d.constant_value() == Some(vdm), format!("root oracle fails at degree {n}"));
    }

    let t = VariableSpace::unweighted(["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for case in 0..50 {
        let prod = (&rank3_quadratic(&mut rng, &t) * &rank3_quadratic(&mut rng, &t))
            .primitive_normalized()
            .1;
        let cert = certify_irreducible(&prod, DEFAULT_ATTEMPTS, case).unwrap();
        require(&mut f, cert.verdict == Verdict::Inconclusive, format!("product certified irreducible: {prod}"));
    }
    for case in 0..50 {
        let q = rank3_quadratic(&mut rng, &t);
        let cert = certify_irreducible(&q, DEFAULT_ATTEMPTS, case).unwrap();
        let ok = cert.verdict == Verdict::Irreducible && replay(&q, &cert).is_ok();
        require(&mut f, ok, format!("rank-3 form not certified: {q}"));
    }
    report(10, &f);
}

fn verify_all(extra: &[&str], cache: &std::path::Path, out: &std::path::Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_orthoforms"))
        .args(["verify", "all", "--seed", "7", "--report"])
        .arg(out)
        .arg("--cache-dir")
        .arg(cache)
        .args(extra)
        .status()
        .unwrap();
    assert!(status.code().is_some_and(|c| c == 0 || c == 1));
    std::fs::read(out).unwrap()
}

#[test]
fn criterion_11_determinism() {
    let mut f = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let fresh = verify_all(&[], &cache, &dir.path().join("a.json"));
    let cached = verify_all(&[], &cache, &dir.path().join("b.json"));
    let one = verify_all(&["--workers", "1"], &dir.path().join("c1"), &dir.path().join("c.json"));
    let four = verify_all(&["--workers", "4"], &dir.path().join("c4"), &dir.path().join("d.json"));
    require(&mut f, fresh == cached, "report changes when artifacts come from the cache");
    require(&mut f, fresh == one, "report changes with one worker");
    require(&mut f, one == four, "report changes with worker count");

    let hashes = |bytes: &[u8]| -> HashMap<String, serde_json::Value> {
        let v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["name"].as_str().unwrap().to_string(), c["artifact_hashes"].clone()))
            .collect()
    };
    let h = hashes(&fresh);
    require(&mut f, h == hashes(&four), "artifact hashes differ");
    let k120 = symbolic().k120.content_hash();
    require(
        &mut f,
        h["pipeline.k120_cache"]["k120"] == k120,
        "reported k120 hash differs from the library computation",
    );
    report(11, &f);
}
