//! The verification suites behind `orthoforms verify`.

use std::collections::BTreeMap;
use std::time::Instant;

use orthoforms_core::arith::{rat, Polynomial};
use orthoforms_core::elimination::{
    binary_form_coefficients, bareiss_det, cofactor_det, sylvester_matrix,
};
use orthoforms_core::graded::{
    character_factor_check, hilbert_from_counting, hilbert_from_rational, series_equal,
    WeightedPresentation,
};
use orthoforms_core::group::{
    displayed_sp4_generators, extend_by_eta, extended_generators, generate_group, gram_uu,
    preserves_form, s6_signature_check, sp4_by_definition, GroupClosure,
};
use orthoforms_core::irreducibility::{certify_irreducible, replay, Verdict};
use orthoforms_core::pipeline::{
    self, action_weight, cofactor_a, cofactor_b, compute_h, compute_r20, invariants_from_u, numeric_k120,
    rewrite_u_to_ts, sample_parameters, sigma1_swap, ts_to_t, PipelineArtifacts, TorusAction,
    WeierstrassData,
};
use orthoforms_core::symfunc::{igusa_member, monic_from_roots_disc, vandermonde_disc, SixPoint};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::{Cache, CacheError};
use crate::report::{CheckRecord, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Pipeline,
    Rings,
    Group,
    Symfunc,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Pipeline => "pipeline",
            Suite::Rings => "rings",
            Suite::Group => "group",
            Suite::Symfunc => "symfunc",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub attempts: usize,
    pub truncate: usize,
    pub allow_inconclusive: bool,
    pub timings: bool,
    pub cache: Cache,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            attempts: orthoforms_core::irreducibility::DEFAULT_ATTEMPTS,
            truncate: 120,
            allow_inconclusive: false,
            timings: false,
            cache: Cache::disabled(),
        }
    }
}

pub const K120_KEY_FLAGS: &str = "u-space";

/// `k120` from the cache, or computed and stored.
pub fn load_or_compute_k120(cache: &Cache) -> Result<Polynomial, CacheError> {
    let key = Cache::key("k120", K120_KEY_FLAGS);
    if let Some(k) = cache.load(&key)? {
        return Ok(k);
    }
    let k = pipeline::compute_k120(&WeierstrassData::Generic).expect("symbolic k120");
    cache.store(&key, &k)?;
    Ok(k)
}

type ArtifactCheck = fn(&PipelineArtifacts, &VerifyOptions) -> CheckRecord;

type Check<'a> = (&'static str, Box<dyn Fn() -> CheckRecord + Send + Sync + 'a>);

pub fn run(suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    let mut records = Vec::new();

    let artifacts = if suite.includes(Suite::Pipeline) {
        match load_or_compute_k120(&opts.cache).map(PipelineArtifacts::from_k120) {
            Ok(Ok(a)) => {
                records.push(
                    CheckRecord::pass("pipeline.k120_cache")
                        .with_hash("k120", a.k120.content_hash()),
                );
                Some(a)
            }
            Ok(Err(e)) => {
                records.push(CheckRecord::fail("pipeline.k120_cache", json!(e.to_string())));
                None
            }
            Err(e) => {
                records.push(CheckRecord::fail("pipeline.k120_cache", json!(e.to_string())));
                None
            }
        }
    } else {
        None
    };

    let mut checks: Vec<Check> = Vec::new();
    if suite.includes(Suite::Pipeline) {
        checks.push(("pipeline.delta20_identity", Box::new(check_delta20)));
        checks.push(("pipeline.h_division", Box::new(check_h)));
        checks.push(("pipeline.r20_closed_form", Box::new(check_r20)));
        let dependent: [(&'static str, ArtifactCheck); 4] = [
            ("pipeline.k120_degree_symmetry", check_k120_degree),
            ("pipeline.k120_specialization", check_k120_specialization),
            ("pipeline.delta60_factorization", check_delta60),
            ("pipeline.delta60_irreducible", check_irreducible),
        ];
        for (name, f) in dependent {
            match &artifacts {
                Some(a) => checks.push((name, Box::new(move || f(a, opts)))),
                None => records.push(
                    CheckRecord::fail(name, json!("pipeline artifacts unavailable"))
                        .with_detail("skipped"),
                ),
            }
        }
    }
    if suite.includes(Suite::Rings) {
        let n = opts.truncate;
        for (name, p) in [
            ("rings.hilbert_characters", WeightedPresentation::characters_ring()),
            ("rings.hilbert_trivial_character", WeightedPresentation::trivial_character_ring()),
            ("rings.hilbert_free", WeightedPresentation::free_ring()),
        ] {
            checks.push((name, Box::new(move || check_hilbert(name, &p, n))));
        }
        checks.push(("rings.character_factor", Box::new(move || check_factor(n))));
    }
    if suite.includes(Suite::Group) {
        checks.push(("group.generators_preserve_form", Box::new(check_generators)));
        checks.push(("group.generated_group_s6", Box::new(check_generated_s6)));
        checks.push(("group.extension_order_1440", Box::new(check_extension)));
        checks.push(("group.sp4_by_definition_s6", Box::new(check_sp4_definition)));
    }
    if suite.includes(Suite::Symfunc) {
        checks.push(("symfunc.vandermonde_cross_check", Box::new(|| check_vandermonde(opts.seed))));
        checks.push(("symfunc.igusa_examples", Box::new(check_igusa)));
    }

    let timings = opts.timings;
    records.par_extend(checks.par_iter().map(|(name, f)| {
        let start = Instant::now();
        let mut r = f();
        debug_assert_eq!(r.name, *name);
        if timings {
            r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        r
    }));

    let flags = BTreeMap::from([
        ("attempts".to_string(), json!(opts.attempts)),
        ("truncate".to_string(), json!(opts.truncate)),
        ("allow_inconclusive".to_string(), json!(opts.allow_inconclusive)),
    ]);
    VerificationReport::new(suite.name(), opts.seed, flags, records)
}

fn check_delta20() -> CheckRecord {
    let inv = invariants_from_u(&WeierstrassData::Generic);
    let lhs = inv.s10.pow(2);
    let rhs = inv.t10.pow(2) - (&inv.t8 * &inv.t12).scale(&rat(4));
    let name = "pipeline.delta20_identity";
    CheckRecord::verdict(name, lhs == rhs, || json!((lhs - rhs).to_string()))
}

fn check_h() -> CheckRecord {
    let name = "pipeline.h_division";
    let h = match compute_h(&WeierstrassData::Generic) {
        Ok(h) => h,
        Err(e) => return CheckRecord::fail(name, json!(e.to_string())),
    };
    let coeffs = match binary_form_coefficients(&h, pipeline::X, pipeline::W, 6) {
        Ok(c) => c,
        Err(e) => return CheckRecord::fail(name, json!(e.to_string())),
    };
    let bad: Vec<String> = coeffs
        .iter()
        .filter(|c| action_weight(c, TorusAction::Lambda).ok() != Some(Some(12)))
        .map(ToString::to_string)
        .collect();
    CheckRecord::verdict(name, bad.is_empty(), || json!({ "coefficients_off_weight_12": bad }))
        .with_hash("h", h.content_hash())
}

fn check_r20() -> CheckRecord {
    let name = "pipeline.r20_closed_form";
    let u = WeierstrassData::Generic;
    let r = match compute_r20(&u) {
        Ok(r) => r,
        Err(e) => return CheckRecord::fail(name, json!(e.to_string())),
    };
    let space = pipeline::u_space();
    let closed = Polynomial::parse(
        "(u_5_3*u_5_7 - u_3_5*u_7_5)^2 - (u_5_3*u_6_6 - u_4_4*u_7_5)*(u_4_4*u_5_7 - u_3_5*u_6_6)",
        space,
    )
    .unwrap();
    let w = space.require(pipeline::W).unwrap();
    let dets = cofactor_a(&u).and_then(|a| {
        let b = cofactor_b(&u)?;
        let m = sylvester_matrix(&a.specialize(w, &rat(1)), &b.specialize(w, &rat(1)), "x", 2, 2)?;
        Ok((bareiss_det(&m)?, cofactor_det(&m)?))
    });
    let (bareiss, expansion) = match dets {
        Ok(v) => v,
        Err(e) => return CheckRecord::fail(name, json!(e.to_string())),
    };
    let s10_free = rewrite_u_to_ts(&r).ok().and_then(|t| ts_to_t(&t).ok()).is_some();
    let ok = r == closed
        && bareiss == expansion
        && bareiss == r
        && r.weighted_degree() == Some(20)
        && sigma1_swap(&r).ok().as_ref() == Some(&r)
        && s10_free;
    CheckRecord::verdict(name, ok, || {
        json!({
            "r20": r.to_string(),
            "weighted_degree": r.weighted_degree(),
            "s10_free": s10_free,
        })
    })
    .with_hash("r20", r.content_hash())
}

fn check_k120_degree(a: &PipelineArtifacts, _: &VerifyOptions) -> CheckRecord {
    let k = &a.k120;
    let mu = action_weight(k, TorusAction::Mu).ok().flatten();
    let swap = sigma1_swap(k).ok().as_ref() == Some(k);
    let ok = k.weighted_degree() == Some(120) && mu == Some(0) && swap;
    CheckRecord::verdict("pipeline.k120_degree_symmetry", ok, || {
        json!({ "weighted_degree": k.weighted_degree(), "mu_weight": mu, "swap_invariant": swap })
    })
    .with_hash("k120", k.content_hash())
    .with_detail(format!("{} terms", k.len()))
}

fn check_k120_specialization(a: &PipelineArtifacts, opts: &VerifyOptions) -> CheckRecord {
    let name = "pipeline.k120_specialization";
    for p in sample_parameters(opts.seed, 20, 6) {
        let sym = a.k120.evaluate(&p.point().unwrap());
        let num = numeric_k120(&p);
        let agree = matches!((&sym, &num), (Ok(s), Ok(n)) if s == n);
        if !agree {
            let WeierstrassData::Numeric(v) = &p else { unreachable!() };
            return CheckRecord::fail(
                name,
                json!({
                    "u": v.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "symbolic": format!("{sym:?}"),
                    "numeric": format!("{num:?}"),
                }),
            );
        }
    }
    CheckRecord::pass(name).with_detail("20 points")
}

fn check_delta60(a: &PipelineArtifacts, _: &VerifyOptions) -> CheckRecord {
    let d = &a.delta60;
    let remultiplied = a.r20.pow(3) * &d.quotient_u == a.k120;
    let ok = remultiplied
        && d.normalized.weighted_degree() == Some(60)
        && d.normalized.is_primitive()
        && d.quotient_t == d.normalized.scale(&d.unit);
    CheckRecord::verdict("pipeline.delta60_factorization", ok, || {
        json!({
            "remultiplied": remultiplied,
            "weighted_degree": d.normalized.weighted_degree(),
        })
    })
    .with_hash("delta60", d.normalized.content_hash())
    .with_detail(format!("{} terms, unit {}", d.normalized.len(), d.unit))
}

fn check_irreducible(a: &PipelineArtifacts, opts: &VerifyOptions) -> CheckRecord {
    let name = "pipeline.delta60_irreducible";
    let f = &a.delta60.normalized;
    let cert = match certify_irreducible(f, opts.attempts, opts.seed) {
        Ok(c) => c,
        Err(e) => return CheckRecord::fail(name, json!(e.to_string())),
    };
    let mut rec = match cert.verdict {
        Verdict::Irreducible => match replay(f, &cert) {
            Ok(()) => CheckRecord::pass(name),
            Err(e) => CheckRecord::fail(name, json!(e.to_string())),
        },
        Verdict::Inconclusive => CheckRecord::new(name, Status::Inconclusive),
    };
    rec.certificate = serde_json::to_value(&cert).ok();
    rec.with_hash("delta60", f.content_hash())
}

fn check_hilbert(name: &str, p: &WeightedPresentation, n: usize) -> CheckRecord {
    let (a, b) = match (hilbert_from_rational(p, n), hilbert_from_counting(p, n)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return CheckRecord::fail(name, json!(format!("{a:?} / {b:?}"))),
    };
    let equal = series_equal(&a, &b).unwrap_or(false);
    let first_diff = a.coeffs.iter().zip(&b.coeffs).position(|(x, y)| x != y);
    CheckRecord::verdict(name, equal, || {
        let k = first_diff.unwrap_or(0);
        json!({ "weight": k, "rational": a.coeffs[k].to_string(), "counting": b.coeffs[k].to_string() })
    })
    .with_hash(
        "series",
        crate::cache::sha256_hex(serde_json::to_string(&a).unwrap().as_bytes()),
    )
    .with_detail(format!("order {n}"))
}

fn check_factor(n: usize) -> CheckRecord {
    let name = "rings.character_factor";
    match character_factor_check(n) {
        Ok(ok) => CheckRecord::verdict(name, ok, || json!({ "order": n })),
        Err(e) => CheckRecord::fail(name, json!(e.to_string())),
    }
    .with_detail(format!("order {n}"))
}

fn closure_json(c: &GroupClosure) -> serde_json::Value {
    json!({ "order": c.order, "histogram": c.histogram, "dimension": c.dimension })
}

fn check_generators() -> CheckRecord {
    let g = gram_uu();
    let failing: Vec<serde_json::Value> = displayed_sp4_generators()
        .iter()
        .enumerate()
        .filter(|(_, m)| !preserves_form(m, &g).unwrap())
        .map(|(i, m)| json!({ "index": i + 1, "matrix": m.to_string() }))
        .collect();
    CheckRecord::verdict("group.generators_preserve_form", failing.is_empty(), || {
        json!({ "failing_generators": failing })
    })
}

fn check_generated_s6() -> CheckRecord {
    let name = "group.generated_group_s6";
    match generate_group(&displayed_sp4_generators()) {
        Ok(c) => CheckRecord::verdict(name, s6_signature_check(&c), || closure_json(&c)),
        Err(e) => CheckRecord::fail(name, json!(e.to_string())),
    }
}

fn check_extension() -> CheckRecord {
    let name = "group.extension_order_1440";
    match generate_group(&extended_generators(&displayed_sp4_generators())) {
        Ok(c) => CheckRecord::verdict(name, c.order == 1440, || closure_json(&c)),
        Err(e) => CheckRecord::fail(name, json!(e.to_string())),
    }
}

fn check_sp4_definition() -> CheckRecord {
    let sp = sp4_by_definition();
    let ext = extend_by_eta(&sp);
    let ok = s6_signature_check(&sp) && ext.order == 1440;
    CheckRecord::verdict("group.sp4_by_definition_s6", ok, || {
        json!({ "sp4": closure_json(&sp), "extension_order": ext.order })
    })
    .with_detail("all 4x4 matrices over F2 preserving U+U")
}

fn check_vandermonde(seed: u64) -> CheckRecord {
    let name = "symfunc.vandermonde_cross_check";
    let staircase = SixPoint::from_ints([0, 1, 2, 3, 4, 5]);
    let expected = rat(34560 * 34560);
    let mut points = vec![staircase.clone()];
    points.extend(SixPoint::sample(seed, 20));
    for p in &points {
        let v = vandermonde_disc(p);
        let e = monic_from_roots_disc(p);
        let ok = matches!(&e, Ok(e) if *e == v) && (p != &staircase || v == expected);
        if !ok {
            return CheckRecord::fail(
                name,
                json!({
                    "point": p.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "vandermonde": v.to_string(),
                    "elimination": format!("{e:?}"),
                }),
            );
        }
    }
    CheckRecord::pass(name).with_detail("21 points")
}

fn check_igusa() -> CheckRecord {
    let cases = [
        ([1, 1, -1, -1, 0, 0], true),
        ([1, -1, 0, 0, 0, 0], false),
        ([0, 0, 0, 0, 0, 0], true),
    ];
    let wrong: Vec<_> = cases
        .iter()
        .filter(|(p, want)| igusa_member(&SixPoint::from_ints(*p)) != *want)
        .map(|(p, _)| json!(p))
        .collect();
    CheckRecord::verdict("symfunc.igusa_examples", wrong.is_empty(), || json!(wrong))
}
