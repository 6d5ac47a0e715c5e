//! Certificates of irreducibility over Q for quasi-homogeneous polynomials.
//!
//! A quasi-homogeneous `f` with no monomial factor is dehomogenized at a
//! pivot variable, restricted to a random affine line and reduced mod a
//! prime. If the restriction keeps its degree, has a unit leading
//! coefficient mod `p` and is irreducible over `F_p`, then `f` is
//! irreducible over Q: factors of `f` are quasi-homogeneous, survive
//! dehomogenization as nonconstant factors, and by Gauss's lemma would
//! give a factorization of the restriction over `Z` of the same degrees.

mod modp;

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use modp::{is_prime, modp_irreducible, modp_reduce, ModPPoly, ModPReduction};

use crate::arith::{rat, Polynomial, PolyError, VariableSpace};

pub const DEFAULT_ATTEMPTS: usize = 40;
pub const COEFFICIENT_BOUND: i64 = 20;

#[derive(Debug, Error)]
pub enum IrredError {
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial is not primitive over Z")]
    NotPrimitive,
    #[error("polynomial is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("polynomial is divisible by the variable {0}")]
    DivisibleByVariable(String),
    #[error("expected a univariate polynomial, found {0} variables")]
    NotUnivariate(usize),
    #[error("a denominator is divisible by {prime}")]
    DenominatorDivisible { prime: u64 },
    #[error("no usable primes configured")]
    NoPrimes,
    #[error("certificate does not replay: {0}")]
    Replay(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The first `count` primes above 10 000.
pub fn default_primes(count: usize) -> Vec<u64> {
    (10_001u64..).filter(|&n| is_prime(n)).take(count).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    /// Affine variables, in the order of `direction` and `offset`.
    pub variables: Vec<String>,
    pub direction: Vec<i64>,
    pub offset: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irreducible,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub target_hash: String,
    pub seed: u64,
    pub verdict: Verdict,
    /// Number of attempts made (all of them for an inconclusive verdict).
    pub attempts: usize,
    pub attempt_index: Option<usize>,
    pub prime: Option<u64>,
    pub pivot: Option<String>,
    pub line: Option<Line>,
    pub restricted_degree: Option<usize>,
}

/// Substitute `pivot = 1`, after checking that `pivot` does not divide `f`.
pub fn dehomogenize(f: &Polynomial, pivot: &str) -> Result<Polynomial, IrredError> {
    let i = f.space().require(pivot)?;
    if divisible_by_var(f, i) {
        return Err(IrredError::DivisibleByVariable(pivot.to_string()));
    }
    Ok(f.specialize(i, &rat(1)))
}

fn divisible_by_var(f: &Polynomial, i: usize) -> bool {
    !f.is_zero() && f.exact_div(&Polynomial::var_at(f.space(), i)).is_ok()
}

fn check_preconditions(f: &Polynomial) -> Result<(), IrredError> {
    if f.is_constant() {
        return Err(IrredError::Constant);
    }
    if !f.is_primitive() {
        return Err(IrredError::NotPrimitive);
    }
    if !f.is_quasi_homogeneous() {
        return Err(IrredError::NotQuasiHomogeneous);
    }
    for i in f.variables_used() {
        if divisible_by_var(f, i) {
            return Err(IrredError::DivisibleByVariable(f.space().name(i).to_string()));
        }
    }
    Ok(())
}

/// Pivot candidates among the variables of `f`: those of positive weight,
/// ordered by the total degree of the dehomogenization, then by index.
fn pivot_candidates(f: &Polynomial) -> Vec<(String, Polynomial)> {
    let space = f.space();
    let mut out: Vec<(u64, usize, Polynomial)> = f
        .variables_used()
        .into_iter()
        .filter(|&i| space.weight(i) > 0)
        .map(|i| {
            let d = f.specialize(i, &rat(1));
            (d.total_degree().unwrap_or(0), i, d)
        })
        .collect();
    out.sort_by_key(|(deg, i, _)| (*deg, *i));
    out.into_iter()
        .map(|(_, i, d)| (space.name(i).to_string(), d))
        .collect()
}

fn draw_line(seed: u64, attempt: usize, variables: Vec<String>) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    let n = variables.len();
    let direction = (0..n)
        .map(|_| loop {
            let d = rng.gen_range(-COEFFICIENT_BOUND..=COEFFICIENT_BOUND);
            if d != 0 {
                break d;
            }
        })
        .collect();
    let offset = (0..n)
        .map(|_| rng.gen_range(-COEFFICIENT_BOUND..=COEFFICIENT_BOUND))
        .collect();
    Line {
        variables,
        direction,
        offset,
    }
}

fn line_space() -> Arc<VariableSpace> {
    VariableSpace::unweighted(["s"]).unwrap()
}

/// Restrict `f` to `v_i = direction_i * s + offset_i`.
pub fn restrict_to_line(f: &Polynomial, line: &Line) -> Result<Polynomial, IrredError> {
    let target = line_space();
    let s = Polynomial::var(&target, "s")?;
    let bindings: HashMap<String, Polynomial> = line
        .variables
        .iter()
        .zip(line.direction.iter().zip(&line.offset))
        .map(|(v, (&d, &o))| {
            (v.clone(), s.scale(&rat(d)) + Polynomial::from_int(&target, o))
        })
        .collect();
    Ok(f.substitute(&bindings, &target)?)
}

/// Outcome of a single attempt: the restricted degree when positive.
fn run_attempt(affine: &Polynomial, line: &Line, prime: u64) -> Result<Option<usize>, IrredError> {
    let restricted = restrict_to_line(affine, line)?;
    let want = affine.total_degree().unwrap_or(0) as usize;
    let got = restricted.total_degree().map(|d| d as usize);
    if got != Some(want) || want == 0 {
        return Ok(None);
    }
    let red = match modp_reduce(&restricted, prime) {
        Ok(r) => r,
        Err(IrredError::DenominatorDivisible { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if red.degree_dropped() {
        return Ok(None);
    }
    Ok(modp_irreducible(&red.poly).then_some(want))
}

/// Try up to `attempts` random restrictions. Attempt `i` uses pivot
/// candidate `i mod k`, prime `primes[i mod len]` and a line drawn from
/// stream `i` of the seeded generator. The lowest successful index wins,
/// regardless of scheduling.
pub fn certify_irreducible_with(
    f: &Polynomial,
    attempts: usize,
    seed: u64,
    primes: &[u64],
) -> Result<IrreducibilityCertificate, IrredError> {
    check_preconditions(f)?;
    if primes.is_empty() {
        return Err(IrredError::NoPrimes);
    }
    let candidates = pivot_candidates(f);
    let target_hash = f.content_hash();
    let space = f.space();
    let setup = |i: usize| {
        let (pivot, affine) = &candidates[i % candidates.len()];
        let vars: Vec<String> = space
            .names()
            .iter()
            .filter(|n| *n != pivot)
            .cloned()
            .collect();
        (pivot, affine, draw_line(seed, i, vars), primes[i % primes.len()])
    };
    let hit = (0..attempts)
        .into_par_iter()
        .map(|i| {
            let (_, affine, line, p) = setup(i);
            run_attempt(affine, &line, p).map(|r| r.map(|deg| (i, deg)))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        Some(Err(e)) => Err(e),
        Some(Ok(Some((i, deg)))) => {
            let (pivot, _, line, p) = setup(i);
            Ok(IrreducibilityCertificate {
                target_hash,
                seed,
                verdict: Verdict::Irreducible,
                attempts: i + 1,
                attempt_index: Some(i),
                prime: Some(p),
                pivot: Some(pivot.clone()),
                line: Some(line),
                restricted_degree: Some(deg),
            })
        }
        _ => Ok(IrreducibilityCertificate {
            target_hash,
            seed,
            verdict: Verdict::Inconclusive,
            attempts,
            attempt_index: None,
            prime: None,
            pivot: None,
            line: None,
            restricted_degree: None,
        }),
    }
}

pub fn certify_irreducible(
    f: &Polynomial,
    attempts: usize,
    seed: u64,
) -> Result<IrreducibilityCertificate, IrredError> {
    certify_irreducible_with(f, attempts, seed, &default_primes(DEFAULT_ATTEMPTS))
}

/// Re-run a positive certificate from its recorded data. Also checks that
/// the recorded line is the one drawn from the seed and attempt index.
pub fn replay(f: &Polynomial, cert: &IrreducibilityCertificate) -> Result<(), IrredError> {
    let fail = |m: &str| Err(IrredError::Replay(m.to_string()));
    if cert.verdict != Verdict::Irreducible {
        return fail("certificate is not positive");
    }
    if cert.target_hash != f.content_hash() {
        return fail("target hash differs");
    }
    let (Some(i), Some(p), Some(pivot), Some(line), Some(deg)) = (
        cert.attempt_index,
        cert.prime,
        cert.pivot.as_deref(),
        cert.line.as_ref(),
        cert.restricted_degree,
    ) else {
        return fail("certificate is missing fields");
    };
    check_preconditions(f)?;
    if !is_prime(p) {
        return fail("recorded modulus is not prime");
    }
    if *line != draw_line(cert.seed, i, line.variables.clone()) {
        return fail("line does not match seed and attempt index");
    }
    let mut expected: Vec<&String> = f.space().names().iter().filter(|n| *n != pivot).collect();
    expected.sort();
    let mut recorded: Vec<&String> = line.variables.iter().collect();
    recorded.sort();
    if expected != recorded {
        return fail("line variables do not cover the affine chart");
    }
    let affine = dehomogenize(f, pivot)?;
    match run_attempt(&affine, line, p)? {
        Some(d) if d == deg => Ok(()),
        Some(_) => fail("restricted degree differs"),
        None => fail("restriction is not irreducible mod p"),
    }
}
