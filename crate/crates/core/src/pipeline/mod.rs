//! The K3 pipeline: from the Weierstrass family with parameters `u_ij` to
//! the branch-locus discriminant and its rewriting in invariants.
//!
//! Starting from
//! `g2 = u_5_3 x^5 w^3 + u_4_4 x^4 w^4 + u_3_5 x^3 w^5` and
//! `g3 = u_7_5 x^7 w^5 + u_6_6 x^6 w^6 + u_5_7 x^5 w^7`, we form
//! `h = (4 g2^3 + 27 g3^2) / (x^9 w^9)`, its discriminant `k120`, the
//! resultant `r20` of the two cofactors, and the quotient
//! `Delta60 = k120 / r20^3` expressed in `t_4, ..., t_12`.

mod actions;
mod rewrite;
mod spaces;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use actions::{
    action_weight, apply_torus, is_valid_parameter, sigma1_swap, swap_xw, TorusAction,
};
pub use rewrite::{delta20_ts, reduce_s10, rewrite_u_to_ts, ts_to_t, ts_to_u, u_term};
pub use spaces::{action_space, t_space, ts_space, u_space, U_LABELS, U_NAMES, W, X};

use crate::arith::{rat, ExactRat, Polynomial, PolyError};
use crate::elimination::{
    binary_discriminant, binary_discriminant_by_substitution, resultant, ElimError,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error("polynomial lives over {found}, expected {expected}")]
    WrongSpace { expected: String, found: String },
    #[error("monomial {0} is not balanced between u_5_3 u_7_5 and u_3_5 u_5_7")]
    NotBalanced(String),
    #[error("numeric parameter {0:?} lies on the excluded locus")]
    InvalidParameter(Vec<String>),
    #[error("operation needs symbolic parameters")]
    NotGeneric,
    #[error("leading coefficient 4 u_5_3^3 of h vanishes at this parameter")]
    DegenerateLeading,
    #[error("consistency check failed: {0}")]
    Check(String),
}

/// Parameters of the Weierstrass family: either the symbolic `u_ij` or a
/// rational point, in the order of [`U_NAMES`].
#[derive(Debug, Clone, PartialEq)]
pub enum WeierstrassData {
    Generic,
    Numeric([ExactRat; 6]),
}

impl WeierstrassData {
    pub fn numeric(values: [i64; 6]) -> Result<Self, PipelineError> {
        let v = values.map(rat);
        if !is_valid_parameter(&v) {
            return Err(PipelineError::InvalidParameter(
                v.iter().map(ToString::to_string).collect(),
            ));
        }
        Ok(WeierstrassData::Numeric(v))
    }

    /// The `k`-th parameter as a polynomial over [`u_space`].
    pub fn coordinate(&self, k: usize) -> Polynomial {
        match self {
            WeierstrassData::Generic => Polynomial::var_at(u_space(), k),
            WeierstrassData::Numeric(v) => Polynomial::constant(u_space(), v[k].clone()),
        }
    }

    /// Point map for evaluating polynomials over [`u_space`] (numeric only).
    pub fn point(&self) -> Option<HashMap<String, ExactRat>> {
        match self {
            WeierstrassData::Generic => None,
            WeierstrassData::Numeric(v) => Some(
                U_NAMES
                    .iter()
                    .zip(v.iter())
                    .map(|(n, c)| (n.to_string(), c.clone()))
                    .collect(),
            ),
        }
    }
}

fn xw(i: u16, j: u16) -> Polynomial {
    let s = u_space();
    Polynomial::var(s, X).unwrap().pow(u32::from(i)) * Polynomial::var(s, W).unwrap().pow(u32::from(j))
}

fn weierstrass_sum(u: &WeierstrassData, range: std::ops::Range<usize>) -> Polynomial {
    range.fold(Polynomial::zero(u_space()), |acc, k| {
        let (i, j) = U_LABELS[k];
        acc + u.coordinate(k) * xw(i, j)
    })
}

pub fn build_g2(u: &WeierstrassData) -> Polynomial {
    weierstrass_sum(u, 0..3)
}

pub fn build_g3(u: &WeierstrassData) -> Polynomial {
    weierstrass_sum(u, 3..6)
}

/// `g2 / (x^3 w^3)`, a binary quadratic.
pub fn cofactor_a(u: &WeierstrassData) -> Result<Polynomial, PipelineError> {
    Ok(build_g2(u).exact_div(&xw(3, 3))?)
}

/// `g3 / (x^5 w^5)`, a binary quadratic.
pub fn cofactor_b(u: &WeierstrassData) -> Result<Polynomial, PipelineError> {
    Ok(build_g3(u).exact_div(&xw(5, 5))?)
}

/// `(4 g2^3 + 27 g3^2) / (x^9 w^9)`, a binary sextic.
pub fn compute_h(u: &WeierstrassData) -> Result<Polynomial, PipelineError> {
    let g2 = build_g2(u);
    let g3 = build_g3(u);
    let num = g2.pow(3).scale(&rat(4)) + g3.pow(2).scale(&rat(27));
    Ok(num.exact_div(&xw(9, 9))?)
}

/// Resultant in `x` of the two cofactors at `w = 1`, both of formal degree 2.
pub fn compute_r20(u: &WeierstrassData) -> Result<Polynomial, PipelineError> {
    let one = rat(1);
    let wi = u_space().require(W)?;
    let a = cofactor_a(u)?.specialize(wi, &one);
    let b = cofactor_b(u)?.specialize(wi, &one);
    Ok(resultant(&a, &b, X, 2, 2)?)
}

/// Discriminant of `h` as a binary sextic, for symbolic parameters.
///
/// The generic sextic discriminant is computed once by elimination and
/// the coefficients of `h` are substituted into it.
pub fn compute_k120(u: &WeierstrassData) -> Result<Polynomial, PipelineError> {
    if *u != WeierstrassData::Generic {
        return Err(PipelineError::NotGeneric);
    }
    let h = compute_h(u)?;
    Ok(binary_discriminant_by_substitution(&h, X, W, 6)?)
}

/// Discriminant of `h` at a rational parameter, by direct elimination on
/// the numeric Sylvester matrix.
pub fn numeric_k120(u: &WeierstrassData) -> Result<ExactRat, PipelineError> {
    let WeierstrassData::Numeric(v) = u else {
        return Err(PipelineError::NotGeneric);
    };
    if num_traits::Zero::is_zero(&v[0]) {
        return Err(PipelineError::DegenerateLeading);
    }
    let h = compute_h(u)?;
    let d = binary_discriminant(&h, X, W, 6)?;
    d.constant_value()
        .ok_or_else(|| PipelineError::Check("numeric discriminant is not constant".into()))
}

/// `count` pseudo-random valid integer parameters with entries in
/// `[-bound, bound]` and `u_5_3 != 0`, reproducible from `seed`.
pub fn sample_parameters(seed: u64, count: usize, bound: i64) -> Vec<WeierstrassData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
        if v[0] == 0 {
            continue;
        }
        if let Ok(p) = WeierstrassData::numeric(v) {
            out.push(p);
        }
    }
    out
}

/// The invariants as polynomials in `u`.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub t4: Polynomial,
    pub t6: Polynomial,
    pub t8: Polynomial,
    pub t10: Polynomial,
    pub t12: Polynomial,
    pub s10: Polynomial,
}

impl InvariantSet {
    pub fn all(&self) -> [&Polynomial; 6] {
        [&self.t4, &self.t6, &self.t8, &self.t10, &self.t12, &self.s10]
    }
}

pub fn invariants_from_u(u: &WeierstrassData) -> InvariantSet {
    let c = |k| u.coordinate(k);
    let (a, b, cc, d, e, f) = (c(0), c(1), c(2), c(3), c(4), c(5));
    InvariantSet {
        t4: b,
        t6: e,
        t8: &a * &cc,
        t10: &a * &f + &cc * &d,
        t12: &d * &f,
        s10: &a * &f - &cc * &d,
    }
}

/// `t_10^2 - 4 t_8 t_12` over [`t_space`].
pub fn delta20() -> Polynomial {
    Polynomial::parse("t_10^2 - 4*t_8*t_12", t_space()).unwrap()
}

/// `t_8` over [`t_space`].
pub fn delta8() -> Polynomial {
    Polynomial::parse("t_8", t_space()).unwrap()
}

/// Result of dividing `k120` by `r20^3` and rewriting in invariants.
#[derive(Debug, Clone)]
pub struct Delta60 {
    /// `k120 / r20^3` over [`u_space`].
    pub quotient_u: Polynomial,
    /// The same quotient over [`t_space`].
    pub quotient_t: Polynomial,
    /// `quotient_t = unit * normalized`.
    pub unit: ExactRat,
    /// Primitive integral form with positive leading coefficient.
    pub normalized: Polynomial,
}

/// Divide `k120` by `r20^3`, rewrite the quotient in invariants, and check
/// that the division also holds after rewriting both sides.
pub fn compute_delta60(k120: &Polynomial, r20: &Polynomial) -> Result<Delta60, PipelineError> {
    let r3 = r20.pow(3);
    let quotient_u = k120.exact_div(&r3)?;
    let q_ts = rewrite_u_to_ts(&quotient_u)?;
    let quotient_t = ts_to_t(&q_ts)?;
    let r_ts = rewrite_u_to_ts(r20)?;
    let k_ts = rewrite_u_to_ts(k120)?;
    if reduce_s10(&(r_ts.pow(3) * &q_ts)) != k_ts {
        return Err(PipelineError::Check(
            "k120 != r20^3 * Delta60 after rewriting".into(),
        ));
    }
    let (unit, normalized) = quotient_t.primitive_normalized();
    Ok(Delta60 {
        quotient_u,
        quotient_t,
        unit,
        normalized,
    })
}

/// Every polynomial produced by the symbolic pipeline.
#[derive(Debug, Clone)]
pub struct PipelineArtifacts {
    pub g2: Polynomial,
    pub g3: Polynomial,
    pub h: Polynomial,
    pub r20: Polynomial,
    /// `r20` over [`ts_space`].
    pub r20_ts: Polynomial,
    pub k120: Polynomial,
    pub delta60: Delta60,
}

impl PipelineArtifacts {
    pub fn compute() -> Result<Self, PipelineError> {
        let k120 = compute_k120(&WeierstrassData::Generic)?;
        Self::from_k120(k120)
    }

    /// Rebuild everything around an already known `k120` (for example one
    /// loaded from a cache).
    pub fn from_k120(k120: Polynomial) -> Result<Self, PipelineError> {
        let u = WeierstrassData::Generic;
        if k120.space().as_ref() != u_space().as_ref() {
            return Err(PipelineError::WrongSpace {
                expected: u_space().to_string(),
                found: k120.space().to_string(),
            });
        }
        let r20 = compute_r20(&u)?;
        let delta60 = compute_delta60(&k120, &r20)?;
        Ok(Self {
            g2: build_g2(&u),
            g3: build_g3(&u),
            h: compute_h(&u)?,
            r20_ts: rewrite_u_to_ts(&r20)?,
            r20,
            k120,
            delta60,
        })
    }
}
