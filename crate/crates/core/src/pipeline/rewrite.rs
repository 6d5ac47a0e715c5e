//! Rewriting torus-invariant polynomials in `u` into the invariants
//! `t_4, ..., t_12, s_10`, with `s_10` reduced to degree at most one.

use std::collections::HashMap;

use num_traits::One;

use super::actions::{check_u_space, u_monomial};
use super::spaces::*;
use super::PipelineError;
use crate::arith::{rat, ExactRat, Monomial, Polynomial};

/// `t_10^2 - 4 t_8 t_12` over [`ts_space`].
pub fn delta20_ts() -> Polynomial {
    Polynomial::parse("t_10^2 - 4*t_8*t_12", ts_space()).unwrap()
}

/// Replace `s_10^2` by `t_10^2 - 4 t_8 t_12` until `s_10` has degree <= 1.
pub fn reduce_s10(f: &Polynomial) -> Polynomial {
    let space = ts_space();
    assert_eq!(f.space().as_ref(), space.as_ref());
    let max = f.degree_in(S10).unwrap_or(0);
    if max <= 1 {
        return f.clone();
    }
    let d20 = delta20_ts();
    let mut powers = vec![Polynomial::one(space)];
    for k in 1..=(max / 2) as usize {
        powers.push(&powers[k - 1] * &d20);
    }
    let mut acc: HashMap<Monomial, ExactRat> = HashMap::new();
    for (m, c) in f.terms() {
        let e = m.exponent(S10);
        let base = m.with_exponent(S10, e % 2);
        for (pm, pc) in powers[(e / 2) as usize].terms() {
            *acc.entry(base.mul(pm)).or_default() += c * pc;
        }
    }
    Polynomial::from_terms(space, acc)
}

/// Rewrite a torus-invariant polynomial in `u` over [`ts_space`].
///
/// Each monomial must be balanced, `deg u_5_3 + deg u_7_5 = deg u_3_5 +
/// deg u_5_7`. It is factored greedily as `t_8^a t_12^b (u_5_3 u_5_7)^p` or
/// `t_8^a t_12^b (u_3_5 u_7_5)^q`, and the last factor expanded through
/// `u_5_3 u_5_7 = (t_10 + s_10)/2`, `u_3_5 u_7_5 = (t_10 - s_10)/2`.
pub fn rewrite_u_to_ts(f: &Polynomial) -> Result<Polynomial, PipelineError> {
    check_u_space(f)?;
    let space = ts_space();
    let mut plus = HalfPowers::new(1);
    let mut minus = HalfPowers::new(-1);
    let mut acc: HashMap<Monomial, ExactRat> = HashMap::with_capacity(f.len());
    for (m, c) in f.terms() {
        let e = |i| m.exponent(i);
        if e(XI) != 0 || e(WI) != 0 {
            return Err(PipelineError::NotBalanced(
                Polynomial::monomial(f.space(), m.clone(), rat(1)).to_string(),
            ));
        }
        let (a, c_, d, f_) = (e(U53), e(U35), e(U75), e(U57));
        if a + d != c_ + f_ {
            return Err(PipelineError::NotBalanced(
                Polynomial::monomial(f.space(), m.clone(), rat(1)).to_string(),
            ));
        }
        let t8 = a.min(c_);
        let t12 = d.min(f_);
        let (a, d) = (a - t8, d - t12);
        // after removing t_8 and t_12 factors only (af)^a or (cd)^d remains
        let prefix = Monomial::from_exponents(&[e(U44), e(U66), t8, 0, t12, 0]);
        let tail = if a > 0 {
            plus.get(a)
        } else {
            minus.get(d)
        };
        for (tm, tc) in tail.terms() {
            *acc.entry(prefix.mul(tm)).or_default() += c * tc;
        }
    }
    Ok(Polynomial::from_terms(space, acc))
}

/// Cache of `((t_10 + sign*s_10)/2)^k`, reduced.
struct HalfPowers {
    powers: Vec<Polynomial>,
    base: Polynomial,
}

impl HalfPowers {
    fn new(sign: i64) -> Self {
        let space = ts_space();
        let base = Polynomial::from_terms(
            space,
            [
                (Monomial::var(6, T10, 1), ExactRat::new(1.into(), 2.into())),
                (Monomial::var(6, S10, 1), ExactRat::new(sign.into(), 2.into())),
            ],
        );
        Self {
            powers: vec![Polynomial::one(space)],
            base,
        }
    }

    fn get(&mut self, k: u16) -> &Polynomial {
        while self.powers.len() <= k as usize {
            let next = reduce_s10(&(self.powers.last().unwrap() * &self.base));
            self.powers.push(next);
        }
        &self.powers[k as usize]
    }
}

/// The inverse map: substitute the defining expressions of the invariants.
pub fn ts_to_u(f: &Polynomial) -> Result<Polynomial, PipelineError> {
    let bindings: HashMap<String, Polynomial> = [
        ("t_4", "u_4_4"),
        ("t_6", "u_6_6"),
        ("t_8", "u_5_3*u_3_5"),
        ("t_10", "u_5_3*u_5_7 + u_3_5*u_7_5"),
        ("t_12", "u_7_5*u_5_7"),
        ("s_10", "u_5_3*u_5_7 - u_3_5*u_7_5"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), Polynomial::parse(v, u_space()).unwrap()))
    .collect();
    Ok(f.substitute(&bindings, u_space())?)
}

/// Drop `s_10` from a polynomial over [`ts_space`] known not to involve it,
/// landing in [`t_space`].
pub fn ts_to_t(f: &Polynomial) -> Result<Polynomial, PipelineError> {
    if f.degree_in(S10).unwrap_or(0) > 0 {
        return Err(PipelineError::Check(
            "polynomial still involves s_10".to_string(),
        ));
    }
    Ok(f.embed(t_space())?)
}

/// Monomial `u_5_3^a u_4_4^b u_3_5^c u_7_5^d u_6_6^e u_5_7^f` with coefficient one.
pub fn u_term(exps: [u16; 6]) -> Polynomial {
    Polynomial::monomial(u_space(), u_monomial(exps), ExactRat::one())
}
