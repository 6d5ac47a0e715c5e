//! The two torus actions on the parameter space, the index swap, and the
//! excluded locus.

use std::collections::HashMap;

use num_traits::Zero;

use super::spaces::*;
use super::PipelineError;
use crate::arith::{ExactRat, Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusAction {
    /// `u_ij -> lambda^((i+j)/2) u_ij`; rescales the volume form.
    Lambda,
    /// `u_ij -> mu^(i-j) u_ij`, `x -> mu^-1 x`, `w -> mu w`.
    Mu,
}

impl TorusAction {
    /// Weights on `u_space` variables.
    pub fn weights(self) -> [i64; 8] {
        let mut w = [0i64; 8];
        for (k, (i, j)) in U_LABELS.iter().enumerate() {
            w[k] = match self {
                TorusAction::Lambda => i64::from(i + j) / 2,
                TorusAction::Mu => i64::from(*i) - i64::from(*j),
            };
        }
        if self == TorusAction::Mu {
            w[XI] = -1;
            w[WI] = 1;
        }
        w
    }
}

/// Common weight of `f` under the action; `Ok(None)` for zero.
pub fn action_weight(f: &Polynomial, action: TorusAction) -> Result<Option<i64>, PipelineError> {
    check_u_space(f)?;
    Ok(f.homogeneous_degree_with(&action.weights())?)
}

/// Apply the action with a formal scale parameter, over [`action_space`].
/// Negative powers of `mu` are carried by `mu_inv` and cancelled against
/// `mu` afterwards.
pub fn apply_torus(f: &Polynomial, action: TorusAction) -> Result<Polynomial, PipelineError> {
    check_u_space(f)?;
    let target = action_space();
    let weights = action.weights();
    let (up, down) = match action {
        TorusAction::Lambda => ("lambda", "lambda"),
        TorusAction::Mu => ("mu", "mu_inv"),
    };
    let up_var = Polynomial::var(target, up)?;
    let down_var = Polynomial::var(target, down)?;
    let mut bindings = HashMap::new();
    for (k, name) in u_space().names().iter().enumerate() {
        let wgt = weights[k];
        let scale = if wgt >= 0 {
            up_var.pow(wgt as u32)
        } else {
            down_var.pow((-wgt) as u32)
        };
        bindings.insert(name.clone(), scale * Polynomial::var(target, name)?);
    }
    let moved = f.substitute(&bindings, target)?;
    Ok(cancel_mu(&moved))
}

fn cancel_mu(f: &Polynomial) -> Polynomial {
    let s = f.space();
    let (mu, inv) = (s.index_of("mu").unwrap(), s.index_of("mu_inv").unwrap());
    Polynomial::from_terms(
        s,
        f.terms().iter().map(|(m, c)| {
            let k = m.exponent(mu).min(m.exponent(inv));
            let e = m
                .with_exponent(mu, m.exponent(mu) - k)
                .with_exponent(inv, m.exponent(inv) - k);
            (e, c.clone())
        }),
    )
}

/// The index swap `u_ij -> u_ji` (`u_5_3 <-> u_3_5`, `u_7_5 <-> u_5_7`).
pub fn sigma1_swap(f: &Polynomial) -> Result<Polynomial, PipelineError> {
    check_u_space(f)?;
    let perm = [U35, U44, U53, U57, U66, U75, XI, WI];
    Ok(f.permute_variables(&perm))
}

/// Exchange the base coordinates `x <-> w`.
pub fn swap_xw(f: &Polynomial) -> Result<Polynomial, PipelineError> {
    check_u_space(f)?;
    let perm = [U53, U44, U35, U75, U66, U57, WI, XI];
    Ok(f.permute_variables(&perm))
}

/// False exactly on the excluded locus
/// `{u_3_5 = u_5_7 = 0} or {u_5_3 = u_7_5 = 0}`.
pub fn is_valid_parameter(u: &[ExactRat; 6]) -> bool {
    let z = |i: usize| u[i].is_zero();
    !((z(U35) && z(U57)) || (z(U53) && z(U75)))
}

pub(crate) fn check_u_space(f: &Polynomial) -> Result<(), PipelineError> {
    if f.space().as_ref() == u_space().as_ref() {
        Ok(())
    } else {
        Err(PipelineError::WrongSpace {
            expected: u_space().to_string(),
            found: f.space().to_string(),
        })
    }
}

/// Monomial in `u_space` from an exponent list over the six parameters.
pub(crate) fn u_monomial(exps: [u16; 6]) -> Monomial {
    let mut e = exps.to_vec();
    e.extend([0, 0]);
    Monomial::from_exponents(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::pipeline::invariants_from_u;
    use crate::pipeline::WeierstrassData;

    fn u(t: &str) -> Polynomial {
        Polynomial::parse(t, u_space()).unwrap()
    }

    #[test]
    fn t8_under_torus_actions() {
        let t8 = u("u_5_3*u_3_5");
        let act = action_space();
        assert_eq!(apply_torus(&t8, TorusAction::Mu).unwrap(), t8.embed(act).unwrap());
        assert_eq!(
            apply_torus(&t8, TorusAction::Lambda).unwrap(),
            Polynomial::parse("lambda^8*u_5_3*u_3_5", act).unwrap()
        );
        assert_eq!(action_weight(&t8, TorusAction::Lambda).unwrap(), Some(8));
    }

    #[test]
    fn action_weights() {
        assert_eq!(action_weight(&u("u_7_5*u_5_7"), TorusAction::Lambda).unwrap(), Some(12));
        assert_eq!(action_weight(&u("u_5_3"), TorusAction::Mu).unwrap(), Some(2));
        assert_eq!(action_weight(&u("0"), TorusAction::Mu).unwrap(), None);
        assert!(action_weight(&u("u_5_3 + u_4_4"), TorusAction::Mu).is_err());
        let inv = invariants_from_u(&WeierstrassData::Generic);
        for f in inv.all() {
            assert_eq!(action_weight(f, TorusAction::Mu).unwrap(), Some(0));
            assert_eq!(apply_torus(f, TorusAction::Mu).unwrap(), f.embed(action_space()).unwrap());
        }
    }

    #[test]
    fn swap_examples() {
        let inv = invariants_from_u(&WeierstrassData::Generic);
        assert_eq!(sigma1_swap(&inv.t10).unwrap(), inv.t10);
        assert_eq!(sigma1_swap(&inv.s10).unwrap(), -&inv.s10);
        let cof = u("u_5_3*x^2 + u_4_4*x*w + u_3_5*w^2");
        assert_eq!(sigma1_swap(&cof).unwrap(), swap_xw(&cof).unwrap());
    }

    #[test]
    fn excluded_locus() {
        let pt = |v: [i64; 6]| v.map(rat);
        assert!(is_valid_parameter(&pt([1, 1, 1, 1, 1, 1])));
        assert!(!is_valid_parameter(&pt([1, 1, 0, 1, 1, 0])));
        assert!(!is_valid_parameter(&pt([0, 1, 1, 0, 1, 1])));
        assert!(is_valid_parameter(&pt([0, 1, 1, 1, 1, 0])));
    }
}
