//! Symmetric functions of six points: the Igusa quartic, the Vandermonde
//! discriminant and its agreement with the discriminant of the monic
//! polynomial with those roots.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{ExactRat, Polynomial, VariableSpace};
use crate::elimination::{binary_discriminant, ElimError};

#[derive(Debug, Error)]
pub enum SymError {
    #[error("index {index} outside 1..={n}")]
    IndexRange { index: usize, n: usize },
    #[error(transparent)]
    Elim(#[from] ElimError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixPoint(pub [ExactRat; 6]);

impl SixPoint {
    pub fn from_ints(v: [i64; 6]) -> Self {
        Self(v.map(|a| ExactRat::from_integer(a.into())))
    }

    pub fn coords(&self) -> &[ExactRat; 6] {
        &self.0
    }

    /// `count` pseudo-random points with coordinates `a/b`, `|a| <= 30`,
    /// `1 <= b <= 7`, reproducible from `seed`.
    pub fn sample(seed: u64, count: usize) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                Self(std::array::from_fn(|_| {
                    ExactRat::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=7).into())
                }))
            })
            .collect()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.0.iter().sum::<ExactRat>().is_zero()
    }
}

/// `sum x_i = 0` and `(sum x_i^2)^2 = 4 sum x_i^4`.
pub fn igusa_member(p: &SixPoint) -> bool {
    let p2 = power_sum_of(&p.0, 2);
    let p4 = power_sum_of(&p.0, 4);
    p.is_zero_sum() && &p2 * &p2 == p4 * ExactRat::from_integer(4.into())
}

/// `prod_{i<j} (x_i - x_j)^2`.
pub fn vandermonde_disc(p: &SixPoint) -> ExactRat {
    let x = &p.0;
    let mut acc = ExactRat::one();
    for i in 0..6 {
        for j in i + 1..6 {
            let d = &x[i] - &x[j];
            acc *= &d * &d;
        }
    }
    acc
}

/// Space `s, w, x_1, ..., x_n` for symbolic root computations.
pub fn roots_space(n: usize) -> Arc<VariableSpace> {
    let mut names = vec!["s".to_string(), "w".to_string()];
    names.extend((1..=n).map(|i| format!("x_{i}")));
    VariableSpace::unweighted(names).expect("roots space")
}

fn root_vars(space: &Arc<VariableSpace>, n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var_at(space, i + 2)).collect()
}

/// `prod_{i<j} (x_i - x_j)^2` over [`roots_space`].
pub fn vandermonde_symbolic(n: usize) -> Polynomial {
    let space = roots_space(n);
    let xs = root_vars(&space, n);
    let mut acc = Polynomial::one(&space);
    for i in 0..n {
        for j in i + 1..n {
            let d = &xs[i] - &xs[j];
            acc = acc * (&d * &d);
        }
    }
    acc
}

/// `prod (s - r_i w)` as a binary form of degree `roots.len()` in `(s, w)`.
fn monic_from_roots(space: &Arc<VariableSpace>, roots: &[Polynomial]) -> Polynomial {
    let s = Polynomial::var(space, "s").unwrap();
    let w = Polynomial::var(space, "w").unwrap();
    roots
        .iter()
        .fold(Polynomial::one(space), |acc, r| acc * (&s - r * &w))
}

/// Discriminant of the monic sextic with the given roots, through the
/// elimination module.
pub fn monic_from_roots_disc(p: &SixPoint) -> Result<ExactRat, SymError> {
    let space = VariableSpace::unweighted(["s", "w"]).unwrap();
    let roots: Vec<Polynomial> = p
        .0
        .iter()
        .map(|c| Polynomial::constant(&space, c.clone()))
        .collect();
    let f = monic_from_roots(&space, &roots);
    let d = binary_discriminant(&f, "s", "w", 6)?;
    Ok(d.constant_value().unwrap_or_else(ExactRat::zero))
}

/// The same discriminant with symbolic roots `x_1..x_n` over [`roots_space`].
pub fn monic_from_roots_disc_symbolic(n: usize) -> Result<Polynomial, SymError> {
    let space = roots_space(n);
    let f = monic_from_roots(&space, &root_vars(&space, n));
    Ok(binary_discriminant(&f, "s", "w", n)?)
}

fn check_index(i: usize, n: usize) -> Result<(), SymError> {
    if (1..=n).contains(&i) {
        Ok(())
    } else {
        Err(SymError::IndexRange { index: i, n })
    }
}

/// All elementary symmetric functions `e_0..e_n` of the values.
fn elementary_all<T>(xs: &[T], one: T) -> Vec<T>
where
    T: Clone + for<'a> std::ops::Add<&'a T, Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut e: Vec<Option<T>> = vec![None; xs.len() + 1];
    e[0] = Some(one);
    for (k, x) in xs.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prod = &e[j - 1].clone().unwrap() * x;
            e[j] = Some(match e[j].take() {
                Some(v) => v + &prod,
                None => prod,
            });
        }
    }
    e.into_iter().map(Option::unwrap).collect()
}

pub fn elementary_symmetric(p: &SixPoint, i: usize) -> Result<ExactRat, SymError> {
    check_index(i, 6)?;
    Ok(elementary_all(&p.0, ExactRat::one()).swap_remove(i))
}

fn power_sum_of(xs: &[ExactRat], i: usize) -> ExactRat {
    xs.iter().map(|x| num_traits::pow(x.clone(), i)).sum()
}

pub fn power_sum(p: &SixPoint, i: usize) -> Result<ExactRat, SymError> {
    check_index(i, 6)?;
    Ok(power_sum_of(&p.0, i))
}

/// `e_i(x_1, ..., x_n)` over [`roots_space`].
pub fn elementary_symmetric_symbolic(n: usize, i: usize) -> Result<Polynomial, SymError> {
    check_index(i, n)?;
    let space = roots_space(n);
    Ok(elementary_all(&root_vars(&space, n), Polynomial::one(&space)).swap_remove(i))
}

/// `p_i(x_1, ..., x_n)` over [`roots_space`].
pub fn power_sum_symbolic(n: usize, i: usize) -> Result<Polynomial, SymError> {
    check_index(i, n)?;
    let space = roots_space(n);
    Ok(root_vars(&space, n)
        .iter()
        .fold(Polynomial::zero(&space), |acc, x| acc + x.pow(i as u32)))
}
