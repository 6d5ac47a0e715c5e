use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::space::same_space;
use super::{Monomial, PolyError, VariableSpace};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept in strictly descending grevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    space: Arc<VariableSpace>,
    terms: Vec<(Monomial, ExactRat)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.space, self)
    }
}

impl Polynomial {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self {
            space: space.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::constant(space, ExactRat::one())
    }

    pub fn constant(space: &Arc<VariableSpace>, c: ExactRat) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.push((Monomial::one(space.len()), c));
        }
        p
    }

    pub fn from_int(space: &Arc<VariableSpace>, c: i64) -> Self {
        Self::constant(space, ExactRat::from_integer(c.into()))
    }

    pub fn var(space: &Arc<VariableSpace>, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var_at(space, space.require(name)?))
    }

    pub fn var_at(space: &Arc<VariableSpace>, index: usize) -> Self {
        Self::monomial(space, Monomial::var(space.len(), index, 1), ExactRat::one())
    }

    pub fn monomial(space: &Arc<VariableSpace>, m: Monomial, c: ExactRat) -> Self {
        assert_eq!(m.len(), space.len(), "monomial length does not match space");
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary (possibly repeated, unordered) terms.
    pub fn from_terms(
        space: &Arc<VariableSpace>,
        terms: impl IntoIterator<Item = (Monomial, ExactRat)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, ExactRat> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), space.len(), "monomial length does not match space");
            *acc.entry(m).or_insert_with(ExactRat::zero) += c;
        }
        Self::from_map(space, acc)
    }

    fn from_map(space: &Arc<VariableSpace>, acc: HashMap<Monomial, ExactRat>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self {
            space: space.clone(),
            terms,
        }
    }

    /// Trusts the caller: terms already strictly descending and nonzero.
    pub(crate) fn from_sorted_unchecked(
        space: &Arc<VariableSpace>,
        terms: Vec<(Monomial, ExactRat)>,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self {
            space: space.clone(),
            terms,
        }
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn terms(&self) -> &[(Monomial, ExactRat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<ExactRat> {
        match self.terms.as_slice() {
            [] => Some(ExactRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ExactRat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRat {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| ExactRat::zero())
    }

    fn check_space(&self, other: &Self) -> Result<(), PolyError> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(PolyError::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Self::from_sorted_unchecked(&self.space, out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        Ok(self.mul_kernel(other))
    }

    /// Product via integer parts: each operand is scaled to integer
    /// coefficients, the rows `t * big` (each already sorted, since grevlex
    /// is a monomial order) are merged pairwise, then the denominators are
    /// restored once.
    fn mul_kernel(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.space);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let (ds, small_int) = small.integer_parts();
        let (db, big_int) = big.integer_parts();
        let rows: Vec<Vec<(Monomial, BigInt)>> = small_int
            .iter()
            .map(|(sm, sc)| {
                big_int
                    .iter()
                    .map(|(bm, bc)| (sm.mul(bm), sc * bc))
                    .collect()
            })
            .collect();
        let merged = merge_rows(rows);
        let denom = ds * db;
        let terms = if denom.is_one() {
            merged
                .into_iter()
                .map(|(m, c)| (m, ExactRat::from_integer(c)))
                .collect()
        } else {
            merged
                .into_iter()
                .map(|(m, c)| (m, ExactRat::new(c, denom.clone())))
                .collect()
        };
        Self::from_sorted_unchecked(&self.space, terms)
    }

    /// Common denominator and the integer numerators over it.
    fn integer_parts(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let denom = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let parts = self
            .terms
            .iter()
            .map(|(m, c)| {
                let scaled = if denom.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&denom / c.denom())
                };
                (m.clone(), scaled)
            })
            .collect();
        (denom, parts)
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Self::from_sorted_unchecked(
            &self.space,
            self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::from_sorted_unchecked(
            &self.space,
            self.terms.iter().map(|(tm, c)| (tm.mul(m), c.clone())).collect(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.space);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_kernel(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_kernel(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, by leading-term reduction with a final
    /// zero-remainder check.
    ///
    /// Fails with `NotDivisible` as soon as the running remainder has a
    /// leading monomial not divisible by the divisor's; if `self = q * g`
    /// every remainder is a multiple of `g`, so that certifies non-divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_space(divisor)?;
        let (gm, gc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero(&self.space));
        }
        if divisor.len() == 1 {
            let inv = gc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                let q = gm.div_into(m).ok_or_else(|| self.not_divisible(m))?;
                terms.push((q, c * &inv));
            }
            return Ok(Self::from_sorted_unchecked(&self.space, terms));
        }
        let mut rem: BTreeMap<Monomial, ExactRat> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        let tail = &divisor.terms[1..];
        while let Some((m, c)) = rem.pop_last() {
            let qm = gm.div_into(&m).ok_or_else(|| self.not_divisible(&m))?;
            let qc = &c / gc;
            for (dm, dc) in tail {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(Self::from_sorted_unchecked(&self.space, quotient))
    }

    fn not_divisible(&self, m: &Monomial) -> PolyError {
        PolyError::NotDivisible {
            leading: Self::monomial(&self.space, m.clone(), ExactRat::one()).to_string(),
        }
    }

    /// Max weighted degree over terms; `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(self.space.weights()))
            .max()
    }

    /// True iff all terms share one weighted degree (vacuously for zero).
    pub fn is_quasi_homogeneous(&self) -> bool {
        let w = self.space.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Common degree under an alternative (possibly negative) weighting.
    ///
    /// `Ok(None)` for zero; `Err` if the terms disagree.
    pub fn homogeneous_degree_with(&self, weights: &[i64]) -> Result<Option<i64>, PolyError> {
        assert_eq!(weights.len(), self.space.len());
        let mut degs = self.terms.iter().map(|(m, _)| m.signed_degree(weights));
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        for e in degs {
            if e != d {
                return Err(PolyError::NotHomogeneous { first: d, other: e });
            }
        }
        Ok(Some(d))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max()
    }

    /// Indices of variables occurring with positive exponent.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0))
            .collect()
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial in the remaining variables (same space).
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let Some(deg) = self.degree_in(var) else {
            return Vec::new();
        };
        let mut buckets: Vec<Vec<(Monomial, ExactRat)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(var) as usize;
            buckets[k].push((m.with_exponent(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| Self::from_terms(&self.space, ts))
            .collect()
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(
            &self.space,
            self.terms.iter().filter(|(m, _)| m.exponent(var) > 0).map(|(m, c)| {
                let e = m.exponent(var);
                (m.with_exponent(var, e - 1), c * ExactRat::from_integer(e.into()))
            }),
        )
    }

    /// Substitute a constant for one variable, staying in the same space.
    pub fn specialize(&self, var: usize, value: &ExactRat) -> Self {
        let max = self.degree_in(var).unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(ExactRat::one());
        for k in 1..=max {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        Self::from_terms(
            &self.space,
            self.terms.iter().map(|(m, c)| {
                (m.with_exponent(var, 0), c * &powers[m.exponent(var) as usize])
            }),
        )
    }

    /// Simultaneous substitution into polynomials over `target`.
    ///
    /// Variables without a binding map to the same-named variable of
    /// `target`; if there is none, the substitution fails. Variables that do
    /// not occur in `self` need no binding.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<VariableSpace>,
    ) -> Result<Self, PolyError> {
        let used = self.variables_used();
        let mut images: Vec<Option<Polynomial>> = vec![None; self.space.len()];
        for &i in &used {
            let name = self.space.name(i);
            let img = match bindings.get(name) {
                Some(p) => {
                    if !same_space(p.space(), target) {
                        return Err(PolyError::SpaceMismatch {
                            left: p.space().to_string(),
                            right: target.to_string(),
                        });
                    }
                    p.clone()
                }
                None => match target.index_of(name) {
                    Some(j) => Self::var_at(target, j),
                    None => return Err(PolyError::UnboundVariable(name.to_string())),
                },
            };
            images[i] = Some(img);
        }
        let terms: Vec<&(Monomial, ExactRat)> = self.terms.iter().collect();
        Ok(horner(&terms, &used, &images, target))
    }

    /// Re-express over another space containing every used variable by name.
    pub fn embed(&self, target: &Arc<VariableSpace>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self
            .space
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j = map[i].ok_or_else(|| {
                        PolyError::UnboundVariable(self.space.name(i).to_string())
                    })?;
                    e[j] = x;
                }
            }
            out.push((Monomial::from_exponents(&e), c.clone()));
        }
        Ok(Self::from_terms(target, out))
    }

    /// Rename variables by a permutation of indices within the same space:
    /// variable `i` becomes variable `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.space.len());
        Self::from_terms(
            &self.space,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; perm.len()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    }

    /// Exact value at a point binding every used variable by name.
    pub fn evaluate(&self, point: &HashMap<String, ExactRat>) -> Result<ExactRat, PolyError> {
        let used = self.variables_used();
        let mut powers: Vec<Vec<ExactRat>> = vec![Vec::new(); self.space.len()];
        for &i in &used {
            let name = self.space.name(i);
            let v = point
                .get(name)
                .ok_or_else(|| PolyError::MissingBinding(name.to_string()))?;
            let max = self.degree_in(i).unwrap_or(0) as usize;
            let mut row = Vec::with_capacity(max + 1);
            row.push(ExactRat::one());
            for k in 1..=max {
                let next = &row[k - 1] * v;
                row.push(next);
            }
            powers[i] = row;
        }
        let mut acc = ExactRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &i in &used {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t *= &powers[i][e];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Positive content: gcd of numerators over lcm of denominators.
    /// Zero for the zero polynomial.
    pub fn content(&self) -> ExactRat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        ExactRat::new(num, den)
    }

    /// Split as `unit * primitive` where `primitive` has integer coefficients
    /// with gcd 1 and a positive leading coefficient.
    pub fn primitive_normalized(&self) -> (ExactRat, Self) {
        if self.is_zero() {
            return (ExactRat::one(), self.clone());
        }
        let mut unit = self.content();
        if self.terms[0].1.is_negative() {
            unit = -unit;
        }
        let prim = self.scale(&unit.recip());
        (unit, prim)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.is_integral() && self.content().is_one()
    }
}

/// Evaluate `terms` with `vars[0]` outermost, Horner-style, so each large
/// accumulator is only ever multiplied by a single image.
fn horner(
    terms: &[&(Monomial, ExactRat)],
    vars: &[usize],
    images: &[Option<Polynomial>],
    target: &Arc<VariableSpace>,
) -> Polynomial {
    let Some((&v, rest)) = vars.split_first() else {
        let c: ExactRat = terms.iter().map(|(_, c)| c.clone()).sum();
        return Polynomial::constant(target, c);
    };
    let max = terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<&(Monomial, ExactRat)>> = vec![Vec::new(); max + 1];
    for &t in terms {
        buckets[t.0.exponent(v) as usize].push(t);
    }
    let img = images[v].as_ref().expect("image for used variable");
    let mut acc = Polynomial::zero(target);
    for bucket in buckets.iter().rev() {
        if !acc.is_zero() {
            acc = acc.mul_kernel(img);
        }
        if !bucket.is_empty() {
            acc = acc.merge(&horner(bucket, rest, images, target), false);
        }
    }
    acc
}

/// Pairwise merge of descending-sorted rows, combining equal monomials.
fn merge_rows(mut rows: Vec<Vec<(Monomial, BigInt)>>) -> Vec<(Monomial, BigInt)> {
    if rows.is_empty() {
        return Vec::new();
    }
    while rows.len() > 1 {
        let mut next = Vec::with_capacity(rows.len().div_ceil(2));
        let mut it = rows.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge_two(a, b)),
                None => next.push(a),
            }
        }
        rows = next;
    }
    let mut out = rows.pop().unwrap();
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn merge_two(a: Vec<(Monomial, BigInt)>, b: Vec<(Monomial, BigInt)>) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Greater,
            (None, Some(_)) => std::cmp::Ordering::Less,
            (None, None) => break,
        };
        match ord {
            std::cmp::Ordering::Greater => out.push(a.next().unwrap()),
            std::cmp::Ordering::Less => out.push(b.next().unwrap()),
            std::cmp::Ordering::Equal => {
                let (m, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = x + y;
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial operands over different spaces")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted_unchecked(
            &self.space,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
