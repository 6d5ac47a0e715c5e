//! Dense univariate polynomials over a prime field `F_p` with `p < 2^32`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::IrredError;
use crate::arith::Polynomial;

/// Coefficients lowest degree first, with no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPPoly {
    p: u64,
    coeffs: Vec<u64>,
}

/// A reduction mod `p` together with the degree before reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPReduction {
    pub poly: ModPPoly,
    pub source_degree: Option<usize>,
}

impl ModPReduction {
    pub fn degree_dropped(&self) -> bool {
        self.poly.degree() != self.source_degree
    }
}

impl ModPPoly {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        assert!((2..(1 << 32)).contains(&p), "prime out of range");
        let mut c: Vec<u64> = coeffs.into_iter().map(|a| a % p).collect();
        trim(&mut c);
        Self { p, coeffs: c }
    }

    /// Coefficients given as signed integers, lowest degree first.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&a| a.rem_euclid(p as i64) as u64))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        let mut c = coeffs;
        trim(&mut c);
        Self { p: self.p, coeffs: c }
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0);
        powmod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        let Some(&lead) = self.coeffs.last() else {
            return self.clone();
        };
        let inv = self.inv(lead);
        self.with(self.coeffs.iter().map(|&c| self.mulmod(c, inv)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.with(
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&other.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.with(Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        self.with(out)
    }

    /// Remainder of division by a nonzero `m`.
    pub fn rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        let inv = self.inv(m.coeffs[dm]);
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let q = self.mulmod(r[top], inv);
            if q != 0 {
                let shift = top - dm;
                for (k, &mc) in m.coeffs.iter().enumerate() {
                    let sub = self.mulmod(q, mc);
                    r[shift + k] = (r[shift + k] + self.p - sub) % self.p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        self.with(r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = self.with(vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a field element.
    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (self.mulmod(acc, x % self.p) + c) % self.p)
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduce a univariate rational polynomial coefficient-wise mod `p`.
pub fn modp_reduce(f: &Polynomial, p: u64) -> Result<ModPReduction, IrredError> {
    let used = f.variables_used();
    if used.len() > 1 {
        return Err(IrredError::NotUnivariate(used.len()));
    }
    let var = used.first().copied().unwrap_or(0);
    let source_degree = if f.is_zero() {
        None
    } else {
        Some(f.degree_in(var).unwrap_or(0) as usize)
    };
    let mut coeffs = vec![0u64; source_degree.map_or(0, |d| d + 1)];
    let pb = BigInt::from(p);
    for (m, c) in f.terms() {
        let den = c.denom().mod_floor(&pb);
        if den.is_zero() {
            return Err(IrredError::DenominatorDivisible { prime: p });
        }
        let num = c.numer().mod_floor(&pb).to_u64().unwrap();
        let den = den.to_u64().unwrap();
        let e = if f.space().is_empty() { 0 } else { m.exponent(var) as usize };
        coeffs[e] = (coeffs[e] + num * powmod(den, p - 2, p)) % p;
    }
    Ok(ModPReduction {
        poly: ModPPoly::new(p, coeffs),
        source_degree,
    })
}

/// Rabin's test: a polynomial `g` of degree `n >= 1` is irreducible over
/// `F_p` iff `g | x^(p^n) - x` and `gcd(g, x^(p^(n/q)) - x) = 1` for each
/// prime `q | n`.
pub fn modp_irreducible(g: &ModPPoly) -> bool {
    let Some(n) = g.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let g = g.monic();
    let x = g.with(vec![0, 1]);
    // frob[k] = x^(p^k) mod g
    let mut frob = vec![x.rem(&g)];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(g.p, &g);
        frob.push(next);
    }
    if !frob[n].sub(&x).rem(&g).is_zero() {
        return false;
    }
    prime_factors(n)
        .into_iter()
        .all(|q| g.gcd(&frob[n / q].sub(&x)).degree() == Some(0))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
