//! Hilbert series of weighted complete-intersection presentations, by
//! rational-function expansion and by direct normal-form counting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("counting needs a normal form; plain relations have none")]
    NoNormalForm,
    #[error("coefficient overflow")]
    Overflow,
}

/// Free generators, square-root generators `s` with relation `s^2 = Delta`
/// of weight `2 w(s)`, and further relations given only by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPresentation {
    pub name: String,
    pub free: Vec<u32>,
    pub sqrt: Vec<u32>,
    pub relations: Vec<u32>,
}

impl WeightedPresentation {
    pub fn new(name: &str, free: &[u32], sqrt: &[u32]) -> Self {
        Self {
            name: name.to_string(),
            free: free.to_vec(),
            sqrt: sqrt.to_vec(),
            relations: Vec::new(),
        }
    }

    /// Generators `t_4, t_6, t_8, t_10, t_12, s_4, s_10, s_30`.
    pub fn characters_ring() -> Self {
        Self::new("characters", &[4, 6, 8, 10, 12], &[4, 10, 30])
    }

    /// `C[t_4, ..., t_12, s_10] / (s_10^2 - Delta_20)`.
    pub fn trivial_character_ring() -> Self {
        Self::new("trivial-character", &[4, 6, 8, 10, 12], &[10])
    }

    /// The free ring `C[t_4, t_6, t_8, t_10, t_12]`.
    pub fn free_ring() -> Self {
        Self::new("free", &[4, 6, 8, 10, 12], &[])
    }

    pub fn generator_weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.free.iter().chain(&self.sqrt).copied().collect();
        w.sort_unstable();
        w
    }

    pub fn relation_weights(&self) -> Vec<u32> {
        let mut r: Vec<u32> = self
            .sqrt
            .iter()
            .map(|w| 2 * w)
            .chain(self.relations.iter().copied())
            .collect();
        r.sort_unstable();
        r
    }

    fn check(&self) -> Result<(), GradedError> {
        if self.free.iter().chain(&self.sqrt).chain(&self.relations).any(|&w| w == 0) {
            return Err(GradedError::ZeroWeight);
        }
        Ok(())
    }
}

/// Coefficients `c_0..c_N` of a power series truncated at `T^N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSeries {
    pub coeffs: Vec<i128>,
}

impl PowerSeries {
    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiply by `1 + sign * T^w`.
    fn mul_binomial(&mut self, w: usize, sign: i128) -> Result<(), GradedError> {
        for k in (w..self.coeffs.len()).rev() {
            let add = sign.checked_mul(self.coeffs[k - w]).ok_or(GradedError::Overflow)?;
            self.coeffs[k] = self.coeffs[k].checked_add(add).ok_or(GradedError::Overflow)?;
        }
        Ok(())
    }

    /// Multiply by `1 / (1 - T^w)`.
    fn div_by_one_minus(&mut self, w: usize) -> Result<(), GradedError> {
        for k in w..self.coeffs.len() {
            self.coeffs[k] = self.coeffs[k]
                .checked_add(self.coeffs[k - w])
                .ok_or(GradedError::Overflow)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GradedError> {
        let n = self.truncation();
        if other.truncation() != n {
            return Err(GradedError::TruncationMismatch(n, other.truncation()));
        }
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                let t = a.checked_mul(b).ok_or(GradedError::Overflow)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(GradedError::Overflow)?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// The polynomial `prod (1 + T^w)` truncated at `n`.
    pub fn product_of_one_plus(weights: &[u32], n: usize) -> Result<Self, GradedError> {
        let mut s = Self::one(n);
        for &w in weights {
            s.mul_binomial(w as usize, 1)?;
        }
        Ok(s)
    }
}

/// `prod_j (1 - T^(r_j)) / prod_i (1 - T^(w_i))` expanded to order `n`.
pub fn hilbert_from_rational(p: &WeightedPresentation, n: usize) -> Result<PowerSeries, GradedError> {
    p.check()?;
    let mut s = PowerSeries::one(n);
    for r in p.relation_weights() {
        s.mul_binomial(r as usize, -1)?;
    }
    for w in p.generator_weights() {
        s.div_by_one_minus(w as usize)?;
    }
    Ok(s)
}

/// Count normal-form monomials weight by weight: a monomial in the free
/// generators times a square-free product of square-root generators.
pub fn hilbert_from_counting(p: &WeightedPresentation, n: usize) -> Result<PowerSeries, GradedError> {
    p.check()?;
    if !p.relations.is_empty() {
        return Err(GradedError::NoNormalForm);
    }
    let mut coeffs = vec![0i128; n + 1];
    let mut free_weights = Vec::new();
    enumerate_monomials(&p.free, 0, n, &mut free_weights);
    for mask in 0u32..(1 << p.sqrt.len()) {
        let extra: usize = p
            .sqrt
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &w)| w as usize)
            .sum();
        for &fw in &free_weights {
            if fw + extra <= n {
                coeffs[fw + extra] += 1;
            }
        }
    }
    Ok(PowerSeries { coeffs })
}

/// Push the weight of every monomial in `weights[from..]` with weight <= `budget`.
fn enumerate_monomials(weights: &[u32], base: usize, budget: usize, out: &mut Vec<usize>) {
    let Some((&w, rest)) = weights.split_first() else {
        out.push(base);
        return;
    };
    let w = w as usize;
    let mut used = 0;
    while base + used <= budget {
        enumerate_monomials(rest, base + used, budget, out);
        used += w;
    }
}

pub fn series_equal(a: &PowerSeries, b: &PowerSeries) -> Result<bool, GradedError> {
    if a.truncation() != b.truncation() {
        return Err(GradedError::TruncationMismatch(a.truncation(), b.truncation()));
    }
    Ok(a.coeffs == b.coeffs)
}

/// `H(full) = H(base) * prod_{w in extra} (1 + T^w)` to order `n`.
pub fn factor_identity_holds(
    full: &WeightedPresentation,
    base: &WeightedPresentation,
    extra: &[u32],
    n: usize,
) -> Result<bool, GradedError> {
    let lhs = hilbert_from_rational(full, n)?;
    let rhs = hilbert_from_rational(base, n)?.mul(&PowerSeries::product_of_one_plus(extra, n)?)?;
    series_equal(&lhs, &rhs)
}

/// The series of the ring with characters is that of the trivial-character
/// ring times `(1 + T^4)(1 + T^30)`.
pub fn character_factor_check(n: usize) -> Result<bool, GradedError> {
    factor_identity_holds(
        &WeightedPresentation::characters_ring(),
        &WeightedPresentation::trivial_character_ring(),
        &[4, 30],
        n,
    )
}
