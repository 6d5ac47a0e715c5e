//! Small matrix groups over F2: form preservation, closure by breadth-first
//! search, and element-order statistics.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not invertible over F2")]
    NotInvertible,
    #[error("no generators given")]
    Empty,
    #[error("dimension {0} outside 1..=16")]
    BadDimension(usize),
}

/// Square matrix over F2; bit `j` of `rows[i]` is the entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixF2 {
    dim: usize,
    rows: Vec<u16>,
}

impl MatrixF2 {
    pub fn identity(dim: usize) -> Self {
        assert!((1..=16).contains(&dim));
        Self {
            dim,
            rows: (0..dim).map(|i| 1 << i).collect(),
        }
    }

    /// From 0/1 entries given row by row; any odd entry counts as 1.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self, GroupError> {
        let dim = rows.len();
        if !(1..=16).contains(&dim) {
            return Err(GroupError::BadDimension(dim));
        }
        let mut bits = Vec::with_capacity(dim);
        for r in rows {
            if r.len() != dim {
                return Err(GroupError::DimensionMismatch(dim, r.len()));
            }
            bits.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, &e)| e & 1 == 1)
                    .fold(0u16, |acc, (j, _)| acc | (1 << j)),
            );
        }
        Ok(Self { dim, rows: bits })
    }

    /// Matrix whose row `i` has bits `rows[i]`.
    pub fn from_bits(dim: usize, rows: Vec<u16>) -> Self {
        assert_eq!(rows.len(), dim);
        let mask = if dim == 16 { u16::MAX } else { (1u16 << dim) - 1 };
        Self {
            dim,
            rows: rows.into_iter().map(|r| r & mask).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        ((self.rows[i] >> j) & 1) as u8
    }

    /// Row `i` of the product is the parity sum of the rows of `other`
    /// selected by row `i` of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.dim != other.dim {
            return Err(GroupError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.dim)
                    .filter(|&k| (r >> k) & 1 == 1)
                    .fold(0u16, |acc, k| acc ^ other.rows[k])
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .filter(|&i| self.get(i, j) == 1)
                    .fold(0u16, |acc, i| acc | (1 << i))
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(p) = (rank..self.dim).find(|&i| (rows[i] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..self.dim {
                if i != rank && (rows[i] >> col) & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dim = self.dim + other.dim;
        assert!(dim <= 16);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|&r| r << self.dim));
        Self { dim, rows }
    }

    /// Multiplicative order; the matrix must be invertible.
    pub fn order(&self) -> u32 {
        let id = Self::identity(self.dim);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.mul_unchecked(self);
            k += 1;
        }
        k
    }

    pub fn hash_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim as u16).to_le_bytes());
        for r in &self.rows {
            h.update(r.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

impl std::fmt::Display for MatrixF2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| char::from(b'0' + self.get(i, j))).collect())
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// `U = [[0,1],[1,0]]`.
pub fn hyperbolic_u() -> MatrixF2 {
    MatrixF2::from_bits(2, vec![0b10, 0b01])
}

/// Gram matrix `U + U` of dimension 4.
pub fn gram_uu() -> MatrixF2 {
    hyperbolic_u().direct_sum(&hyperbolic_u())
}

/// `M^T G M == G`.
pub fn preserves_form(m: &MatrixF2, g: &MatrixF2) -> Result<bool, GroupError> {
    if m.dim != g.dim {
        return Err(GroupError::DimensionMismatch(m.dim, g.dim));
    }
    Ok(m.transpose().mul_unchecked(g).mul_unchecked(m) == *g)
}

/// The five generators displayed for the symplectic group of `U + U`, in
/// display order.
pub fn displayed_sp4_generators() -> [MatrixF2; 5] {
    let id1 = MatrixF2::identity(1);
    let id2 = MatrixF2::identity(2);
    let u = hyperbolic_u();
    let shear = MatrixF2::from_bits(2, vec![0b11, 0b10]);
    [
        shear.direct_sum(&id2),
        u.direct_sum(&id2),
        id1.direct_sum(&u).direct_sum(&id1),
        id2.direct_sum(&u),
        id2.direct_sum(&shear),
    ]
}

/// `I_4 + U`, the element `tau`.
pub fn tau() -> MatrixF2 {
    MatrixF2::identity(4).direct_sum(&hyperbolic_u())
}

/// Each generator extended by `I_2`, together with `I_4 + U`.
pub fn extended_generators(gens: &[MatrixF2]) -> Vec<MatrixF2> {
    let id2 = MatrixF2::identity(2);
    gens.iter()
        .map(|g| g.direct_sum(&id2))
        .chain([tau()])
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupClosure {
    pub dimension: usize,
    #[serde(skip)]
    pub generators: Vec<MatrixF2>,
    #[serde(skip)]
    pub elements: BTreeSet<MatrixF2>,
    pub order: usize,
    /// Element order to number of elements of that order.
    pub histogram: BTreeMap<u32, usize>,
}

impl GroupClosure {
    pub fn generator_hashes(&self) -> Vec<String> {
        self.generators.iter().map(MatrixF2::hash_hex).collect()
    }

    pub fn contains(&self, m: &MatrixF2) -> bool {
        self.elements.contains(m)
    }
}

/// Breadth-first closure of the generators under right multiplication.
/// For invertible generators of a finite group this is the generated group.
pub fn generate_group(gens: &[MatrixF2]) -> Result<GroupClosure, GroupError> {
    let first = gens.first().ok_or(GroupError::Empty)?;
    let dim = first.dim;
    for g in gens {
        if g.dim != dim {
            return Err(GroupError::DimensionMismatch(dim, g.dim));
        }
        if !g.is_invertible() {
            return Err(GroupError::NotInvertible);
        }
    }
    let id = MatrixF2::identity(dim);
    let mut elements = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(closure_from_elements(dim, gens.to_vec(), elements))
}

fn closure_from_elements(
    dim: usize,
    generators: Vec<MatrixF2>,
    elements: BTreeSet<MatrixF2>,
) -> GroupClosure {
    let mut histogram = BTreeMap::new();
    for e in &elements {
        *histogram.entry(e.order()).or_insert(0) += 1;
    }
    GroupClosure {
        dimension: dim,
        generators,
        order: elements.len(),
        elements,
        histogram,
    }
}

/// All invertible 4x4 matrices over F2 preserving `U + U`, by exhaustive
/// search over the 65536 matrices.
pub fn sp4_by_definition() -> GroupClosure {
    let g = gram_uu();
    let elements: BTreeSet<MatrixF2> = (0u32..1 << 16)
        .map(|bits| {
            MatrixF2::from_bits(4, (0..4).map(|i| ((bits >> (4 * i)) & 0xf) as u16).collect())
        })
        .filter(|m| preserves_form(m, &g).unwrap())
        .collect();
    closure_from_elements(4, Vec::new(), elements)
}

/// `{Y + eta : Y in group, eta in {I_2, U}}`.
pub fn extend_by_eta(c: &GroupClosure) -> GroupClosure {
    let etas = [MatrixF2::identity(2), hyperbolic_u()];
    let elements = c
        .elements
        .iter()
        .flat_map(|y| etas.iter().map(move |e| y.direct_sum(e)))
        .collect();
    closure_from_elements(c.dimension + 2, Vec::new(), elements)
}

/// Histogram of element orders in the symmetric group on `n` letters,
/// from cycle types: the order is the lcm of the cycle lengths.
pub fn symmetric_group_histogram(n: usize) -> BTreeMap<u32, usize> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    let fact = |k: usize| (1..=k).product::<usize>();
    let mut hist = BTreeMap::new();
    for p in parts {
        // class size n! / prod(k^m_k m_k!)
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in &p {
            *mult.entry(k).or_insert(0) += 1;
        }
        let denom: usize = mult.iter().map(|(&k, &m)| k.pow(m as u32) * fact(m)).product();
        let order = p.iter().fold(1usize, |a, &k| num_integer::lcm(a, k)) as u32;
        *hist.entry(order).or_insert(0) += fact(n) / denom;
    }
    hist
}

/// Order 720 and the element-order histogram of the symmetric group on six
/// letters.
pub fn s6_signature_check(c: &GroupClosure) -> bool {
    c.order == 720 && c.histogram == symmetric_group_histogram(6)
}

/// Nonzero alternating forms on F2^4 preserved by every generator.
pub fn preserved_alternating_forms(gens: &[MatrixF2]) -> Vec<MatrixF2> {
    // alternating: symmetric with zero diagonal; 6 free upper entries
    (1u32..64)
        .map(|bits| {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let mut rows = vec![0u16; 4];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if (bits >> k) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            MatrixF2::from_bits(4, rows)
        })
        .filter(|f| gens.iter().all(|g| preserves_form(g, f).unwrap()))
        .collect()
}
