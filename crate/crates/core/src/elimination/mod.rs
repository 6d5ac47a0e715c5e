//! Polynomial matrices, fraction-free determinants, Sylvester resultants and
//! discriminants of binary forms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{rat, ExactRat, Monomial, PolyError, Polynomial, VariableSpace};

/// Largest dimension accepted by [`cofactor_det`].
pub const COFACTOR_MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("cofactor expansion limited to dimension {max}, got {dim}")]
    DimensionGuard { dim: usize, max: usize },
    #[error("degree {actual} in `{var}` exceeds declared degree {declared}")]
    DegreeExceedsDeclared {
        var: String,
        actual: u16,
        declared: usize,
    },
    #[error("not a binary form of degree {degree} in ({x},{w})")]
    NotBinaryForm { x: String, w: String, degree: usize },
    #[error("coefficient of {x}^{degree} vanishes identically")]
    LeadingCoefficientVanishes { x: String, degree: usize },
    #[error(transparent)]
    Arith(#[from] PolyError),
}

/// Dense matrix of polynomials over one shared space, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    space: Arc<VariableSpace>,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(
        space: &Arc<VariableSpace>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self, ElimError> {
        if entries.len() != rows * cols {
            return Err(ElimError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.space().as_ref() != space.as_ref() {
                return Err(PolyError::SpaceMismatch {
                    left: e.space().to_string(),
                    right: space.to_string(),
                }
                .into());
            }
        }
        Ok(Self {
            rows,
            cols,
            space: space.clone(),
            entries,
        })
    }

    pub fn from_rows(
        space: &Arc<VariableSpace>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self, ElimError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ElimError::EntryCount {
                expected: r * c,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(space, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix embedded as constants.
    pub fn from_ints(space: &Arc<VariableSpace>, rows: &[Vec<i64>]) -> Result<Self, ElimError> {
        Self::from_rows(
            space,
            rows.iter()
                .map(|r| r.iter().map(|&v| Polynomial::from_int(space, v)).collect())
                .collect(),
        )
    }

    pub fn identity(space: &Arc<VariableSpace>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one(space)
                } else {
                    Polynomial::zero(space)
                }
            })
            .collect();
        Self {
            rows: n,
            cols: n,
            space: space.clone(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn square_dim(&self) -> Result<usize, ElimError> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(ElimError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Pivot: first nonzero entry of the column by row order, with row-swap
/// sign tracking. Every division by the previous pivot is exact; a failure
/// there is reported rather than silently truncated.
pub fn bareiss_det(matrix: &PolyMatrix) -> Result<Polynomial, ElimError> {
    let n = matrix.square_dim()?;
    let space = matrix.space();
    if n == 0 {
        return Ok(Polynomial::one(space));
    }
    let mut m = matrix.to_rows();
    let mut negate = false;
    let mut prev = Polynomial::one(space);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Polynomial::zero(space));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        let pivot_row = m[k].clone();
        let updates: Vec<(usize, usize, Polynomial)> = (k + 1..n)
            .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| {
                let num = &(&m[i][j] * &pivot) - &(&m[i][k] * &pivot_row[j]);
                num.exact_div(&prev).map(|q| (i, j, q))
            })
            .collect::<Result<_, _>>()?;
        for (i, j, q) in updates {
            m[i][j] = q;
        }
        for row in m.iter_mut().skip(k + 1) {
            row[k] = Polynomial::zero(space);
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Laplace expansion along the first row. Exponential cost,
/// so restricted to dimension at most [`COFACTOR_MAX_DIM`].
pub fn cofactor_det(matrix: &PolyMatrix) -> Result<Polynomial, ElimError> {
    let n = matrix.square_dim()?;
    if n > COFACTOR_MAX_DIM {
        return Err(ElimError::DimensionGuard {
            dim: n,
            max: COFACTOR_MAX_DIM,
        });
    }
    let rows = matrix.to_rows();
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(&rows, 0, &cols, matrix.space()))
}

fn laplace(
    rows: &[Vec<Polynomial>],
    r: usize,
    cols: &[usize],
    space: &Arc<VariableSpace>,
) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(space);
    }
    let mut acc = Polynomial::zero(space);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(rows, r + 1, &rest, space);
        let term = entry * &minor;
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Sylvester matrix of `f` and `g` viewed as univariate in `var` with
/// declared formal degrees `m` and `n`.
///
/// The first `n` rows hold shifted coefficients of `f` (highest power
/// first), the last `m` rows those of `g`. A polynomial of actual degree
/// below its declared degree is padded with leading zeros.
pub fn sylvester_matrix(
    f: &Polynomial,
    g: &Polynomial,
    var: &str,
    m: usize,
    n: usize,
) -> Result<PolyMatrix, ElimError> {
    let space = f.space().clone();
    if g.space().as_ref() != space.as_ref() {
        return Err(PolyError::SpaceMismatch {
            left: space.to_string(),
            right: g.space().to_string(),
        }
        .into());
    }
    let v = space.require(var)?;
    let fc = declared_coefficients(f, v, m, var)?;
    let gc = declared_coefficients(g, v, n, var)?;
    let size = m + n;
    let zero = Polynomial::zero(&space);
    let mut entries = vec![zero; size * size];
    for i in 0..n {
        for (k, c) in fc.iter().enumerate() {
            entries[i * size + i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().enumerate() {
            entries[(n + i) * size + i + k] = c.clone();
        }
    }
    PolyMatrix::new(&space, size, size, entries)
}

/// Coefficients from `var^declared` down to `var^0`.
fn declared_coefficients(
    f: &Polynomial,
    v: usize,
    declared: usize,
    var: &str,
) -> Result<Vec<Polynomial>, ElimError> {
    let actual = f.degree_in(v).unwrap_or(0);
    if actual as usize > declared {
        return Err(ElimError::DegreeExceedsDeclared {
            var: var.to_string(),
            actual,
            declared,
        });
    }
    let mut cs = f.coefficients_in(v);
    cs.resize(declared + 1, Polynomial::zero(f.space()));
    cs.reverse();
    Ok(cs)
}

pub fn resultant(
    f: &Polynomial,
    g: &Polynomial,
    var: &str,
    m: usize,
    n: usize,
) -> Result<Polynomial, ElimError> {
    bareiss_det(&sylvester_matrix(f, g, var, m, n)?)
}

/// Coefficients `c_0..c_n` of a binary form, `c_i` multiplying `x^i w^(n-i)`.
pub fn binary_form_coefficients(
    f: &Polynomial,
    x: &str,
    w: &str,
    n: usize,
) -> Result<Vec<Polynomial>, ElimError> {
    let space = f.space();
    let xi = space.require(x)?;
    let wi = space.require(w)?;
    let not_form = || ElimError::NotBinaryForm {
        x: x.to_string(),
        w: w.to_string(),
        degree: n,
    };
    let mut buckets: Vec<Vec<(Monomial, ExactRat)>> = vec![Vec::new(); n + 1];
    for (m, c) in f.terms() {
        let (ex, ew) = (m.exponent(xi) as usize, m.exponent(wi) as usize);
        if ex + ew != n {
            return Err(not_form());
        }
        buckets[ex].push((m.with_exponent(xi, 0).with_exponent(wi, 0), c.clone()));
    }
    Ok(buckets
        .into_iter()
        .map(|ts| Polynomial::from_terms(space, ts))
        .collect())
}

fn check_binary_form(
    f: &Polynomial,
    x: &str,
    w: &str,
    n: usize,
) -> Result<Vec<Polynomial>, ElimError> {
    if n == 0 {
        return Err(ElimError::NotBinaryForm {
            x: x.to_string(),
            w: w.to_string(),
            degree: n,
        });
    }
    let cs = binary_form_coefficients(f, x, w, n)?;
    if cs[n].is_zero() {
        return Err(ElimError::LeadingCoefficientVanishes {
            x: x.to_string(),
            degree: n,
        });
    }
    Ok(cs)
}

fn sign_for_degree(n: usize) -> ExactRat {
    if (n * (n - 1) / 2) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Discriminant of a binary form of degree `n` in `(x, w)`:
/// `(-1)^(n(n-1)/2) * Res(f(x,1), f'(x,1)) / c_n`, with `c_n` the
/// coefficient of `x^n`. For a monic form this is `prod_{i<j} (r_i - r_j)^2`.
pub fn binary_discriminant(
    f: &Polynomial,
    x: &str,
    w: &str,
    n: usize,
) -> Result<Polynomial, ElimError> {
    let cs = check_binary_form(f, x, w, n)?;
    let wi = f.space().require(w)?;
    let xi = f.space().require(x)?;
    let affine = f.specialize(wi, &rat(1));
    let deriv = affine.derivative(xi);
    let res = resultant(&affine, &deriv, x, n, n - 1)?;
    let disc = res.exact_div(&cs[n])?;
    Ok(disc.scale(&sign_for_degree(n)))
}

/// `Res(df/dx, df/dw)` of the two partial derivatives, taken as binary forms
/// of degree `n - 1`. Equals `partials_constant(n) * binary_discriminant`.
pub fn discriminant_via_partials(
    f: &Polynomial,
    x: &str,
    w: &str,
    n: usize,
) -> Result<Polynomial, ElimError> {
    check_binary_form(f, x, w, n)?;
    if n < 2 {
        return Err(ElimError::NotBinaryForm {
            x: x.to_string(),
            w: w.to_string(),
            degree: n,
        });
    }
    let xi = f.space().require(x)?;
    let wi = f.space().require(w)?;
    let one = rat(1);
    let fx = f.derivative(xi).specialize(wi, &one);
    let fw = f.derivative(wi).specialize(wi, &one);
    resultant(&fx, &fw, x, n - 1, n - 1)
}

/// The factor relating the two discriminant routes:
/// `Res(f_x, f_w) = (-1)^(n(n-1)/2) * n^(n-2) * Disc(f)`.
pub fn partials_constant(n: usize) -> ExactRat {
    assert!(n >= 2);
    sign_for_degree(n) * ExactRat::from_integer(num_bigint::BigInt::from(n).pow(n as u32 - 2))
}

/// Space `x, w, a_0, ..., a_n` of the generic binary form of degree `n`.
pub fn generic_form_space(n: usize) -> Arc<VariableSpace> {
    let mut vars = vec![("x".to_string(), 0), ("w".to_string(), 0)];
    vars.extend((0..=n).map(|i| (format!("a_{i}"), 1)));
    VariableSpace::new(vars).expect("generic form space")
}

/// `sum_i a_i x^i w^(n-i)` over [`generic_form_space`].
pub fn generic_binary_form(n: usize) -> Polynomial {
    let space = generic_form_space(n);
    Polynomial::from_terms(
        &space,
        (0..=n).map(|i| {
            let mut e = vec![0u16; n + 3];
            e[0] = i as u16;
            e[1] = (n - i) as u16;
            e[2 + i] = 1;
            (Monomial::from_exponents(&e), rat(1))
        }),
    )
}

/// Discriminant of the generic binary form of degree `n`, a polynomial in
/// `a_0..a_n`. Computed once per degree through [`binary_discriminant`].
pub fn generic_binary_discriminant(n: usize) -> Result<Polynomial, ElimError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Polynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return Ok(d.clone());
    }
    let d = binary_discriminant(&generic_binary_form(n), "x", "w", n)?;
    cache.lock().unwrap().insert(n, d.clone());
    Ok(d)
}

/// Same value as [`binary_discriminant`], obtained by substituting the
/// coefficients of `f` into the generic discriminant. Much cheaper when the
/// coefficients are themselves polynomials, since no elimination happens
/// over the coefficient ring.
pub fn binary_discriminant_by_substitution(
    f: &Polynomial,
    x: &str,
    w: &str,
    n: usize,
) -> Result<Polynomial, ElimError> {
    let cs = check_binary_form(f, x, w, n)?;
    let generic = generic_binary_discriminant(n)?;
    let bindings: HashMap<String, Polynomial> = cs
        .into_iter()
        .enumerate()
        .map(|(i, c)| (format!("a_{i}"), c))
        .collect();
    Ok(generic.substitute(&bindings, f.space())?)
}

/// True if the polynomial is a constant equal to zero or has no terms.
pub fn is_identically_zero(p: &Polynomial) -> bool {
    p.constant_value().is_some_and(|c| c.is_zero())
}
