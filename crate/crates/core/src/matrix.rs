//! Vandermonde and Cauchy exponent matrices and superregularity checks.
//!
//! An [`ExponentMatrix`] stores the grid `sigma(i, j)` of alpha-exponents that
//! defines the superregular matrix `A`; entries are exponents, so every entry
//! of `A` is a nonzero field element by construction. Indices are 1-based
//! throughout, matching the decoding formulas that consume them.
//!
//! Superregularity (every square submatrix nonsingular) is decided by
//! exhaustive minor enumeration. Code parameters here are small, so this is a
//! correctness oracle rather than a production screener.

use crate::bitmat::BitMatrix;
use crate::code::CodeParams;
use crate::comb::combinations;
use crate::field::{FieldElement, FieldTables};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Enumeration bound for superregularity checks.
const MAX_ENUM_DIM: usize = 8;

/// The m x k grid of alpha-exponents defining `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    m: usize,
    k: usize,
    sigma: Vec<u32>,
}

impl ExponentMatrix {
    pub fn new(m: usize, k: usize, sigma: Vec<u32>) -> Result<Self> {
        if sigma.len() != m * k {
            return Err(Error::DimensionMismatch(format!(
                "sigma grid has {} entries, expected {}x{}",
                sigma.len(),
                m,
                k
            )));
        }
        Ok(ExponentMatrix { m, k, sigma })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.k
    }

    /// Exponent at row `i`, column `j` (both 1-based).
    #[inline]
    pub fn sigma(&self, i: usize, j: usize) -> u32 {
        assert!(i >= 1 && i <= self.m && j >= 1 && j <= self.k);
        self.sigma[(i - 1) * self.k + (j - 1)]
    }

    /// Same as [`Self::sigma`] but widened for exponent arithmetic.
    #[inline]
    pub fn sig(&self, i: usize, j: usize) -> i64 {
        self.sigma(i, j) as i64
    }

    /// The grid as field elements, for determinant-based checks.
    pub fn to_grid(&self) -> Vec<Vec<FieldElement>> {
        (1..=self.m)
            .map(|i| {
                (1..=self.k)
                    .map(|j| FieldElement::Power(self.sigma(i, j)))
                    .collect()
            })
            .collect()
    }
}

/// How to obtain the exponent grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixSpec {
    /// Row `i`, column `j` carries exponent `(i-1) * points[j-1]`.
    /// An empty point list defaults to `1..=k`.
    Vandermonde { points: Vec<u32> },
    /// Entry `(i, j)` is the inverse of `alpha^xs[i-1] + alpha^ys[j-1]`.
    Cauchy { xs: Vec<u32>, ys: Vec<u32> },
    /// The grid itself, row-major.
    Explicit { sigma: Vec<Vec<u32>> },
}

impl MatrixSpec {
    /// Standard Vandermonde with evaluation exponents `1..=k`.
    pub fn standard_vandermonde(k: usize) -> Self {
        MatrixSpec::Vandermonde {
            points: (1..=k as u32).collect(),
        }
    }

    pub fn resolve(&self, tables: &FieldTables, m: usize, k: usize) -> Result<ExponentMatrix> {
        match self {
            MatrixSpec::Vandermonde { points } => {
                let pts: Vec<u32> = if points.is_empty() {
                    (1..=k as u32).collect()
                } else {
                    points.clone()
                };
                if pts.len() != k {
                    return Err(Error::DimensionMismatch(format!(
                        "{} evaluation points for k = {}",
                        pts.len(),
                        k
                    )));
                }
                build_vandermonde(tables, m, &pts)
            }
            MatrixSpec::Cauchy { xs, ys } => {
                if xs.len() != m || ys.len() != k {
                    return Err(Error::DimensionMismatch(format!(
                        "Cauchy lists {}x{} for an {}x{} matrix",
                        xs.len(),
                        ys.len(),
                        m,
                        k
                    )));
                }
                build_cauchy(tables, xs, ys)
            }
            MatrixSpec::Explicit { sigma } => {
                if sigma.len() != m || sigma.iter().any(|row| row.len() != k) {
                    return Err(Error::DimensionMismatch("explicit sigma grid shape".into()));
                }
                let flat = sigma
                    .iter()
                    .flatten()
                    .map(|&e| tables.norm_exp(e as i64))
                    .collect();
                ExponentMatrix::new(m, k, flat)
            }
        }
    }
}

/// Vandermonde grid: `sigma(i, j) = (i - 1) * a_j` for evaluation exponents
/// `a_j`; row 1 is all zeros.
pub fn build_vandermonde(
    tables: &FieldTables,
    m: usize,
    evaluation_exponents: &[u32],
) -> Result<ExponentMatrix> {
    let k = evaluation_exponents.len();
    let norm: Vec<u32> = evaluation_exponents
        .iter()
        .map(|&a| tables.norm_exp(a as i64))
        .collect();
    for (idx, a) in norm.iter().enumerate() {
        if norm[..idx].contains(a) {
            return Err(Error::DuplicateEvaluationPoint);
        }
    }
    let mut sigma = Vec::with_capacity(m * k);
    for i in 0..m {
        for &a in &norm {
            sigma.push(tables.norm_exp(i as i64 * a as i64));
        }
    }
    ExponentMatrix::new(m, k, sigma)
}

/// Cauchy grid: `sigma(i, j)` is the exponent of `1 / (alpha^x_i + alpha^y_j)`.
pub fn build_cauchy(tables: &FieldTables, xs: &[u32], ys: &[u32]) -> Result<ExponentMatrix> {
    let xs: Vec<u32> = xs.iter().map(|&x| tables.norm_exp(x as i64)).collect();
    let ys: Vec<u32> = ys.iter().map(|&y| tables.norm_exp(y as i64)).collect();
    for (idx, x) in xs.iter().enumerate() {
        if xs[..idx].contains(x) {
            return Err(Error::DuplicatePoint);
        }
    }
    for (idx, y) in ys.iter().enumerate() {
        if ys[..idx].contains(y) {
            return Err(Error::DuplicatePoint);
        }
    }
    let mut sigma = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            if x == y {
                return Err(Error::SingularPair);
            }
            let sum = tables.add(FieldElement::Power(x), FieldElement::Power(y));
            let inv = tables.inv(sum).expect("x != y makes the sum nonzero");
            sigma.push(inv.exponent().unwrap());
        }
    }
    ExponentMatrix::new(xs.len(), ys.len(), sigma)
}

/// Determinant over GF(2^b) by Gaussian elimination with exact division.
/// Any nonzero pivot works; the first nonzero in column order is chosen for
/// determinism. Panics on a non-square grid.
pub fn determinant(tables: &FieldTables, grid: &[Vec<FieldElement>]) -> FieldElement {
    let n = grid.len();
    assert!(
        grid.iter().all(|row| row.len() == n),
        "square grid required"
    );
    if n == 0 {
        return FieldElement::ONE;
    }
    let mut a = grid.to_vec();
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::Zero;
        };
        a.swap(col, p); // characteristic 2: swaps do not flip sign
        let pivot = a[col][col];
        det = tables.mul(det, pivot);
        let pivinv = tables.inv(pivot).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = tables.mul(a[r][col], pivinv);
            for c in col..n {
                let sub = tables.mul(factor, a[col][c]);
                a[r][c] = tables.add(a[r][c], sub);
            }
        }
    }
    det
}

/// True iff every square submatrix of the grid is nonsingular.
pub fn grid_is_superregular(tables: &FieldTables, grid: &[Vec<FieldElement>]) -> bool {
    let m = grid.len();
    let k = grid.first().map_or(0, |r| r.len());
    for s in 1..=m.min(k) {
        for rows in combinations(m, s) {
            for cols in combinations(k, s) {
                let sub: Vec<Vec<FieldElement>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| grid[r][c]).collect())
                    .collect();
                if determinant(tables, &sub).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff every square submatrix of `A` (all equal-size row and column
/// subsets) has nonzero determinant.
pub fn is_superregular(tables: &FieldTables, a: &ExponentMatrix) -> Result<bool> {
    if a.rows() > MAX_ENUM_DIM || a.cols() > MAX_ENUM_DIM {
        return Err(Error::TooLarge(format!(
            "superregularity enumeration capped at {MAX_ENUM_DIM}x{MAX_ENUM_DIM}"
        )));
    }
    Ok(grid_is_superregular(tables, &a.to_grid()))
}

/// True iff every square submatrix of `psi(A)` assembled from whole b x b
/// blocks is nonsingular over GF(2).
pub fn is_block_superregular(tables: &FieldTables, a: &ExponentMatrix) -> Result<bool> {
    if a.rows() > MAX_ENUM_DIM || a.cols() > MAX_ENUM_DIM {
        return Err(Error::TooLarge(format!(
            "block superregularity enumeration capped at {MAX_ENUM_DIM}x{MAX_ENUM_DIM}"
        )));
    }
    let b = tables.b() as usize;
    let mut subsets = Vec::new();
    for s in 1..=a.rows().min(a.cols()) {
        for rows in combinations(a.rows(), s) {
            for cols in combinations(a.cols(), s) {
                subsets.push((rows.clone(), cols));
            }
        }
    }
    let check = |(rows, cols): &(Vec<usize>, Vec<usize>)| -> bool {
        let s = rows.len();
        let mut m = BitMatrix::zero(s * b, s * b);
        for (bi, &r) in rows.iter().enumerate() {
            for (bj, &c) in cols.iter().enumerate() {
                let block = tables.psi_block(a.sig(r + 1, c + 1));
                for rr in 0..b {
                    for cc in 0..b {
                        if block.get(rr, cc) {
                            m.set(bi * b + rr, bj * b + cc, true);
                        }
                    }
                }
            }
        }
        m.is_nonsingular()
    };
    #[cfg(feature = "parallel")]
    let ok = subsets.par_iter().all(check);
    #[cfg(not(feature = "parallel"))]
    let ok = subsets.iter().all(check);
    Ok(ok)
}

/// Independent MDS oracle: every choice of m block-columns of
/// `H = [psi(A) | I]` is nonsingular over GF(2).
pub fn check_mds_columns(params: &CodeParams) -> Result<bool> {
    let (m, k, n) = (params.m(), params.k(), params.n());
    let b = params.b() as usize;
    let total = crate::comb::binomial(n as u64, m as u64);
    if total > 100_000 || m * b > 256 {
        return Err(Error::TooLarge(format!(
            "{total} block-column subsets of size {m}"
        )));
    }
    let tables = params.tables();
    let a = params.matrix();
    let subsets = combinations(n, m);
    let check = |cols: &Vec<usize>| -> bool {
        let mut h = BitMatrix::zero(m * b, m * b);
        for (bj, &col) in cols.iter().enumerate() {
            if col < k {
                for bi in 0..m {
                    let block = tables.psi_block(a.sig(bi + 1, col + 1));
                    for rr in 0..b {
                        for cc in 0..b {
                            if block.get(rr, cc) {
                                h.set(bi * b + rr, bj * b + cc, true);
                            }
                        }
                    }
                }
            } else {
                let bi = col - k;
                for d in 0..b {
                    h.set(bi * b + d, bj * b + d, true);
                }
            }
        }
        h.is_nonsingular()
    };
    #[cfg(feature = "parallel")]
    let ok = subsets.par_iter().all(check);
    #[cfg(not(feature = "parallel"))]
    let ok = subsets.iter().all(check);
    Ok(ok)
}
