//! Exact integer/rational linear algebra: Bareiss determinants, exact
//! solving, Smith normal form with transforms, and definiteness tests.
//!
//! No floating point is used anywhere; entries are arbitrary-precision
//! integers and solutions are exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: matrix is {rows}x{cols}, vector has length {len}")]
    DimensionMismatch { rows: usize, cols: usize, len: usize },
}

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Outcome of the exact definiteness test for a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    NegativeSemidefinite { corank: usize },
    IndefiniteOrPositive,
}

/// Smith normal form `U * A * V = diag(d_1, ..., d_k)` with
/// `d_1 | d_2 | ...`, all `d_i >= 0`, and `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// Convenience constructor from machine integers (tests, small examples).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Principal submatrix on the given (distinct) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> ExactMatrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        })
    }

    pub fn mul_matrix(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self.get(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&a, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) {
                    Some(p) => {
                        for j in 0..n {
                            a.swap(k * n + j, p * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, i, j) * at(&a, k, k) - at(&a, i, k) * at(&a, k, j);
                    a[i * n + j] = num / &prev; // exact by Bareiss
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        let det = at(&a, n - 1, n - 1);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Exact solution of `self * x = b` for square nonsingular `self`.
    /// Fraction-free forward elimination, rational back-substitution.
    pub fn solve_unique(&self, b: &[BigInt]) -> Result<Vec<BigRational>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch {
                rows: self.rows,
                cols: self.cols,
                len: b.len(),
            });
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        // augmented matrix [A | b], width n+1
        let w = n + 1;
        let mut a: Vec<BigInt> = Vec::with_capacity(n * w);
        for i in 0..n {
            for j in 0..n {
                a.push(self.get(i, j).clone());
            }
            a.push(b[i].clone());
        }
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * w + j].clone();
        let mut prev = BigInt::one();
        for k in 0..n {
            if at(&a, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) {
                    Some(p) => {
                        for j in 0..w {
                            a.swap(k * w + j, p * w + j);
                        }
                    }
                    None => return Err(LinalgError::Singular),
                }
            }
            for i in k + 1..n {
                for j in k + 1..w {
                    let num = at(&a, i, j) * at(&a, k, k) - at(&a, i, k) * at(&a, k, j);
                    a[i * w + j] = num / &prev;
                }
                a[i * w + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        // upper triangular with nonzero pivots; back-substitute over Q
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = BigRational::from(at(&a, i, n));
            for j in i + 1..n {
                acc -= BigRational::from(at(&a, i, j)) * &x[j];
            }
            x[i] = acc / BigRational::from(at(&a, i, i));
        }
        Ok(x)
    }

    /// Rank over the rationals (Bareiss with full row pivoting).
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * c + j].clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut col = 0;
        while rank < r && col < c {
            match (rank..r).find(|&i| !at(&a, i, col).is_zero()) {
                None => {
                    col += 1;
                    continue;
                }
                Some(p) => {
                    if p != rank {
                        for j in 0..c {
                            a.swap(rank * c + j, p * c + j);
                        }
                    }
                }
            }
            for i in rank + 1..r {
                for j in col + 1..c {
                    let num = at(&a, i, j) * at(&a, rank, col) - at(&a, i, col) * at(&a, rank, j);
                    a[i * c + j] = num / &prev;
                }
                a[i * c + col] = BigInt::zero();
            }
            prev = at(&a, rank, col);
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Characteristic polynomial coefficients of a square integer matrix,
    /// `det(xI - A) = x^n + c[n-1] x^(n-1) + ... + c[0]`, via
    /// Faddeev-LeVerrier (all divisions exact).
    pub fn char_poly(&self) -> Result<Vec<BigInt>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n];
        let mut m = ExactMatrix::identity(n);
        for k in 1..=n {
            m = self.mul_matrix(&m);
            let tr: BigInt = (0..n).map(|i| m.get(i, i).clone()).sum();
            let c = -tr / BigInt::from(k);
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = m.get(i, i) + &c;
                m.set(i, i, v);
            }
        }
        Ok(coeffs)
    }

    /// Exact definiteness classification of a symmetric matrix.
    ///
    /// Negative definite is decided by Sylvester's criterion on leading
    /// principal minors. Failing that, negative semidefiniteness and the
    /// corank are read off the characteristic polynomial of `-A` (real
    /// spectrum, so all eigenvalues are >= 0 iff the elementary symmetric
    /// functions are all >= 0).
    pub fn definiteness(&self) -> Result<Definiteness, LinalgError> {
        if !self.is_symmetric() {
            if !self.is_square() {
                return Err(LinalgError::NotSquare {
                    rows: self.rows,
                    cols: self.cols,
                });
            }
            return Err(LinalgError::NotSymmetric);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Definiteness::NegativeDefinite);
        }
        let mut definite = true;
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            let minor = self.principal_submatrix(&idx).determinant()?;
            let want_positive = k % 2 == 0;
            let ok = if want_positive {
                minor.is_positive()
            } else {
                minor.is_negative()
            };
            if !ok {
                definite = false;
                break;
            }
        }
        if definite {
            return Ok(Definiteness::NegativeDefinite);
        }
        // char poly of -A: x^n + c[n-1] x^(n-1) + ... + c[0]
        let neg = Self::from_fn(n, n, |i, j| -self.get(i, j));
        let c = neg.char_poly()?;
        // coefficient of x^(n-k) is (-1)^k e_k; eigenvalues all >= 0 iff
        // every e_k >= 0
        let mut semidefinite = true;
        for k in 1..=n {
            let coeff = &c[n - k];
            let e_k = if k % 2 == 0 { coeff.clone() } else { -coeff };
            if e_k.is_negative() {
                semidefinite = false;
                break;
            }
        }
        if semidefinite {
            let corank = c.iter().take_while(|ci| ci.is_zero()).count();
            Ok(Definiteness::NegativeSemidefinite { corank })
        } else {
            Ok(Definiteness::IndefiniteOrPositive)
        }
    }

    /// Smith normal form with unimodular transforms.
    pub fn smith_normal_form(&self) -> SnfResult {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = ExactMatrix::identity(r);
        let mut v = ExactMatrix::identity(c);

        let min = r.min(c);
        for t in 0..min {
            if !reduce_pivot(&mut a, &mut u, &mut v, t) {
                break;
            }
        }
        // enforce divisibility chain d_t | d_{t+1}
        let mut t = 0;
        while t + 1 < min {
            let d0 = a.get(t, t).clone();
            let d1 = a.get(t + 1, t + 1).clone();
            if d0.is_zero() || d1.is_zero() {
                break;
            }
            if (&d1 % &d0).is_zero() {
                t += 1;
                continue;
            }
            // fold d_{t+1} into position t and re-reduce
            for j in 0..c {
                let val = a.get(t, j) + a.get(t + 1, j);
                a.set(t, j, val);
            }
            for j in 0..r {
                let val = u.get(t, j) + u.get(t + 1, j);
                u.set(t, j, val);
            }
            for s in t..min {
                if !reduce_pivot(&mut a, &mut u, &mut v, s) {
                    break;
                }
            }
            t = 0; // re-check the chain from the start
        }
        // sign normalization
        for t in 0..min {
            if a.get(t, t).is_negative() {
                for j in 0..r {
                    let val = -u.get(t, j);
                    u.set(t, j, val);
                }
                let val = -a.get(t, t);
                a.set(t, t, val);
            }
        }
        let diagonal = (0..min).map(|t| a.get(t, t).clone()).collect();
        SnfResult { diagonal, u, v }
    }
}

/// Clear row `t` and column `t` of `a` (below/right of position t) so that
/// `a[t][t]` is the gcd of everything it eliminated. Returns false when the
/// remaining block is zero.
fn reduce_pivot(a: &mut ExactMatrix, u: &mut ExactMatrix, v: &mut ExactMatrix, t: usize) -> bool {
    let (r, c) = (a.rows(), a.cols());
    // locate a minimal-norm nonzero pivot in the trailing block
    let mut pivot: Option<(usize, usize)> = None;
    for i in t..r {
        for j in t..c {
            if a.get(i, j).is_zero() {
                continue;
            }
            match pivot {
                None => pivot = Some((i, j)),
                Some((pi, pj)) => {
                    if a.get(i, j).abs() < a.get(pi, pj).abs() {
                        pivot = Some((i, j));
                    }
                }
            }
        }
    }
    let Some((pi, pj)) = pivot else {
        return false;
    };
    swap_rows(a, u, t, pi);
    swap_cols(a, v, t, pj);
    loop {
        let mut clean = true;
        for i in t + 1..r {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = div_round(a.get(i, t), a.get(t, t));
            if !q.is_zero() {
                row_sub(a, u, i, t, &q);
            }
            if !a.get(i, t).is_zero() {
                swap_rows(a, u, t, i);
                clean = false;
            }
        }
        for j in t + 1..c {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = div_round(a.get(t, j), a.get(t, t));
            if !q.is_zero() {
                col_sub(a, v, j, t, &q);
            }
            if !a.get(t, j).is_zero() {
                swap_cols(a, v, t, j);
                clean = false;
            }
        }
        if clean {
            break;
        }
    }
    true
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    // round-to-nearest quotient keeps pivots small
    let (q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.is_negative()) != (d.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut ExactMatrix, u: &mut ExactMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..a.cols() {
        let x = a.get(i, k).clone();
        let y = a.get(j, k).clone();
        a.set(i, k, y);
        a.set(j, k, x);
    }
    for k in 0..u.cols() {
        let x = u.get(i, k).clone();
        let y = u.get(j, k).clone();
        u.set(i, k, y);
        u.set(j, k, x);
    }
}

fn swap_cols(a: &mut ExactMatrix, v: &mut ExactMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..a.rows() {
        let x = a.get(k, i).clone();
        let y = a.get(k, j).clone();
        a.set(k, i, y);
        a.set(k, j, x);
    }
    for k in 0..v.rows() {
        let x = v.get(k, i).clone();
        let y = v.get(k, j).clone();
        v.set(k, i, y);
        v.set(k, j, x);
    }
}

/// row_i -= q * row_t (and mirror on U)
fn row_sub(a: &mut ExactMatrix, u: &mut ExactMatrix, i: usize, t: usize, q: &BigInt) {
    for k in 0..a.cols() {
        let val = a.get(i, k) - q * a.get(t, k);
        a.set(i, k, val);
    }
    for k in 0..u.cols() {
        let val = u.get(i, k) - q * u.get(t, k);
        u.set(i, k, val);
    }
}

/// col_j -= q * col_t (and mirror on V)
fn col_sub(a: &mut ExactMatrix, v: &mut ExactMatrix, j: usize, t: usize, q: &BigInt) {
    for k in 0..a.rows() {
        let val = a.get(k, j) - q * a.get(k, t);
        a.set(k, j, val);
    }
    for k in 0..v.rows() {
        let val = v.get(k, j) - q * v.get(k, t);
        v.set(k, j, val);
    }
}
