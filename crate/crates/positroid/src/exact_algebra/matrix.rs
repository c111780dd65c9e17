use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, FractionPair, LaurentPoly};

/// Commutative ring operations needed by the matrix helpers.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Ring for FractionPair {
    fn zero() -> Self {
        FractionPair::zero()
    }
    fn one() -> Self {
        FractionPair::one()
    }
    fn is_zero(&self) -> bool {
        FractionPair::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

/// Dense row-major matrix. Indices are 0-based; the `*1` helpers take
/// 1-based index sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E, F: Fn(&T) -> Result<U, E>>(&self, f: F) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<U>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, o: &Matrix<T>) -> Result<Matrix<T>, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Columns `from..cols` (0-based).
    pub fn last_columns(&self, from: usize) -> Self {
        let cols: Vec<usize> = (from..self.cols).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &cols)
    }

    /// Determinant by expansion over column subsets, one row at a time.
    pub fn det(&self) -> Result<T, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of a non-square matrix".into()));
        }
        let s = self.rows;
        if s == 0 {
            return Ok(T::one());
        }
        if s > 20 {
            return Err(AlgebraError::Shape("matrix too large for subset expansion".into()));
        }
        let mut dp: Vec<Option<T>> = vec![None; 1 << s];
        dp[0] = Some(T::one());
        for mask in 0usize..(1 << s) {
            let cur = match dp[mask].take() {
                Some(c) if !c.is_zero() => c,
                _ => continue,
            };
            let row = mask.count_ones() as usize;
            if row == s {
                dp[mask] = Some(cur);
                continue;
            }
            for c in 0..s {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = self.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = cur.times(entry);
                if above % 2 == 1 {
                    term = term.negate();
                }
                let slot = &mut dp[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(x) => x.plus(&term),
                    None => term,
                });
            }
        }
        Ok(dp[(1 << s) - 1].take().unwrap_or_else(T::zero))
    }

    /// Minor on 1-based row and column sets.
    pub fn minor1(&self, rows: &[usize], cols: &[usize]) -> Result<T, AlgebraError> {
        if rows.len() != cols.len() {
            return Err(AlgebraError::Shape("minor with unequal index sets".into()));
        }
        let r: Vec<usize> = rows.iter().map(|&i| i - 1).collect();
        let c: Vec<usize> = cols.iter().map(|&j| j - 1).collect();
        self.submatrix(&r, &c).det()
    }

    /// Maximal minor on the 1-based row set, using all columns.
    pub fn plucker1(&self, rows: &[usize]) -> Result<T, AlgebraError> {
        let cols: Vec<usize> = (1..=self.cols).collect();
        self.minor1(rows, &cols)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// True when the two full-rank `n x d` matrices span the same subspace:
/// every pair of Plücker coordinates is proportional.
pub fn same_grassmann_point(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>) -> Result<bool, AlgebraError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(AlgebraError::Shape("matrices of different shapes".into()));
    }
    let sets = subsets(a.rows(), a.cols());
    let pa = sets.iter().map(|s| a.plucker1(s)).collect::<Result<Vec<_>, _>>()?;
    let pb = sets.iter().map(|s| b.plucker1(s)).collect::<Result<Vec<_>, _>>()?;
    if pa.iter().all(|x| x.is_zero()) || pb.iter().all(|x| x.is_zero()) {
        return Ok(false);
    }
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if &pa[i] * &pb[j] != &pa[j] * &pb[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..nc {
        let Some(p) = (rank..nr).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in (rank + 1)..nr {
            for j in (col + 1)..nc {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(m: &Matrix<BigRational>) -> usize {
    let mut a = m.to_rows();
    let (nr, nc) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..nc {
        let Some(p) = (rank..nr).find(|&i| !Zero::is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in (rank + 1)..nr {
            if Zero::is_zero(&a[i][col]) {
                continue;
            }
            let f = &a[i][col] / &pivot;
            for j in col..nc {
                let v = &a[i][j] - &f * &a[rank][j];
                a[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}
