//! Exact dense linear algebra: rank, nullspace, determinants, and determinants
//! of matrices with univariate polynomial entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Field, FieldError, Rational, RefOps};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has every integer as a root")]
    ZeroPolynomial,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K>
where
    for<'a> &'a K: RefOps<K>,
{
    pub fn new(rows: usize, cols: usize, data: Vec<K>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![K::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self::new(self.cols, self.rows, data)
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place elimination to row echelon form. The pivot in each column is the
    /// first nonzero entry at or below the current pivot row. With `reduce`, pivots
    /// are scaled to 1 and cleared above as well (reduced row echelon form).
    /// Returns the pivot columns and the number of row swaps.
    fn echelon(&mut self, reduce: bool) -> Result<(Vec<usize>, usize), FieldError> {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            if found != prow {
                self.swap_rows(found, prow);
                swaps += 1;
            }
            if reduce {
                let inv = self[(prow, col)].try_inv()?;
                for j in col..self.cols {
                    if !self[(prow, j)].is_zero() {
                        let v = &self[(prow, j)] * &inv;
                        self[(prow, j)] = v;
                    }
                }
            }
            let pinv = if reduce { K::one() } else { self[(prow, col)].try_inv()? };
            let targets: Vec<usize> =
                if reduce { (0..self.rows).filter(|&i| i != prow).collect() } else { (prow + 1..self.rows).collect() };
            for i in targets {
                if self[(i, col)].is_zero() {
                    continue;
                }
                let factor = &self[(i, col)] * &pinv;
                for j in col..self.cols {
                    if self[(prow, j)].is_zero() {
                        continue;
                    }
                    let t = &factor * &self[(prow, j)];
                    self[(i, j)] -= &t;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Ok((pivots, swaps))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize, FieldError> {
        Ok(self.clone().echelon(false)?.0.len())
    }

    /// Basis of the right kernel: one vector per free column, each scaled so its
    /// first nonzero coordinate is 1.
    pub fn nullspace(&self) -> Result<Vec<Vec<K>>, FieldError> {
        let mut r = self.clone();
        let (pivots, _) = r.echelon(true)?;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, free)];
            }
            normalize_first_nonzero::<K>(&mut v)?;
            basis.push(v);
        }
        Ok(basis)
    }

    /// Basis of {λ : λᵀ·M = 0}.
    pub fn left_kernel(&self) -> Result<Vec<Vec<K>>, FieldError> {
        self.transpose().nullspace()
    }

    pub fn determinant(&self) -> Result<K, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.echelon(false)?;
        if pivots.len() < self.rows {
            return Ok(K::zero());
        }
        let mut det = K::one();
        for i in 0..self.rows {
            det = &det * &m[(i, i)];
        }
        Ok(if swaps % 2 == 1 { -det } else { det })
    }
}

fn normalize_first_nonzero<K: Field>(v: &mut [K]) -> Result<(), FieldError>
where
    for<'a> &'a K: RefOps<K>,
{
    if let Some(lead) = v.iter().find(|c| !c.is_zero()) {
        let inv = lead.try_inv()?;
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
    }
    Ok(())
}

impl<K> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

impl<K: fmt::Debug> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[K]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Determinant of a rational matrix by Bareiss elimination on an integer lift:
/// each row is scaled by the lcm of its denominators, and the scales divided out.
pub fn determinant_bareiss(m: &Matrix<Rational>) -> Result<Rational, LinalgError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(LinalgError::NotSquare { rows: n, cols: m.cols() });
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        a.push(m.row(i).iter().map(|q| q.numer() * (&l / q.denom())).collect());
        scale *= l;
    }
    let det = bareiss_int(a);
    Ok(Rational::new(det, scale))
}

fn bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a square matrix over K[m]: cofactor expansion up to size 6,
/// fraction-free elimination above.
pub fn unipoly_matrix_det<K: Field>(m: &[Vec<UniPoly<K>>]) -> Result<UniPoly<K>, LinalgError>
where
    for<'a> &'a K: RefOps<K>,
{
    check_square(m)?;
    if m.len() <= 6 {
        Ok(unipoly_det_cofactor::<K>(m))
    } else {
        unipoly_det_bareiss::<K>(m)
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<(), LinalgError> {
    let n = m.len();
    match m.iter().find(|row| row.len() != n) {
        Some(row) => Err(LinalgError::NotSquare { rows: n, cols: row.len() }),
        None => Ok(()),
    }
}

/// Laplace expansion along the rows, memoized over the set of columns used so far.
pub fn unipoly_det_cofactor<K: Field>(m: &[Vec<UniPoly<K>>]) -> UniPoly<K>
where
    for<'a> &'a K: RefOps<K>,
{
    let n = m.len();
    assert!(n < 24, "cofactor expansion is limited to small matrices");
    // minors[mask] = determinant of the rows 0..popcount(mask) restricted to the columns in mask
    let mut minors: Vec<Option<UniPoly<K>>> = vec![None; 1 << n];
    minors[0] = Some(UniPoly::<K>::one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = UniPoly::<K>::zero();
        // expansion along the last used row: cofactor sign (-1)^(row + position)
        let mut sign_pos = row % 2 == 0;
        for col in (0..n).filter(|c| mask >> c & 1 == 1) {
            let rest = mask & !(1 << col);
            let minor = minors[rest].as_ref().expect("smaller minors computed first");
            if !m[row][col].is_zero() && !minor.is_zero() {
                let t = &m[row][col] * minor;
                acc = if sign_pos { &acc + &t } else { &acc - &t };
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().unwrap_or_else(UniPoly::<K>::one)
}

/// Fraction-free Bareiss elimination in K[m]; every division is exact.
pub fn unipoly_det_bareiss<K: Field>(m: &[Vec<UniPoly<K>>]) -> Result<UniPoly<K>, LinalgError>
where
    for<'a> &'a K: RefOps<K>,
{
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Ok(UniPoly::<K>::one());
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = UniPoly::<K>::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(UniPoly::<K>::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let s = (t as u64 & PRIME) + (t >> 61) as u64;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce(q: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let to_u64 = |n: &BigInt| -> u64 {
        let r = n.mod_floor(&p);
        r.iter_u64_digits().next().unwrap_or(0)
    };
    if q.is_zero() {
        return Some(0);
    }
    let num = to_u64(q.numer());
    if q.is_integer() {
        return Some(num);
    }
    let den = to_u64(q.denom());
    (den != 0).then(|| mul_mod(num, inv_mod(den)))
}

/// Rank of a rational matrix reduced modulo the prime 2^61 − 1, or `None` if a
/// denominator vanishes there. It never exceeds the rank over ℚ.
pub fn rank_mod_prime(rows: &[Vec<Rational>]) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(reduce).collect()).collect::<Option<_>>()?;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = inv_mod(m[rank][c]);
        let pivot: Vec<u64> = m[rank].iter().map(|&x| mul_mod(x, inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = (*x + PRIME - mul_mod(f, y)) % PRIME;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    Some(rank)
}

/// All integers t in [lo, hi] with p(t) = 0.
pub fn integer_roots<K: Field>(p: &UniPoly<K>, lo: i64, hi: i64) -> Result<Vec<i64>, LinalgError>
where
    for<'a> &'a K: RefOps<K>,
{
    if p.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    Ok((lo..=hi).filter(|&t| p.eval(&K::from_int(t)).is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    fn up(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::<Rational>::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(Matrix::<Rational>::identity(3).rank().unwrap(), 3);
        let k = q(&[&[1, 1, 1]]).nullspace().unwrap();
        assert_eq!(k, vec![vec![int(1), int(-1), int(0)], vec![int(1), int(0), int(-1)]]);
        assert!(Matrix::<Rational>::identity(3).nullspace().unwrap().is_empty());
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::<Rational>::identity(4).determinant().unwrap(), int(1));
        let rep = q(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert!(rep.determinant().unwrap().is_zero());
        let m = q(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        assert_eq!(m.determinant().unwrap(), int(-4));
        assert_eq!(determinant_bareiss(&m).unwrap(), int(-4));
        assert_eq!(q(&[&[1, 2]]).determinant(), Err(LinalgError::NotSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn polynomial_determinant() {
        let m = vec![vec![up(&[0, 1]), up(&[1])], vec![up(&[1]), up(&[0, 1])]];
        assert_eq!(unipoly_matrix_det(&m).unwrap(), up(&[-1, 0, 1]));
        assert_eq!(unipoly_det_bareiss(&m).unwrap(), up(&[-1, 0, 1]));
        let z = vec![vec![up(&[]), up(&[])], vec![up(&[1]), up(&[0, 1])]];
        assert!(unipoly_matrix_det(&z).unwrap().is_zero());
    }

    #[test]
    fn roots() {
        assert_eq!(integer_roots(&up(&[-1, 0, 1]), 0, 10).unwrap(), vec![1]);
        assert!(integer_roots(&up(&[1, 0, 1]), 0, 10).unwrap().is_empty());
        assert_eq!(integer_roots(&up(&[]), 0, 10), Err(LinalgError::ZeroPolynomial));
    }
}
