//! Exact linear algebra over prime fields.
//!
//! Vectors are row vectors. Subspaces are kept in reduced row-echelon form,
//! which is unique for a given row space, so subspace equality is plain
//! structural equality.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// The prime field F_p, p <= 97.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub const MAX_PRIME: u32 = 97;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut result = 1;
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `y += c * x`
    pub fn axpy(self, y: &mut [u32], c: u32, x: &[u32]) {
        if c == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = (*yi + c * xi) % self.p;
        }
    }

    pub fn dot(self, x: &[u32], y: &[u32]) -> u32 {
        let s: u64 = x.iter().zip(y).map(|(&a, &b)| (a * b) as u64).sum();
        (s % self.p as u64) as u32
    }

    pub fn scale_vec(self, c: u32, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&v| self.mul(c, v)).collect()
    }

    pub fn add_vec(self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.add(a, b)).collect()
    }

    pub fn sub_vec(self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.sub(a, b)).collect()
    }

    /// Iterates over all vectors of F_p^n in lexicographic order.
    pub fn all_vectors(self, n: usize) -> AllVectors {
        AllVectors {
            p: self.p,
            current: Some(vec![0; n]),
        }
    }

    /// Number of vectors in F_p^n, saturating.
    pub fn count(self, n: usize) -> u128 {
        (self.p as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
    }
}

pub struct AllVectors {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for AllVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.p {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = u32;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_data(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let p = field.p();
        Matrix {
            field,
            rows,
            cols,
            data: data.into_iter().map(|v| v % p).collect(),
        }
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|v| v % field.p()));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self[(r, c)] == (r == c) as u32))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(out_row, a, other.row(k));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut out, a, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.field.add_vec(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.field.sub_vec(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.field.scale_vec(c % self.field.p(), &self.data),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    /// Linear combination `sum coeffs[i] * mats[i]`.
    pub fn combination(field: Fp, rows: usize, cols: usize, coeffs: &[u32], mats: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(*c, m);
        }
        out
    }

    pub fn vstack(field: Fp, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn hstack(field: Fp, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(a.rows, a.cols, b);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)];
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        Matrix::from_rows(self.field, self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out[(r, j)] = self[(r, c)];
            }
        }
        out
    }

    /// Kronecker product; for row vectors `kron(x, y) kron(P, Q) = kron(xP, yQ)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] =
                            self.field.mul(a, other[(r2, c2)]);
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and pivot columns; zero rows are dropped.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    m.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(m[r * cols + c]);
            for k in 0..cols {
                m[r * cols + k] = f.mul(m[r * cols + k], inv);
            }
            let pivot_row: Vec<u32> = m[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m[i * cols + c];
                if factor != 0 {
                    let neg = f.neg(factor);
                    f.axpy(&mut m[i * cols..(i + 1) * cols], neg, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r * cols);
        (
            Matrix {
                field: f,
                rows: r,
                cols,
                data: m,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (in RREF) of `{x : M x^T = 0}`, i.e. the right null space.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[(i, fc)]);
            }
            basis.push(v);
        }
        Matrix::from_rows(f, self.cols, &basis).rref().0
    }

    /// Basis (in RREF) of `{x : x M = 0}`.
    pub fn left_nullspace(&self) -> Matrix {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Solves `x M = b` for a row vector x, if solvable.
    pub fn solve_left(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols);
        let f = self.field;
        // x M = b  <=>  M^T x^T = b^T
        let mt = self.transpose();
        let bcol = Matrix::from_data(f, self.cols, 1, b.to_vec());
        let aug = Matrix::hstack(f, self.cols, &[&mt, &bcol]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.rows)];
        }
        Some(x)
    }
}

/// A subspace of F_p^n stored as its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient(), self.basis)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Deterministic order: by dimension, then by RREF basis entries.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient(), self.dim(), self.basis.data()).cmp(&(other.ambient(), other.dim(), other.basis.data()))
    }
}

impl Subspace {
    pub fn span_matrix(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::span_matrix(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Builds a subspace from a matrix already in RREF.
    pub fn from_rref(basis: Matrix, pivots: Vec<usize>) -> Self {
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; the standard vectors there span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` modulo the subspace: the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                f.axpy(&mut out, f.neg(c), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let recon = self.basis.apply(&c);
        (recon == v).then_some(c)
    }

    /// Coordinates of `v + U` in the quotient, w.r.t. the complement indices.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.complement_indices().iter().map(|&c| r[c]).collect()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let m = Matrix::vstack(self.field(), self.ambient(), &[&self.basis, &other.basis]);
        Subspace::span_matrix(&m)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.ambient();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, n);
        }
        let stacked = Matrix::vstack(f, n, &[&self.basis, &other.basis.scale(f.p() - 1)]);
        let ker = stacked.left_nullspace();
        let a = ker.block(0, 0, ker.rows(), self.dim());
        Subspace::span_matrix(&a.mul(&self.basis))
    }

    /// Image of the subspace under `v -> v M`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span_matrix(&self.basis.mul(m))
    }
}

/// Enumerates all subspaces of F_p^n (every RREF matrix exactly once).
pub fn all_subspaces(field: Fp, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free entries: row i, column c > pivots[i], c not a pivot
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            for values in field.all_vectors(free.len()) {
                let mut m = Matrix::zeros(field, k, n);
                for (i, &pc) in pivots.iter().enumerate() {
                    m[(i, pc)] = 1;
                }
                for (&(i, c), &v) in free.iter().zip(&values) {
                    m[(i, c)] = v;
                }
                out.push(Subspace::from_rref(m, pivots.clone()));
            }
        }
    }
    out
}

/// Number of subspaces of F_p^n (sum of Gaussian binomials), saturating.
pub fn subspace_count(field: Fp, n: usize) -> u128 {
    let q = field.p() as u128;
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
            den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
        }
        if num == u128::MAX {
            return u128::MAX;
        }
        total = total.saturating_add(num / den);
    }
    total
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
impl Matrix {
    fn apply_right(&self, v: &[u32]) -> Vec<u32> {
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn primes_are_checked() {
        assert!(Fp::new(2).is_ok());
        assert!(Fp::new(97).is_ok());
        assert_eq!(Fp::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Fp::new(91), Err(Error::NotPrime(91)));
        assert_eq!(Fp::new(101), Err(Error::NotPrime(101)));
    }

    #[test]
    fn inverses_mod_7() {
        let f = Fp::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn subspace_counts_match_enumeration() {
        assert_eq!(all_subspaces(f2(), 3).len(), 16);
        assert_eq!(all_subspaces(f2(), 4).len(), 67);
        assert_eq!(subspace_count(f2(), 4), 67);
        let f3 = Fp::new(3).unwrap();
        assert_eq!(all_subspaces(f3, 2).len() as u128, subspace_count(f3, 2));
    }

    #[test]
    fn nullspace_and_inverse() {
        let f = Fp::new(5).unwrap();
        let m = Matrix::from_rows(f, 3, &[vec![1, 2, 3], vec![2, 4, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 1);
        let v = ns.row(0).to_vec();
        assert!(m.apply_right(&v).iter().all(|&x| x == 0));
        let a = Matrix::from_rows(f, 2, &[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let sing = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let f = f2();
        let u = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersection(&w), Subspace::span(f, 3, &[vec![0, 1, 0]]));
        assert!(u.sum(&w).is_full());
    }

    #[test]
    fn solve_left_roundtrip() {
        let f = Fp::new(3).unwrap();
        let m = Matrix::from_rows(f, 3, &[vec![1, 0, 2], vec![0, 1, 1]]);
        let x = m.solve_left(&[2, 1, 2]).unwrap();
        assert_eq!(m.apply(&x), vec![2, 1, 2]);
        assert!(m.solve_left(&[0, 0, 1]).is_none());
    }
}
