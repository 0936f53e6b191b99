//! Dense linear algebra over a prime field `F_p`.
//!
//! Everything the module and resolution code needs reduces to row echelon
//! forms: ranks, right kernels, column spans and reduction modulo a subspace.
//! Entries are stored as canonical residues in `0..p`; `p` must be below
//! `2^31` so that products fit comfortably in a `u64`.

use std::fmt;

/// Largest characteristic accepted by [`FpMatrix`].
pub const MAX_PRIME: u64 = 1 << 31;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow_mod(a, p - 2, p)
}

/// Reduce a signed integer to its canonical residue.
pub fn reduce_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Trial-division primality test; the characteristics used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        assert!((2..MAX_PRIME).contains(&p), "characteristic {p} out of range");
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row-major data, reducing every entry mod `p`.
    pub fn from_row_major(rows: usize, cols: usize, p: u64, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let mut m = Self::zeros(rows, cols, p);
        for (dst, &src) in m.data.iter_mut().zip(data) {
            *dst = reduce_i64(src, p);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize, p: u64) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(rows, cols, p);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.p);
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = add_mod(self.data[idx], v % self.p, self.p);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_major(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.p, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let mut out = self.clone();
        for x in &mut out.data {
            *x = mul_mod(*x, c, self.p);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = add_mod(*x, y, self.p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = sub_mod(*x, y, self.p);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Self::zeros(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&FpMatrix], cols: usize, p: u64) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(rows, cols, p);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.data[offset * cols..(offset + m.rows) * cols].copy_from_slice(&m.data);
            offset += m.rows;
        }
        out
    }

    /// Place matrices with equal row counts side by side.
    pub fn hstack(parts: &[&FpMatrix], rows: usize, p: u64) -> Self {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols, p);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, offset + j, m.get(i, j));
                }
            }
            offset += m.cols;
        }
        out
    }

    /// Principal submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.p, |i, j| self.get(rows[i], cols[j]))
    }

    pub fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = inv_mod(m.get(r, c), p);
            for j in c..m.cols {
                let v = mul_mod(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = sub_mod(m.get(i, j), mul_mod(f, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                let e = ech.matrix.get(r, free);
                if e != 0 {
                    v[pc] = p - e;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n, self.p)], n, self.p);
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, self.p, |i, j| ech.matrix.get(i, n + j)))
    }

    /// Basis (in echelon form) of the span of the columns.
    pub fn column_space(&self) -> Vec<Vec<u64>> {
        let ech = self.transpose().echelon();
        (0..ech.matrix.rows).map(|i| ech.matrix.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// An incrementally grown subspace of `F_p^dim`, kept in reduced echelon form.
///
/// Used to pick minimal generating sets: a vector is new exactly when it
/// does not reduce to zero.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize, p: u64) -> Self {
        Self {
            dim,
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(dim: usize, p: u64, vectors: impl IntoIterator<Item = &'a Vec<u64>>) -> Self {
        let mut s = Self::new(dim, p);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the stored basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    if r != 0 {
                        *x = sub_mod(*x, mul_mod(f, r, p), p);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        for x in &mut w {
            *x = mul_mod(*x, inv, p);
        }
        for row in &mut self.rows {
            let f = row[pc];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = sub_mod(*x, mul_mod(f, r, p), p);
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_pow() {
        for p in [3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
        assert_eq!(pow_mod(2, 10, 1_000_003), 1024);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMatrix::from_row_major(3, 3, 7, &[1, 2, 0, 0, 1, 3, 4, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(3, 7));
        let singular = FpMatrix::from_row_major(2, 2, 3, &[1, 2, 2, 1]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rank_and_kernel() {
        // rows (1,2,3), (2,4,6) mod 5 -> rank 1, kernel dim 2
        let m = FpMatrix::from_row_major(2, 3, 5, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 3
        let a = [2, 1, 1, 2];
        assert_eq!(FpMatrix::from_row_major(2, 2, 3, &a).rank(), 1);
        assert_eq!(FpMatrix::from_row_major(2, 2, 5, &a).rank(), 2);
    }

    #[test]
    fn subspace_reduction() {
        let p = 7;
        let mut s = Subspace::new(3, p);
        assert!(s.insert(&[1, 2, 0]));
        assert!(!s.insert(&[2, 4, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(s.contains(&[1, 3, 1]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = FpMatrix::from_row_major(2, 2, 7, &[1, 2, 3, 4]);
        let b = FpMatrix::from_row_major(2, 2, 7, &[0, 1, 1, 0]);
        let c = a.mul(&b);
        assert_eq!(c.row_major(), &[2, 1, 4, 3]);
        assert_eq!(a.mul(&FpMatrix::identity(2, 7)), a);
    }
}
