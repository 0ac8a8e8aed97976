use std::fmt;

use crate::error::{Error, Result};

use super::echelon::rref_rows;
use super::kernel::{with_kernel, Kernel};
use super::subspace::Subspace;

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Output of [`MatFp::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatFp {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        MatFp { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, validating shape and entry range.
    pub fn new(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Result<Self> {
        super::check_modulus(p as u64)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| x >= p) {
            return Err(Error::DimensionMismatch(format!("entry {bad} not reduced mod {p}")));
        }
        Ok(MatFp { rows, cols, p, data })
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_i64_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows, self.p)
    }

    pub fn transpose(&self) -> MatFp {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatFp {
        let mut m = Self::zeros(idx.len(), self.cols, self.p);
        for (r, &i) in idx.iter().enumerate() {
            m.row_mut(r).copy_from_slice(self.row(i));
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatFp {
        let mut m = Self::zeros(self.rows, idx.len(), self.p);
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + c] = self.get(i, j);
            }
        }
        m
    }

    pub fn vstack(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.cols, "vstack width");
        assert_eq!(self.p, other.p, "mixed moduli");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatFp { rows: self.rows + other.rows, cols: self.cols, p: self.p, data }
    }

    pub fn hstack(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.rows, other.rows, "hstack height");
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols, self.p);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn add(&self, other: &MatFp) -> MatFp {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatFp) -> MatFp {
        let p = self.p as u64;
        self.zip_with(other, |a, b| a + (p - b))
    }

    fn zip_with(&self, other: &MatFp, f: impl Fn(u64, u64) -> u64) -> MatFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        assert_eq!(self.p, other.p, "mixed moduli");
        let p = self.p as u64;
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| (f(a as u64, b as u64) % p) as u32).collect();
        MatFp { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, c: u32) -> MatFp {
        let p = self.p as u64;
        let c = c as u64 % p;
        let data = self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect();
        MatFp { data, ..*self }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &MatFp) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let p = self.p as u64;
        let c = c as u64 % p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + c * b as u64) % p) as u32;
        }
    }

    pub fn neg(&self) -> MatFp {
        self.scale(self.p - 1)
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn mul(&self, rhs: &MatFp) -> MatFp {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        assert_eq!(self.p, rhs.p, "mixed moduli");
        if self.p == 2 {
            return self.mul_gf2(rhs);
        }
        let (n, m) = (self.rows, rhs.cols);
        let p = self.p as u64;
        let q = (p - 1) * (p - 1);
        // leave headroom for the reduced value carried between batches
        let batch = if q == 0 { usize::MAX } else { (u64::MAX / q - 1).min(usize::MAX as u64) as usize };
        let mut out = Self::zeros(n, m, self.p);
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut count = 0;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let b = &rhs.data[k * m..(k + 1) * m];
                for (x, &y) in acc.iter_mut().zip(b) {
                    *x += a * y as u64;
                }
                count += 1;
                if count == batch {
                    acc.iter_mut().for_each(|x| *x %= p);
                    count = 0;
                }
            }
            for (o, &x) in out.data[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        out
    }

    fn mul_gf2(&self, rhs: &MatFp) -> MatFp {
        let k = super::kernel::Gf2;
        let b = rhs.pack(k);
        let mut out = Self::zeros(self.rows, rhs.cols, 2);
        for i in 0..self.rows {
            let a = k.pack(self.row(i));
            let r = k.vec_mat(&a, &b, rhs.cols);
            k.unpack_into(&r, out.row_mut(i));
        }
        out
    }

    pub fn mat_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> MatFp {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn kron(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.p, other.p, "mixed moduli");
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(r, c, self.p);
        let p = self.p as u64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l) as u64;
                        m.data[(i * other.rows + k) * c + j * other.cols + l] = (a * b % p) as u32;
                    }
                }
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        with_kernel!(self.p, k => {
            let mut rows = self.pack(k);
            let pivots = rref_rows(k, &mut rows, self.cols);
            Rref { matrix: Self::from_packed(k, &rows, self.cols), rank: pivots.len(), pivots }
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right nullspace `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                let x = r.get(i, f);
                v[c] = if x == 0 { 0 } else { self.p - x };
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.p, self.cols, &basis)
    }

    pub fn inverse(&self) -> Option<MatFp> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n, self.p));
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub(crate) fn pack<K: Kernel>(&self, k: K) -> Vec<K::Row> {
        (0..self.rows).map(|i| k.pack(self.row(i))).collect()
    }

    pub(crate) fn from_packed<K: Kernel>(k: K, rows: &[K::Row], cols: usize) -> MatFp {
        let mut m = Self::zeros(rows.len(), cols, k.modulus());
        for (i, r) in rows.iter().enumerate() {
            k.unpack_into(r, m.row_mut(i));
        }
        m
    }
}

impl fmt::Debug for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFp {}x{} over GF({})", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(32)])?;
        }
        Ok(())
    }
}

/// Solves `a * x = b`. Returns `None` when the system is inconsistent.
pub fn solve(a: &MatFp, b: &MatFp) -> Result<Option<MatFp>> {
    if a.rows != b.rows || a.p != b.p {
        return Err(Error::DimensionMismatch(format!(
            "system {}x{} with right-hand side {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let r = a.hstack(b).rref();
    if r.pivots.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = MatFp::zeros(a.cols, b.cols, a.p);
    for (i, &c) in r.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.data[c * b.cols + j] = r.matrix.get(i, a.cols + j);
        }
    }
    Ok(Some(x))
}

/// Kernel of `(m - c I)^dim`, the generalized eigenspace for eigenvalue `c`.
/// The powers are squared until the kernel stops growing.
pub fn generalized_eigenspace(m: &MatFp, c: u32) -> Subspace {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    let n = m.rows;
    let mut a = m.sub(&MatFp::identity(n, m.p).scale(c));
    let mut kernel = a.nullspace();
    let mut e = 1;
    while e < n && !kernel.is_zero() && !kernel.is_full() {
        a = a.mul(&a);
        e *= 2;
        let next = a.nullspace();
        if next.dim() == kernel.dim() {
            break;
        }
        kernel = next;
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> MatFp {
        MatFp::from_i64_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_of_example_gf3() {
        let a = m(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_gf2_against_exhaustive_oracle() {
        let a = m(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.dim(), 1);
        // every v in GF(2)^3 with a v = 0 lies in the computed kernel
        let mut count = 0;
        for bits in 0..8u32 {
            let v: Vec<u32> = (0..3).map(|i| (bits >> i) & 1).collect();
            if a.mat_vec(&v).iter().all(|&x| x == 0) {
                count += 1;
                assert!(ns.contains_vector(&v));
            }
        }
        assert_eq!(count, 2);
        assert!(ns.contains_vector(&[1, 1, 1]));
    }

    #[test]
    fn mul_matches_naive_for_both_kernels() {
        for p in [2u32, 3, 7] {
            let a = m(p, &[&[1, 2, 3, 4], &[0, 5, 6, 1], &[1, 1, 0, 3]]);
            let b = m(p, &[&[1, 0], &[2, 1], &[3, 3], &[0, 1]]);
            let c = a.mul(&b);
            for i in 0..3 {
                for j in 0..2 {
                    let s: u64 = (0..4).map(|k| a.get(i, k) as u64 * b.get(k, j) as u64).sum();
                    assert_eq!(c.get(i, j) as u64, s % p as u64);
                }
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(5, &[&[2, 1], &[1, 2]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = m(5, &[&[1], &[0]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
        let sing = m(5, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(solve(&sing, &m(5, &[&[1], &[0]])).unwrap().is_none());
        assert!(solve(&sing, &m(5, &[&[1]])).is_err());
    }

    #[test]
    fn generalized_eigenspace_of_jordan_block() {
        // [[1,1],[0,1]] has a 2-dim generalized eigenspace for 1 but a 1-dim eigenspace
        let j = m(3, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(generalized_eigenspace(&j, 1).dim(), 2);
        assert_eq!(generalized_eigenspace(&j, 2).dim(), 1);
        assert_eq!(generalized_eigenspace(&j, 0).dim(), 0);
        assert_eq!(j.sub(&MatFp::identity(3, 3)).nullspace().dim(), 1);
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(3, &[&[1, 2], &[0, 1]]);
        let b = m(3, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.nrows(), k.ncols()), (4, 4));
        assert_eq!(k.get(0, 3), 2);
        assert_eq!(k.get(3, 2), 1);
        assert_eq!(a.kron(&b).mul(&a.kron(&b)), a.mul(&a).kron(&b.mul(&b)));
    }
}
