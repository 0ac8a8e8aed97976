use crate::error::{Error, Result};

use super::matrix::MatFp;

/// A subspace of GF(p)^n, stored as the nonzero rows of a reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: MatFp,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace { ambient, basis: MatFp::zeros(0, ambient, p), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace { ambient, basis: MatFp::identity(ambient, p), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &MatFp) -> Self {
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        Subspace { ambient: m.ncols(), basis: r.matrix.select_rows(&keep), pivots: r.pivots }
    }

    pub fn from_vectors(p: u32, ambient: usize, vs: &[Vec<u32>]) -> Self {
        Self::row_space(&MatFp::from_rows(p, vs, ambient))
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> u32 {
        self.basis.modulus()
    }

    /// Reduced echelon basis, one vector per row.
    pub fn basis(&self) -> &MatFp {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduces `v` modulo the subspace; the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.modulus() as u64;
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let a = w[c] as u64;
            if a != 0 {
                for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                    *x = ((*x as u64 + (p - a) * b as u64) % p) as u32;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains_vector(v).then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.modulus() != other.modulus() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of GF({})^{} and GF({})^{}",
                self.modulus(),
                self.ambient,
                other.modulus(),
                other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Self::full(self.modulus(), self.ambient);
        }
        self.basis.nullspace()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_and_intersection_small() {
        let u = Subspace::from_vectors(3, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(3, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.sum(&w).unwrap().dim(), 3);
        let i = u.intersection(&w).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vector(&[0, 2, 0]));
        assert!(u.sum(&Subspace::zero(3, 4)).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let u = Subspace::from_vectors(5, 3, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let w: Vec<u32> = (0..3).map(|j| (2 * u.basis().get(0, j) + 3 * u.basis().get(1, j)) % 5).collect();
        assert_eq!(u.coordinates(&w).unwrap(), vec![2, 3]);
        assert!(u.coordinates(&[0, 0, 1]).is_none());
    }
}
