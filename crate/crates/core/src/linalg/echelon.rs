//! Incremental echelon bases and Gauss-Jordan elimination on packed rows.

use super::kernel::Kernel;

/// Data carried along with a row and updated by the same row operations.
pub(crate) trait Payload<K: Kernel> {
    fn axpy(&mut self, k: K, c: u32, other: &Self);
    fn scale(&mut self, k: K, c: u32);
}

impl<K: Kernel> Payload<K> for () {
    fn axpy(&mut self, _: K, _: u32, _: &()) {}
    fn scale(&mut self, _: K, _: u32) {}
}

/// A list of packed rows, e.g. the images of a vector under unknown homomorphisms.
#[derive(Clone, Debug)]
pub(crate) struct Rows<K: Kernel>(pub Vec<K::Row>);

impl<K: Kernel> Payload<K> for Rows<K> {
    fn axpy(&mut self, k: K, c: u32, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            k.axpy(a, c, b);
        }
    }
    fn scale(&mut self, k: K, c: u32) {
        for a in &mut self.0 {
            k.scale(a, c);
        }
    }
}

/// Echelon basis built by insertion. Every stored row has a 1 at its pivot and
/// zeros at the pivots of all earlier rows, so reducing in insertion order works.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<K: Kernel, P = ()> {
    k: K,
    len: usize,
    rows: Vec<K::Row>,
    payloads: Vec<P>,
    pivots: Vec<usize>,
}

impl<K: Kernel, P: Payload<K>> Echelon<K, P> {
    pub(crate) fn new(k: K, len: usize) -> Self {
        Echelon { k, len, rows: Vec::new(), payloads: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn rows(&self) -> &[K::Row] {
        &self.rows
    }

    pub(crate) fn payloads(&self) -> &[P] {
        &self.payloads
    }

    pub(crate) fn reduce(&self, v: &mut K::Row, pay: &mut P) {
        let k = self.k;
        for ((row, rp), &piv) in self.rows.iter().zip(&self.payloads).zip(&self.pivots) {
            let c = k.get(v, piv);
            if c != 0 {
                let m = k.neg(c);
                k.axpy(v, m, row);
                pay.axpy(k, m, rp);
            }
        }
    }

    /// Inserts `v`. Returns `None` when the row was new, otherwise the reduced
    /// payload of the (dependent) row.
    pub(crate) fn insert(&mut self, mut v: K::Row, mut pay: P) -> Option<P> {
        self.reduce(&mut v, &mut pay);
        match self.k.leading(&v, self.len) {
            None => Some(pay),
            Some(piv) => {
                let c = self.k.get(&v, piv);
                if c != 1 {
                    let ci = self.k.inv(c);
                    self.k.scale(&mut v, ci);
                    pay.scale(self.k, ci);
                }
                self.rows.push(v);
                self.payloads.push(pay);
                self.pivots.push(piv);
                None
            }
        }
    }
}

impl<K: Kernel> Echelon<K, ()> {
    pub(crate) fn add(&mut self, v: K::Row) -> bool {
        self.insert(v, ()).is_none()
    }
}

/// In-place Gauss-Jordan elimination. Returns the pivot columns; the first
/// `pivots.len()` rows hold the reduced basis and the rest are zero.
pub(crate) fn rref_rows<K: Kernel>(k: K, rows: &mut [K::Row], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| k.get(&rows[i], col) != 0) else {
            continue;
        };
        rows.swap(r, found);
        let c = k.get(&rows[r], col);
        if c != 1 {
            let ci = k.inv(c);
            k.scale(&mut rows[r], ci);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("row exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let c = k.get(other, col);
            if c != 0 {
                k.axpy(other, k.neg(c), pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel::{Gf2, GfP};

    #[test]
    fn insert_reports_dependencies_with_payload() {
        let k = GfP::new(3);
        let mut e: Echelon<GfP, Rows<GfP>> = Echelon::new(k, 3);
        assert!(e.insert(vec![1, 2, 0], Rows(vec![vec![1, 0]])).is_none());
        assert!(e.insert(vec![0, 1, 1], Rows(vec![vec![0, 1]])).is_none());
        // (1,0,1) = (1,2,0) + (0,1,1) over GF(3)
        let res = e.insert(vec![1, 0, 1], Rows(vec![vec![0, 0]])).expect("dependent");
        assert_eq!(res.0[0], vec![2, 2]);
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rref_gf2_matches_hand_computation() {
        let k = Gf2;
        let mut rows: Vec<_> = [[1u32, 1, 0], [0, 1, 1], [1, 0, 1]].iter().map(|r| k.pack(r)).collect();
        let piv = rref_rows(k, &mut rows, 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(k.unpack(&rows[0], 3), vec![1, 0, 1]);
        assert_eq!(k.unpack(&rows[1], 3), vec![0, 1, 1]);
        assert!(k.is_zero(&rows[2]));
    }
}
