use crate::error::{Error, Result};
use crate::linalg::echelon::{Echelon, Rows};
use crate::linalg::kernel::{with_kernel, Kernel};
use crate::linalg::{MatFp, Subspace};

use super::Rep;

/// Closure of `seeds` under the matrices whose transposes are packed in `gens_t`.
/// Row vectors times `A^T` realise the column action of `A`.
pub(crate) fn spin_rows<K: Kernel>(k: K, gens_t: &[Vec<K::Row>], dim: usize, seeds: &[K::Row]) -> Echelon<K> {
    let mut e: Echelon<K> = Echelon::new(k, dim);
    let mut done = 0;
    for s in seeds {
        e.add(s.clone());
        while done < e.rank() {
            if e.rank() == dim {
                return e;
            }
            let b = e.rows()[done].clone();
            for g in gens_t {
                e.add(k.vec_mat(&b, g, dim));
            }
            done += 1;
        }
    }
    e
}

pub(crate) fn packed_transposes<K: Kernel>(k: K, mats: &[MatFp]) -> Vec<Vec<K::Row>> {
    mats.iter().map(|m| m.transpose().pack(k)).collect()
}

/// The submodule generated by `vectors`.
pub fn spin_up(v: &Rep, vectors: &[Vec<u32>]) -> Subspace {
    spin_with(v.modulus(), v.dim(), v.spin_gens(), vectors)
}

/// Spin under arbitrary matrices acting on columns.
pub(crate) fn spin_with(p: u32, dim: usize, mats: &[MatFp], vectors: &[Vec<u32>]) -> Subspace {
    with_kernel!(p, k => {
        let gt = packed_transposes(k, mats);
        let seeds: Vec<_> = vectors.iter().map(|v| k.pack(v)).collect();
        let e = spin_rows(k, &gt, dim, &seeds);
        let rows: Vec<Vec<u32>> = e.rows().iter().map(|r| k.unpack(r, dim)).collect();
        Subspace::from_vectors(p, dim, &rows)
    })
}

fn check_invariant(v: &Rep, u: &Subspace) -> Result<()> {
    if u.ambient() != v.dim() || u.modulus() != v.modulus() {
        return Err(Error::DimensionMismatch("subspace of a different space".into()));
    }
    for m in v.gens() {
        let img = u.basis().mul(&m.transpose());
        if !(0..img.nrows()).all(|i| u.contains_vector(img.row(i))) {
            return Err(Error::Precondition(format!("subspace is not a submodule of {}", v.name())));
        }
    }
    Ok(())
}

/// The action on an invariant subspace, in its echelon basis.
pub fn submodule(v: &Rep, u: &Subspace) -> Result<Rep> {
    check_invariant(v, u)?;
    let gens = v
        .gens()
        .iter()
        .map(|m| u.basis().mul(&m.transpose()).select_cols(u.pivots()).transpose())
        .collect();
    Rep::new(v.modulus(), u.dim(), v.acting().clone(), gens, format!("sub of {}", v.name()))
}

/// The action on `V / U`, in the basis of non-pivot unit vectors.
pub fn quotient(v: &Rep, u: &Subspace) -> Result<Rep> {
    check_invariant(v, u)?;
    let free: Vec<usize> = (0..v.dim()).filter(|c| !u.pivots().contains(c)).collect();
    let gens = v
        .gens()
        .iter()
        .map(|m| {
            let cols = m.transpose().select_rows(&free);
            let reduced: Vec<Vec<u32>> = (0..cols.nrows()).map(|i| u.reduce(cols.row(i))).collect();
            MatFp::from_rows(v.modulus(), &reduced, v.dim()).select_cols(&free).transpose()
        })
        .collect();
    Rep::new(v.modulus(), free.len(), v.acting().clone(), gens, format!("quotient of {}", v.name()))
}

/// The action on `(U + span(chosen)) / U` in the basis given by `chosen`.
/// Fails unless `U` is a submodule and `U + span(chosen)` is invariant with
/// `chosen` independent modulo `U`.
pub fn subquotient(v: &Rep, lower: &Subspace, chosen: &[Vec<u32>]) -> Result<Rep> {
    check_invariant(v, lower)?;
    let p = v.modulus();
    let d = v.dim();
    let m = chosen.len();
    let gens = with_kernel!(p, k => {
        let mut e: Echelon<_, Rows<_>> = Echelon::new(k, d);
        for i in 0..lower.dim() {
            e.insert(k.pack(lower.basis().row(i)), Rows(vec![k.zero_row(m)]));
        }
        for (j, c) in chosen.iter().enumerate() {
            let mut tag = k.zero_row(m);
            k.set(&mut tag, j, 1);
            if e.insert(k.pack(c), Rows(vec![tag])).is_some() {
                return Err(Error::Precondition("chosen vectors are dependent modulo the lower submodule".into()));
            }
        }
        let mut gens = Vec::with_capacity(v.gens().len());
        for a in v.gens() {
            let mut g = MatFp::zeros(m, m, p);
            for (j, c) in chosen.iter().enumerate() {
                let img = k.pack(&a.mat_vec(c));
                let mut pay = Rows(vec![k.zero_row(m)]);
                let mut w = img;
                e.reduce(&mut w, &mut pay);
                if !k.is_zero(&w) {
                    return Err(Error::Precondition("the span of the chosen vectors is not invariant".into()));
                }
                // reduction subtracts the coordinates, so negate them back
                for (i, x) in k.unpack(&pay.0[0], m).into_iter().enumerate() {
                    g.set(i, j, k.neg(x));
                }
            }
            gens.push(g);
        }
        gens
    });
    Rep::new(p, m, v.acting().clone(), gens, format!("subquotient of {}", v.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::subset_module;

    #[test]
    fn spin_in_permutation_module() {
        let m = subset_module(5, 2, 1).unwrap();
        assert_eq!(spin_up(&m, &[vec![1; 5]]).dim(), 1);
        assert_eq!(spin_up(&m, &[vec![0; 5]]).dim(), 0);
        assert_eq!(spin_up(&m, &[vec![1, 1, 0, 0, 0]]).dim(), 4);
        assert_eq!(spin_up(&m, &[vec![1, 0, 0, 0, 0]]).dim(), 5);
    }

    #[test]
    fn sub_and_quotient_of_natural_module() {
        let m = subset_module(5, 3, 1).unwrap();
        let sum_zero = spin_up(&m, &[vec![1, 2, 0, 0, 0]]);
        assert_eq!(sum_zero.dim(), 4);
        let s = submodule(&m, &sum_zero).unwrap();
        let q = quotient(&m, &sum_zero).unwrap();
        assert_eq!((s.dim(), q.dim()), (4, 1));
        assert!(s.satisfies_coxeter_relations(true).unwrap());
        assert!(q.gens().iter().all(|g| g.is_identity()));
        let not_sub = Subspace::from_vectors(3, 5, &[vec![1, 0, 0, 0, 0]]);
        assert!(submodule(&m, &not_sub).is_err());
    }

    #[test]
    fn subquotient_with_chosen_basis() {
        // M_1 / <all ones> over GF(3) with basis e_1 - e_2, e_2 - e_3, e_3 - e_4
        let m = subset_module(4, 3, 1).unwrap();
        let ones = Subspace::from_vectors(3, 4, &[vec![1; 4]]);
        let chosen = vec![vec![1, 2, 0, 0], vec![0, 1, 2, 0], vec![0, 0, 1, 2]];
        let q = subquotient(&m, &ones, &chosen).unwrap();
        assert!(q.satisfies_coxeter_relations(true).unwrap());
        // s_1 (e_1 - e_2) = -(e_1 - e_2) and s_1 (e_2 - e_3) = (e_1 - e_2) + (e_2 - e_3)
        assert_eq!(q.gens()[0].column(0), vec![2, 0, 0]);
        assert_eq!(q.gens()[0].column(1), vec![1, 1, 0]);
    }
}
