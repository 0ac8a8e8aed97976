use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::MatFp;
use crate::perm_groups::{symmetric, PermGroup, Permutation};

use super::{Acting, Caps, Rep};

/// Coset data for `Ind_H^{S_n} W`.
struct Induction<'a> {
    w: &'a Rep,
    sub: PermGroup,
    /// `Some(m)` when `W` is a module for `S_m` on the first `m` points.
    first_points: Option<usize>,
    reps: Vec<Permutation>,
    inverses: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    images: HashMap<Permutation, MatFp>,
}

impl<'a> Induction<'a> {
    fn new(w: &'a Rep, n: usize, caps: &Caps) -> Result<Self> {
        let (sub, first_points) = match w.acting() {
            Acting::Symmetric(m) => {
                if *m > n {
                    return Err(Error::Precondition(format!("cannot induce from S_{m} to S_{n}")));
                }
                let gens = (1..*m).map(|i| Permutation::adjacent(n, i)).collect();
                (PermGroup::new(n, gens)?, Some(*m))
            }
            Acting::Group(g) => {
                if g.degree() != n {
                    return Err(Error::DimensionMismatch(format!("subgroup of degree {} inside S_{n}", g.degree())));
                }
                (g.as_ref().clone(), None)
            }
        };
        let reps = symmetric(n).coset_reps(&sub, caps.dim_cap)?;
        let dim = reps.len() * w.dim();
        if dim > caps.dim_cap {
            return Err(Error::ResourceCap(format!("induced dimension {dim} exceeds the cap {}", caps.dim_cap)));
        }
        let index = reps.iter().enumerate().map(|(k, x)| (sub.coset_canonical(x), k)).collect();
        let inverses = reps.iter().map(|x| x.inverse()).collect();
        Ok(Induction { w, sub, first_points, reps, inverses, index, images: HashMap::new() })
    }

    fn dim(&self) -> usize {
        self.reps.len() * self.w.dim()
    }

    /// Writes `y = x_k h` and adds `c ρ_W(h)` into block `(k, j)` of `a`.
    fn add_term(&mut self, a: &mut MatFp, j: usize, y: &Permutation) -> Result<()> {
        let k = self.index[&self.sub.coset_canonical(y)];
        let h = self.inverses[k].compose(y);
        if !self.images.contains_key(&h) {
            let hw = match self.first_points {
                Some(m) => Permutation::from_images(h.images()[..m].to_vec())?,
                None => h.clone(),
            };
            let img = self.w.eval(&hw)?;
            self.images.insert(h.clone(), img);
        }
        let block = &self.images[&h];
        let dw = self.w.dim();
        let p = self.w.modulus() as u64;
        for r in 0..dw {
            for c in 0..dw {
                let x = block.get(r, c);
                if x != 0 {
                    let cur = a.get(k * dw + r, j * dw + c) as u64;
                    a.set(k * dw + r, j * dw + c, ((cur + x as u64) % p) as u32);
                }
            }
        }
        Ok(())
    }

    /// The matrix of left multiplication by `g`.
    fn left(&mut self, g: &Permutation) -> Result<MatFp> {
        let mut a = MatFp::zeros(self.dim(), self.dim(), self.w.modulus());
        for j in 0..self.reps.len() {
            let y = g.compose(&self.reps[j]);
            self.add_term(&mut a, j, &y)?;
        }
        Ok(a)
    }

    /// The matrix of `x ⊗ w ↦ Σ_t x t ⊗ w`, well defined when `Σ_t t`
    /// centralises the subgroup.
    fn right_sum(&mut self, ts: &[Permutation]) -> Result<MatFp> {
        let mut a = MatFp::zeros(self.dim(), self.dim(), self.w.modulus());
        for j in 0..self.reps.len() {
            for t in ts {
                let y = self.reps[j].compose(t);
                self.add_term(&mut a, j, &y)?;
            }
        }
        Ok(a)
    }
}

/// `Ind_H^{S_n} W`. `W` is a module for a subgroup of `S_n`, or for `S_m`
/// acting on the first `m` points. The basis is `x_k ⊗ w_i` with the coset
/// representatives `x_k` in the order of [`PermGroup::coset_reps`], blocks outermost.
pub fn induce(w: &Rep, n: usize, caps: &Caps) -> Result<Rep> {
    let mut ind = Induction::new(w, n, caps)?;
    let gens = (1..n).map(|i| ind.left(&Permutation::adjacent(n, i))).collect::<Result<Vec<_>>>()?;
    Rep::new(w.modulus(), ind.dim(), Acting::Symmetric(n), gens, format!("Ind {}", w.name()))
}

/// `Ind_{S_n}^{S_{n+1}} V` together with the endomorphism given by right
/// multiplication with the Jucys–Murphy element `L_{n+1}`.
pub(crate) fn induce_with_jucys_murphy(v: &Rep, caps: &Caps) -> Result<(Rep, MatFp)> {
    let Acting::Symmetric(n) = *v.acting() else {
        return Err(Error::Unsupported("induction to the next symmetric group from a subgroup module".into()));
    };
    let mut ind = Induction::new(v, n + 1, caps)?;
    let gens = (1..=n).map(|i| ind.left(&Permutation::adjacent(n + 1, i))).collect::<Result<Vec<_>>>()?;
    let ts: Vec<Permutation> = (1..=n).map(|j| Permutation::transposition(n + 1, j, n + 1)).collect();
    let jm = ind.right_sum(&ts)?;
    let rep = Rep::new(v.modulus(), ind.dim(), Acting::Symmetric(n + 1), gens, format!("Ind {}", v.name()))?;
    Ok((rep, jm))
}

/// `Ind_{S_n}^{S_{n+1}} V`.
pub fn induce_to_next(v: &Rep, caps: &Caps) -> Result<Rep> {
    match v.acting() {
        Acting::Symmetric(n) => induce(v, n + 1, caps),
        Acting::Group(_) => Err(Error::Unsupported("induction to the next symmetric group from a subgroup module".into())),
    }
}

/// The permutation module of `S_n` on the cosets of `H`.
pub fn trivial_induced(h: &PermGroup, p: u32, caps: &Caps) -> Result<Rep> {
    let n = h.degree();
    let gens = vec![MatFp::identity(1, p); n.saturating_sub(1)];
    let triv = Rep::new(p, 1, Acting::Symmetric(n), gens, "trivial")?;
    let restricted = triv.restrict(h)?;
    Ok(induce(&restricted, n, caps)?.renamed("Ind trivial"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::perm_groups::young;
    use crate::reps::{end_dim, hom_dim, irreducible, subset_module};

    #[test]
    fn induced_from_young_subgroup_is_permutation_module() {
        let caps = Caps::default();
        let h = young(&[3, 2]).unwrap();
        let ind = trivial_induced(&h, 3, &caps).unwrap();
        assert_eq!(ind.dim(), 10);
        assert!(ind.satisfies_coxeter_relations(true).unwrap());
        let m2 = subset_module(5, 3, 2).unwrap();
        assert_eq!(hom_dim(&ind, &m2, &caps).unwrap(), 3);
        assert_eq!(end_dim(&ind, &caps).unwrap(), 3);
    }

    #[test]
    fn induction_to_next_symmetric_group() {
        let caps = Caps::default();
        let d = irreducible(&Partition::from_parts(&[3, 1]), 3).unwrap();
        let ind = induce_to_next(&d, &caps).unwrap();
        assert_eq!(ind.dim(), 15);
        assert!(ind.satisfies_coxeter_relations(true).unwrap());
        // Frobenius reciprocity against the restriction
        let w = irreducible(&Partition::from_parts(&[4, 1]), 3).unwrap();
        let lhs = hom_dim(&ind, &w, &caps).unwrap();
        let rhs = hom_dim(&d, &w.restrict_to_symmetric(4).unwrap(), &caps).unwrap();
        assert_eq!(lhs, rhs);
    }
}
