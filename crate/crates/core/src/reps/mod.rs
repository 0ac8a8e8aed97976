//! Matrix representations of symmetric groups and their subgroups over GF(p).
//!
//! Matrices act on column vectors and `ρ(gh) = ρ(g) ρ(h)`. A representation of
//! `S_n` stores the images of `s_1, …, s_{n-1}`; a representation of a subgroup
//! stores the images of the subgroup's generators.

mod cache;
mod factors;
mod hom;
mod induce;
mod meataxe;
mod perm_module;
mod specht;
mod spin;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::MatFp;
use crate::perm_groups::{PermGroup, Permutation};

pub use cache::{read_rep, write_rep, CACHE_FORMAT_VERSION};
pub use factors::{composition_factors, identify_irreducible, ModuleLibrary};
pub use hom::{end_dim, hom_dim, hom_space, is_isomorphic, HomSpace};
pub use induce::{induce, induce_to_next, trivial_induced};
pub(crate) use induce::induce_with_jucys_murphy;
pub use meataxe::{meataxe, MeataxeVerdict, Recipe};
pub use perm_module::{perm_module, perm_module_words, subset_module, subsets_lex};
pub use specht::{gram, irreducible, specht, SpechtBasis};
pub use spin::{quotient, spin_up, subquotient, submodule};

/// Resource limits and the seed for randomised searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub dim_cap: usize,
    pub word_cap: usize,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { dim_cap: 4096, word_cap: 200, seed: 0 }
    }
}

/// The group a representation is a representation of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acting {
    /// `S_n`, generated by `s_1, …, s_{n-1}`.
    Symmetric(usize),
    Group(Arc<PermGroup>),
}

impl Acting {
    pub fn degree(&self) -> usize {
        match self {
            Acting::Symmetric(n) => *n,
            Acting::Group(g) => g.degree(),
        }
    }

    fn generator_count(&self) -> usize {
        match self {
            Acting::Symmetric(n) => n.saturating_sub(1),
            Acting::Group(g) => g.generators().len(),
        }
    }

    /// The permutations whose images are stored.
    pub fn generators(&self) -> Vec<Permutation> {
        match self {
            Acting::Symmetric(n) => (1..*n).map(|i| Permutation::adjacent(*n, i)).collect(),
            Acting::Group(g) => g.generators().to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rep {
    p: u32,
    dim: usize,
    acting: Acting,
    gens: Vec<MatFp>,
    name: String,
    /// For a restriction: the `S_n`-module it came from, in the same basis.
    ambient: Option<Arc<Rep>>,
    spin_gens: OnceLock<Vec<MatFp>>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.acting == other.acting && self.gens == other.gens
    }
}

impl Rep {
    pub fn new(p: u32, dim: usize, acting: Acting, gens: Vec<MatFp>, name: impl Into<String>) -> Result<Rep> {
        if gens.len() != acting.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for a group with {} generators",
                gens.len(),
                acting.generator_count()
            )));
        }
        if let Some(m) = gens.iter().find(|m| m.nrows() != dim || m.ncols() != dim || m.modulus() != p) {
            return Err(Error::DimensionMismatch(format!(
                "generator image {}x{} over GF({}) in a {dim}-dimensional module over GF({p})",
                m.nrows(),
                m.ncols(),
                m.modulus()
            )));
        }
        Ok(Rep { p, dim, acting, gens, name: name.into(), ambient: None, spin_gens: OnceLock::new() })
    }

    pub(crate) fn with_ambient(mut self, ambient: Option<Arc<Rep>>) -> Rep {
        self.ambient = ambient;
        self
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.acting.degree()
    }

    pub fn acting(&self) -> &Acting {
        &self.acting
    }

    pub fn gens(&self) -> &[MatFp] {
        &self.gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Rep {
        self.name = name.into();
        self
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.acting, Acting::Symmetric(_))
    }

    fn require_symmetric(&self, what: &str) -> Result<usize> {
        match self.acting {
            Acting::Symmetric(n) => Ok(n),
            Acting::Group(_) => Err(Error::Unsupported(format!("{what} needs a representation of a full symmetric group"))),
        }
    }

    /// The image of an arbitrary permutation. Representations of subgroups
    /// support this only when they remember the module they were restricted from.
    pub fn eval(&self, g: &Permutation) -> Result<MatFp> {
        match &self.acting {
            Acting::Symmetric(n) => {
                if g.degree() != *n {
                    return Err(Error::DimensionMismatch(format!("{g} is not a permutation of {n} points")));
                }
                let word = g.adjacent_word();
                let Some((&last, rest)) = word.split_last() else {
                    return Ok(MatFp::identity(self.dim, self.p));
                };
                // the generator images are often sparse, so keep them on the left
                let mut m = self.gens[last].clone();
                for &i in rest.iter().rev() {
                    m = self.gens[i].mul(&m);
                }
                Ok(m)
            }
            Acting::Group(grp) => {
                if let Some(i) = grp.generators().iter().position(|x| x == g) {
                    return Ok(self.gens[i].clone());
                }
                match &self.ambient {
                    Some(a) if grp.contains(g) => a.eval(g),
                    Some(_) => Err(Error::Precondition(format!("{g} is not in the acting group"))),
                    None => Err(Error::Unsupported("evaluating a word in subgroup generators".into())),
                }
            }
        }
    }

    /// A small generating set used for spinning and random algebra elements:
    /// `s_1` and `s_1 s_2 ⋯ s_{n-1}` for `S_n`, the stored generators otherwise.
    pub fn spin_gens(&self) -> &[MatFp] {
        self.spin_gens.get_or_init(|| match self.acting {
            Acting::Symmetric(n) if n > 2 => {
                let mut c = self.gens[n - 2].clone();
                for i in (0..n - 2).rev() {
                    c = self.gens[i].mul(&c);
                }
                vec![self.gens[0].clone(), c]
            }
            _ => self.gens.clone(),
        })
    }

    /// `V ⊗ sgn`.
    pub fn sign_twist(&self) -> Rep {
        let gens = self
            .acting
            .generators()
            .iter()
            .zip(&self.gens)
            .map(|(g, m)| if g.is_even() { m.clone() } else { m.neg() })
            .collect();
        let ambient = self.ambient.as_ref().map(|a| Arc::new(a.sign_twist()));
        Rep::new(self.p, self.dim, self.acting.clone(), gens, format!("{} (x) sgn", self.name))
            .expect("same shapes")
            .with_ambient(ambient)
    }

    /// The contragredient module, `g ↦ ρ(g^{-1})^T`.
    pub fn dual(&self) -> Rep {
        let gens = self
            .acting
            .generators()
            .iter()
            .zip(&self.gens)
            .map(|(g, m)| {
                if g.compose(g).is_identity() {
                    m.transpose()
                } else {
                    m.inverse().expect("generator images are invertible").transpose()
                }
            })
            .collect();
        let ambient = self.ambient.as_ref().map(|a| Arc::new(a.dual()));
        Rep::new(self.p, self.dim, self.acting.clone(), gens, format!("{}*", self.name))
            .expect("same shapes")
            .with_ambient(ambient)
    }

    fn check_same_group(&self, other: &Rep) -> Result<()> {
        if self.acting != other.acting || self.p != other.p {
            return Err(Error::Precondition(format!(
                "{} and {} are modules for different groups or fields",
                self.name, other.name
            )));
        }
        Ok(())
    }

    /// Inner tensor product `V ⊗ W`, with basis `v_i ⊗ w_j` in lexicographic order.
    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.check_same_group(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        let ambient = match (&self.ambient, &other.ambient) {
            (Some(a), Some(b)) => Some(Arc::new(a.tensor(b)?)),
            _ => None,
        };
        Ok(Rep::new(self.p, self.dim * other.dim, self.acting.clone(), gens, format!("{} (x) {}", self.name, other.name))?
            .with_ambient(ambient))
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.check_same_group(other)?;
        let d = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = MatFp::zeros(d, d, self.p);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep::new(self.p, d, self.acting.clone(), gens, format!("{} + {}", self.name, other.name))
    }

    /// Outer tensor product of an `S_a`- and an `S_b`-module: a module for the
    /// Young subgroup `S_a × S_b ≤ S_{a+b}`.
    pub fn outer_tensor(&self, other: &Rep) -> Result<Rep> {
        let a = self.require_symmetric("outer tensor")?;
        let b = other.require_symmetric("outer tensor")?;
        if self.p != other.p {
            return Err(Error::Precondition("modules over different fields".into()));
        }
        let grp = crate::perm_groups::young(&[a, b])?;
        let iw = MatFp::identity(other.dim, self.p);
        let iv = MatFp::identity(self.dim, self.p);
        let mut gens: Vec<MatFp> = self.gens.iter().map(|m| m.kron(&iw)).collect();
        gens.extend(other.gens.iter().map(|m| iv.kron(m)));
        Rep::new(
            self.p,
            self.dim * other.dim,
            Acting::Group(Arc::new(grp)),
            gens,
            format!("{} [x] {}", self.name, other.name),
        )
    }

    /// Restriction to a subgroup `G` of the acting group.
    pub fn restrict(&self, g: &PermGroup) -> Result<Rep> {
        if g.degree() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "group of degree {} acting on a module for degree {}",
                g.degree(),
                self.degree()
            )));
        }
        let ambient: Arc<Rep> = match &self.acting {
            Acting::Symmetric(_) => Arc::new(self.clone()),
            Acting::Group(h) => {
                if !g.is_subgroup_of(h) {
                    return Err(Error::Precondition("restriction to a group that is not a subgroup".into()));
                }
                self.ambient.clone().ok_or_else(|| {
                    Error::Unsupported("restricting a subgroup module that does not remember its ambient module".into())
                })?
            }
        };
        let source = ambient.as_ref();
        let gens = g.generators().iter().map(|x| source.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(Rep::new(self.p, self.dim, Acting::Group(Arc::new(g.clone())), gens, format!("{} restricted", self.name))?
            .with_ambient(Some(ambient)))
    }

    /// Restriction of an `S_n`-module to `S_m` on the first `m` points.
    pub fn restrict_to_symmetric(&self, m: usize) -> Result<Rep> {
        let n = self.require_symmetric("restriction to a smaller symmetric group")?;
        if m == 0 || m > n {
            return Err(Error::Precondition(format!("cannot restrict from S_{n} to S_{m}")));
        }
        Rep::new(self.p, self.dim, Acting::Symmetric(m), self.gens[..m - 1].to_vec(), format!("{} restricted to S_{m}", self.name))
    }

    /// Basis `e_i ∧ e_j`, `i < j`, in lexicographic order.
    pub fn exterior_square(&self) -> Rep {
        let d = self.dim;
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let p = self.p as u64;
        let gens = self
            .gens
            .iter()
            .map(|a| {
                let mut m = MatFp::zeros(pairs.len(), pairs.len(), self.p);
                for (col, &(i, j)) in pairs.iter().enumerate() {
                    for (row, &(k, l)) in pairs.iter().enumerate() {
                        let x = a.get(k, i) as u64 * a.get(l, j) as u64 % p;
                        let y = a.get(l, i) as u64 * a.get(k, j) as u64 % p;
                        m.set(row, col, ((x + p - y) % p) as u32);
                    }
                }
                m
            })
            .collect();
        Rep::new(self.p, pairs.len(), self.acting.clone(), gens, format!("Lambda^2 {}", self.name)).expect("same shapes")
    }

    /// The invariants `V^G`.
    pub fn fixed_points(&self) -> crate::linalg::Subspace {
        let id = MatFp::identity(self.dim, self.p);
        let mut stacked = MatFp::zeros(0, self.dim, self.p);
        for m in &self.gens {
            stacked = stacked.vstack(&m.sub(&id));
        }
        stacked.nullspace()
    }

    /// Checks `s_i^2 = 1`, `(s_i s_{i+1})^3 = 1` and `(s_i s_j)^2 = 1` for `|i - j| > 1`,
    /// on all pairs or on neighbouring pairs only.
    pub fn satisfies_coxeter_relations(&self, all_pairs: bool) -> Result<bool> {
        let n = self.require_symmetric("Coxeter relations")?;
        let g = &self.gens;
        for i in 0..n.saturating_sub(1) {
            if !g[i].mul(&g[i]).is_identity() {
                return Ok(false);
            }
            if i + 1 < n - 1 && !g[i].mul(&g[i + 1]).pow(3).is_identity() {
                return Ok(false);
            }
            let far: Vec<usize> = if all_pairs { (i + 2..n - 1).collect() } else { (i + 2..n - 1).take(1).collect() };
            for j in far {
                if !g[i].mul(&g[j]).pow(2).is_identity() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::perm_groups::{symmetric, wreath};

    #[test]
    fn eval_is_a_homomorphism() {
        let v = irreducible(&Partition::from_parts(&[3, 2]), 3).unwrap();
        let a = Permutation::parse("(1,4,2)(3,5)", 5).unwrap();
        let b = Permutation::parse("(1,5)(2,3)", 5).unwrap();
        let lhs = v.eval(&a.compose(&b)).unwrap();
        let rhs = v.eval(&a).unwrap().mul(&v.eval(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert!(v.satisfies_coxeter_relations(true).unwrap());
    }

    #[test]
    fn restriction_functorial() {
        let v = perm_module(6, 2, &[4, 2]).unwrap();
        let w = wreath(3, 2).unwrap();
        let h = PermGroup::new(6, vec![Permutation::parse("(1,4)(2,5)(3,6)", 6).unwrap()]).unwrap();
        let direct = v.restrict(&h).unwrap();
        let twice = v.restrict(&w).unwrap().restrict(&h).unwrap();
        assert_eq!(direct.gens(), twice.gens());
        assert_eq!(v.restrict(&symmetric(6)).unwrap().gens()[0], v.gens()[0]);
    }

    #[test]
    fn fixed_points_of_permutation_modules_count_orbits() {
        let w = wreath(3, 2).unwrap();
        for k in 0..=3 {
            let m = subset_module(6, 2, k).unwrap().restrict(&w).unwrap();
            assert_eq!(m.fixed_points().dim(), w.orbit_count_k_subsets(k));
        }
    }

    #[test]
    fn exterior_square_dimension_and_relations() {
        let v = irreducible(&Partition::from_parts(&[5, 1]), 3).unwrap();
        let e = v.exterior_square();
        assert_eq!(e.dim(), 6);
        assert!(e.satisfies_coxeter_relations(true).unwrap());
    }
}
