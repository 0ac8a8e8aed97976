use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::poly::{irreducibles, vector_minpoly, Poly};
use crate::linalg::{MatFp, Subspace};

use super::spin::spin_with;
use super::{hom, Caps, Rep};

/// A random element of the group algebra, stored as instructions so that the
/// same element can be evaluated in several modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    /// `X_{g+t} = X_a X_b` for the `t`-th pair, the first `g` elements being the generators.
    products: Vec<(usize, usize)>,
    /// `θ = Σ c X_i`.
    terms: Vec<(usize, u32)>,
}

impl Recipe {
    pub fn random(rng: &mut impl Rng, gens: usize, p: u32) -> Recipe {
        let steps = rng.gen_range(1..=3);
        let mut products = Vec::with_capacity(steps);
        for t in 0..steps {
            let avail = gens + t;
            products.push((rng.gen_range(0..avail), rng.gen_range(0..avail)));
        }
        let total = gens + steps;
        let mut terms: Vec<(usize, u32)> =
            (0..total).map(|i| (i, rng.gen_range(0..p))).filter(|&(_, c)| c != 0).collect();
        if terms.is_empty() {
            terms.push((total - 1, 1));
        }
        Recipe { products, terms }
    }

    pub fn eval(&self, gens: &[MatFp]) -> MatFp {
        let mut xs: Vec<MatFp> = gens.to_vec();
        for &(a, b) in &self.products {
            let m = xs[a].mul(&xs[b]);
            xs.push(m);
        }
        let mut theta = MatFp::zeros(xs[0].nrows(), xs[0].ncols(), xs[0].modulus());
        for &(i, c) in &self.terms {
            theta.add_scaled(c, &xs[i]);
        }
        theta
    }
}

/// Random algebra elements in the style of Holt and Rees: a growing list of
/// products of earlier elements, with each candidate a random combination of
/// a few of them. Long products make generic elements likely even when the
/// generators are involutions with degenerate minimal polynomials.
struct ElementStream {
    xs: Vec<MatFp>,
    ngens: usize,
}

impl ElementStream {
    const MAX_PRODUCTS: usize = 24;

    fn new(gens: &[MatFp]) -> Self {
        ElementStream { xs: gens.to_vec(), ngens: gens.len() }
    }

    fn next(&mut self, rng: &mut impl Rng, p: u32) -> MatFp {
        let a = rng.gen_range(0..self.xs.len());
        let b = rng.gen_range(0..self.xs.len());
        let prod = self.xs[a].mul(&self.xs[b]);
        if self.xs.len() < self.ngens + Self::MAX_PRODUCTS {
            self.xs.push(prod);
        } else {
            let slot = rng.gen_range(self.ngens..self.xs.len());
            self.xs[slot] = prod;
        }
        let last = self.xs.len() - 1;
        let mut theta = self.xs[last].clone();
        for _ in 0..3 {
            let i = rng.gen_range(0..self.xs.len());
            let c = rng.gen_range(0..p);
            if c != 0 {
                theta.add_scaled(c, &self.xs[i]);
            }
        }
        theta
    }
}

/// Distinct irreducible factors of `f` of small degree, smallest first. The
/// cofactor left after trial division is kept when it is provably irreducible.
pub(crate) fn small_factors(f: &Poly, table: &[Poly]) -> Vec<Poly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut max_tried = 0;
    for q in table {
        if rest.degree() == 0 || q.degree() > rest.degree() {
            break;
        }
        max_tried = q.degree();
        if q.divides(&rest) {
            out.push(q.clone());
            while q.divides(&rest) {
                rest = rest.div_exact(q);
            }
        }
    }
    if rest.degree() > 0 && rest.degree() <= 2 * max_tried + 1 {
        out.push(rest);
    }
    out.sort_by_key(|q| q.degree());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeataxeVerdict {
    AbsolutelyIrreducible,
    /// Irreducible over GF(p) with an endomorphism field of this degree.
    IrreducibleNotAbsolute { end_dim: usize },
    /// A proper nonzero submodule.
    Reducible(Subspace),
}

impl MeataxeVerdict {
    pub fn is_absolutely_irreducible(&self) -> bool {
        matches!(self, MeataxeVerdict::AbsolutelyIrreducible)
    }
}

/// Irreducibles of every degree up to some bound, with no degree cut short.
pub(crate) fn factor_table(p: u32) -> Vec<Poly> {
    const CAP: usize = 400;
    let mut t = irreducibles(p, 12, CAP);
    if t.len() == CAP {
        let top = t[CAP - 1].degree();
        t.retain(|q| q.degree() < top);
    }
    t
}

/// Holt–Rees MeatAxe with the absolute irreducibility check `dim End = 1`.
pub fn meataxe(v: &Rep, caps: &Caps) -> Result<MeataxeVerdict> {
    let d = v.dim();
    if d == 0 {
        return Err(Error::Precondition("the zero module".into()));
    }
    if d == 1 {
        return Ok(MeataxeVerdict::AbsolutelyIrreducible);
    }
    if d > caps.dim_cap {
        return Err(Error::ResourceCap(format!("dimension {d} exceeds the cap {}", caps.dim_cap)));
    }
    let p = v.modulus();
    let gens = v.spin_gens();
    if gens.is_empty() {
        let e = Subspace::from_vectors(p, d, &[unit(d, 0)]);
        return Ok(MeataxeVerdict::Reducible(e));
    }
    let transposed: Vec<MatFp> = gens.iter().map(|m| m.transpose()).collect();
    let table = factor_table(p);
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed ^ 0x6d65_6174_6178_65);
    let mut stream = ElementStream::new(gens);
    for _ in 0..caps.word_cap {
        let theta = stream.next(&mut rng, p);
        let x: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        let mp = vector_minpoly(&theta, &x);
        for f in small_factors(&mp, &table).into_iter().take(3) {
            let ft = f.eval_matrix(&theta);
            let kernel = ft.nullspace();
            let s = spin_with(p, d, gens, &[kernel.basis().row(0).to_vec()]);
            if !s.is_full() {
                return Ok(MeataxeVerdict::Reducible(s));
            }
            if kernel.dim() != f.degree() {
                continue;
            }
            let left = ft.transpose().nullspace();
            let sd = spin_with(p, d, &transposed, &[left.basis().row(0).to_vec()]);
            if !sd.is_full() {
                return Ok(MeataxeVerdict::Reducible(sd.annihilator()));
            }
            let e = hom::end_dim(v, caps)?;
            return Ok(if e == 1 {
                MeataxeVerdict::AbsolutelyIrreducible
            } else {
                MeataxeVerdict::IrreducibleNotAbsolute { end_dim: e }
            });
        }
    }
    Err(Error::Inconclusive(format!(
        "no decisive algebra element for {} after {} attempts",
        v.name(),
        caps.word_cap
    )))
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::perm_groups::{alternating, intransitive, PermGroup, Permutation};
    use crate::reps::{irreducible, subset_module};

    #[test]
    fn factors_of_products() {
        let table = factor_table(2);
        // (x + 1)^2 (x^2 + x + 1)
        let f = Poly::new(2, vec![1, 1, 0, 1, 1]);
        let fs = small_factors(&f, &table);
        assert_eq!(fs, vec![Poly::new(2, vec![1, 1]), Poly::new(2, vec![1, 1, 1])]);
        assert_eq!(f.div_exact(&fs[1]), Poly::new(2, vec![1, 0, 1]));
    }

    #[test]
    fn permutation_module_is_reducible() {
        let m = subset_module(5, 2, 1).unwrap();
        match meataxe(&m, &Caps::default()).unwrap() {
            MeataxeVerdict::Reducible(s) => assert!(s.dim() > 0 && s.dim() < 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irreducibles_are_absolutely_irreducible() {
        for l in [[4, 2, 1], [5, 2, 0]] {
            let part = Partition::new(l.iter().copied().filter(|&x| x > 0).collect()).unwrap();
            let d = irreducible(&part, 3).unwrap();
            assert_eq!(meataxe(&d, &Caps::default()).unwrap(), MeataxeVerdict::AbsolutelyIrreducible);
        }
    }

    #[test]
    fn known_restrictions() {
        let caps = Caps::default();
        let spin10 = irreducible(&Partition::from_parts(&[6, 4]), 2).unwrap();
        assert!(meataxe(&spin10.restrict(&alternating(10)).unwrap(), &caps).unwrap().is_absolutely_irreducible());
        let d51 = irreducible(&Partition::from_parts(&[5, 1]), 2).unwrap();
        let r = d51.restrict(&intransitive(6, 2).unwrap()).unwrap();
        assert!(matches!(meataxe(&r, &caps).unwrap(), MeataxeVerdict::Reducible(_)));
    }

    #[test]
    fn cyclic_group_of_order_three_over_gf2() {
        // the 2-dimensional irreducible of C_3 over GF(2) is not absolutely irreducible
        let g = PermGroup::new(3, vec![Permutation::parse("(1,2,3)", 3).unwrap()]).unwrap();
        let m = subset_module(3, 2, 1).unwrap().restrict(&g).unwrap();
        let ones = Subspace::from_vectors(2, 3, &[vec![1, 1, 1]]);
        let q = crate::reps::quotient(&m, &ones).unwrap();
        assert_eq!(meataxe(&q, &Caps::default()).unwrap(), MeataxeVerdict::IrreducibleNotAbsolute { end_dim: 2 });
    }
}
