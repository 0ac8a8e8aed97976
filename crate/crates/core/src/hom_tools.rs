//! Incidence maps between subset modules, the elements `x_k` and the maps `ζ_k`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{MatFp, Subspace};
use crate::partitions::Partition;
use crate::perm_groups::{Permutation, PermGroup};
use crate::reps::{spin_up, subset_module, subsets_lex, Caps, ModuleLibrary, Rep};

/// `η_{k,l}: M_k → M_l`, sending a `k`-subset to the sum of the incident `l`-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMap {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub p: u32,
    /// `C(n,l) × C(n,k)`, rows and columns in the order of [`subsets_lex`].
    pub matrix: MatFp,
}

impl IncidenceMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn incident(a: &[usize], b: &[usize]) -> bool {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().all(|x| big.binary_search(x).is_ok())
}

pub fn eta(k: usize, l: usize, n: usize, p: u32) -> Result<IncidenceMap> {
    crate::linalg::check_modulus(p as u64)?;
    if k > n || l > n {
        return Err(Error::Precondition(format!("η_{{{k},{l}}} on {n} points")));
    }
    let xs = subsets_lex(n, k);
    let ys = subsets_lex(n, l);
    let mut m = MatFp::zeros(ys.len(), xs.len(), p);
    for (r, y) in ys.iter().enumerate() {
        for (c, x) in xs.iter().enumerate() {
            if incident(x, y) {
                m.set(r, c, 1);
            }
        }
    }
    Ok(IncidenceMap { k, l, n, p, matrix: m })
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `Σ_r (C(n,r) - C(n,r-1))` over `0 ≤ r ≤ k` with `p ∤ C(l-r, k-r)`; the
/// arguments are swapped when `k > l`.
pub fn wilson_rank(k: usize, l: usize, n: usize, p: u32) -> Result<u128> {
    let (k, l) = if k <= l { (k, l) } else { (l, k) };
    if 2 * l > n {
        return Err(Error::Precondition(format!("rank formula needs k, l <= n/2, got {k}, {l} for n = {n}")));
    }
    let mut total = 0u128;
    for r in 0..=k {
        if binomial(l - r, k - r) % p as u128 != 0 {
            total += binomial(n, r) - if r == 0 { 0 } else { binomial(n, r - 1) };
        }
    }
    Ok(total)
}

/// A formal combination `Σ c_g g` in `GF(p) S_n` with distinct `g` and nonzero `c_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    p: u32,
    terms: BTreeMap<Vec<usize>, u32>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize, p: u32) -> Self {
        GroupAlgebraElement { n, p, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, g: &Permutation, c: i64) {
        assert_eq!(g.degree(), self.n, "permutation of the wrong degree");
        let p = self.p as i64;
        let e = self.terms.entry(g.images()).or_insert(0);
        let v = (*e as i64 + c.rem_euclid(p)) % p;
        if v == 0 {
            self.terms.remove(&g.images());
        } else {
            *e = v as u32;
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<(Permutation, u32)> {
        self.terms
            .iter()
            .map(|(img, &c)| (Permutation::from_images(img.clone()).expect("stored images form a permutation"), c))
            .collect()
    }

    pub fn coefficient(&self, g: &Permutation) -> u32 {
        self.terms.get(&g.images()).copied().unwrap_or(0)
    }

    /// The same element viewed in `S_m` for `m ≥ n`.
    pub fn extend(&self, m: usize) -> Self {
        let mut out = GroupAlgebraElement::zero(m, self.p);
        for (g, c) in self.terms() {
            out.add_term(&g.extend(m), c as i64);
        }
        out
    }

    /// `Σ c_g ρ(g)`.
    pub fn act(&self, v: &Rep) -> Result<MatFp> {
        if v.modulus() != self.p {
            return Err(Error::DimensionMismatch(format!("element over GF({}) on a module over GF({})", self.p, v.modulus())));
        }
        if v.degree() < self.n {
            return Err(Error::DimensionMismatch(format!("element of S_{} on a module of S_{}", self.n, v.degree())));
        }
        let mut m = MatFp::zeros(v.dim(), v.dim(), self.p);
        for (g, c) in self.terms() {
            m.add_scaled(c, &v.eval(&g.extend(v.degree()))?);
        }
        Ok(m)
    }
}

/// `[abc] = (a,b,c) + (a,c,b)`.
fn three_cycle_sum(out: &mut GroupAlgebraElement, a: usize, b: usize, c: usize, sign: i64) {
    let n = out.degree();
    for cyc in [[a, b, c], [a, c, b]] {
        out.add_term(&Permutation::from_cycles(n, &[&cyc]).expect("distinct points"), sign);
    }
}

/// `x_k` as written out in closed form, for `k ∈ {2, 3}`, inside `S_n`.
pub fn x_element(k: usize, n: usize, p: u32) -> Result<GroupAlgebraElement> {
    crate::linalg::check_modulus(p as u64)?;
    if n < 2 * k {
        return Err(Error::Precondition(format!("x_{k} needs at least {} points, got {n}", 2 * k)));
    }
    let mut x = GroupAlgebraElement::zero(n, p);
    match k {
        2 => {
            for (i, j, s) in [(1, 2, 1), (1, 4, -1), (2, 3, -1), (3, 4, 1)] {
                x.add_term(&Permutation::transposition(n, i, j), s);
            }
        }
        3 => {
            let brackets = [
                ([1, 2, 3], 1),
                ([2, 3, 4], -1),
                ([1, 3, 5], -1),
                ([1, 2, 6], -1),
                ([3, 4, 5], 1),
                ([2, 4, 6], 1),
                ([1, 5, 6], 1),
                ([4, 5, 6], -1),
            ];
            for ([a, b, c], s) in brackets {
                three_cycle_sum(&mut x, a, b, c, s);
            }
        }
        _ => return Err(Error::Unsupported(format!("closed form of x_{k}"))),
    }
    Ok(x)
}

/// `x_k = Σ_{g ∈ S_k, σ ∈ C_t} sgn(σ) σ g σ^{-1}`, expanded term by term. The
/// columns of `t` are `{i, k+i}` for `i ≤ k`.
pub fn x_element_expanded(k: usize, n: usize, p: u32) -> Result<GroupAlgebraElement> {
    crate::linalg::check_modulus(p as u64)?;
    if n < 2 * k {
        return Err(Error::Precondition(format!("x_{k} needs at least {} points, got {n}", 2 * k)));
    }
    let sk = PermGroup::new(n, (1..k).map(|i| Permutation::adjacent(n, i)).collect())?;
    let mut x = GroupAlgebraElement::zero(n, p);
    for mask in 0u32..(1 << k) {
        let mut sigma = Permutation::identity(n);
        for i in 0..k {
            if mask >> i & 1 == 1 {
                sigma = sigma.compose(&Permutation::transposition(n, i + 1, k + i + 1));
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let inv = sigma.inverse();
        for g in sk.elements() {
            x.add_term(&sigma.compose(&g).compose(&inv), sign);
        }
    }
    Ok(x)
}

pub fn x_nonzero(lambda: &Partition, k: usize, p: u32, lib: &ModuleLibrary) -> Result<bool> {
    lambda.require_p_regular(p)?;
    let d = lib.irreducible(lambda, p)?;
    Ok(!x_element(k, lambda.size(), p)?.act(&d)?.is_zero())
}

/// The polytabloid `e_t ∈ M_k` of the tableau defining `x_k`.
pub fn two_row_polytabloid(n: usize, k: usize, p: u32) -> Result<Vec<u32>> {
    if 2 * k > n {
        return Err(Error::Precondition(format!("e_t in M_{k} needs k <= n/2")));
    }
    let subsets = subsets_lex(n, k);
    let mut v = vec![0u32; subsets.len()];
    for mask in 0u32..(1 << k) {
        let mut s: Vec<usize> = (1..=k).map(|i| if mask >> (i - 1) & 1 == 1 { k + i } else { i }).collect();
        s.sort_unstable();
        let idx = subsets.iter().position(|x| *x == s).expect("a k-subset");
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { p - 1 };
        v[idx] = (v[idx] + sign) % p;
    }
    Ok(v)
}

/// `ζ_k ∈ Hom(M_k, End(D^λ))`, `ζ_k(J) = Σ_{g ∈ S_J} ρ(g)`.
#[derive(Clone, Debug)]
pub struct Zeta {
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
    pub images: Vec<MatFp>,
    module: std::sync::Arc<Rep>,
}

impl Zeta {
    /// `ζ_k(Σ v_J J)`.
    pub fn apply(&self, v: &[u32]) -> MatFp {
        let d = self.module.dim();
        let mut m = MatFp::zeros(d, d, self.module.modulus());
        for (c, img) in v.iter().zip(&self.images) {
            if *c != 0 {
                m.add_scaled(*c, img);
            }
        }
        m
    }

    /// `ρ(s) ζ(J) ρ(s)^{-1} = ζ(sJ)` for the generators `s`.
    pub fn is_intertwiner(&self) -> bool {
        let n = self.module.degree();
        let index: std::collections::HashMap<&[usize], usize> =
            self.subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        self.module.gens().iter().enumerate().all(|(i, s)| {
            let swap = Permutation::adjacent(n, i + 1);
            self.subsets.iter().enumerate().all(|(j, set)| {
                let mut moved: Vec<usize> = set.iter().map(|&x| swap.apply(x - 1) + 1).collect();
                moved.sort_unstable();
                let t = index[moved.as_slice()];
                // s is an involution
                s.mul(&self.images[j]).mul(s) == self.images[t]
            })
        })
    }

    /// Whether `ζ_k` vanishes on the Specht submodule `S_k = ⟨e_t⟩ ⊆ M_k`.
    pub fn vanishes_on_specht(&self) -> Result<bool> {
        let n = self.module.degree();
        let p = self.module.modulus();
        let mk = subset_module(n, p, self.k)?;
        let sk: Subspace = spin_up(&mk, &[two_row_polytabloid(n, self.k, p)?]);
        Ok((0..sk.dim()).all(|i| self.apply(sk.basis().row(i)).is_zero()))
    }
}

pub fn zeta(k: usize, lambda: &Partition, p: u32, lib: &ModuleLibrary, caps: &Caps) -> Result<Zeta> {
    lambda.require_p_regular(p)?;
    let n = lambda.size();
    if k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!("ζ_{k} needs 1 <= k <= n/2 for n = {n}")));
    }
    let module = lib.irreducible(lambda, p)?;
    let subsets = subsets_lex(n, k);
    let size = module.dim() as u128 * subsets.len() as u128;
    if size > caps.dim_cap as u128 {
        return Err(Error::ResourceCap(format!("ζ_{k} on D^{lambda} has size {size}, above the cap {}", caps.dim_cap)));
    }
    let mut images = Vec::with_capacity(subsets.len());
    for set in &subsets {
        // S_J is generated by transpositions of consecutive members of J
        let gens: Vec<Permutation> = set.windows(2).map(|w| Permutation::transposition(n, w[0], w[1])).collect();
        let group = PermGroup::new(n, gens)?;
        let mut m = MatFp::zeros(module.dim(), module.dim(), p);
        for g in group.elements() {
            m.add_scaled(1, &module.eval(&g)?);
        }
        images.push(m);
    }
    Ok(Zeta { k, subsets, images, module })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::irreducible;

    #[test]
    fn closed_forms_agree_with_the_defining_sums() {
        for p in [2, 3, 5, 7] {
            for k in [2, 3] {
                let n = 2 * k + 1;
                assert_eq!(x_element(k, n, p).unwrap(), x_element_expanded(k, n, p).unwrap(), "k={k} p={p}");
            }
        }
        assert_eq!(x_element(3, 6, 5).unwrap().len(), 16);
        let x2 = x_element(2, 4, 2).unwrap();
        assert!(x2.terms().iter().all(|&(_, c)| c == 1));
    }

    #[test]
    fn eta_intertwines_and_transposes() {
        let (n, p) = (7, 3);
        for (k, l) in [(1, 2), (2, 3), (1, 3)] {
            let e = eta(k, l, n, p).unwrap();
            let mk = subset_module(n, p, k).unwrap();
            let ml = subset_module(n, p, l).unwrap();
            for (a, b) in mk.gens().iter().zip(ml.gens()) {
                assert_eq!(e.matrix.mul(a), b.mul(&e.matrix));
            }
            assert_eq!(eta(l, k, n, p).unwrap().matrix, e.matrix.transpose());
        }
    }

    #[test]
    fn rank_formula_small_cases() {
        for n in [6, 8] {
            assert_eq!(wilson_rank(1, 2, n, 2).unwrap(), n as u128 - 1);
            assert_eq!(eta(1, 2, n, 2).unwrap().rank(), n - 1);
        }
        assert_eq!(wilson_rank(2, 2, 9, 3).unwrap(), binomial(9, 2));
        assert_eq!(wilson_rank(2, 3, 7, 3).unwrap(), binomial(7, 2) - 1);
    }

    #[test]
    fn zeta_matches_x_element() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        for (shape, p, k) in [(&[4usize, 1][..], 2u32, 2usize), (&[5], 2, 2), (&[3, 2, 1], 2, 3), (&[4, 1, 1], 3, 3)] {
            let l = Partition::from_parts(shape);
            let z = zeta(k, &l, p, &lib, &caps).unwrap();
            assert!(z.is_intertwiner());
            assert_eq!(z.vanishes_on_specht().unwrap(), !x_nonzero(&l, k, p, &lib).unwrap(), "{l} k={k}");
        }
    }

    #[test]
    fn x2_kills_trivial_module() {
        let d = irreducible(&Partition::from_parts(&[6]), 2).unwrap();
        assert!(x_element(2, 6, 2).unwrap().act(&d).unwrap().is_zero());
    }
}
