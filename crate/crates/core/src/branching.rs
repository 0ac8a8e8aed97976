//! Block components of restriction and induction, via Jucys–Murphy elements.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{generalized_eigenspace, MatFp, Subspace};
use crate::partitions::{content, enumerate_p_regular, Partition};
use crate::perm_groups::young;
use crate::reps::{
    composition_factors, end_dim, hom_dim, hom_space, induce_with_jucys_murphy, spin_up, subset_module, submodule,
    Caps, ModuleLibrary, Rep,
};

/// `L_m = Σ_{j<m} (j, m)` acting on an `S_n`-module, `2 ≤ m ≤ n`.
pub fn jucys_murphy(v: &Rep, m: usize) -> Result<MatFp> {
    let n = v.degree();
    if !v.is_symmetric() || m < 2 || m > n {
        return Err(Error::Precondition(format!("L_{m} on a module of S_{n}")));
    }
    let s = v.gens();
    // t = (j, m), built down from (m-1, m) by conjugating with s_j
    let mut t = s[m - 2].clone();
    let mut sum = t.clone();
    for j in (1..m - 1).rev() {
        t = s[j - 1].mul(&t).mul(&s[j - 1]);
        sum.add_scaled(1, &t);
    }
    Ok(sum)
}

#[derive(Clone, Debug)]
pub struct BlockComponent {
    pub residue: u32,
    pub subspace: Subspace,
    pub module: Rep,
}

/// `V↓ = ⊕_i e_i V` or `V↑ = ⊕_i f_i V`, one entry per residue with a
/// nonzero component.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub components: Vec<BlockComponent>,
}

impl BlockDecomposition {
    pub fn component(&self, i: u32) -> Option<&BlockComponent> {
        self.components.iter().find(|c| c.residue == i)
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.subspace.dim()).sum()
    }
}

fn split(whole: &Rep, jm: &MatFp) -> Result<BlockDecomposition> {
    let p = whole.modulus();
    let mut components = Vec::new();
    for i in 0..p {
        let u = generalized_eigenspace(jm, i);
        if u.is_zero() {
            continue;
        }
        let module = submodule(whole, &u)?;
        components.push(BlockComponent { residue: i, subspace: u, module });
    }
    let d = BlockDecomposition { components };
    if d.total_dim() != whole.dim() {
        return Err(Error::Precondition(format!(
            "eigenspaces of the Jucys–Murphy element span {} of {} dimensions",
            d.total_dim(),
            whole.dim()
        )));
    }
    Ok(d)
}

/// The components `e_i V` of `V↓_{S_{n-1}}`.
pub fn e_components(v: &Rep) -> Result<BlockDecomposition> {
    let n = v.degree();
    if n < 2 {
        return Err(Error::Precondition("restriction from S_1".into()));
    }
    let jm = jucys_murphy(v, n)?;
    split(&v.restrict_to_symmetric(n - 1)?, &jm)
}

/// `e_i V`, possibly zero-dimensional.
pub fn e_component(v: &Rep, i: u32) -> Result<Rep> {
    let n = v.degree();
    if n < 2 {
        return Err(Error::Precondition("restriction from S_1".into()));
    }
    let jm = jucys_murphy(v, n)?;
    submodule(&v.restrict_to_symmetric(n - 1)?, &generalized_eigenspace(&jm, i % v.modulus()))
}

/// The components `f_i V` of `Ind_{S_n}^{S_{n+1}} V`, cut out by right
/// multiplication with `L_{n+1}`.
pub fn f_components(v: &Rep, caps: &Caps) -> Result<BlockDecomposition> {
    let (ind, jm) = induce_with_jucys_murphy(v, caps)?;
    split(&ind, &jm)
}

pub fn f_component(v: &Rep, i: u32, caps: &Caps) -> Result<Rep> {
    let (ind, jm) = induce_with_jucys_murphy(v, caps)?;
    submodule(&ind, &generalized_eigenspace(&jm, i % v.modulus()))
}

/// `dim End_{S_{n-1}}(D^λ↓)`.
pub fn restriction_end_dim(lambda: &Partition, p: u32, lib: &ModuleLibrary, caps: &Caps) -> Result<usize> {
    lambda.require_p_regular(p)?;
    let n = lambda.size();
    if n < 2 {
        return Ok(1);
    }
    let d = lib.irreducible(lambda, p)?;
    end_dim(&d.restrict_to_symmetric(n - 1)?, caps)
}

/// `m_k(λ) = dim End_{S_{n-k} × S_k}(D^λ↓)`.
pub fn m_k(lambda: &Partition, p: u32, k: usize, lib: &ModuleLibrary, caps: &Caps) -> Result<usize> {
    lambda.require_p_regular(p)?;
    let n = lambda.size();
    if k > n {
        return Err(Error::Precondition(format!("m_{k} for a partition of {n}")));
    }
    let d = lib.irreducible(lambda, p)?;
    end_dim(&d.restrict(&young(&[n - k, k])?)?, caps)
}

/// The `p`-regular partitions of `n` with the given residue content.
pub fn block_members(n: usize, cont: &[usize], p: u32) -> Vec<Partition> {
    enumerate_p_regular(n, p).into_iter().filter(|mu| content(mu, p) == cont).collect()
}

/// `cont(λ) - γ_i`, or `None` when λ has no node of residue `i`.
pub fn content_minus(lambda: &Partition, i: u32, p: u32) -> Option<Vec<usize>> {
    let mut c = content(lambda, p);
    let slot = c.get_mut(i as usize)?;
    *slot = slot.checked_sub(1)?;
    Some(c)
}

/// The label of the simple socle of an `S_m`-module, or `None` when no
/// candidate embeds exactly once or a sampled submodule misses the embedded copy.
pub fn socle_label(
    x: &Rep,
    candidates: &[Partition],
    lib: &ModuleLibrary,
    caps: &Caps,
) -> Result<Option<Partition>> {
    let m = x.degree();
    if !x.is_symmetric() || x.dim() == 0 {
        return Err(Error::Precondition("socle of a zero or non-symmetric-group module".into()));
    }
    let p = x.modulus();
    let mut found: Option<(Partition, Subspace)> = None;
    for mu in candidates {
        if mu.size() != m || !mu.is_p_regular(p) || mu.standard_tableaux_count() == 0 {
            continue;
        }
        let d = lib.irreducible(mu, p)?;
        if d.dim() > x.dim() {
            continue;
        }
        let h = hom_space(&d, x, caps)?;
        match h.dim() {
            0 => {}
            1 if found.is_none() => {
                let image = Subspace::row_space(&h.basis[0].transpose());
                found = Some((mu.clone(), image));
            }
            _ => return Ok(None),
        }
    }
    let Some((mu, image)) = found else {
        return Ok(None);
    };
    let d = x.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed ^ 0x736f_636c_65);
    let mut samples: Vec<Vec<u32>> = (0..d.min(4))
        .map(|i| {
            let mut e = vec![0; d];
            e[i * d / d.min(4)] = 1;
            e
        })
        .collect();
    for _ in 0..4 {
        samples.push((0..d).map(|_| rng.gen_range(0..p)).collect());
    }
    for v in samples {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        if !spin_up(x, &[v]).contains(&image)? {
            return Ok(None);
        }
    }
    Ok(Some(mu))
}

/// Whether `a` contains `b` to the base `p`: writing both in base `p`,
/// `b` has fewer digits than `a` and each digit of `b` is zero or the
/// corresponding digit of `a`. Zero is contained in everything.
pub fn contains_to_base(a: u64, b: u64, p: u32) -> bool {
    if b == 0 {
        return true;
    }
    let p = p as u64;
    let (mut x, mut y) = (a, b);
    while y > 0 {
        if x == 0 {
            return false;
        }
        let (da, db) = (x % p, y % p);
        if db != 0 && db != da {
            return false;
        }
        x /= p;
        y /= p;
    }
    // b ran out of digits first; a must still have a nonzero digit left
    x > 0
}

/// `[S^{(n-k,k)} : D^{(n-j,j)}]` for two-row partitions.
pub fn james_two_row_multiplicity(n: usize, k: usize, j: usize, p: u32) -> Result<u8> {
    if j > k || 2 * k > n {
        return Err(Error::Precondition(format!("need j <= k <= n/2, got n={n}, k={k}, j={j}")));
    }
    Ok(contains_to_base((n - 2 * j + 1) as u64, (k - j) as u64, p) as u8)
}

/// `D_j = D^{(n-j, j)}` labels occurring in `M_k`.
fn two_row_labels(n: usize, p: u32, k: usize) -> Vec<(usize, Partition)> {
    (0..=k.min(n / 2))
        .map(|j| (j, Partition::from_parts(&[n - j, j])))
        .filter(|(_, mu)| mu.is_p_regular(p))
        .collect()
}

/// Socle, head and factor data of the permutation module `M_k` on `k`-subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermModuleSignature {
    pub n: usize,
    pub p: u32,
    pub k: usize,
    pub factors: Vec<(String, usize)>,
    pub hom_in: BTreeMap<String, usize>,
    pub hom_out: BTreeMap<String, usize>,
    pub invariants_dim: usize,
}

impl PermModuleSignature {
    pub fn factor(&self, j: usize) -> usize {
        let label = format!("D{j}");
        self.factors.iter().find(|(l, _)| *l == label).map_or(0, |&(_, m)| m)
    }

    pub fn hom_in(&self, j: usize) -> usize {
        self.hom_in.get(&format!("D{j}")).copied().unwrap_or(0)
    }

    pub fn hom_out(&self, j: usize) -> usize {
        self.hom_out.get(&format!("D{j}")).copied().unwrap_or(0)
    }
}

pub fn perm_module_signature(n: usize, p: u32, k: usize, lib: &ModuleLibrary, caps: &Caps) -> Result<PermModuleSignature> {
    if 2 * k > n {
        return Err(Error::Precondition(format!("M_{k} needs k <= n/2 for n = {n}")));
    }
    let m = subset_module(n, p, k)?;
    if m.dim() > caps.dim_cap {
        return Err(Error::ResourceCap(format!("dim M_{k} = {} exceeds the cap {}", m.dim(), caps.dim_cap)));
    }
    let labels = two_row_labels(n, p, k);
    let shapes: Vec<Partition> = labels.iter().map(|(_, mu)| mu.clone()).collect();
    let found = composition_factors(&m, &shapes, lib, caps)?;
    let name = |mu: &Partition| {
        let j = labels.iter().find(|(_, x)| x == mu).expect("label among the candidates").0;
        format!("D{j}")
    };
    let factors = found.iter().map(|(mu, c)| (name(mu), *c)).collect();
    let mut hom_in = BTreeMap::new();
    let mut hom_out = BTreeMap::new();
    for (j, mu) in &labels {
        let d = lib.irreducible(mu, p)?;
        hom_in.insert(format!("D{j}"), hom_dim(&d, &m, caps)?);
        hom_out.insert(format!("D{j}"), hom_dim(&m, &d, caps)?);
    }
    Ok(PermModuleSignature { n, p, k, factors, hom_in, hom_out, invariants_dim: m.fixed_points().dim() })
}

/// Checks the commuting relations that make `L_n` an endomorphism of the restriction.
pub fn commutes_with_smaller(v: &Rep, jm: &MatFp) -> bool {
    let n = v.degree();
    v.gens()[..n.saturating_sub(2)].iter().all(|s| s.mul(jm) == jm.mul(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{e_tilde, epsilon, phi};
    use crate::perm_groups::Permutation;

    fn part(x: &[usize]) -> Partition {
        Partition::from_parts(x)
    }

    #[test]
    fn jucys_murphy_matches_direct_sum() {
        let d = crate::reps::irreducible(&part(&[3, 2, 1]), 5).unwrap();
        let jm = jucys_murphy(&d, 6).unwrap();
        let mut direct = MatFp::zeros(d.dim(), d.dim(), 5);
        for j in 1..6 {
            direct.add_scaled(1, &d.eval(&Permutation::transposition(6, j, 6)).unwrap());
        }
        assert_eq!(jm, direct);
        assert!(commutes_with_smaller(&d, &jm));
    }

    #[test]
    fn restriction_blocks_follow_the_crystal() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        for p in [2u32, 3] {
            for n in 2..=6 {
                for lambda in enumerate_p_regular(n, p) {
                    let d = lib.irreducible(&lambda, p).unwrap();
                    let blocks = e_components(&d).unwrap();
                    assert_eq!(blocks.total_dim(), d.dim());
                    for i in 0..p {
                        let present = blocks.component(i).is_some();
                        assert_eq!(present, epsilon(&lambda, i, p) > 0, "{lambda} i={i} p={p}");
                        if let Some(c) = blocks.component(i) {
                            assert_eq!(end_dim(&c.module, &caps).unwrap(), epsilon(&lambda, i, p));
                            let target = e_tilde(&lambda, i, p).unwrap();
                            let cands = block_members(n - 1, &content_minus(&lambda, i, p).unwrap(), p);
                            assert_eq!(socle_label(&c.module, &cands, &lib, &caps).unwrap(), Some(target));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induction_blocks_follow_the_crystal() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        for p in [2u32, 3] {
            for n in 1..=4 {
                for lambda in enumerate_p_regular(n, p) {
                    let d = lib.irreducible(&lambda, p).unwrap();
                    let blocks = f_components(&d, &caps).unwrap();
                    assert_eq!(blocks.total_dim(), (n + 1) * d.dim());
                    for i in 0..p {
                        assert_eq!(blocks.component(i).is_some(), phi(&lambda, i, p) > 0, "{lambda} i={i} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_end_dims() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        assert_eq!(restriction_end_dim(&part(&[4, 1]), 2, &lib, &caps).unwrap(), 2);
        assert_eq!(restriction_end_dim(&part(&[5]), 2, &lib, &caps).unwrap(), 1);
        let l = part(&[3, 2, 1]);
        assert_eq!(m_k(&l, 5, 1, &lib, &caps).unwrap(), restriction_end_dim(&l, 5, &lib, &caps).unwrap());
    }

    #[test]
    fn base_containment() {
        assert!(contains_to_base(5, 0, 2));
        assert!(contains_to_base(5, 1, 2));
        assert!(!contains_to_base(5, 4, 2));
        assert!(!contains_to_base(5, 5, 2));
        assert!(!contains_to_base(8, 2, 2));
        assert!(contains_to_base(10, 2, 2));
        assert!(!contains_to_base(3, 4, 2));
        assert_eq!(james_two_row_multiplicity(9, 3, 3, 2).unwrap(), 1);
        assert_eq!(james_two_row_multiplicity(9, 3, 1, 2).unwrap(), 0);
        assert_eq!(james_two_row_multiplicity(11, 3, 1, 2).unwrap(), 1);
    }

    #[test]
    fn signature_json_shape() {
        let lib = ModuleLibrary::default();
        let s = perm_module_signature(6, 2, 2, &lib, &Caps::default()).unwrap();
        assert_eq!((s.factor(0), s.factor(1), s.factor(2)), (3, 2, 1));
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(v["factors"][0], serde_json::json!(["D0", 3]));
        assert_eq!(v["invariants_dim"], 1);
    }
}
