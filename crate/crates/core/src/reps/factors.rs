use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::partitions::{content, Partition};
use crate::perm_groups::Permutation;

use super::cache::{read_rep, write_rep};
use super::meataxe::{meataxe, MeataxeVerdict};
use super::spin::{quotient, submodule};
use super::{hom, specht, Caps, Rep};

/// Memo of the modules `D^λ` and `S^λ`, optionally backed by a cache directory.
/// Two threads asking for the same key may both build it; both get equal values.
#[derive(Debug, Default)]
pub struct ModuleLibrary {
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<(char, Vec<usize>, u32), Arc<Rep>>>,
}

impl ModuleLibrary {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        ModuleLibrary { cache_dir, memo: Mutex::new(HashMap::new()) }
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    fn get(&self, kind: char, shape: &Partition, p: u32, build: impl FnOnce() -> Result<Rep>) -> Result<Arc<Rep>> {
        let key = (kind, shape.parts().to_vec(), p);
        if let Some(r) = self.memo.lock().expect("library lock").get(&key) {
            return Ok(r.clone());
        }
        let n = shape.size();
        let file = self.cache_dir.as_ref().map(|d| {
            let parts: Vec<String> = shape.parts().iter().map(|x| x.to_string()).collect();
            d.join(format!("{kind}_n{n}_p{p}_{}.bin", parts.join("-")))
        });
        let cached = match &file {
            Some(f) => read_rep(f, n, p)?,
            None => None,
        };
        let rep = match cached {
            Some(r) => r,
            None => {
                let r = build()?;
                if let Some(f) = &file {
                    write_rep(f, &r)?;
                }
                r
            }
        };
        let rep = Arc::new(rep);
        Ok(self.memo.lock().expect("library lock").entry(key).or_insert(rep).clone())
    }

    /// `D^λ`, the simple head of the Specht module.
    pub fn irreducible(&self, shape: &Partition, p: u32) -> Result<Arc<Rep>> {
        self.get('D', shape, p, || specht::irreducible(shape, p))
    }

    pub fn specht(&self, shape: &Partition, p: u32) -> Result<Arc<Rep>> {
        self.get('S', shape, p, || specht::specht(shape, p))
    }
}

/// The scalar by which the sum of all transpositions acts on an irreducible
/// `S_n`-module. On `D^μ` this is the sum of the residues of the nodes of `μ`.
fn transposition_sum_scalar(x: &Rep) -> u32 {
    let n = x.degree();
    let p = x.modulus();
    let d = x.dim();
    let mut e = vec![0u32; d];
    e[0] = 1;
    let mut acc = 0u64;
    for i in 1..=n {
        for j in i + 1..=n {
            let word = Permutation::transposition(n, i, j).adjacent_word();
            let mut v = e.clone();
            for &s in word.iter().rev() {
                v = x.gens()[s].mat_vec(&v);
            }
            acc += v[0] as u64;
        }
    }
    (acc % p as u64) as u32
}

fn residue_sum(mu: &Partition, p: u32) -> u32 {
    let c = content(mu, p);
    (c.iter().enumerate().map(|(i, &m)| i as u64 * m as u64).sum::<u64>() % p as u64) as u32
}

/// The label of an irreducible `S_n`-module among `candidates`, found by
/// comparing central characters, then dimensions, then a nonzero Hom.
pub fn identify_irreducible(
    x: &Rep,
    candidates: &[Partition],
    lib: &ModuleLibrary,
    caps: &Caps,
) -> Result<Option<Partition>> {
    let n = x.degree();
    if !x.is_symmetric() || x.dim() == 0 {
        return Err(Error::Precondition("identification needs a nonzero module of a symmetric group".into()));
    }
    let p = x.modulus();
    let scalar = transposition_sum_scalar(x);
    for mu in candidates {
        if mu.size() != n || !mu.is_p_regular(p) || residue_sum(mu, p) != scalar {
            continue;
        }
        if mu.standard_tableaux_count() < x.dim() as u128 {
            continue;
        }
        let d = lib.irreducible(mu, p)?;
        if d.dim() == x.dim() && hom::hom_dim(&d, x, caps)? > 0 {
            return Ok(Some(mu.clone()));
        }
    }
    Ok(None)
}

/// Composition factors with multiplicities, by recursive MeatAxe splitting.
/// The result lists the candidates that occur, in the order given.
pub fn composition_factors(
    v: &Rep,
    candidates: &[Partition],
    lib: &ModuleLibrary,
    caps: &Caps,
) -> Result<Vec<(Partition, usize)>> {
    if !v.is_symmetric() {
        return Err(Error::Unsupported("composition factors of subgroup modules".into()));
    }
    if v.dim() > caps.dim_cap {
        return Err(Error::ResourceCap(format!("dimension {} exceeds the cap {}", v.dim(), caps.dim_cap)));
    }
    let mut counts = vec![0usize; candidates.len()];
    let mut stack = vec![v.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match meataxe(&x, caps)? {
            MeataxeVerdict::Reducible(u) => {
                stack.push(quotient(&x, &u)?);
                stack.push(submodule(&x, &u)?);
            }
            _ => {
                let mu = identify_irreducible(&x, candidates, lib, caps)?.ok_or_else(|| {
                    Error::Inconclusive(format!("an irreducible factor of dimension {} matches no candidate", x.dim()))
                })?;
                let i = candidates.iter().position(|c| *c == mu).expect("label comes from the candidates");
                counts[i] += 1;
            }
        }
    }
    Ok(candidates.iter().cloned().zip(counts).filter(|&(_, m)| m > 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_p_regular;
    use crate::reps::subset_module;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn natural_module_in_even_characteristic() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        for n in [4, 6] {
            let m1 = subset_module(n, 2, 1).unwrap();
            let mut f = composition_factors(&m1, &enumerate_p_regular(n, 2), &lib, &caps).unwrap();
            f.sort();
            assert_eq!(f, vec![(p(&[n - 1, 1]), 1), (p(&[n]), 2)]);
        }
    }

    #[test]
    fn irreducible_is_its_own_factor() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        let l = p(&[3, 2, 1]);
        let d = lib.irreducible(&l, 5).unwrap();
        assert_eq!(composition_factors(&d, &enumerate_p_regular(6, 5), &lib, &caps).unwrap(), vec![(l, 1)]);
    }

    #[test]
    fn memo_and_disk_cache_agree() {
        let dir = tempfile::tempdir().unwrap();
        let a = ModuleLibrary::new(Some(dir.path().to_path_buf()));
        let x = a.irreducible(&p(&[4, 2]), 3).unwrap();
        let y = a.irreducible(&p(&[4, 2]), 3).unwrap();
        assert!(Arc::ptr_eq(&x, &y));
        let b = ModuleLibrary::new(Some(dir.path().to_path_buf()));
        assert_eq!(*b.irreducible(&p(&[4, 2]), 3).unwrap(), *x);
    }
}
